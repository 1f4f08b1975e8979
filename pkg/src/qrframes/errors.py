"""Exception types shared across the package."""


class QRFError(Exception):
    """Base class for all package errors."""


class DimensionMismatch(QRFError, ValueError):
    """Operand dimensions are incompatible."""


class UnsupportedPreset(QRFError, ValueError):
    """Unknown group preset name or invalid preset parameter."""


class NotAGroup(QRFError, ValueError):
    """A Cayley table violates a group law.

    Parameters
    ----------
    law : str
        One of ``"shape"``, ``"closure"``, ``"identity"``, ``"inverse"``,
        ``"associativity"``.
    witness : tuple
        Element indices exhibiting the violation.
    """

    def __init__(self, law, witness=()):
        self.law = law
        self.witness = tuple(int(w) for w in witness)
        super().__init__(f"group law '{law}' fails at {self.witness}")


class UnknownPoint(QRFError, KeyError):
    """A point label is not part of the G-space."""


class GroupMismatch(QRFError, ValueError):
    """Objects are defined over different groups."""


class NotProportionalToIdentity(QRFError, ValueError):
    """The orbit sum of a coherent-state seed is not a multiple of the identity."""

    def __init__(self, residual):
        self.residual = float(residual)
        super().__init__(f"orbit sum deviates from lambda*I by {self.residual:.3e}")


class NotCyclic(QRFError, ValueError):
    """The orbit of a coherent-state seed does not span the Hilbert space."""

    def __init__(self, rank, dim):
        self.rank = int(rank)
        self.dim = int(dim)
        super().__init__(f"orbit spans dimension {rank} of {dim}")


class FrameNotIdeal(QRFError, ValueError):
    """A frame is required to be sharp and principal."""


class FramesNotIdealCoherent(QRFError, ValueError):
    """Frames are required to be coherent-state frames with orthonormal orbits."""


class InvalidCoefficients(QRFError, ValueError):
    """Phase POVM coefficient matrix is not PSD with unit diagonal."""


class EmptySet(QRFError, ValueError):
    """An empty outcome set was supplied where a nonempty one is required."""


class ConfigError(QRFError, ValueError):
    """Invalid configuration value, tagged with its field path."""

    def __init__(self, field, message):
        self.field = field
        super().__init__(f"{field}: {message}")


class ParseError(QRFError, ValueError):
    """An input file could not be parsed."""

    def __init__(self, path, line, message):
        self.path = str(path)
        self.line = line
        super().__init__(f"{path}:{line}: {message}")


class InvariantViolation(QRFError, ValueError):
    """A domain invariant failed on input data."""

    def __init__(self, name, residual=float("nan")):
        self.name = name
        self.residual = float(residual)
        super().__init__(f"invariant '{name}' violated (residual {self.residual:.3e})")

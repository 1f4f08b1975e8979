"""Operational equivalence of trace-class operators relative to observable sets.

Two operators are equivalent with respect to a set ``O`` when they give the
same expectation ``tr[T A]`` for every ``A`` in ``O``. Everything is decided
through an HS-orthonormal basis of the span of ``O``; the pre-annihilator
is never built. Class signatures are the coordinates ``tr[T b_i^dagger]``
against that basis.
"""

from dataclasses import dataclass
import numpy as np

from .errors import DimensionMismatch
from .operators import as_operator, op_norm
from .representations import (
    OperatorSpaceBasis, ProductOperatorBasis, gram_schmidt, invariant_commutant,
)

SIG_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class ObservableSet:
    """A labelled observable set with the orthonormal basis of its span."""

    label: str
    generators: tuple
    span: OperatorSpaceBasis

    @property
    def dim(self):
        return self.span.dim

    @property
    def size(self):
        """Dimension of the span, which equals the quotient dimension."""
        return self.span.size

    def reconstruction_residual(self):
        """Largest distance from a generator to its projection on the span."""
        if not self.generators:
            return 0.0
        return max(op_norm(g - self.span.project(g)) for g in self.generators)


@dataclass(frozen=True, eq=False)
class ClassSignature:
    """Coordinates of an equivalence class against ``relation``'s span basis."""

    relation: ObservableSet
    coords: np.ndarray

    def distance(self, other):
        """Max-coordinate deviation from another signature of the same relation."""
        if self.coords.shape != other.coords.shape:
            raise DimensionMismatch("signatures from different spans")
        if self.coords.size == 0:
            return 0.0
        return float(np.max(np.abs(self.coords - other.coords)))

    def to_dict(self):
        return {"relation": self.relation.label, "span_dim": int(self.coords.size),
                "re": self.coords.real.tolist(), "im": self.coords.imag.tolist()}


@dataclass(frozen=True)
class Equivalence:
    """Result of an equivalence test; truthy iff equivalent."""

    equivalent: bool
    residual: float

    def __bool__(self):
        return self.equivalent


def build_observable_set(label, generators, keep_generators=True):
    """Span an observable set by Gram-Schmidt over its generators.

    Raises
    ------
    DimensionMismatch
        If generators have different dimensions.
    """
    gens = tuple(as_operator(g) for g in generators)
    if not gens:
        raise ValueError("an observable set needs at least one generator")
    dim = gens[0].shape[0]
    basis = gram_schmidt(gens, dim=dim)
    span = OperatorSpaceBasis(dim, basis, label)
    return ObservableSet(label, gens if keep_generators else (), span)


def from_basis(label, basis):
    """Wrap an already orthonormal basis as an observable set."""
    b = np.asarray(basis, dtype=complex)
    return ObservableSet(label, (), OperatorSpaceBasis(b.shape[1], b, label))


def _check(t, o):
    t = as_operator(t)
    if t.shape[0] != o.dim:
        raise DimensionMismatch(f"operator dim {t.shape[0]} != observable dim {o.dim}")
    return t


def equivalent(t1, t2, o, tol=SIG_TOL):
    """Test ``tr[(t1 - t2) A] = 0`` for all ``A`` in the span of ``o``."""
    delta = _check(t1, o) - _check(t2, o)
    vals = o.span.pairings(delta)
    res = float(np.max(np.abs(vals))) if vals.size else 0.0
    return Equivalence(res < tol, res)


def signature(t, o):
    """Class coordinates ``tr[t b_i^dagger]`` against the span basis of ``o``."""
    return ClassSignature(o, o.span.coords(_check(t, o)))


def quotient_projector(o):
    """HS-orthogonal projection onto ``span{b_i^dagger}``.

    ``t - project(t)`` pairs to zero with every element of ``o``, so each
    operator is equivalent to its projection and the map kills exactly the
    pre-annihilator.
    """
    def project(t):
        return o.span.combine(o.span.pairings(_check(t, o)), adjoint=True)

    return project


def invariant_set(rep):
    """The invariant algebra ``B(H)^G`` of a representation."""
    c = invariant_commutant(rep)
    return ObservableSet("G", tuple(c.basis), OperatorSpaceBasis(c.dim, c.basis, "G"))


def effect_span_basis(frame_or_effects):
    """Orthonormal basis of the span of a frame's effects."""
    effects = getattr(getattr(frame_or_effects, "povm", None), "effects", frame_or_effects)
    return gram_schmidt(list(effects))


def matrix_units(d):
    return np.eye(d * d, dtype=complex).reshape(d * d, d, d)


def framed_set(factors, label="framed"):
    """Observables framed on some tensor factors and unrestricted on others.

    Parameters
    ----------
    factors : sequence
        One entry per tensor factor: a frame (its effects' span is used) or an
        integer dimension (all operators on that factor).

    Returns
    -------
    ObservableSet
        Span of ``F_1 (x) F_2 (x) ...`` with ``F_k`` from each factor. The
        tensor product of orthonormal bases is already orthonormal, so no
        further orthogonalization is needed.
    """
    bases = tuple(
        matrix_units(f) if isinstance(f, (int, np.integer)) else effect_span_basis(f)
        for f in factors)
    return ObservableSet(label, (), ProductOperatorBasis(bases, label))


def span_contains(o, a, tol=1e-8):
    """True if ``a`` lies in the span of ``o`` within ``tol``."""
    a = _check(a, o)
    return op_norm(a - o.span.project(a)) < tol


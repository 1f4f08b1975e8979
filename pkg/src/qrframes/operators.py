"""Dense complex operator utilities.

Operators are plain square ``numpy`` arrays of dtype ``complex128``. The
helpers here cover tensor products, partial traces over arbitrary factor
layouts, norms, the Hilbert-Schmidt pairing, validation certificates and
seeded random sampling.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch

TOL = 1e-9
EIG_FLOOR = 1e-10


def as_operator(a, dim=None):
    """Return ``a`` as a square complex array, checking its dimension."""
    x = np.asarray(a, dtype=complex)
    if x.ndim != 2 or x.shape[0] != x.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {x.shape}")
    if dim is not None and x.shape[0] != dim:
        raise DimensionMismatch(f"expected dimension {dim}, got {x.shape[0]}")
    return x


def dagger(a):
    return np.conj(np.transpose(a))


def identity(d):
    return np.eye(d, dtype=complex)


def ket(d, i):
    v = np.zeros(d, dtype=complex)
    v[i] = 1.0
    return v


def projector(v):
    """Rank-one operator ``|v><v|`` for a (not necessarily normalized) vector."""
    v = np.asarray(v, dtype=complex).ravel()
    return np.outer(v, v.conj())


def tensor(*ops):
    """Kronecker product of one or more operators (or vectors)."""
    if not ops:
        raise ValueError("tensor needs at least one operand")
    out = np.asarray(ops[0], dtype=complex)
    for b in ops[1:]:
        out = np.kron(out, np.asarray(b, dtype=complex))
    return out


def _check_dims(x, dims):
    dims = tuple(int(d) for d in dims)
    if any(d < 1 for d in dims):
        raise DimensionMismatch(f"factor dimensions must be positive: {dims}")
    if x.shape[0] != int(np.prod(dims)):
        raise DimensionMismatch(
            f"operator of dimension {x.shape[0]} does not factor as {dims}")
    return dims


def partial_trace(x, dims, which="first"):
    """Trace out factors of an operator on a tensor product space.

    Parameters
    ----------
    x : array_like
        Operator on ``dims[0] x dims[1] x ...``.
    dims : sequence of int
        Factor dimensions.
    which : {"first", "second"} or int or sequence of int
        Factor(s) to trace out. ``"first"``/``"second"`` refer to the
        bipartite case.

    Returns
    -------
    ndarray
        Operator on the remaining factors, in their original order.
    """
    x = as_operator(x)
    dims = _check_dims(x, dims)
    if which == "first":
        traced = [0]
    elif which == "second":
        traced = [1]
    elif np.isscalar(which):
        traced = [int(which)]
    else:
        traced = sorted(int(w) for w in which)
    n = len(dims)
    if any(t < 0 or t >= n for t in traced):
        raise DimensionMismatch(f"factor index out of range for dims {dims}")
    kept = [k for k in range(n) if k not in traced]
    t = x.reshape(dims + dims)
    # einsum labels: row indices 0..n-1, column indices n..2n-1
    row = list(range(n))
    col = [n + k if k in kept else k for k in range(n)]
    out_labels = kept + [n + k for k in kept]
    red = np.einsum(t, row + col, out_labels)
    d_kept = int(np.prod([dims[k] for k in kept])) if kept else 1
    return red.reshape(d_kept, d_kept)


def permute_subsystems(x, dims, perm):
    """Reorder tensor factors of an operator.

    Factor ``j`` of the result is factor ``perm[j]`` of the input.
    """
    x = as_operator(x)
    dims = _check_dims(x, dims)
    perm = [int(p) for p in perm]
    if sorted(perm) != list(range(len(dims))):
        raise ValueError(f"invalid permutation {perm}")
    n = len(dims)
    t = x.reshape(dims + dims).transpose(perm + [n + p for p in perm])
    return t.reshape(x.shape)


def partial_transpose(x, dims, which=1):
    """Transpose factor ``which`` of a bipartite (or multipartite) operator."""
    x = as_operator(x)
    dims = _check_dims(x, dims)
    n = len(dims)
    axes = list(range(2 * n))
    axes[which], axes[n + which] = axes[n + which], axes[which]
    return x.reshape(dims + dims).transpose(axes).reshape(x.shape)


def negativity(x, dims, which=1):
    """Sum of the magnitudes of negative partial-transpose eigenvalues."""
    pt = partial_transpose(x, dims, which)
    ev = np.linalg.eigvalsh((pt + dagger(pt)) / 2)
    return float(np.abs(ev[ev < 0]).sum())


def singular_values(a):
    return np.linalg.svd(as_operator(a), compute_uv=False)


def norms(a):
    """Return ``(op_norm, trace_norm)`` of an operator."""
    s = singular_values(a)
    return float(s[0]), float(s.sum())


def op_norm(a):
    return norms(a)[0]


def trace_norm(a):
    return norms(a)[1]


def hs_inner(a, b):
    """Hilbert-Schmidt inner product ``tr(a^dagger b)``."""
    a = as_operator(a)
    b = as_operator(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"hs_inner of shapes {a.shape} and {b.shape}")
    return complex(np.vdot(a, b))


@dataclass(frozen=True)
class Check:
    name: str
    residual: float
    threshold: float

    @property
    def passed(self):
        return bool(self.residual <= self.threshold)


@dataclass(frozen=True)
class Certificate:
    """Outcome of a validation: every invariant checked with its residual."""

    kind: str
    checks: tuple

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    @property
    def failed(self):
        """The first failed check, or ``None``."""
        for c in self.checks:
            if not c.passed:
                return c
        return None

    def __bool__(self):
        return self.passed

    def as_dict(self):
        return {
            "kind": self.kind,
            "passed": self.passed,
            "checks": [
                {"name": c.name, "residual": c.residual,
                 "threshold": c.threshold, "passed": c.passed}
                for c in self.checks
            ],
        }


def _hermiticity(x):
    return float(np.max(np.abs(x - dagger(x)))) if x.size else 0.0


def validate(x, kind):
    """Check the invariants of a state, effect, projection or unitary.

    Tolerances are ``1e-9 * dim`` for Hermiticity, trace and algebraic
    identities, and ``1e-10`` for the eigenvalue floor and ceiling.

    Returns
    -------
    Certificate
        ``passed`` is false if any invariant fails; ``failed`` names it.
    """
    x = as_operator(x)
    d = x.shape[0]
    tol = TOL * d
    checks = []
    if kind in ("state", "effect", "projection"):
        herm = _hermiticity(x)
        checks.append(Check("hermitian", herm, tol))
        ev = np.linalg.eigvalsh((x + dagger(x)) / 2)
        checks.append(Check("positive", max(0.0, -float(ev[0])), EIG_FLOOR))
        if kind == "state":
            checks.append(Check("unit_trace", abs(np.trace(x) - 1.0), tol))
        elif kind == "effect":
            checks.append(Check("bounded_by_identity",
                                max(0.0, float(ev[-1]) - 1.0), EIG_FLOOR))
        else:
            checks.append(Check("idempotent", op_norm(x @ x - x), tol))
    elif kind == "unitary":
        checks.append(Check("unitary", op_norm(dagger(x) @ x - identity(d)), tol))
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return Certificate(kind, tuple(checks))


def is_state(x):
    return validate(x, "state").passed


def random_operator(rng, d):
    """Complex Ginibre matrix with unit-variance entries."""
    return (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)


def random_hermitian(rng, d):
    g = random_operator(rng, d)
    return (g + dagger(g)) / 2


def random_state(rng, d, rank=None):
    """Normalized Wishart state ``G G^dagger / tr``; full rank by default."""
    k = d if rank is None else int(rank)
    g = (rng.standard_normal((d, k)) + 1j * rng.standard_normal((d, k))) / np.sqrt(2)
    w = g @ dagger(g)
    return w / np.trace(w).real


def random_vector(rng, d):
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return v / np.linalg.norm(v)


def random_pure_state(rng, d):
    return projector(random_vector(rng, d))


def random_unitary(rng, d):
    """Haar-random unitary via QR with phase correction."""
    q, r = np.linalg.qr(random_operator(rng, d))
    ph = np.diag(r) / np.abs(np.diag(r))
    return q * ph


def to_dict(a):
    a = as_operator(a)
    return {"dim": int(a.shape[0]), "re": a.real.tolist(), "im": a.imag.tolist()}


def from_dict(obj):
    """Inverse of :func:`to_dict`."""
    try:
        d = int(obj["dim"])
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj.get("im", np.zeros_like(re)), dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise DimensionMismatch(f"malformed operator object: {exc}") from exc
    if re.shape != (d, d) or im.shape != (d, d):
        raise DimensionMismatch(
            f"operator declares dim {d} but entries have shape {re.shape}/{im.shape}")
    return re + 1j * im

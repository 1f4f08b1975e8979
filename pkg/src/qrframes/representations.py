"""Unitary representations, conjugation actions, commutants and the twirl.

Conventions: observables transform as ``g.A = U(g) A U(g)^*`` and states
(trace-class operators) as ``g.T = U(g)^* T U(g)``, so that
``tr[(g.T) A] = tr[T (g.A)]``.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, GroupMismatch, InvariantViolation
from .operators import TOL, as_operator, dagger, from_dict, identity, op_norm, to_dict

RANK_TOL = 1e-10
GS_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class UnitaryRep:
    """A unitary representation: one ``dim x dim`` matrix per group element."""

    group: object
    matrices: np.ndarray
    name: str = "custom"

    @property
    def dim(self):
        return int(self.matrices.shape[1])

    def __call__(self, g):
        return self.matrices[g]

    def to_dict(self):
        return {"group": self.group.to_dict(), "dim": self.dim,
                "matrices": [to_dict(m) for m in self.matrices]}


def homomorphism_residual(group, matrices):
    """Largest deviation from unitarity, ``U(e) = I`` and ``U(g)U(h) = U(gh)``."""
    m = np.asarray(matrices)
    d = m.shape[1]
    res = op_norm(m[0] - identity(d))
    for g in group.elements:
        res = max(res, op_norm(dagger(m[g]) @ m[g] - identity(d)))
        prod = np.einsum("ij,hjk->hik", m[g], m)
        res = max(res, float(np.max(np.abs(prod - m[group.cayley[g]]))))
    return res


def make_rep(group, matrices, name="custom", tol=None):
    """Validate matrices as a unitary representation of ``group``.

    Raises
    ------
    InvariantViolation
        ``rep_shape`` or ``rep_homomorphism`` with the residual.
    """
    m = np.asarray(matrices, dtype=complex)
    if m.ndim != 3 or m.shape[0] != group.order or m.shape[1] != m.shape[2]:
        raise InvariantViolation("rep_shape")
    tol = TOL * m.shape[1] if tol is None else tol
    res = homomorphism_residual(group, m)
    if res > tol:
        raise InvariantViolation("rep_homomorphism", res)
    m.setflags(write=False)
    return UnitaryRep(group, m, name)


def _permutation_rep(group, images, name):
    n = group.order
    m = np.zeros((n, n, n), dtype=complex)
    for g in group.elements:
        m[g, images(g), np.arange(n)] = 1.0
    return make_rep(group, m, name)


def regular_rep(group):
    """Left-regular representation ``U(g)|h> = |gh>``."""
    return _permutation_rep(group, lambda g: group.cayley[g], "regular")


def inverse_convention_rep(group):
    """Right translation by the inverse, ``U(g)|h> = |h g^{-1}>``."""
    return _permutation_rep(
        group, lambda g: group.cayley[:, group.inverse[g]], "inverse_convention")


def trivial_rep(group, dim=1):
    m = np.broadcast_to(identity(dim), (group.order, dim, dim)).copy()
    return make_rep(group, m, "trivial")


def permutation_rep(space):
    """Permutation representation ``U(g)|x> = |g.x>`` of a G-space."""
    n = space.size
    m = np.zeros((space.group.order, n, n), dtype=complex)
    for g in space.group.elements:
        m[g, space.action[g], np.arange(n)] = 1.0
    return make_rep(space.group, m, "permutation")


def cyclic_phase_rep(group, charges):
    """Diagonal rep ``U(k) = diag(exp(2 pi i q k / n))`` of a cyclic group.

    The group must be labelled so that ``k`` corresponds to the ``k``-th power
    of a generator, as in ``make_preset("cyclic(n)")``.
    """
    n = group.order
    q = np.asarray(charges, dtype=float)
    k = np.arange(n)[:, None]
    phases = np.exp(2j * np.pi * k * q[None, :] / n)
    m = np.zeros((n, q.size, q.size), dtype=complex)
    m[:, np.arange(q.size), np.arange(q.size)] = phases
    return make_rep(group, m, f"phase{tuple(q.tolist())}")


def tensor_rep(*reps):
    """Diagonal action ``U_1(g) (x) U_2(g) (x) ...`` on the tensor product."""
    group = reps[0].group
    for r in reps[1:]:
        if not r.group.same_as(group):
            raise GroupMismatch("tensor_rep needs representations of one group")
    mats = []
    for g in group.elements:
        m = reps[0].matrices[g]
        for r in reps[1:]:
            m = np.kron(m, r.matrices[g])
        mats.append(m)
    m = np.array(mats)
    m.setflags(write=False)
    return UnitaryRep(group, m, "x".join(r.name for r in reps))


def rep_from_dict(obj, group=None):
    from .groups import group_from_dict

    g = group_from_dict(obj["group"]) if "group" in obj else group
    if group is not None and not g.same_as(group):
        raise InvariantViolation("group_mismatch")
    if obj.get("kind") == "regular":
        return regular_rep(g)
    if obj.get("kind") == "inverse_convention":
        return inverse_convention_rep(g)
    mats = [from_dict(m) for m in obj["matrices"]]
    if "dim" in obj and any(m.shape[0] != int(obj["dim"]) for m in mats):
        raise InvariantViolation("rep_shape")
    return make_rep(g, mats)


def conjugate(rep, g, a, direction="observable"):
    """Group action on operators.

    ``direction="observable"`` returns ``U(g) A U(g)^*``; ``"state"`` returns
    ``U(g)^* T U(g)``.
    """
    a = as_operator(a)
    if a.shape[0] != rep.dim:
        raise DimensionMismatch(f"operator dim {a.shape[0]} != rep dim {rep.dim}")
    u = rep.matrices[g]
    if direction == "observable":
        return u @ a @ dagger(u)
    if direction == "state":
        return dagger(u) @ a @ u
    raise ValueError(f"unknown direction {direction!r}")


def twirl(rep, x, direction="observable"):
    """Uniform group average of the conjugates of ``x``."""
    x = as_operator(x)
    if x.shape[0] != rep.dim:
        raise DimensionMismatch(f"operator dim {x.shape[0]} != rep dim {rep.dim}")
    u = rep.matrices
    if direction == "observable":
        out = (u @ x @ np.conj(np.transpose(u, (0, 2, 1)))).sum(axis=0)
    elif direction == "state":
        out = (np.conj(np.transpose(u, (0, 2, 1))) @ x @ u).sum(axis=0)
    else:
        raise ValueError(f"unknown direction {direction!r}")
    return out / rep.group.order


@dataclass(frozen=True, eq=False)
class OperatorSpaceBasis:
    """HS-orthonormal basis of a linear space of ``dim x dim`` operators.

    ``basis`` has shape ``(k, dim, dim)``.
    """

    dim: int
    basis: np.ndarray
    source: str = ""

    @property
    def size(self):
        return int(self.basis.shape[0])

    def coords(self, t):
        """``[tr(b_i^dagger t)]_i``."""
        t = as_operator(t, self.dim)
        return np.tensordot(self.basis.conj(), t, axes=([1, 2], [0, 1]))

    def pairings(self, t):
        """``[tr(b_i t)]_i``."""
        t = as_operator(t, self.dim)
        return np.tensordot(self.basis, t.T, axes=([1, 2], [0, 1]))

    def combine(self, c, adjoint=False):
        """``sum_i c_i b_i`` (or ``sum_i c_i b_i^dagger``)."""
        b = np.conj(np.transpose(self.basis, (0, 2, 1))) if adjoint else self.basis
        return np.tensordot(c, b, axes=1)

    def project(self, t):
        """HS-orthogonal projection onto the span."""
        return self.combine(self.coords(t))

    def orthonormality_residual(self):
        flat = self.basis.reshape(self.size, -1)
        gram = flat.conj() @ flat.T
        return float(np.max(np.abs(gram - np.eye(self.size)))) if self.size else 0.0


@dataclass(frozen=True, eq=False)
class ProductOperatorBasis:
    """Tensor product of HS-orthonormal bases, one per tensor factor.

    Pairings are contracted factor by factor, so the full basis (whose size
    is the product of the factor sizes) is only built on request.
    """

    factors: tuple
    source: str = ""

    @property
    def dims(self):
        return tuple(int(f.shape[1]) for f in self.factors)

    @property
    def dim(self):
        return int(np.prod(self.dims))

    @property
    def size(self):
        return int(np.prod([f.shape[0] for f in self.factors]))

    @property
    def basis(self):
        out = self.factors[0]
        for f in self.factors[1:]:
            out = np.einsum("aij,bkl->abikjl", out, f).reshape(
                out.shape[0] * f.shape[0], out.shape[1] * f.shape[1], out.shape[2] * f.shape[2])
        return out

    def _contract(self, t, factors):
        n = len(self.factors)
        t = as_operator(t, self.dim).reshape(self.dims + self.dims)
        # factor j carries labels (i_j, a_j, b_j); t carries (a..., b...)
        ops = [t, list(range(n, 3 * n))]
        for j, f in enumerate(factors):
            ops += [f, [j, n + j, 2 * n + j]]
        return np.einsum(*ops, list(range(n)), optimize=True).reshape(-1)

    def coords(self, t):
        """``[tr(b_i^dagger t)]_i``."""
        return self._contract(t, [f.conj() for f in self.factors])

    def pairings(self, t):
        """``[tr(b_i t)]_i``."""
        t = as_operator(t, self.dim)
        return self._contract(t.T, list(self.factors))

    def combine(self, c, adjoint=False):
        """``sum_i c_i b_i`` (or ``sum_i c_i b_i^dagger``)."""
        n = len(self.factors)
        fs = [np.conj(np.transpose(f, (0, 2, 1))) if adjoint else f for f in self.factors]
        c = np.asarray(c).reshape([f.shape[0] for f in self.factors])
        ops = [c, list(range(n))]
        for j, f in enumerate(fs):
            ops += [f, [j, n + j, 2 * n + j]]
        return np.einsum(*ops, list(range(n, 3 * n)), optimize=True).reshape(self.dim, self.dim)

    def project(self, t):
        return self.combine(self.coords(t))

    def orthonormality_residual(self):
        res = 0.0
        for f in self.factors:
            flat = f.reshape(f.shape[0], -1)
            res = max(res, float(np.max(np.abs(flat.conj() @ flat.T - np.eye(f.shape[0])))))
        return res


def gram_schmidt(operators, tol=GS_TOL, dim=None):
    """HS-orthonormal basis of the span of ``operators``.

    Each candidate is orthogonalized twice against the accepted vectors and
    kept if the normalized residual exceeds ``tol``.
    """
    ops = [as_operator(o) for o in operators]
    if dim is None:
        if not ops:
            raise ValueError("need operators or an explicit dim")
        dim = ops[0].shape[0]
    if any(o.shape[0] != dim for o in ops):
        raise DimensionMismatch("generators must share one dimension")
    accepted = np.zeros((0, dim * dim), dtype=complex)
    for o in ops:
        v = o.reshape(-1)
        nv = np.linalg.norm(v)
        if nv == 0:
            continue
        v = v / nv
        for _ in range(2):
            v = v - accepted.T @ (accepted.conj() @ v)
        r = np.linalg.norm(v)
        if r > tol:
            accepted = np.vstack([accepted, v / r])
    return accepted.reshape(-1, dim, dim)


def commutator_system(rep, generators_only=True):
    """Stacked matrix whose nullspace is the commutant (row-major vec).

    Commuting with a generating set is equivalent to commuting with every
    group element, so by default only generator blocks are stacked.
    """
    d = rep.dim
    eye = np.eye(d)
    elems = rep.group.generators() if generators_only else rep.group.elements
    blocks = [np.kron(rep.matrices[g], eye) - np.kron(eye, rep.matrices[g].T) for g in elems]
    if not blocks:
        return np.zeros((d * d, d * d), dtype=complex)
    return np.vstack(blocks)


def invariant_commutant(rep, tol=RANK_TOL):
    """HS-orthonormal basis of ``{A : U(g) A = A U(g) for all g}``.

    Computed as the nullspace of the stacked commutator map, with singular
    values below ``tol`` counted as zero.
    """
    m = commutator_system(rep)
    # rows >= columns, so the reduced SVD still returns a full right basis
    _, s, vh = np.linalg.svd(m, full_matrices=False)
    rank = int(np.sum(s > tol))
    null = vh[rank:].conj()
    d = rep.dim
    return OperatorSpaceBasis(d, null.reshape(-1, d, d), "invariant")


def commutant_residual(rep, a):
    """Largest ``||U(g) A - A U(g)||_op`` over the group."""
    return max(op_norm(u @ a - a @ u) for u in rep.matrices)

"""Quantum reference frames as finite systems of covariance.

A frame bundles a unitary representation with a POVM on a finite G-space
that transforms covariantly, ``E(g.X) = U(g) E(X) U(g)^*``. Constructors
cover the canonical ideal frame (two conventions), coherent-state frames and
the classical permutation frame of a G-space. Classification flags record
sharpness, principality, localizability (norm-1) and completeness together
with the numeric certificates behind them.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, InvariantViolation, NotCyclic, NotProportionalToIdentity
from .groups import left_self_space, transform_subset
from .operators import (
    EIG_FLOOR, TOL, Certificate, Check, as_operator, dagger, from_dict, identity,
    op_norm, projector, to_dict, validate,
)
from .representations import (
    inverse_convention_rep, permutation_rep, regular_rep, rep_from_dict,
)

PROPORTIONALITY_TOL = 1e-8
CYCLIC_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class FinitePOVM:
    """POVM on the points of a finite G-space; ``effects[i]`` belongs to ``points[i]``."""

    space: object
    effects: np.ndarray

    @property
    def dim(self):
        return int(self.effects.shape[1])

    def __call__(self, X):
        """``E(X)`` for a collection of points."""
        out = np.zeros((self.dim, self.dim), dtype=complex)
        for x in set(X):
            out = out + self.effects[self.space.index(x)]
        return out

    def effect(self, x):
        return self.effects[self.space.index(x)]

    def born(self, omega):
        """Born probabilities ``tr[omega E({x})]`` for every point."""
        return np.real(np.einsum("xij,ji->x", self.effects, as_operator(omega, self.dim)))

    def normalization_residual(self):
        return op_norm(self.effects.sum(axis=0) - identity(self.dim))


def make_povm(space, effects, tol=None):
    """Validate effects on a G-space.

    Raises
    ------
    InvariantViolation
        ``povm_shape``, ``povm_normalization`` or ``effect_<check>``.
    """
    e = np.asarray(effects, dtype=complex)
    if e.ndim != 3 or e.shape[0] != space.size or e.shape[1] != e.shape[2]:
        raise InvariantViolation("povm_shape")
    povm = FinitePOVM(space, e)
    tol = TOL * e.shape[1] if tol is None else tol
    res = povm.normalization_residual()
    if res > tol:
        raise InvariantViolation("povm_normalization", res)
    for eff in e:
        cert = validate(eff, "effect")
        if not cert.passed:
            raise InvariantViolation("effect_" + cert.failed.name, cert.failed.residual)
    e.setflags(write=False)
    return povm


@dataclass(frozen=True)
class FrameFlags:
    sharp: bool
    principal: bool
    localizable: bool
    complete: bool
    certificates: dict = field(default_factory=dict, compare=False)

    @property
    def ideal(self):
        return self.sharp and self.principal

    def as_dict(self):
        return {"sharp": self.sharp, "principal": self.principal,
                "localizable": self.localizable, "complete": self.complete}


@dataclass(frozen=True, eq=False)
class QuantumFrame:
    """A system of covariance ``(U, E, H)`` with classification flags.

    ``eta`` and ``lam`` are set for coherent-state frames: the seed vector and
    the orbit normalization ``sum_g |eta_g><eta_g| = lam * I``.
    """

    rep: object
    povm: FinitePOVM
    flags: FrameFlags
    kind: str = "custom"
    eta: np.ndarray = None
    lam: float = None

    @property
    def group(self):
        return self.rep.group

    @property
    def dim(self):
        return self.rep.dim

    def effect(self, g):
        return self.povm.effect(g)

    def to_dict(self):
        out = {
            "group": self.group.to_dict(),
            "rep": self.rep.to_dict(),
            "effects": [to_dict(e) for e in self.povm.effects],
            "flags": self.flags.as_dict(),
            "kind": self.kind,
        }
        if self.eta is not None:
            out["eta"] = {"re": self.eta.real.tolist(), "im": self.eta.imag.tolist()}
            out["lambda"] = self.lam
        return out


def verify_covariance(frame, tol=TOL):
    """Certificate for ``E(g.{x}) = U(g) E({x}) U(g)^*`` over all ``g`` and ``x``.

    The residual is the largest operator-norm deviation.
    """
    space = frame.povm.space
    worst = 0.0
    for g in frame.group.elements:
        u = frame.rep.matrices[g]
        for x in space.points:
            (gx,) = transform_subset(space, g, [x])
            dev = frame.povm.effect(gx) - u @ frame.povm.effect(x) @ dagger(u)
            worst = max(worst, op_norm(dev))
    return Certificate("covariance", (Check("covariance", worst, tol),))


def check_norm1(povm, tol=TOL):
    """Norm-1 property on singletons.

    Every nonzero singleton effect must have operator norm 1. Singletons
    suffice: for ``x in X``, ``E({x}) <= E(X) <= I`` so ``||E(X)|| = 1``
    whenever some ``||E({x})|| = 1``.

    Returns
    -------
    dict
        ``{"localizable": bool, "worst": (point, norm)}``.
    """
    worst = None
    for x, e in zip(povm.space.points, povm.effects):
        n = float(np.linalg.eigvalsh((e + dagger(e)) / 2)[-1])
        if n > EIG_FLOOR and (worst is None or n < worst[1]):
            worst = (x, n)
    localizable = worst is not None and abs(1.0 - worst[1]) < tol
    return {"localizable": bool(localizable), "worst": worst}


def check_complete(frame, tol=TOL):
    """Isotropy subgroup of the effects; complete iff it is trivial.

    Returns
    -------
    dict
        ``{"complete": bool, "isotropy": [g, ...]}``.
    """
    iso = []
    for g in frame.group.elements:
        u = frame.rep.matrices[g]
        if all(op_norm(u @ e @ dagger(u) - e) < tol for e in frame.povm.effects):
            iso.append(int(g))
    return {"complete": iso == [0], "isotropy": iso}


def is_sharp(povm, tol=TOL):
    return all(op_norm(e @ e - e) < tol for e in povm.effects)


def classify(frame):
    """Compute the four classification flags with their certificates."""
    sharp = is_sharp(frame.povm)
    principal = frame.povm.space.is_principal()
    n1 = check_norm1(frame.povm)
    comp = check_complete(frame)
    return FrameFlags(sharp, principal, n1["localizable"], comp["complete"],
                      {"norm1": n1, "complete": comp})


def build_frame(rep, povm, kind="custom", eta=None, lam=None, check=True):
    """Assemble a :class:`QuantumFrame`, certifying covariance when ``check``.

    Raises
    ------
    DimensionMismatch
        If the rep and POVM act on different spaces.
    InvariantViolation
        ``group_mismatch`` or ``covariance``.
    """
    if rep.dim != povm.dim:
        raise DimensionMismatch(f"rep dim {rep.dim} != effect dim {povm.dim}")
    if not rep.group.same_as(povm.space.group):
        raise InvariantViolation("group_mismatch")
    placeholder = FrameFlags(False, False, False, False)
    frame = QuantumFrame(rep, povm, placeholder, kind, eta, lam)
    if check:
        cert = verify_covariance(frame)
        if not cert.passed:
            raise InvariantViolation("covariance", cert.failed.residual)
    return QuantumFrame(rep, povm, classify(frame), kind, eta, lam)


def canonical_frame(group, convention="left"):
    """Ideal frame on ``L^2(G)``.

    ``convention="left"`` uses the left-regular rep with ``P(g) = |g><g|``;
    ``"inverse"`` uses ``U(g)|h> = |h g^{-1}>`` with ``P(g) = |g^{-1}><g^{-1}|``.
    """
    n = group.order
    space = left_self_space(group)
    if convention == "left":
        rep = regular_rep(group)
        labels = np.arange(n)
    elif convention == "inverse":
        rep = inverse_convention_rep(group)
        labels = group.inverse
    else:
        raise ValueError(f"unknown convention {convention!r}")
    effects = np.zeros((n, n, n), dtype=complex)
    effects[np.arange(n), labels, labels] = 1.0
    return build_frame(rep, make_povm(space, effects), kind=f"canonical_{convention}")


def coherent_frame(rep, eta, cyclic_tol=CYCLIC_TOL):
    """Coherent-state frame generated by the orbit of a seed vector.

    With ``eta_g = U(g) eta`` the orbit sum is ``sum_g |eta_g><eta_g| = lam I``
    (counting measure on the group, ``lam = |G| / dim``) and the effects are
    ``E({g}) = |eta_g><eta_g| / lam``. The frame is sharp iff ``lam = 1``.

    Raises
    ------
    NotProportionalToIdentity
        If the orbit sum deviates from ``lam I`` by more than 1e-8.
    NotCyclic
        If the orbit does not span the space (rank tolerance ``cyclic_tol``).
    """
    eta = np.asarray(eta, dtype=complex).ravel()
    if eta.size != rep.dim:
        raise DimensionMismatch(f"seed has length {eta.size}, rep dim {rep.dim}")
    nrm = np.linalg.norm(eta)
    if abs(nrm - 1.0) > TOL:
        raise ValueError(f"seed must be a unit vector, norm is {nrm}")
    orbit = np.einsum("gij,j->gi", rep.matrices, eta)
    total = np.einsum("gi,gj->ij", orbit, orbit.conj())
    lam = float(np.trace(total).real / rep.dim)
    res = op_norm(total - lam * identity(rep.dim))
    if res > PROPORTIONALITY_TOL:
        raise NotProportionalToIdentity(res)
    s = np.linalg.svd(orbit, compute_uv=False)
    rank = int(np.sum(s > cyclic_tol))
    if rank < rep.dim:
        raise NotCyclic(rank, rep.dim)
    effects = np.array([projector(v) / lam for v in orbit])
    povm = make_povm(left_self_space(rep.group), effects)
    return build_frame(rep, povm, kind="coherent", eta=eta, lam=lam)


def classical_soi_frame(space):
    """Indicator projections on ``l^2(points)`` with the permutation rep."""
    rep = permutation_rep(space)
    n = space.size
    effects = np.zeros((n, n, n), dtype=complex)
    effects[np.arange(n), np.arange(n), np.arange(n)] = 1.0
    return build_frame(rep, make_povm(space, effects), kind="classical")


def localized_state(frame, g=0, tol=TOL):
    """A unit vector ``v`` with ``<v|E({g})|v> = 1``, or ``None`` if none exists."""
    w, v = np.linalg.eigh(frame.povm.effect(g))
    if abs(w[-1] - 1.0) > tol:
        return None
    return v[:, -1]


def born_measure(frame, omega):
    """``mu(g) = tr[omega E({g})]`` for all points."""
    return frame.povm.born(omega)


def frame_from_dict(obj):
    """Build a frame from its JSON form and certify every invariant.

    Raises
    ------
    InvariantViolation
        On group mismatch, POVM normalization, effect or covariance failures.
    """
    from .groups import group_from_dict

    group = group_from_dict(obj["group"])
    kind = obj.get("kind", "custom")
    if kind.startswith("canonical_") and "effects" not in obj:
        return canonical_frame(group, kind.split("_", 1)[1])
    rep_obj = obj["rep"]
    rep_group = group_from_dict(rep_obj["group"]) if "group" in rep_obj else group
    if rep_group.order != group.order or not rep_group.same_as(group):
        raise InvariantViolation("group_mismatch")
    if "eta" in obj:
        rep = rep_from_dict(rep_obj, group)
        eta = np.asarray(obj["eta"]["re"], float) + 1j * np.asarray(obj["eta"]["im"], float)
        return coherent_frame(rep, eta)
    rep = rep_from_dict(rep_obj, group)
    effects = [from_dict(e) for e in obj["effects"]]
    if len(effects) != group.order:
        raise InvariantViolation("group_mismatch")
    povm = make_povm(left_self_space(group), effects)
    return build_frame(rep, povm, kind=kind)


__all__ = [
    "FinitePOVM", "FrameFlags", "QuantumFrame", "born_measure", "build_frame",
    "canonical_frame", "check_complete", "check_norm1", "classical_soi_frame",
    "classify", "coherent_frame", "frame_from_dict", "is_sharp", "localized_state",
    "make_povm", "verify_covariance",
]

"""Lifting and localized frame transformations between finite reference frames.

A scenario has frames ``R_0, R_1, ...`` and a system ``S`` on the total space
``H_0 (x) H_1 (x) ... (x) H_S`` with the diagonal group action. Tensor factors
are called slots; slot ``k < n`` is frame ``k`` and the last slot is the system.

The frame change from ``source`` to ``target`` takes a state ``W`` on all
slots but ``source`` (a ``source``-relative state), attaches the state of the
``source`` frame localized at the identity and applies the predual
relativization of the ``target`` frame. Output classes are read off against
observables framed by the ``source`` frame.
"""

from dataclasses import dataclass, field

import numpy as np

from .equivalence import framed_set, invariant_set, quotient_projector, signature
from .errors import DimensionMismatch, FrameNotIdeal, FramesNotIdealCoherent, GroupMismatch
from .frames import localized_state
from .operators import (
    TOL, as_operator, dagger, identity, negativity, op_norm, permute_subsystems,
    projector, tensor, trace_norm,
)
from .relativization import make_pair, predual_relativize
from .representations import tensor_rep


@dataclass(frozen=True, eq=False)
class FrameChangeScenario:
    """Frames and a system representation of one group."""

    frames: tuple
    system_rep: object
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def group(self):
        return self.system_rep.group

    @property
    def n_frames(self):
        return len(self.frames)

    @property
    def system_slot(self):
        return len(self.frames)

    @property
    def dims(self):
        return tuple(f.dim for f in self.frames) + (self.system_rep.dim,)

    @property
    def total_dim(self):
        return int(np.prod(self.dims))

    def slot_rep(self, k):
        return self.system_rep if k == self.system_slot else self.frames[k].rep

    def others(self, k):
        return tuple(j for j in range(len(self.dims)) if j != k)

    def sub_dim(self, slots):
        return int(np.prod([self.dims[j] for j in slots]))

    @property
    def total_rep(self):
        return tensor_rep(*[self.slot_rep(k) for k in range(len(self.dims))])

    def framed(self, slots, framed_slots):
        """Observables on ``slots`` framed by the frames in ``framed_slots``.

        Cached per scenario since the same sets are reused across batches.
        """
        key = (tuple(slots), tuple(sorted(framed_slots)))
        if key not in self._cache:
            factors = [self.frames[j] if j in framed_slots else self.dims[j] for j in slots]
            self._cache[key] = framed_set(factors, label="framed_relative")
        return self._cache[key]


def make_scenario(frames, system_rep):
    """Validate that all frames and the system share one group.

    Raises
    ------
    GroupMismatch
    """
    frames = tuple(frames)
    if len(frames) < 2:
        raise ValueError("a scenario needs at least two frames")
    for f in frames:
        if not f.group.same_as(system_rep.group):
            raise GroupMismatch("scenario constituents use different groups")
    return FrameChangeScenario(frames, system_rep)


def _move_to_front(sc, state, slot):
    """Reorder ``state`` on all slots so that ``slot`` comes first."""
    order = (slot,) + sc.others(slot)
    return permute_subsystems(state, sc.dims, order)


def relative_state(sc, slot, total_state):
    """Predual relativization of a total state with respect to frame ``slot``.

    Returns a state on the remaining slots in their natural order.
    """
    w = as_operator(total_state, sc.total_dim)
    rest = sc.others(slot)
    pair = make_pair(sc.frames[slot], tensor_rep(*[sc.slot_rep(j) for j in rest]))
    return predual_relativize(pair, _move_to_front(sc, w, slot))


def attach(sc, slot, frame_state, rest_state):
    """Insert ``frame_state`` at ``slot`` next to a state on the other slots."""
    rest = sc.others(slot)
    rest_state = as_operator(rest_state, sc.sub_dim(rest))
    joint = tensor(frame_state, rest_state)
    order = (slot,) + rest
    dims_now = tuple(sc.dims[j] for j in order)
    back = [order.index(j) for j in range(len(sc.dims))]
    return permute_subsystems(joint, dims_now, back)


def identity_localized(frame):
    """Projector onto a state localized with certainty at the identity.

    Raises
    ------
    FrameNotIdeal
        If the frame is not sharp and principal.
    """
    if not (frame.flags.sharp and frame.flags.principal):
        raise FrameNotIdeal(f"frame of kind {frame.kind!r} is not sharp and principal")
    v = localized_state(frame, 0)
    if v is None:
        raise FrameNotIdeal("no state is localized at the identity")
    return projector(v)


@dataclass(frozen=True, eq=False)
class LiftResult:
    state: np.ndarray
    signature: object = None


def lift(pair, omega, relative_state, with_signature=True):
    """Attach a frame state to a relative state, ``omega (x) W``.

    The G-class signature is computed against the invariant operators of the
    joint space when ``with_signature`` is set.
    """
    omega = as_operator(omega, pair.frame_dim)
    w = as_operator(relative_state, pair.system_dim)
    joint = tensor(omega, w)
    sig = signature(joint, invariant_set(pair.joint_rep)) if with_signature else None
    return LiftResult(joint, sig)


@dataclass(frozen=True, eq=False)
class FrameChangeResult:
    """Output class of a frame change with its canonical representative.

    ``state`` is the raw predual output; ``representative`` its projection on
    the framed span (the canonical member of the class).
    """

    signature: object
    representative: np.ndarray
    state: np.ndarray
    slots: tuple


def frame_change(sc, state, source=0, target=1, framed_slots=None):
    """Localized frame transformation from frame ``source`` to frame ``target``.

    Parameters
    ----------
    sc : FrameChangeScenario
    state : array_like
        State on all slots except ``source``.
    framed_slots : sequence of int, optional
        Frames whose effects frame the output observables; defaults to
        ``(source,)``.

    Raises
    ------
    FrameNotIdeal
        If the source frame is not sharp and principal.
    """
    if source == target:
        raise ValueError("source and target frames must differ")
    in_slots = sc.others(source)
    state = as_operator(state)
    if state.shape[0] != sc.sub_dim(in_slots):
        raise DimensionMismatch(
            f"input dim {state.shape[0]} != {sc.sub_dim(in_slots)} for slots {in_slots}")
    total = attach(sc, source, identity_localized(sc.frames[source]), state)
    out = relative_state(sc, target, total)
    out_slots = sc.others(target)
    framed = (source,) if framed_slots is None else tuple(framed_slots)
    o = sc.framed(out_slots, framed)
    rep = quotient_projector(o)(out)
    rep = (rep + dagger(rep)) / 2
    tr = np.trace(rep).real
    if tr < 1 - TOL and tr > 0:
        rep = rep / tr
    return FrameChangeResult(signature(out, o), rep, out, out_slots)


@dataclass(frozen=True)
class CheckReport:
    """Per-input residuals of a batch check against a threshold."""

    name: str
    residuals: tuple
    threshold: float

    @property
    def max_residual(self):
        return max(self.residuals) if self.residuals else 0.0

    @property
    def passed(self):
        return self.max_residual < self.threshold

    def as_dict(self):
        return {"name": self.name, "count": len(self.residuals),
                "max_residual": self.max_residual, "threshold": self.threshold,
                "passed": self.passed}


def frame_change_inverse_check(sc, inputs, a=0, b=1, threshold=1e-9):
    """Round trip ``Phi_{b->a} o Phi_{a->b}`` on ``b``-framed classes.

    Each input lives on all slots except ``a``; signatures are compared
    against observables framed by frame ``b``.
    """
    o = sc.framed(sc.others(a), (b,))
    res = []
    for w in inputs:
        fwd = frame_change(sc, w, a, b)
        back = frame_change(sc, fwd.representative, b, a)
        res.append(signature(back.state, o).distance(signature(w, o)))
    return CheckReport("inverse", tuple(res), threshold)


def frame_change_compose_check(sc, inputs, threshold=1e-9):
    """Compare ``Phi_{0->2}`` with ``Phi_{1->2} o Phi_{0->1}``.

    Inputs live on slots ``(1, 2, S)``. Both sides end on slots ``(0, 1, S)``
    and are compared against observables framed by frames 0 and 1.
    """
    if sc.n_frames < 3:
        raise ValueError("composition needs three frames")
    res = []
    for w in inputs:
        direct = frame_change(sc, w, 0, 2, framed_slots=(0, 1))
        step = frame_change(sc, w, 0, 1)
        chained = frame_change(sc, step.representative, 1, 2, framed_slots=(0, 1))
        res.append(direct.signature.distance(chained.signature))
    return CheckReport("compose", tuple(res), threshold)


def triangle_check(sc, total_states, a=0, b=1, threshold=1e-9):
    """``Phi_{a->b}`` applied to ``yen^{R_a}_*(W)`` matches ``yen^{R_b}_*(W)``.

    Both sides are compared against observables framed by frame ``a``.
    """
    o = sc.framed(sc.others(b), (a,))
    res = []
    for w in total_states:
        via = frame_change(sc, relative_state(sc, a, w), a, b)
        direct = signature(relative_state(sc, b, w), o)
        res.append(via.signature.distance(direct))
    return CheckReport("triangle", tuple(res), threshold)


def preannihilator_perturbation(sc, w, rng, a=0, b=1):
    """A state with the same ``b``-framed class as ``w`` but a different matrix.

    Adds a Hermitian element of the pre-annihilator of the framed set on the
    input slots, scaled so the result stays positive.
    """
    o = sc.framed(sc.others(a), (b,))
    d = o.dim
    k = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    k = (k + dagger(k)) / 2
    k = k - quotient_projector(o)(k)
    k = (k + dagger(k)) / 2
    nk = op_norm(k)
    if nk < 1e-12:
        return w.copy()
    lo = float(np.linalg.eigvalsh(w)[0])
    return w + (0.5 * max(lo, 0.0) / nk) * k


def well_definedness_check(sc, inputs, rng, a=0, b=1, threshold=1e-9):
    """Inputs in one ``b``-framed class give outputs in one ``a``-framed class."""
    res = []
    for w in inputs:
        w2 = preannihilator_perturbation(sc, w, rng, a, b)
        res.append(frame_change(sc, w, a, b).signature.distance(
            frame_change(sc, w2, a, b).signature))
    return CheckReport("well_defined", tuple(res), threshold)


def _two_frames(sc, source, target):
    f1, f2 = sc.frames[source], sc.frames[target]
    if sc.n_frames != 2:
        raise ValueError("unitary frame changes are defined for two-frame scenarios")
    return f1, f2


def _orbit_vectors(frame, seed):
    return np.einsum("gij,j->gi", frame.rep.matrices, seed)


def unitary_frame_change(sc, state, source=0, target=1):
    """Coherent frame change between two ideal frames.

    With ``|x>_k`` the state of frame ``k`` localized at ``x`` the output is

        sum_{g,h} |g>_1<h|_1 (x) U_S(g) W[g^{-1}, h^{-1}] U_S(h)^*,

    where ``W[x, y] = (<x|_2 (x) I) W (|y>_2 (x) I)``.

    Raises
    ------
    FrameNotIdeal
        If either frame is not ideal with rank-one effects.
    """
    f1, f2 = _two_frames(sc, source, target)
    g_ = sc.group
    for f in (f1, f2):
        if not f.flags.ideal or f.dim != g_.order:
            raise FrameNotIdeal("unitary frame change needs ideal frames on L^2(G)")
    e1 = _orbit_vectors(f1, localized_state(f1, 0))
    e2 = _orbit_vectors(f2, localized_state(f2, 0))
    ds = sc.system_rep.dim
    w = as_operator(state, f2.dim * ds).reshape(f2.dim, ds, f2.dim, ds)
    # blocks[x, y] = (<e2(x)| (x) I) W (|e2(y)> (x) I)
    blocks = np.einsum("xa,asbt,yb->xsyt", e2.conj(), w, e2, optimize=True)
    inv = g_.inverse
    us = sc.system_rep.matrices
    moved = np.einsum("gij,gjhk,hlk->gihl", us, blocks[inv][:, :, inv, :], us.conj(),
                      optimize=True)
    out = np.einsum("ga,gihl,hb->aibl", e1, moved, e1.conj(), optimize=True)
    d = f1.dim * ds
    return out.reshape(d, d)


def pn_operator(sc, source=0, target=1, tol=TOL):
    """``V = sum_g |phi(g)><psi(g^{-1})| (x) U_S(g)`` for coherent frames.

    ``phi`` and ``psi`` are the orbits of the source and target seeds. Seeds
    come from coherent frames, or from the identity-localized vector of an
    ideal frame.

    Raises
    ------
    FramesNotIdealCoherent
        If an orbit is not orthonormal.
    """
    f1, f2 = _two_frames(sc, source, target)
    seeds = []
    for f in (f1, f2):
        seed = f.eta if f.eta is not None else (
            localized_state(f, 0) if f.flags.ideal else None)
        if seed is None:
            raise FramesNotIdealCoherent(f"frame of kind {f.kind!r} has no coherent seed")
        orb = _orbit_vectors(f, seed)
        if orb.shape[0] != f.dim or op_norm(orb @ dagger(orb) - identity(f.dim)) > tol:
            raise FramesNotIdealCoherent("coherent orbit is not orthonormal")
        seeds.append(orb)
    phi, psi = seeds
    inv = sc.group.inverse
    us = sc.system_rep.matrices
    return sum(np.kron(np.outer(phi[g], psi[inv[g]].conj()), us[g])
               for g in sc.group.elements)


def pn_frame_change(sc, state, source=0, target=1):
    """Conjugation by :func:`pn_operator`."""
    v = pn_operator(sc, source, target)
    w = as_operator(state, v.shape[1])
    return v @ w @ dagger(v)


def is_classical_quantum(state, frame, d_rest, tol=TOL):
    """Residual of ``state`` from block-diagonal form in the frame's basis.

    A state ``sum_x P_x (x) s_x`` with rank-one projections ``P_x`` and
    positive ``s_x`` is a separable mixture of product states, so a small
    residual certifies separability across the frame cut.
    """
    res = 0.0
    pinched = np.zeros_like(state)
    for e in frame.povm.effects:
        p = np.kron(e, identity(d_rest))
        pinched = pinched + p @ state @ p
    res = op_norm(state - pinched)
    rank_one = all(abs(np.trace(e).real - 1) < tol for e in frame.povm.effects)
    psd = float(np.linalg.eigvalsh((pinched + dagger(pinched)) / 2)[0]) > -tol
    return {"separable": bool(res < tol and rank_one and psd), "residual": res}


def superposition_witness(sc, alpha, beta, h1, h2, g, source=0, target=1):
    """Compare coherent and localized frame changes on a superposed frame state.

    The input is ``|psi><psi| (x) |g><g|`` with ``psi = alpha|h1> + beta|h2>``
    written in the target frame's localized basis and ``|g>`` the system
    basis state. Returns the trace-norm gap, partial-transpose negativities and
    the framed signature residual between the two outputs.
    """
    f1, f2 = _two_frames(sc, source, target)
    e2 = _orbit_vectors(f2, localized_state(f2, 0))
    psi = alpha * e2[h1] + beta * e2[h2]
    psi = psi / np.linalg.norm(psi)
    ds = sc.system_rep.dim
    sys = np.zeros(ds, dtype=complex)
    sys[g] = 1.0
    w = tensor(projector(psi), projector(sys))
    coherent = unitary_frame_change(sc, w, source, target)
    local = frame_change(sc, w, source, target)
    o = sc.framed(sc.others(target), (source,))
    dims = (f1.dim, ds)
    return {
        "trace_norm_gap": trace_norm(coherent - local.representative),
        "negativity_unitary": negativity(coherent, dims),
        "negativity_representative": negativity(local.representative, dims),
        "representative_cq": is_classical_quantum(local.representative, f1, ds),
        "signature_residual": signature(coherent, o).distance(local.signature),
        "unitary_state": coherent,
        "representative": local.representative,
    }

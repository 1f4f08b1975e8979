"""Relativization of system observables with respect to a quantum reference frame.

For a principal frame ``R`` with effects ``E({g})`` and a system carrying the
representation ``U_S`` the relativization map is

    yen(A) = sum_g E({g}) (x) U_S(g) A U_S(g)^*,

a unital channel into the invariant operators on ``H_R (x) H_S``. This module
also provides its predual on joint states, the restriction map that
conditions joint observables on a frame state, conditioned relativization,
product relative states and relative orientation observables.
"""

from dataclasses import dataclass

import numpy as np

from .equivalence import build_observable_set, framed_set
from .errors import DimensionMismatch, GroupMismatch
from .frames import make_povm
from .groups import left_self_space
from .operators import as_operator, permute_subsystems
from .representations import tensor_rep


@dataclass(frozen=True, eq=False)
class RelativePair:
    """A frame together with a system representation of the same group."""

    frame: object
    system_rep: object

    @property
    def frame_dim(self):
        return self.frame.dim

    @property
    def system_dim(self):
        return self.system_rep.dim

    @property
    def joint_dim(self):
        return self.frame.dim * self.system_rep.dim

    @property
    def joint_rep(self):
        return tensor_rep(self.frame.rep, self.system_rep)


def make_pair(frame, system_rep):
    """Pair a frame with a system representation.

    Raises
    ------
    GroupMismatch
        If the two are representations of different groups.
    """
    if not frame.group.same_as(system_rep.group):
        raise GroupMismatch("frame and system representation use different groups")
    return RelativePair(frame, system_rep)


def _system_op(pair, a):
    a = as_operator(a)
    if a.shape[0] != pair.system_dim:
        raise DimensionMismatch(f"system operator dim {a.shape[0]} != {pair.system_dim}")
    return a


def _joint_op(pair, x):
    x = as_operator(x)
    if x.shape[0] != pair.joint_dim:
        raise DimensionMismatch(f"joint operator dim {x.shape[0]} != {pair.joint_dim}")
    return x


def _orbit(rep, a):
    """``[U(g) A U(g)^*]_g``."""
    u = rep.matrices
    return u @ a @ np.conj(np.transpose(u, (0, 2, 1)))


def _state_orbit(rep, t):
    """``[U(g)^* T U(g)]_g``."""
    u = rep.matrices
    return np.conj(np.transpose(u, (0, 2, 1))) @ t @ u


def relativize(pair, a):
    """``sum_g E({g}) (x) g.A`` on the joint space."""
    a = _system_op(pair, a)
    e = pair.frame.povm.effects
    c = _orbit(pair.system_rep, a)
    dr, ds = pair.frame_dim, pair.system_dim
    return np.einsum("gab,gij->aibj", e, c).reshape(dr * ds, dr * ds)


def _frame_weighted_blocks(effects, omega_joint, dr, ds):
    """``M_g = tr_R[(E_g (x) I) Omega]`` for every ``g``."""
    t = omega_joint.reshape(dr, ds, dr, ds)
    return np.einsum("gba,asbt->gst", effects, t, optimize=True)


def predual_relativize(pair, omega_joint):
    """The predual map on joint states, ``tr[yen_*(W) A] = tr[W yen(A)]``.

    Explicitly ``sum_g U_S(g)^* tr_R[(E({g}) (x) I) W] U_S(g)``.
    """
    w = _joint_op(pair, omega_joint)
    m = _frame_weighted_blocks(pair.frame.povm.effects, w, pair.frame_dim, pair.system_dim)
    u = pair.system_rep.matrices
    return (np.conj(np.transpose(u, (0, 2, 1))) @ m @ u).sum(axis=0)


def restrict(omega, a_joint):
    """Condition a joint observable on a frame state.

    The linear extension of ``A_R (x) A_S -> tr[omega A_R] A_S``, so that
    ``tr[rho restrict(omega, A)] = tr[(omega (x) rho) A]``.
    """
    omega = as_operator(omega)
    a = as_operator(a_joint)
    dr = omega.shape[0]
    if a.shape[0] % dr:
        raise DimensionMismatch(f"joint dim {a.shape[0]} is not a multiple of {dr}")
    ds = a.shape[0] // dr
    return np.einsum("ba,asbt->st", omega, a.reshape(dr, ds, dr, ds))


def conditioned_relativize(pair, omega, a):
    """``sum_g mu_omega(g) g.A`` with ``mu_omega(g) = tr[omega E({g})]``."""
    a = _system_op(pair, a)
    mu = pair.frame.povm.born(omega)
    return np.tensordot(mu, _orbit(pair.system_rep, a), axes=1)


def product_relative_state(pair, omega, rho):
    """``rho^(omega) = sum_g mu_omega(g) U_S(g)^* rho U_S(g)``."""
    rho = _system_op(pair, rho)
    mu = pair.frame.povm.born(omega)
    return np.tensordot(mu, _state_orbit(pair.system_rep, rho), axes=1)


def relative_orientation(frame1, frame2):
    """Relative orientation observable ``h -> yen^{R1}(E2({h}))`` on ``H1 (x) H2``.

    Raises
    ------
    GroupMismatch
        If the frames are defined over different groups.
    """
    pair = make_pair(frame1, frame2.rep)
    effects = [relativize(pair, e) for e in frame2.povm.effects]
    return make_povm(left_self_space(frame1.group), effects)


def swap(x, d1, d2):
    """Exchange the two tensor factors of an operator on ``C^d1 (x) C^d2``."""
    return permute_subsystems(x, (d1, d2), (1, 0))


def matrix_unit_basis(d):
    return [np.eye(d * d, dtype=complex)[k].reshape(d, d) for k in range(d * d)]


def relative_set(pair):
    """Span of ``yen(B(H_S))``, the relative observables."""
    return build_observable_set(
        "relative", [relativize(pair, e) for e in matrix_unit_basis(pair.system_dim)])


def conditioned_set(pair, omega):
    """Span of ``yen_omega(B(H_S))``."""
    return build_observable_set(
        "conditioned",
        [conditioned_relativize(pair, omega, e) for e in matrix_unit_basis(pair.system_dim)])


def framed_relative_set(frame1, frame2, system_rep):
    """Span of ``yen^{R1}(E2(x) (x) B(H_S))`` on ``H1 (x) H2 (x) H_S``."""
    pair = make_pair(frame1, tensor_rep(frame2.rep, system_rep))
    framed = framed_set([frame2, system_rep.dim])
    return build_observable_set(
        "framed_relative", [relativize(pair, b) for b in framed.span.basis])

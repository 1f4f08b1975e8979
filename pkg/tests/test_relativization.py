import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qrframes.equivalence import equivalent, invariant_set
from qrframes.errors import DimensionMismatch, GroupMismatch
from qrframes.frames import canonical_frame, coherent_frame, localized_state
from qrframes.groups import make_preset
from qrframes.operators import (
    identity, op_norm, projector, random_operator, random_state, tensor,
)
from qrframes.relativization import (
    conditioned_relativize, conditioned_set, framed_relative_set, make_pair,
    predual_relativize, product_relative_state, relative_orientation, relative_set,
    relativize, restrict, swap,
)
from qrframes.representations import conjugate, cyclic_phase_rep, regular_rep, twirl

seeds = st.integers(0, 2**32 - 1)
names = st.sampled_from(["cyclic(2)", "cyclic(3)", "cyclic(4)", "symmetric3"])


def canonical_pair(group):
    return make_pair(canonical_frame(group), regular_rep(group))


def unsharp_pair():
    z3 = make_preset("cyclic(3)")
    f = coherent_frame(cyclic_phase_rep(z3, [0, 1]), np.ones(2) / np.sqrt(2))
    return make_pair(f, regular_rep(z3))


def test_relativize_z2_oracle():
    pair = canonical_pair(make_preset("cyclic(2)"))
    out = relativize(pair, np.diag([1, 0]))
    want = tensor(np.diag([1, 0]), np.diag([1, 0])) + tensor(np.diag([0, 1]), np.diag([0, 1]))
    assert np.allclose(out, want)


def test_relativize_unital_and_invariant_input(group, rng):
    pair = canonical_pair(group)
    n = group.order
    assert np.allclose(relativize(pair, identity(n)), identity(n * n))
    a = twirl(pair.system_rep, random_operator(rng, n))
    assert op_norm(relativize(pair, a) - tensor(identity(n), a)) < 1e-12


def test_exact_recovery(group, rng):
    pair = canonical_pair(group)
    e0 = projector(localized_state(pair.frame, 0))
    for _ in range(5):
        a = random_operator(rng, group.order)
        assert op_norm(restrict(e0, relativize(pair, a)) - a) < 1e-10
        assert op_norm(conditioned_relativize(pair, e0, a) - a) < 1e-10


def test_image_is_invariant(group, rng):
    pair = canonical_pair(group)
    a = random_operator(rng, group.order)
    r = relativize(pair, a)
    for u in pair.joint_rep.matrices:
        assert op_norm(u @ r - r @ u) < 1e-10


def test_isometry_and_multiplicativity(group, rng):
    pair = canonical_pair(group)
    a, b = random_operator(rng, group.order), random_operator(rng, group.order)
    assert abs(op_norm(relativize(pair, a)) - op_norm(a)) < 1e-9
    assert op_norm(relativize(pair, a @ b) - relativize(pair, a) @ relativize(pair, b)) < 1e-9


def test_unsharp_breaks_multiplicativity(rng):
    pair = unsharp_pair()
    a, b = random_operator(rng, 3), random_operator(rng, 3)
    gap = op_norm(relativize(pair, a @ b) - relativize(pair, a) @ relativize(pair, b))
    assert gap > 1e-3
    # contractive but not isometric in general
    assert op_norm(relativize(pair, a)) <= op_norm(a) + 1e-12


def test_predual_examples(group, rng):
    pair = canonical_pair(group)
    n = group.order
    e0 = projector(localized_state(pair.frame, 0))
    rho = random_state(rng, n)
    assert op_norm(predual_relativize(pair, tensor(e0, rho)) - rho) < 1e-12
    inv = identity(n) / n
    assert op_norm(predual_relativize(pair, tensor(inv, rho)) -
                   twirl(pair.system_rep, rho, "state")) < 1e-12
    w, a = random_state(rng, n * n), random_operator(rng, n)
    assert abs(np.trace(predual_relativize(pair, w) @ a) - np.trace(w @ relativize(pair, a))) < 1e-10


def test_restrict_examples(rng):
    om = random_state(rng, 3)
    a, ar = random_operator(rng, 2), random_operator(rng, 3)
    assert np.allclose(restrict(om, tensor(identity(3), a)), a)
    assert np.allclose(restrict(om, tensor(ar, identity(2))), np.trace(om @ ar) * identity(2))
    rho, big = random_state(rng, 2), random_operator(rng, 6)
    assert abs(np.trace(rho @ restrict(om, big)) - np.trace(tensor(om, rho) @ big)) < 1e-12
    with pytest.raises(DimensionMismatch):
        restrict(om, identity(7))


def test_conditioned_depends_on_measure_only(rng):
    z3 = make_preset("cyclic(3)")
    pair = canonical_pair(z3)
    om1 = np.diag([0.5, 0.3, 0.2]).astype(complex)
    om2 = om1.copy()
    om2[0, 1] = om2[1, 0] = 0.1
    a = random_operator(rng, 3)
    assert op_norm(conditioned_relativize(pair, om1, a) -
                   conditioned_relativize(pair, om2, a)) < 1e-12
    inv = identity(3) / 3
    assert op_norm(conditioned_relativize(pair, inv, a) - twirl(pair.system_rep, a)) < 1e-12


def test_group_mismatch():
    with pytest.raises(GroupMismatch):
        make_pair(canonical_frame(make_preset("cyclic(2)")), regular_rep(make_preset("cyclic(3)")))


@settings(max_examples=20, deadline=None)
@given(names, seeds)
def test_product_state_symmetries(name, seed):
    rng = np.random.default_rng(seed)
    g = make_preset(name)
    pair = canonical_pair(g)
    n = g.order
    om, rho = random_state(rng, n), random_state(rng, n)
    h = int(rng.integers(n))
    lhs = product_relative_state(pair, conjugate(pair.frame.rep, h, om, "state"), rho)
    rhs = product_relative_state(pair, om, conjugate(pair.system_rep, g.inv(h), rho, "state"))
    assert op_norm(lhs - rhs) < 1e-9
    inv_rho = twirl(pair.system_rep, rho, "state")
    assert op_norm(product_relative_state(pair, om, inv_rho) - inv_rho) < 1e-9
    inv_om = twirl(pair.frame.rep, om, "state")
    assert op_norm(product_relative_state(pair, inv_om, rho) - inv_rho) < 1e-9
    assert equivalent(product_relative_state(pair, om, rho), rho, invariant_set(pair.system_rep))
    assert op_norm(product_relative_state(pair, om, rho) -
                   predual_relativize(pair, tensor(om, rho))) < 1e-10


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_complete_positivity_spot_check(seed):
    rng = np.random.default_rng(seed)
    for pair in (canonical_pair(make_preset("cyclic(3)")), unsharp_pair()):
        n = pair.system_dim
        x = random_state(rng, 2 * n).reshape(2, n, 2, n)
        big = np.block([[relativize(pair, x[i, :, j, :]) for j in range(2)] for i in range(2)])
        assert np.linalg.eigvalsh((big + big.conj().T) / 2)[0] > -1e-10


def test_relative_orientation_delta_and_swap():
    z3 = make_preset("cyclic(3)")
    f = canonical_frame(z3)
    pov = relative_orientation(f, f)
    assert np.allclose(pov.effects.sum(0), identity(9))
    e = projector(localized_state(f, 0))
    for h in z3.elements:
        # frame 1 at the identity and frame 2 at h: orientation g1^{-1} g2 = h
        loc = projector(localized_state(f, h))
        assert np.allclose(pov.born(tensor(e, loc)), np.eye(3)[h])
    for h in z3.elements:
        assert op_norm(pov.effect(h) - swap(pov.effect(z3.inv(h)), 3, 3)) < 1e-10


def test_relative_set_oracle(rng):
    pair = canonical_pair(make_preset("cyclic(2)"))
    o = relative_set(pair)
    a = random_state(rng, 4)
    b = conjugate(pair.joint_rep, 1, a, "state")
    assert equivalent(a, b, o)
    assert op_norm(predual_relativize(pair, a) - predual_relativize(pair, b)) < 1e-12
    c = random_state(rng, 4)
    assert not equivalent(a, c, o)
    assert o.size == 4


def test_conditioned_and_framed_sets():
    z3 = make_preset("cyclic(3)")
    pair = canonical_pair(z3)
    e0 = projector(localized_state(pair.frame, 0))
    assert conditioned_set(pair, e0).size == 9
    assert conditioned_set(pair, identity(3) / 3).size == 3
    f = canonical_frame(z3)
    fr = framed_relative_set(f, f, regular_rep(z3))
    assert fr.dim == 27 and fr.size == 27

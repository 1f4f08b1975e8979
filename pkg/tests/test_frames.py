import numpy as np
import pytest

from qrframes.errors import InvariantViolation, NotCyclic, NotProportionalToIdentity
from qrframes.frames import (
    build_frame, canonical_frame, check_complete, check_norm1, classical_soi_frame,
    coherent_frame, frame_from_dict, localized_state, make_povm, verify_covariance,
)
from qrframes.groups import left_self_space, make_gspace, make_preset
from qrframes.operators import identity
from qrframes.representations import cyclic_phase_rep, regular_rep, trivial_rep


def test_canonical_frame_z2():
    f = canonical_frame(make_preset("cyclic(2)"))
    assert np.array_equal(f.effect(0), np.diag([1, 0]))
    assert np.array_equal(f.effect(1), np.diag([0, 1]))
    assert f.flags.as_dict() == {"sharp": True, "principal": True,
                                 "localizable": True, "complete": True}


@pytest.mark.parametrize("convention", ["left", "inverse"])
def test_canonical_frames_are_ideal(group, convention):
    f = canonical_frame(group, convention)
    assert verify_covariance(f).checks[0].residual == 0
    assert f.flags.ideal and f.flags.localizable and f.flags.complete
    for g in group.elements:
        v = localized_state(f, g)
        assert abs(np.vdot(v, f.effect(g) @ v) - 1) < 1e-12


def test_coherent_frame_recovers_canonical():
    z2 = make_preset("cyclic(2)")
    f = coherent_frame(regular_rep(z2), np.array([1, 0]))
    assert f.lam == pytest.approx(1.0)
    assert np.allclose(f.povm.effects, canonical_frame(z2).povm.effects)
    assert f.flags.sharp


def test_coherent_frame_plus_state_rejected():
    # orbit sum of (|0>+|1>)/sqrt2 under the swap is the all-ones matrix
    z2 = make_preset("cyclic(2)")
    with pytest.raises(NotProportionalToIdentity) as exc:
        coherent_frame(regular_rep(z2), np.array([1, 1]) / np.sqrt(2))
    assert exc.value.residual == pytest.approx(1.0)


def test_coherent_frame_degenerate_seed():
    # an orbit sum proportional to I always spans, so proportionality fails first
    z3 = make_preset("cyclic(3)")
    rep = cyclic_phase_rep(z3, [0, 1])
    with pytest.raises(NotProportionalToIdentity):
        coherent_frame(rep, np.array([1, 0]))


def test_coherent_frame_cyclicity_tolerance():
    z2 = make_preset("cyclic(2)")
    with pytest.raises(NotCyclic) as exc:
        coherent_frame(regular_rep(z2), np.array([1, 0]), cyclic_tol=2.0)
    assert (exc.value.rank, exc.value.dim) == (0, 2)


def test_unsharp_coherent_frame():
    z3 = make_preset("cyclic(3)")
    f = coherent_frame(cyclic_phase_rep(z3, [0, 1]), np.ones(2) / np.sqrt(2))
    assert f.lam == pytest.approx(1.5)
    assert not f.flags.sharp and not f.flags.localizable
    n1 = check_norm1(f.povm)
    assert n1["worst"][1] == pytest.approx(2 / 3)
    assert verify_covariance(f).checks[0].residual < 1e-10
    assert localized_state(f, 0) is None


def test_classical_soi_frame():
    z3 = make_preset("cyclic(3)")
    f = classical_soi_frame(left_self_space(z3))
    assert np.allclose(f.povm.effects, canonical_frame(z3).povm.effects)
    assert np.allclose(f.povm.effects.sum(0), identity(3))
    assert verify_covariance(f).checks[0].residual == 0
    z4 = make_preset("cyclic(4)")
    coset = make_gspace(z4, (0, 1), [[0, 1], [1, 0], [0, 1], [1, 0]])
    g = classical_soi_frame(coset)
    assert not g.flags.principal and g.flags.sharp
    assert check_complete(g)["isotropy"] == [0, 2]


def test_covariance_violation_detected():
    z3 = make_preset("cyclic(3)")
    rep = regular_rep(z3)
    # a valid POVM whose labels are permuted against the group action
    e = canonical_frame(z3).povm.effects[[1, 0, 2]]
    povm = make_povm(left_self_space(z3), e)
    with pytest.raises(InvariantViolation) as exc:
        build_frame(rep, povm)
    assert exc.value.name == "covariance"
    f = build_frame(rep, povm, check=False)
    assert not verify_covariance(f).passed


def test_uniform_povm_flags():
    s3 = make_preset("symmetric3")
    effects = np.array([identity(1) / 6] * 6)
    f = build_frame(trivial_rep(s3), make_povm(left_self_space(s3), effects))
    n1 = check_norm1(f.povm)
    assert not n1["localizable"] and n1["worst"][1] == pytest.approx(1 / 6)
    assert check_complete(f)["isotropy"] == list(range(6))


def test_povm_validation():
    z2 = make_preset("cyclic(2)")
    with pytest.raises(InvariantViolation) as exc:
        make_povm(left_self_space(z2), [np.diag([1, 0]), np.diag([0, 0.5])])
    assert exc.value.name == "povm_normalization"
    assert exc.value.residual == pytest.approx(0.5)
    with pytest.raises(InvariantViolation) as exc:
        make_povm(left_self_space(z2), [np.diag([1.5, 0]), np.diag([-0.5, 1])])
    assert exc.value.name.startswith("effect_")


def test_localizable_principal_frames_are_complete(group):
    for conv in ("left", "inverse"):
        f = canonical_frame(group, conv)
        assert f.flags.principal and f.flags.localizable and f.flags.complete


def test_frame_json_round_trip():
    z3 = make_preset("cyclic(3)")
    for f in (canonical_frame(z3), coherent_frame(cyclic_phase_rep(z3, [0, 1]),
                                                  np.ones(2) / np.sqrt(2))):
        g = frame_from_dict(f.to_dict())
        assert np.allclose(g.povm.effects, f.povm.effects)
        assert g.flags.as_dict() == f.flags.as_dict()

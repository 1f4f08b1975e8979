import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qrframes.errors import DimensionMismatch, EmptySet, InvalidCoefficients
from qrframes.operators import identity, op_norm, random_operator, random_state
from qrframes.phaselab import (
    ball, best_localizer, build_phase_povm, conditioned_identity_convergence,
    covariance_residual, default_test_sets, dirac_convergence_experiment, grid_twirl,
    quarter_circle, weighted_average,
)

SWEEP = [2, 4, 8, 16, 32]


@pytest.fixture(scope="module")
def povms():
    return [build_phase_povm(d, 64) for d in SWEEP]


def test_d1_nothing_localizes():
    p = build_phase_povm(1, 16)
    assert np.allclose(p.effects, np.full((16, 1, 1), 1 / 16))
    assert best_localizer(p, {0})[1] == pytest.approx(1 / 16)


def test_d2_closed_form():
    M = 8
    p = build_phase_povm(2, M)
    for k in range(M):
        a, b = 2 * np.pi * k / M - np.pi / M, 2 * np.pi * k / M + np.pi / M
        # E[0, 1] = int exp(-i theta) dtheta / 2pi over the cell
        want = (np.exp(-1j * b) - np.exp(-1j * a)) / (-2j * np.pi)
        assert p.effects[k][0, 1] == pytest.approx(want)
        assert p.effects[k][0, 0] == pytest.approx(1 / M)


@pytest.mark.parametrize("d,M", [(2, 8), (5, 16), (16, 64)])
def test_normalization_and_covariance(d, M):
    p = build_phase_povm(d, M)
    assert op_norm(p.effects.sum(0) - identity(d)) < 1e-8
    assert covariance_residual(p) < 1e-9
    for e in p.effects:
        assert np.linalg.eigvalsh(e)[0] > -1e-12


def test_invalid_coefficients():
    with pytest.raises(InvalidCoefficients):
        build_phase_povm(2, 8, np.array([[1, 2], [2, 1]]))
    with pytest.raises(InvalidCoefficients):
        build_phase_povm(2, 8, np.array([[1, 0.5], [0.2, 1]]))
    with pytest.raises(InvalidCoefficients):
        build_phase_povm(2, 8, np.eye(3))
    ok = build_phase_povm(2, 8, np.array([[1, 0.5], [0.5, 1]]))
    assert op_norm(ok.effects.sum(0) - identity(2)) < 1e-12


def test_best_localizer_examples(povms):
    for p in povms:
        _, prob = best_localizer(p, range(p.M))
        assert prob == pytest.approx(1.0)
    with pytest.raises(EmptySet):
        best_localizer(povms[0], [])


def test_fixed_ball_probability_increases(povms):
    b = ball(povms[0], 0, np.pi / 8)
    probs = [best_localizer(p, b)[1] for p in povms]
    assert np.all(np.diff(probs) > 0)


def test_quarter_norm_strictly_increasing(povms):
    q = quarter_circle(64)
    norms = [op_norm(p(q)) for p in povms]
    assert np.all(np.diff(norms) > 0) and norms[-1] <= 1 + 1e-12


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([2, 4, 8]))
def test_dimension_bound(seed, d):
    rng = np.random.default_rng(seed)
    p = build_phase_povm(d, 64)
    X = np.flatnonzero(rng.uniform(size=64) < rng.uniform()).tolist() or [0]
    rho = random_state(rng, d)
    assert np.trace(rho @ p(X)).real <= d * p.measure(X) + 1e-9


def test_dirac_convergence(povms):
    curve = dirac_convergence_experiment(povms)
    assert curve.is_monotone("half", strict=True)
    assert curve.is_monotone("away", strict=True)
    assert np.max(curve.deviations("full")) < 1e-9
    half = curve.deviations("half")
    assert half[-1] < 0.1
    rows = curve.rows()
    assert len(rows) == 5 * len(SWEEP)
    assert set(r[2] for r in rows) == {"ball", "half", "quarter", "away", "full"}


def test_test_sets_shape():
    sets = default_test_sets(64)
    assert len(sets["half"]) == 33 and len(sets["quarter"]) == 17
    assert sets["away"] | sets["half"] == sets["full"]


def test_conditioned_identity(povms, rng):
    a = random_operator(rng, 3)
    res = [r for _, r in conditioned_identity_convergence(3, povms, a)]
    assert np.all(np.diff(res) < 0)
    diag = np.diag(rng.standard_normal(3)).astype(complex)
    assert max(r for _, r in conditioned_identity_convergence(3, povms, diag)) < 1e-12
    with pytest.raises(DimensionMismatch):
        conditioned_identity_convergence(2, povms, a)


def test_uniform_weights_give_grid_twirl(rng):
    a = random_operator(rng, 4)
    p = build_phase_povm(6, 32)
    mu = p.born(identity(6) / 6)
    assert op_norm(weighted_average(4, 32, mu, a) - grid_twirl(4, 32, a)) < 1e-12
    tw = grid_twirl(4, 32, a)
    assert np.allclose(tw, np.diag(np.diag(a)))

"""Truncated canonical phase observable and localization experiments.

The circle is cut into ``M`` cells ``(theta_k - pi/M, theta_k + pi/M]`` around
the grid angles ``theta_k = 2 pi k / M``. On the number basis ``|0>..|d-1>``
the cell effects are

    E_k[n, m] = c[n, m] * int_{cell k} exp(i theta (n - m)) dtheta / 2pi,

evaluated in closed form. Grid shifts ``exp(i N theta_j)`` move cell ``k`` to
cell ``k + j`` exactly. Localizing states come from the top eigenvector of
``E(B)`` for a ball ``B`` whose radius shrinks as the truncation grows.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, EmptySet, InvalidCoefficients
from .operators import EIG_FLOOR, TOL, as_operator, dagger, op_norm


@dataclass(frozen=True, eq=False)
class TruncatedPhasePOVM:
    """Cell effects of the truncated phase observable; ``effects[k]`` is cell ``k``."""

    d: int
    M: int
    c: np.ndarray
    effects: np.ndarray

    @property
    def centers(self):
        return 2 * np.pi * np.arange(self.M) / self.M

    def __call__(self, X):
        """``E(X)`` for a collection of cell indices (taken mod ``M``)."""
        cells = normalize_cells(self, X)
        return self.effects[sorted(cells)].sum(axis=0)

    def measure(self, X):
        """Normalized Haar measure of a cell union."""
        return len(normalize_cells(self, X)) / self.M

    def shift(self, j):
        """Number-basis shift ``exp(i N theta_j)``."""
        return np.diag(np.exp(1j * np.arange(self.d) * self.centers[j % self.M]))

    def born(self, state):
        """Cell probabilities for a density matrix or a unit vector."""
        s = np.asarray(state, dtype=complex)
        if s.ndim == 1:
            return np.real(np.einsum("i,kij,j->k", s.conj(), self.effects, s))
        return np.real(np.einsum("kij,ji->k", self.effects, as_operator(s, self.d)))


def normalize_cells(povm, X):
    return frozenset(int(k) % povm.M for k in X)


def _cell_integrals(M, diffs):
    """``int exp(i theta j) dtheta / 2pi`` over each cell for integer ``j``."""
    centers = 2 * np.pi * np.arange(M) / M
    a = centers - np.pi / M
    b = centers + np.pi / M
    j = diffs[None, ...].astype(float)
    safe = np.where(j == 0, 1.0, j)
    shape = (M,) + (1,) * diffs.ndim
    aa, bb = a.reshape(shape), b.reshape(shape)
    val = (np.exp(1j * j * bb) - np.exp(1j * j * aa)) / (2j * np.pi * safe)
    return np.where(j == 0, 1.0 / M, val)


def build_phase_povm(d, M, c=None):
    """Truncated phase POVM on ``d`` number states with ``M`` cells.

    Raises
    ------
    InvalidCoefficients
        If ``c`` is not Hermitian PSD with unit diagonal.
    """
    d, M = int(d), int(M)
    if d < 1 or M < 2:
        raise ValueError(f"need d >= 1 and M >= 2, got d={d}, M={M}")
    c = np.ones((d, d), dtype=complex) if c is None else np.asarray(c, dtype=complex)
    if c.shape != (d, d):
        raise InvalidCoefficients(f"coefficient matrix must be {d}x{d}")
    if np.max(np.abs(c - dagger(c))) > TOL or np.max(np.abs(np.diag(c) - 1)) > TOL:
        raise InvalidCoefficients("coefficients must be Hermitian with unit diagonal")
    if np.linalg.eigvalsh((c + dagger(c)) / 2)[0] < -EIG_FLOOR:
        raise InvalidCoefficients("coefficient matrix is not positive semidefinite")
    n = np.arange(d)
    diffs = n[:, None] - n[None, :]
    effects = c[None, :, :] * _cell_integrals(M, diffs)
    effects.setflags(write=False)
    return TruncatedPhasePOVM(d, M, c, effects)


def covariance_residual(povm):
    """Largest ``||S_j E_k S_j^* - E_{k+j}||_op`` over all grid shifts and cells."""
    worst = 0.0
    for j in range(povm.M):
        s = povm.shift(j)
        moved = s @ povm.effects @ dagger(s)
        target = np.roll(povm.effects, -j, axis=0)
        worst = max(worst, max(op_norm(x) for x in moved - target))
    return worst


def best_localizer(povm, X):
    """Top eigenpair of ``E(X)``: the state maximizing ``<phi|E(X)|phi>``.

    Raises
    ------
    EmptySet
        If ``X`` is empty.
    """
    cells = normalize_cells(povm, X)
    if not cells:
        raise EmptySet("localization target must contain at least one cell")
    w, v = np.linalg.eigh(povm(cells))
    return v[:, -1], float(w[-1])


def ball(povm, center, radius):
    """Cells whose grid angle lies within ``radius`` of cell ``center``.

    The centre cell is always included.
    """
    k = np.arange(povm.M)
    step = ((k - center) % povm.M)
    dist = np.minimum(step, povm.M - step) * 2 * np.pi / povm.M
    cells = set(k[dist <= radius + 1e-12].tolist())
    cells.add(int(center) % povm.M)
    return frozenset(cells)


def localizing_state(povm, center=0):
    """Localizer for the ball of radius ``pi / d`` around ``center``."""
    b = ball(povm, center, np.pi / povm.d)
    vec, prob = best_localizer(povm, b)
    return vec, prob, b


def half_circle(M, center=0):
    """Cells within a quarter turn of ``center`` (the centre is interior)."""
    return frozenset((center + k) % M for k in range(-(M // 4), M // 4 + 1))


def quarter_circle(M, center=0):
    """Cells within an eighth of a turn of ``center``."""
    return frozenset((center + k) % M for k in range(-(M // 8), M // 8 + 1))


def default_test_sets(M, center=0):
    """Named test sets whose boundaries are away from ``center``."""
    half = half_circle(M, center)
    return {
        "half": half,
        "quarter": quarter_circle(M, center),
        "away": frozenset(range(M)) - half,
        "full": frozenset(range(M)),
    }


@dataclass(frozen=True)
class LocalizationRecord:
    d: int
    n: int
    radius: float
    set_id: str
    probability: float
    deviation: float
    set_measure: float


@dataclass
class LocalizationCurve:
    """Born probabilities of test sets along a localizing sequence."""

    records: list = field(default_factory=list)
    center: int = 0

    def series(self, set_id):
        return [r for r in self.records if r.set_id == set_id]

    def deviations(self, set_id):
        return np.array([r.deviation for r in self.series(set_id)])

    def is_monotone(self, set_id, strict=False):
        dev = self.deviations(set_id)
        diff = np.diff(dev)
        return bool(np.all(diff < 0) if strict else np.all(diff <= 1e-12))

    def rows(self):
        """``(d, n, set_id, probability, deviation)`` tuples for CSV output."""
        return [(r.d, r.n, r.set_id, r.probability, r.deviation) for r in self.records]


def dirac_convergence_experiment(povms, center=0, test_sets=None):
    """Track ``|mu_d(X) - delta_center(X)|`` along the localizing sequence.

    For each truncation ``d`` the state is the localizer of the ball of radius
    ``pi / d`` (so ``n = d``). The ball itself is reported as set ``"ball"``.
    """
    curve = LocalizationCurve(center=center)
    for p in povms:
        sets = default_test_sets(p.M, center) if test_sets is None else test_sets
        vec, prob, b = localizing_state(p, center)
        probs = p.born(vec)
        entries = [("ball", b)] + list(sets.items())
        for set_id, X in entries:
            cells = normalize_cells(p, X)
            mu = float(probs[sorted(cells)].sum()) if cells else 0.0
            delta = 1.0 if center % p.M in cells else 0.0
            curve.records.append(LocalizationRecord(
                p.d, p.d, np.pi / p.d, set_id, mu, abs(mu - delta), len(cells) / p.M))
    return curve


def system_shift(system_dim, angle):
    """Discretized U(1) action ``exp(i N_S angle)`` on the system."""
    return np.diag(np.exp(1j * np.arange(system_dim) * angle))


def weighted_average(system_dim, M, weights, a):
    """``sum_k w_k U_S(theta_k) A U_S(theta_k)^*``."""
    a = as_operator(a, system_dim)
    n = np.arange(system_dim)
    diffs = n[:, None] - n[None, :]
    theta = 2 * np.pi * np.arange(M) / M
    # (U A U^*)[n, m] = exp(i theta (n - m)) A[n, m]
    char = np.tensordot(weights, np.exp(1j * theta[:, None, None] * diffs[None]), axes=1)
    return char * a


def grid_twirl(system_dim, M, a):
    return weighted_average(system_dim, M, np.full(M, 1.0 / M), a)


def conditioned_identity_convergence(system_dim, povms, a, center=0):
    """Residual ``||yen_omega_d(A) - A||_op`` along the localizing sequence.

    Returns
    -------
    list of (d, residual)
    """
    a = as_operator(a)
    if a.shape[0] != system_dim:
        raise DimensionMismatch(f"operator dim {a.shape[0]} != system dim {system_dim}")
    out = []
    for p in povms:
        vec, _, _ = localizing_state(p, center)
        mu = p.born(vec)
        out.append((p.d, op_norm(weighted_average(system_dim, p.M, mu, a) - a)))
    return out

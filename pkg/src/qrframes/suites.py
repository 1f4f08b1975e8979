"""Verification suites: batches of numeric checks with residuals and thresholds.

Each suite draws its random inputs from a single seeded generator, so a
report is a deterministic function of its configuration.
"""

import time
from dataclasses import asdict, dataclass, field

import numpy as np

from . import equivalence as eq
from . import framechange as fc
from . import phaselab as pl
from . import relativization as rel
from .errors import ConfigError, UnsupportedPreset
from .frames import canonical_frame, coherent_frame, localized_state, verify_covariance
from .groups import make_preset, verify_group
from .operators import (
    identity, op_norm, projector, random_operator, random_state, tensor,
)
from .representations import (
    conjugate, cyclic_phase_rep, invariant_commutant, inverse_convention_rep,
    regular_rep, tensor_rep, trivial_rep, twirl,
)

SUITES = ("kinematics", "relativization", "framechange", "comparison", "phase")


@dataclass(frozen=True)
class SuiteConfig:
    """Suite parameters. ``batch`` is the number of random instances per check."""

    group: str = "cyclic(3)"
    seed: int = 0
    batch: int = 20
    tol: float = 1e-9
    dmax: int = 32
    grid: int = 64


def make_config(**kwargs):
    """Validate suite parameters.

    Raises
    ------
    ConfigError
        Naming the offending field.
    """
    known = {f for f in SuiteConfig.__dataclass_fields__}
    for k in kwargs:
        if k not in known:
            raise ConfigError(k, "unknown configuration field")
    cfg = SuiteConfig(**{k: v for k, v in kwargs.items() if v is not None})
    try:
        make_preset(cfg.group)
    except UnsupportedPreset as exc:
        raise ConfigError("group", str(exc)) from None
    for name in ("seed", "batch", "dmax", "grid"):
        v = getattr(cfg, name)
        if not isinstance(v, (int, np.integer)) or isinstance(v, bool):
            raise ConfigError(name, f"must be an integer, got {v!r}")
    if cfg.seed < 0:
        raise ConfigError("seed", "must be nonnegative")
    if cfg.batch < 1:
        raise ConfigError("batch", "must be positive")
    if cfg.dmax < 2:
        raise ConfigError("dmax", "must be at least 2")
    if cfg.grid < 4:
        raise ConfigError("grid", "must be at least 4")
    if not (0 < cfg.tol < 1):
        raise ConfigError("tol", "must lie in (0, 1)")
    return cfg


@dataclass
class CheckRecord:
    """One check: residual compared with a threshold.

    ``mode="below"`` passes when ``residual < threshold``; ``mode="above"``
    passes when ``residual > threshold`` (witness checks).
    """

    check_id: str
    anchor: str
    residual: float
    threshold: float
    mode: str = "below"
    runtime: float = 0.0
    detail: dict = field(default_factory=dict)

    @property
    def passed(self):
        if self.mode == "above":
            return bool(self.residual > self.threshold)
        return bool(self.residual < self.threshold)

    def as_dict(self, timing=False):
        out = {
            "check_id": self.check_id,
            "anchor": self.anchor,
            "residual": float(self.residual),
            "threshold": float(self.threshold),
            "mode": self.mode,
            "pass": self.passed,
        }
        if self.detail:
            out["detail"] = self.detail
        if timing:
            out["runtime"] = self.runtime
        return out


@dataclass
class SuiteReport:
    name: str
    config: SuiteConfig
    records: list = field(default_factory=list)

    @property
    def passed(self):
        return all(r.passed for r in self.records)

    def as_dict(self, timing=False):
        return {
            "suite": self.name,
            "config": asdict(self.config),
            "pass": self.passed,
            "checks": [r.as_dict(timing) for r in sorted(self.records, key=lambda r: r.check_id)],
        }


class _Runner:
    def __init__(self, name, cfg):
        self.report = SuiteReport(name, cfg)
        self.cfg = cfg

    def check(self, check_id, anchor, threshold=None, mode="below"):
        threshold = self.cfg.tol if threshold is None else threshold

        def wrap(fn):
            t0 = time.perf_counter()
            out = fn()
            residual, detail = (out if isinstance(out, tuple) else (out, {}))
            self.report.records.append(CheckRecord(
                check_id, anchor, float(residual), float(threshold), mode,
                time.perf_counter() - t0, detail))
            return fn
        return wrap


def _unsharp_coherent(group):
    """An unsharp coherent frame: two-level phase seed for cyclic n >= 3,
    otherwise the one-dimensional trivial frame."""
    if group.name.startswith("cyclic") and group.order >= 3:
        return coherent_frame(cyclic_phase_rep(group, [0, 1]), np.ones(2) / np.sqrt(2))
    return coherent_frame(trivial_rep(group), np.ones(1))


def _kinematics(r, cfg, rng):
    g = make_preset(cfg.group)
    n = g.order
    reg = regular_rep(g)
    comm = invariant_commutant(reg)
    gset = eq.invariant_set(reg)
    ops = [random_operator(rng, n) for _ in range(cfg.batch)]
    states = [random_state(rng, n) for _ in range(cfg.batch)]

    @r.check("group.laws", "group axioms", 0.5)
    def _():
        verify_group(g.cayley)
        return 0.0

    @r.check("rep.commutant_dimension", "regular commutant has dimension |G|", 0.5)
    def _():
        return abs(comm.size - n), {"dimension": comm.size, "order": n}

    @r.check("rep.commutant_commutes", "commutant elements are invariant")
    def _():
        return max(max(op_norm(u @ b - b @ u) for u in reg.matrices) for b in comm.basis)

    @r.check("twirl.idempotent", "twirl is idempotent")
    def _():
        return max(op_norm(twirl(reg, twirl(reg, a)) - twirl(reg, a)) for a in ops)

    @r.check("twirl.duality", "tr[G(A) rho] = tr[A G_*(rho)] = tr[G(A) G_*(rho)]")
    def _():
        worst = 0.0
        for a, rho in zip(ops, states):
            ga, gr = twirl(reg, a), twirl(reg, rho, "state")
            v = [np.trace(ga @ rho), np.trace(a @ gr), np.trace(ga @ gr)]
            worst = max(worst, abs(v[0] - v[1]), abs(v[0] - v[2]))
        return worst

    @r.check("twirl.image_in_commutant", "twirl maps into the invariant algebra")
    def _():
        return max(op_norm(twirl(reg, a) - comm.project(twirl(reg, a))) for a in ops)

    @r.check("frame.covariance", "canonical and coherent frames are covariant")
    def _():
        frames = [canonical_frame(g), canonical_frame(g, "inverse"),
                  coherent_frame(reg, np.eye(n)[0]), _unsharp_coherent(g)]
        return max(verify_covariance(f).checks[0].residual for f in frames)

    @r.check("frame.classification", "ideal canonical frames; unsharp coherent frames are not localizable", 0.5)
    def _():
        f, u = canonical_frame(g), _unsharp_coherent(g)
        ok = f.flags.ideal and f.flags.localizable and f.flags.complete
        ok = ok and not u.flags.sharp and not u.flags.localizable
        return (0.0 if ok else 1.0), {"canonical": f.flags.as_dict(), "unsharp": u.flags.as_dict()}

    @r.check("frame.born_normalization", "Born measures are probability measures")
    def _():
        f = canonical_frame(g)
        return max(abs(f.povm.born(s).sum() - 1) + max(0.0, -f.povm.born(s).min())
                   for s in states)

    @r.check("equivalence.orbit", "states on one G-orbit are G-equivalent")
    def _():
        return max(eq.equivalent(s, conjugate(reg, int(rng.integers(n)), s, "state"), gset).residual
                   for s in states)

    @r.check("equivalence.twirl_signature", "rho and G_*(rho) share a G-signature")
    def _():
        return max(eq.signature(s, gset).distance(eq.signature(twirl(reg, s, "state"), gset))
                   for s in states)

    @r.check("equivalence.convexity", "equivalence respects mixtures")
    def _():
        worst = 0.0
        for k in range(len(states) - 1):
            a, b = states[k], states[k + 1]
            h = int(rng.integers(n))
            a2, b2 = conjugate(reg, h, a, "state"), conjugate(reg, h, b, "state")
            lam = rng.uniform()
            worst = max(worst, eq.equivalent(lam * a + (1 - lam) * b,
                                             lam * a2 + (1 - lam) * b2, gset).residual)
        return worst

    @r.check("equivalence.projector", "quotient projector is idempotent and class-preserving")
    def _():
        proj = eq.quotient_projector(gset)
        return max(max(op_norm(proj(proj(s)) - proj(s)), eq.equivalent(s, proj(s), gset).residual)
                   for s in states)


def _relativization(r, cfg, rng):
    g = make_preset(cfg.group)
    n = g.order
    sys_rep = regular_rep(g)
    frame = canonical_frame(g)
    pair = rel.make_pair(frame, sys_rep)
    unsharp = rel.make_pair(_unsharp_coherent(g), sys_rep)
    e0 = projector(localized_state(frame, 0))
    ops = [random_operator(rng, n) for _ in range(cfg.batch)]
    states = [random_state(rng, n) for _ in range(cfg.batch)]
    fstates = [random_state(rng, n) for _ in range(cfg.batch)]
    gset = eq.invariant_set(sys_rep)

    @r.check("relativize.exact_recovery", "restriction to the identity-localized state inverts relativization", 1e-10)
    def _():
        return max(op_norm(rel.restrict(e0, rel.relativize(pair, a)) - a) for a in ops)

    @r.check("relativize.unital", "relativization is unital")
    def _():
        return max(op_norm(rel.relativize(p, identity(n)) - identity(p.joint_dim))
                   for p in (pair, unsharp))

    @r.check("relativize.invariant_image", "relativized operators are invariant")
    def _():
        return max(max(op_norm(u @ rel.relativize(p, a) - rel.relativize(p, a) @ u)
                       for u in p.joint_rep.matrices)
                   for a in ops for p in (pair, unsharp))

    @r.check("relativize.invariant_input", "invariant operators relativize to I (x) A")
    def _():
        return max(op_norm(rel.relativize(pair, twirl(sys_rep, a)) -
                           tensor(identity(n), twirl(sys_rep, a))) for a in ops)

    @r.check("relativize.isometry", "relativization is isometric for localizable frames")
    def _():
        return max(abs(op_norm(rel.relativize(pair, a)) - op_norm(a)) for a in ops)

    @r.check("relativize.multiplicative", "relativization is multiplicative for sharp frames")
    def _():
        return max(op_norm(rel.relativize(pair, a @ b) -
                           rel.relativize(pair, a) @ rel.relativize(pair, b))
                   for a, b in zip(ops, ops[1:] + ops[:1]))

    @r.check("relativize.unsharp_not_multiplicative", "unsharp frames break multiplicativity", 1e-3, "above")
    def _():
        return max(op_norm(rel.relativize(unsharp, a @ b) -
                           rel.relativize(unsharp, a) @ rel.relativize(unsharp, b))
                   for a, b in zip(ops, ops[1:] + ops[:1]))

    @r.check("relativize.completely_positive", "positivity on two-block extensions", 1e-10)
    def _():
        worst = 0.0
        for _ in range(cfg.batch):
            x = random_state(rng, 2 * n)
            blocks = x.reshape(2, n, 2, n)
            big = np.block([[rel.relativize(pair, blocks[i, :, j, :]) for j in range(2)]
                            for i in range(2)])
            worst = max(worst, -float(np.linalg.eigvalsh((big + big.conj().T) / 2)[0]))
        return max(worst, 0.0)

    @r.check("predual.duality", "tr[yen_*(W) A] = tr[W yen(A)]", 1e-10)
    def _():
        return max(abs(np.trace(rel.predual_relativize(pair, w) @ a) -
                       np.trace(w @ rel.relativize(pair, a)))
                   for w, a in ((random_state(rng, n * n), a) for a in ops))

    @r.check("restrict.duality", "tr[rho Gamma_omega(A)] = tr[(omega (x) rho) A]", 1e-10)
    def _():
        return max(abs(np.trace(rho @ rel.restrict(om, big)) - np.trace(tensor(om, rho) @ big))
                   for om, rho, big in zip(fstates, states, (random_operator(rng, n * n) for _ in ops)))

    @r.check("conditioned.restricted", "conditioned relativization = restriction of relativization", 1e-10)
    def _():
        return max(op_norm(rel.conditioned_relativize(p, om, a) -
                           rel.restrict(om, rel.relativize(p, a)))
                   for p in (pair, unsharp) for om, a in zip(
                       fstates if p is pair else [random_state(rng, unsharp.frame_dim) for _ in ops], ops))

    @r.check("product_state.predual", "rho^(omega) = yen_*(omega (x) rho)", 1e-10)
    def _():
        return max(op_norm(rel.product_relative_state(pair, om, rho) -
                           rel.predual_relativize(pair, tensor(om, rho)))
                   for om, rho in zip(fstates, states))

    @r.check("product_state.symmetry", "rho^(h.omega) = (h^{-1}.rho)^(omega)")
    def _():
        worst = 0.0
        for om, rho in zip(fstates, states):
            h = int(rng.integers(n))
            lhs = rel.product_relative_state(pair, conjugate(frame.rep, h, om, "state"), rho)
            rhs = rel.product_relative_state(pair, om, conjugate(sys_rep, g.inv(h), rho, "state"))
            worst = max(worst, op_norm(lhs - rhs))
        return worst

    @r.check("product_state.invariant_system", "invariant rho gives rho^(omega) = rho")
    def _():
        return max(op_norm(rel.product_relative_state(pair, om, twirl(sys_rep, rho, "state")) -
                           twirl(sys_rep, rho, "state")) for om, rho in zip(fstates, states))

    @r.check("product_state.invariant_frame", "invariant omega gives rho^(omega) = G_*(rho)")
    def _():
        return max(op_norm(rel.product_relative_state(pair, twirl(frame.rep, om, "state"), rho) -
                           twirl(sys_rep, rho, "state")) for om, rho in zip(fstates, states))

    @r.check("product_state.g_class", "[rho^(omega)]_G = [rho]_G")
    def _():
        return max(eq.equivalent(rel.product_relative_state(pair, om, rho), rho, gset).residual
                   for om, rho in zip(fstates, states))

    inv_frame = canonical_frame(g, "inverse")
    pairs_or = [(frame, frame), (inv_frame, inv_frame), (frame, inv_frame)]

    @r.check("orientation.delta", "localized frames have sharp relative orientation", 1e-10)
    def _():
        worst = 0.0
        for f1, f2 in pairs_or:
            pov = rel.relative_orientation(f1, f2)
            loc = projector(localized_state(f1, 0))
            for h in g.elements:
                other = projector(localized_state(f2, 0))
                moved = conjugate(f2.rep, g.inv(h), other, "state")
                mu = pov.born(tensor(loc, moved))
                worst = max(worst, float(np.max(np.abs(mu - np.eye(n)[h]))))
        return worst

    @r.check("orientation.swap", "E2*E1(X) = SWAP E1*E2(X^{-1})", 1e-10)
    def _():
        worst = 0.0
        for f1, f2 in pairs_or:
            a, b = rel.relative_orientation(f1, f2), rel.relative_orientation(f2, f1)
            for h in g.elements:
                worst = max(worst, op_norm(a.effect(h) - rel.swap(b.effect(g.inv(h)), f2.dim, f1.dim)))
        return worst

    @r.check("orientation.normalized_invariant", "orientation effects sum to I and are invariant")
    def _():
        pov = rel.relative_orientation(frame, unsharp.frame)
        jr = tensor_rep(frame.rep, unsharp.frame.rep)
        res = op_norm(pov.effects.sum(0) - identity(pov.dim))
        for e in pov.effects:
            res = max(res, max(op_norm(u @ e - e @ u) for u in jr.matrices))
        return res

    @r.check("relative_set.oracle", "relative equivalence = equal predual outputs", 0.5)
    def _():
        rset = rel.relative_set(pair)
        sample = _relative_sample(pair, rng, max(2, cfg.batch // 4))
        dis = _oracle_disagreements(pair, rset, sample)
        return dis, {"sample": len(sample), "pairs": len(sample) ** 2, "span_dim": rset.size}

    @r.check("lift.round_trip", "predual after lifting with the localized state is the identity", 1e-10)
    def _():
        return max(op_norm(rel.predual_relativize(pair, fc.lift(pair, e0, rho, False).state) - rho)
                   for rho in states)


def _relative_sample(pair, rng, bases):
    """States grouped in relative classes: Omega, g.Omega, G_*(Omega) and a
    kernel perturbation of Omega, for ``bases`` random Omega."""
    jrep = pair.joint_rep
    n = pair.joint_dim
    rset = rel.relative_set(pair)
    proj = eq.quotient_projector(rset)
    out = []
    for _ in range(bases):
        w = random_state(rng, n)
        h = int(rng.integers(1, pair.frame.group.order)) if pair.frame.group.order > 1 else 0
        k = random_operator(rng, n)
        k = (k + k.conj().T) / 2
        k = k - proj(k)
        k = (k + k.conj().T) / 2
        lo = float(np.linalg.eigvalsh(w)[0])
        scale = 0.5 * lo / max(op_norm(k), 1e-300)
        out += [w, conjugate(jrep, h, w, "state"), twirl(jrep, w, "state"), w + scale * k]
    return out


def _oracle_disagreements(pair, rset, sample):
    outs = [rel.predual_relativize(pair, w) for w in sample]
    dis = 0
    for i, a in enumerate(sample):
        for j, b in enumerate(sample):
            engine = bool(eq.equivalent(a, b, rset))
            brute = op_norm(outs[i] - outs[j]) < 1e-9
            dis += engine != brute
    return dis


def _ideal_scenario(g, n_frames=2, convention="left"):
    sys_rep = regular_rep(g) if convention == "left" else inverse_convention_rep(g)
    return fc.make_scenario([canonical_frame(g, convention)] * n_frames, sys_rep)


def _framechange(r, cfg, rng):
    g = make_preset(cfg.group)
    for conv in ("left", "inverse"):
        sc = _ideal_scenario(g, 2, conv)
        din = sc.sub_dim(sc.others(0))
        inputs = [random_state(rng, din) for _ in range(cfg.batch)]

        @r.check(f"framechange.inverse.{conv}", "localized frame changes are invertible")
        def _():
            return fc.frame_change_inverse_check(sc, inputs).max_residual

        @r.check(f"framechange.well_defined.{conv}", "frame change is constant on framed classes")
        def _():
            return fc.well_definedness_check(sc, inputs, rng).max_residual

        @r.check(f"framechange.triangle.{conv}", "frame change commutes with relativization")
        def _():
            totals = [random_state(rng, sc.total_dim) for _ in range(max(1, cfg.batch // 4))]
            return fc.triangle_check(sc, totals).max_residual

    @r.check("framechange.classical", "classical states map to |h^{-1}> (x) |g h^{-1}>", 1e-12)
    def _():
        sc = _ideal_scenario(g, 2, "inverse")
        n = g.order
        worst = 0.0
        for h in g.elements:
            for s in g.elements:
                w = tensor(projector(np.eye(n)[h]), projector(np.eye(n)[s]))
                want = tensor(projector(np.eye(n)[g.inv(h)]),
                              projector(np.eye(n)[g.mul(s, g.inv(h))]))
                worst = max(worst, op_norm(fc.frame_change(sc, w).representative - want))
        return worst

    # three-frame composition: regular system up to order 6, trivial beyond
    sys3 = regular_rep(g) if g.order <= 6 else trivial_rep(g)
    frames = [canonical_frame(g)] * 2
    for label, third in (("ideal", canonical_frame(g)), ("coherent", _unsharp_coherent(g))):
        sc3 = fc.make_scenario(frames + [third], sys3)
        inputs = [random_state(rng, sc3.sub_dim((1, 2, 3)))
                  for _ in range(max(1, cfg.batch // 2))]

        @r.check(f"framechange.compose.{label}", "localized frame changes compose")
        def _():
            return fc.frame_change_compose_check(sc3, inputs).max_residual, {
                "system_dim": sys3.dim, "frame3": third.kind}

    @r.check("framechange.signature_rank", "reported span dimensions of framed classes", 0.5)
    def _():
        sc = _ideal_scenario(g)
        o_in = sc.framed(sc.others(0), (1,))
        o_out = sc.framed(sc.others(1), (0,))
        return abs(o_in.size - o_out.size), {"input_span": o_in.size, "output_span": o_out.size}


def _comparison(r, cfg, rng):
    g = make_preset(cfg.group)
    sc = _ideal_scenario(g, 2, "inverse")
    n = g.order
    o = sc.framed(sc.others(1), (0,))
    inputs = [tensor(random_state(rng, n), random_state(rng, n)) for _ in range(cfg.batch)]

    @r.check("comparison.unitary_signature", "coherent and localized frame changes agree on framed observables")
    def _():
        return max(eq.signature(fc.unitary_frame_change(sc, w), o).distance(
            fc.frame_change(sc, w).signature) for w in inputs)

    @r.check("comparison.pn_signature", "perspective-neutral and localized frame changes agree on framed observables")
    def _():
        return max(eq.signature(fc.pn_frame_change(sc, w), o).distance(
            fc.frame_change(sc, w).signature) for w in inputs)

    @r.check("comparison.pn_unitary", "perspective-neutral map is unitary")
    def _():
        v = fc.pn_operator(sc)
        return op_norm(v @ v.conj().T - identity(v.shape[0]))

    if n < 2:
        return
    wit = fc.superposition_witness(sc, 1 / np.sqrt(2), 1 / np.sqrt(2), 0, 1, 0)

    @r.check("comparison.witness.trace_norm_gap", "outputs differ as density matrices", 0.1, "above")
    def _():
        return wit["trace_norm_gap"]

    @r.check("comparison.witness.negativity", "coherent output is entangled", 0.01, "above")
    def _():
        return wit["negativity_unitary"]

    @r.check("comparison.witness.separable", "localized representative is classical-quantum")
    def _():
        cq = wit["representative_cq"]
        return (cq["residual"] if cq["separable"] else 1.0), {
            "negativity": wit["negativity_representative"]}

    @r.check("comparison.witness.signature", "witness pair shares one framed class")
    def _():
        return wit["signature_residual"]


def phase_sweep(dmax):
    ds, d = [], 2
    while d <= dmax:
        ds.append(d)
        d *= 2
    return ds


def _phase(r, cfg, rng):
    ds = phase_sweep(cfg.dmax)
    povms = [pl.build_phase_povm(d, cfg.grid) for d in ds]

    @r.check("phase.normalization", "cell effects sum to I", 1e-8)
    def _():
        return max(op_norm(p.effects.sum(0) - identity(p.d)) for p in povms)

    @r.check("phase.covariance", "grid shifts permute cells")
    def _():
        return max(pl.covariance_residual(p) for p in povms)

    @r.check("phase.dimension_bound", "tr[rho E(X)] <= d mu(X)")
    def _():
        worst = -np.inf
        for p in povms[:3]:
            for _ in range(cfg.batch):
                X = np.flatnonzero(rng.uniform(size=p.M) < rng.uniform()).tolist() or [0]
                rho = random_state(rng, p.d)
                worst = max(worst, float(np.trace(rho @ p(X)).real) - p.d * p.measure(X))
        return max(worst, 0.0)

    q = pl.quarter_circle(cfg.grid)
    norms = [pl.best_localizer(p, q)[1] for p in povms]

    @r.check("phase.norm_increasing", "||E(X)|| strictly increases with d", 0.0, "above")
    def _():
        return float(np.min(np.diff(norms))), {"norms": norms}

    @r.check("phase.norm_bounded", "||E(X)|| <= 1")
    def _():
        return max(0.0, max(norms) - 1)

    a = random_operator(rng, 3)
    curve = pl.conditioned_identity_convergence(3, povms, a)
    res = [x for _, x in curve]

    @r.check("phase.conditioned_identity_decreasing", "conditioned relativization approaches A", 0.0, "above")
    def _():
        return float(np.min(-np.diff(res))), {"residuals": res}

    dirac = pl.dirac_convergence_experiment(povms)

    @r.check("phase.dirac_half_decreasing", "Born measures approach the Dirac measure", 0.0, "above")
    def _():
        dev = dirac.deviations("half")
        return float(np.min(-np.diff(dev))), {"deviations": dev.tolist()}

    @r.check("phase.dirac_full", "full circle has probability 1", 1e-9)
    def _():
        return float(np.max(dirac.deviations("full")))

    @r.check("phase.uniform_twirl", "uniform frame state yields the grid twirl", 1e-10)
    def _():
        p = povms[-1]
        mu = p.born(identity(p.d) / p.d)
        return op_norm(pl.weighted_average(3, p.M, mu, a) - pl.grid_twirl(3, p.M, a))


_BUILDERS = {
    "kinematics": _kinematics,
    "relativization": _relativization,
    "framechange": _framechange,
    "comparison": _comparison,
    "phase": _phase,
}


def run_suite(name, config=None):
    """Run one verification suite.

    Raises
    ------
    ConfigError
        For an unknown suite name.
    """
    if name not in _BUILDERS:
        raise ConfigError("suite", f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    cfg = config if isinstance(config, SuiteConfig) else make_config(**(config or {}))
    rng = np.random.default_rng(cfg.seed)
    runner = _Runner(name, cfg)
    _BUILDERS[name](runner, cfg, rng)
    return runner.report


def run_all(config=None):
    return [run_suite(name, config) for name in SUITES]

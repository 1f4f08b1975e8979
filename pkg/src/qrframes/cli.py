"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a check fails, 2 for
configuration, parse or I/O errors.
"""

import argparse
import sys

import numpy as np

from . import __version__
from . import fileio
from . import framechange as fc
from . import phaselab as pl
from .equivalence import signature
from .errors import ConfigError, QRFError
from .frames import (
    canonical_frame, check_norm1, coherent_frame, verify_covariance,
)
from .groups import make_preset, verify_group
from .operators import negativity, to_dict
from .relativization import make_pair, relative_orientation, relativize
from .representations import cyclic_phase_rep, regular_rep
from .suites import SUITES, make_config, phase_sweep, run_suite

EXIT_PASS, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


def _global_flags(parser, suppress):
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--seed", type=int, default=default(0), help="random seed")
    parser.add_argument("--tol", type=float, default=default(1e-9), help="check threshold")
    parser.add_argument("--out", default=default(None), help="output file (default stdout)")
    parser.add_argument("--format", choices=("json", "csv"), default=default(None),
                        help="output format")
    parser.add_argument("--timing", action="store_true", default=default(False),
                        help="include per-check runtimes (output no longer byte-stable)")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    p = argparse.ArgumentParser(prog="qrframes", description="Quantum reference frame toolkit")
    p.add_argument("--version", action="version", version=__version__)
    _global_flags(p, suppress=False)
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("group", parents=[common], help="verify a group preset or Cayley table")
    src = g.add_mutually_exclusive_group(required=True)
    src.add_argument("--group", help="preset, e.g. cyclic(3), dihedral(4), symmetric3, quaternion8")
    src.add_argument("--file", help="group JSON file")

    f = sub.add_parser("frame", help="build or check frames")
    fsub = f.add_subparsers(dest="action", required=True)
    fb = fsub.add_parser("build", parents=[common], help="emit a frame as JSON")
    fb.add_argument("--group", required=True)
    fb.add_argument("--kind", choices=("canonical", "inverse", "coherent"), default="canonical")
    fb.add_argument("--charges", default="0,1",
                    help="coherent kind: comma-separated U(1) charges of a cyclic group")
    fc_ = fsub.add_parser("check", parents=[common], help="print frame certificates")
    fc_.add_argument("file")

    r = sub.add_parser("relativize", parents=[common], help="relativize a system operator")
    r.add_argument("--frame", required=True)
    r.add_argument("--op", required=True)

    o = sub.add_parser("orientation", parents=[common], help="relative orientation observable")
    o.add_argument("--frame1", required=True)
    o.add_argument("--frame2", required=True)

    fr = sub.add_parser("framechange", help="localized frame transformations")
    frsub = fr.add_subparsers(dest="action", required=True)
    run = frsub.add_parser("run", parents=[common], help="transform a state between frames")
    run.add_argument("--scenario", required=True)
    run.add_argument("--state", required=True)

    ph = sub.add_parser("phase-lab", help="truncated phase frame experiments")
    phsub = ph.add_subparsers(dest="action", required=True)
    cv = phsub.add_parser("converge", parents=[common], help="localization curve as CSV")
    cv.add_argument("--dmax", type=int, default=32)
    cv.add_argument("--grid", type=int, default=64)

    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("suite", nargs="?", default="all", help=f"one of {', '.join(SUITES)} or all")
    v.add_argument("--group", default="cyclic(3)")
    v.add_argument("--batch", type=int, default=20)
    v.add_argument("--dmax", type=int, default=32)
    v.add_argument("--grid", type=int, default=64)
    return p


def _output(args, report, default_fmt="json"):
    fmt = args.format or default_fmt
    text = fileio.emit(report, fmt, args.out)
    if args.out is None:
        sys.stdout.write(text)


def cmd_group(args):
    group = make_preset(args.group) if args.group else fileio.parse_inputs(
        {"group": ("group", args.file)})["group"]
    verify_group(group.cayley)
    inv = [int(group.inv(x)) for x in group.elements]
    report = {"name": group.name, "order": group.order, "abelian": group.is_abelian(),
              "cayley": group.cayley.tolist(), "inverse": inv, "pass": True}
    _output(args, report)
    return EXIT_PASS


def cmd_frame(args):
    if args.action == "build":
        group = make_preset(args.group)
        if args.kind == "coherent":
            try:
                charges = [int(c) for c in args.charges.split(",")]
            except ValueError:
                raise ConfigError("charges", f"not a list of integers: {args.charges!r}") from None
            if not group.name.startswith("cyclic"):
                raise ConfigError("group", "coherent frames from charges need a cyclic group")
            eta = np.ones(len(charges)) / np.sqrt(len(charges))
            frame = coherent_frame(cyclic_phase_rep(group, charges), eta)
        else:
            frame = canonical_frame(group, "left" if args.kind == "canonical" else "inverse")
        _output(args, frame.to_dict())
        return EXIT_PASS
    frame = fileio.parse_inputs({"frame": ("frame", args.file)})["frame"]
    cov = verify_covariance(frame, args.tol)
    norm1 = check_norm1(frame.povm, args.tol)
    report = {
        "kind": frame.kind,
        "dim": frame.dim,
        "flags": frame.flags.as_dict(),
        "covariance": cov.as_dict(),
        "normalization_residual": frame.povm.normalization_residual(),
        "norm1_worst": {"point": norm1["worst"][0], "norm": norm1["worst"][1]},
        "pass": bool(cov.passed and frame.povm.normalization_residual() < args.tol),
    }
    _output(args, report)
    return EXIT_PASS if report["pass"] else EXIT_FAIL


def cmd_relativize(args):
    inp = fileio.parse_inputs({"frame": ("frame", args.frame), "op": ("operator", args.op)})
    frame = inp["frame"]
    pair = make_pair(frame, regular_rep(frame.group))
    _output(args, to_dict(relativize(pair, inp["op"])))
    return EXIT_PASS


def cmd_orientation(args):
    inp = fileio.parse_inputs({"frame1": ("frame", args.frame1), "frame2": ("frame", args.frame2)})
    pov = relative_orientation(inp["frame1"], inp["frame2"])
    report = {"points": list(range(len(pov.effects))),
              "effects": [to_dict(e) for e in pov.effects],
              "normalization_residual": pov.normalization_residual()}
    _output(args, report)
    return EXIT_PASS


def cmd_framechange(args):
    sc, source, target = fileio.parse_inputs(
        {"scenario": ("scenario", args.scenario)})["scenario"]
    w = fileio.parse_operator(fileio.load_json(args.state), args.state, kind="state")
    expected = sc.sub_dim(sc.others(source))
    if w.shape[0] != expected:
        raise ConfigError("state", f"state has dim {w.shape[0]}, scenario expects {expected}")
    res = fc.frame_change(sc, w, source, target)
    o_in = sc.framed(sc.others(source), (target,))
    # the reverse change needs a localizable target; otherwise report no round trip
    if sc.frames[target].flags.ideal:
        back = fc.frame_change(sc, res.representative, target, source)
        inverse_residual = signature(back.state, o_in).distance(signature(w, o_in))
    else:
        inverse_residual = None
    out_slots, in_slots = sc.others(target), sc.others(source)
    report = {
        "source": source,
        "target": target,
        "input_signature": signature(w, o_in).to_dict(),
        "output_signature": res.signature.to_dict(),
        "representative": to_dict(res.representative),
        "span_dims": {"input": o_in.size, "output": res.signature.coords.size},
        "residuals": {
            "inverse_round_trip": inverse_residual,
            "trace_drift": abs(np.trace(res.state).real - 1),
        },
        "witnesses": {
            "negativity_output": negativity(
                res.representative, (sc.dims[out_slots[0]], sc.sub_dim(out_slots[1:]))),
            "negativity_input": negativity(
                w, (sc.dims[in_slots[0]], sc.sub_dim(in_slots[1:]))),
            "classical_quantum": (fc.is_classical_quantum(
                res.representative, sc.frames[source], sc.sub_dim(out_slots[1:]))
                if out_slots[0] == source else None),
        },
    }
    report["pass"] = bool(inverse_residual is None or inverse_residual < args.tol)
    _output(args, report)
    return EXIT_PASS if report["pass"] else EXIT_FAIL


def cmd_phase_lab(args):
    if args.dmax < 2:
        raise ConfigError("dmax", "must be at least 2")
    if args.grid < 4:
        raise ConfigError("grid", "must be at least 4")
    povms = [pl.build_phase_povm(d, args.grid) for d in phase_sweep(args.dmax)]
    curve = pl.dirac_convergence_experiment(povms)
    if (args.format or "csv") == "csv":
        _output(args, curve, "csv")
    else:
        _output(args, {"columns": list(fileio.CURVE_COLUMNS),
                       "rows": [list(r) for r in curve.rows()]})
    return EXIT_PASS


def cmd_verify(args):
    names = SUITES if args.suite == "all" else (args.suite,)
    cfg = make_config(group=args.group, seed=args.seed, batch=args.batch, tol=args.tol,
                      dmax=args.dmax, grid=args.grid)
    reports = [run_suite(n, cfg) for n in names]
    ok = all(r.passed for r in reports)
    body = {"pass": ok, "suites": [r.as_dict(args.timing) for r in reports]}
    _output(args, body)
    return EXIT_PASS if ok else EXIT_FAIL


_COMMANDS = {
    "group": cmd_group,
    "frame": cmd_frame,
    "relativize": cmd_relativize,
    "orientation": cmd_orientation,
    "framechange": cmd_framechange,
    "phase-lab": cmd_phase_lab,
    "verify": cmd_verify,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_PASS
    try:
        return _COMMANDS[args.command](args)
    except QRFError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

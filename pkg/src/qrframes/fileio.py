"""JSON ingestion and byte-stable report emission."""

import csv
import io
import json
from pathlib import Path

import numpy as np

from .errors import ConfigError, InvariantViolation, ParseError, QRFError
from .frames import frame_from_dict
from .groups import group_from_dict
from .operators import from_dict, validate
from .representations import rep_from_dict

CURVE_COLUMNS = ("d", "n", "set_id", "probability", "deviation")


def load_json(path):
    """Read a JSON file.

    Raises
    ------
    ParseError
        With the offending line number for malformed JSON, line 0 for I/O errors.
    """
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(path, 0, exc.strerror or str(exc)) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(path, exc.lineno, exc.msg) from None


def _field(obj, key, path):
    if not isinstance(obj, dict) or key not in obj:
        raise ParseError(path, 1, f"missing field {key!r}")
    return obj[key]


def _wrap(path, fn, obj):
    try:
        return fn(obj)
    except QRFError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(path, 1, f"malformed object: {exc}") from None


def parse_group(obj, path="<group>"):
    return _wrap(path, group_from_dict, obj)


def parse_operator(obj, path="<operator>", kind=None):
    """Operator JSON; ``kind`` in ``{"state", "effect", ...}`` adds validation.

    Raises
    ------
    InvariantViolation
        Named after the first failing check, e.g. ``unit_trace``.
    """
    a = _wrap(path, from_dict, obj)
    if kind is not None:
        cert = validate(a, kind)
        if not cert.passed:
            worst = cert.failed
            raise InvariantViolation(worst.name, worst.residual)
    return a


def parse_frame(obj, path="<frame>"):
    return _wrap(path, frame_from_dict, obj)


def parse_scenario(obj, path="<scenario>"):
    """Scenario JSON: ``{"group", "frames": [frame...], "system_rep"?, "source"?, "target"?}``.

    ``system_rep`` defaults to the regular representation. Frames may omit
    ``group``, in which case the scenario group is used.

    Returns
    -------
    (FrameChangeScenario, source, target)
    """
    from .framechange import make_scenario

    group = parse_group(_field(obj, "group", path), path)
    frames = []
    for f in _field(obj, "frames", path):
        f = dict(f)
        f.setdefault("group", obj["group"])
        frames.append(parse_frame(f, path))
    if len(frames) < 2:
        raise ConfigError("frames", "a scenario needs at least two frames")
    rep_obj = obj.get("system_rep", {"kind": "regular"})
    system_rep = _wrap(path, lambda o: rep_from_dict(o, group), rep_obj)
    for f in frames:
        if not f.group.same_as(group):
            raise InvariantViolation("group_mismatch")
    source, target = int(obj.get("source", 0)), int(obj.get("target", 1))
    for name, v in (("source", source), ("target", target)):
        if not 0 <= v < len(frames):
            raise ConfigError(name, f"frame index {v} out of range")
    if source == target:
        raise ConfigError("target", "source and target frames must differ")
    return make_scenario(frames, system_rep), source, target


_PARSERS = {
    "group": parse_group,
    "operator": parse_operator,
    "frame": parse_frame,
    "scenario": parse_scenario,
}


def parse_inputs(paths):
    """Load and validate several inputs.

    Parameters
    ----------
    paths : dict
        Maps a role name to ``(kind, path)`` with ``kind`` in
        ``{"group", "operator", "frame", "scenario"}``.

    Returns
    -------
    dict
        Role name to validated object. The first failing file aborts.
    """
    out = {}
    for role, (kind, path) in paths.items():
        if kind not in _PARSERS:
            raise ConfigError(role, f"unknown input kind {kind!r}")
        out[role] = _PARSERS[kind](load_json(path), str(path))
    return out


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    if isinstance(x, (np.bool_, bool)):
        return bool(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating, float)):
        v = float(x)
        return v if np.isfinite(v) else repr(v)
    if isinstance(x, (complex, np.complexfloating)):
        return {"re": float(x.real), "im": float(x.imag)}
    return x


def dumps_json(obj):
    """Canonical JSON text: sorted keys, fixed separators, trailing newline."""
    return json.dumps(_jsonable(obj), sort_keys=True, indent=2) + "\n"


def dumps_csv(rows, columns=CURVE_COLUMNS):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([f"{v:.17g}" if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def emit(report, fmt="json", out=None):
    """Serialize a report; write it to ``out`` when given, and return the text.

    JSON reports are dicts; CSV reports are row sequences in
    :data:`CURVE_COLUMNS` order (or objects with a ``rows()`` method).

    Raises
    ------
    ConfigError
        For an unknown format or an unwritable destination.
    """
    if fmt == "json":
        text = dumps_json(report)
    elif fmt == "csv":
        rows = report.rows() if hasattr(report, "rows") else report
        text = dumps_csv(rows)
    else:
        raise ConfigError("format", f"unknown format {fmt!r}")
    if out is not None:
        try:
            Path(out).write_text(text)
        except OSError as exc:
            raise ConfigError("out", exc.strerror or str(exc)) from None
    return text


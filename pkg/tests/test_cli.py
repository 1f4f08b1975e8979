import csv
import io
import json

import numpy as np
import pytest

from qrframes.cli import main
from qrframes.errors import InvariantViolation, ParseError
from qrframes.fileio import emit, parse_inputs
from qrframes.frames import canonical_frame
from qrframes.groups import make_preset
from qrframes.operators import random_operator, random_state, to_dict


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def files(tmp_path):
    rng = np.random.default_rng(0)
    z3 = make_preset("cyclic(3)")
    paths = {}

    def put(name, obj):
        p = tmp_path / name
        p.write_text(json.dumps(obj))
        paths[name] = str(p)

    put("frame.json", canonical_frame(z3).to_dict())
    put("op.json", to_dict(random_operator(rng, 3)))
    put("state.json", to_dict(random_state(rng, 9)))
    put("scenario.json", {"group": "cyclic(3)",
                          "frames": [{"kind": "canonical_left"}, {"kind": "canonical_left"}]})
    bad = canonical_frame(z3).to_dict()
    bad["effects"][0] = to_dict(np.zeros((3, 3)))
    put("bad_norm.json", bad)
    mism = canonical_frame(z3).to_dict()
    mism["rep"]["group"] = make_preset("cyclic(2)").to_dict()
    put("mismatch.json", mism)
    p = tmp_path / "broken.json"
    p.write_text('{\n  "group": "cyclic(3)",\n  "frames": [\n')
    paths["broken.json"] = str(p)
    paths["dir"] = tmp_path
    return paths


def test_group(capsys):
    code, out, _ = run(capsys, "group", "--group", "symmetric3")
    d = json.loads(out)
    assert code == 0 and d["order"] == 6 and not d["abelian"]


def test_group_file(capsys, files, tmp_path):
    p = tmp_path / "g.json"
    p.write_text(json.dumps({"order": 2, "cayley": [[0, 1], [1, 0]]}))
    code, out, _ = run(capsys, "group", "--file", str(p))
    assert code == 0 and json.loads(out)["inverse"] == [0, 1]
    p.write_text(json.dumps({"order": 2, "cayley": [[0, 1], [1, 1]]}))
    code, _, err = run(capsys, "group", "--file", str(p))
    assert code == 2 and "NotAGroup" in err


def test_frame_build_and_check(capsys, files, tmp_path):
    out_path = tmp_path / "coh.json"
    assert main(["frame", "build", "--group", "cyclic(3)", "--kind", "coherent",
                 "--out", str(out_path)]) == 0
    code, out, _ = run(capsys, "frame", "check", str(out_path))
    d = json.loads(out)
    assert code == 0 and d["pass"] and not d["flags"]["localizable"]
    code, out, _ = run(capsys, "frame", "check", files["frame.json"])
    assert code == 0 and json.loads(out)["flags"]["sharp"]


def test_parse_inputs_errors(files):
    assert parse_inputs({"f": ("frame", files["frame.json"])})["f"].flags.ideal
    with pytest.raises(InvariantViolation) as exc:
        parse_inputs({"f": ("frame", files["bad_norm.json"])})
    assert exc.value.name == "povm_normalization" and exc.value.residual == pytest.approx(1.0)
    with pytest.raises(InvariantViolation) as exc:
        parse_inputs({"f": ("frame", files["mismatch.json"])})
    assert exc.value.name == "group_mismatch"
    with pytest.raises(ParseError) as exc:
        parse_inputs({"s": ("scenario", files["broken.json"])})
    assert exc.value.line == 4


def test_frame_check_exit_codes(capsys, files):
    code, _, err = run(capsys, "frame", "check", files["bad_norm.json"])
    assert code == 2 and "povm_normalization" in err
    code, _, err = run(capsys, "frame", "check", files["broken.json"])
    assert code == 2 and "ParseError" in err
    code, _, _ = run(capsys, "frame", "check", "/nonexistent.json")
    assert code == 2


def test_relativize_and_orientation(capsys, files):
    code, out, _ = run(capsys, "relativize", "--frame", files["frame.json"], "--op", files["op.json"])
    d = json.loads(out)
    assert code == 0 and d["dim"] == 9
    code, out, _ = run(capsys, "orientation", "--frame1", files["frame.json"],
                       "--frame2", files["frame.json"])
    d = json.loads(out)
    assert code == 0 and len(d["effects"]) == 3 and d["normalization_residual"] < 1e-12


def test_framechange_run(capsys, files, tmp_path):
    out = tmp_path / "report.json"
    code = main(["framechange", "run", "--scenario", files["scenario.json"],
                 "--state", files["state.json"], "--out", str(out)])
    d = json.loads(out.read_text())
    assert code == 0 and d["pass"]
    assert d["residuals"]["inverse_round_trip"] < 1e-9
    assert d["witnesses"]["classical_quantum"]["separable"]
    assert {"input_signature", "output_signature", "representative"} <= set(d)


def test_framechange_rejects_non_state(capsys, files, tmp_path):
    p = tmp_path / "notstate.json"
    p.write_text(json.dumps(to_dict(2 * np.eye(9))))
    code, _, err = run(capsys, "framechange", "run", "--scenario", files["scenario.json"],
                       "--state", str(p))
    assert code == 2 and "unit_trace" in err


def test_phase_lab_csv(capsys):
    code, out, _ = run(capsys, "phase-lab", "converge", "--dmax", "8", "--grid", "16")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0 and rows[0] == ["d", "n", "set_id", "probability", "deviation"]
    assert len(rows) == 1 + 3 * 5
    code2, out2, _ = run(capsys, "phase-lab", "converge", "--dmax", "8", "--grid", "16")
    assert out == out2


def test_verify_byte_stable(capsys):
    args = ["verify", "kinematics", "--group", "cyclic(2)", "--batch", "3", "--seed", "5"]
    code, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert code == 0 and a == b
    d = json.loads(a)
    checks = d["suites"][0]["checks"]
    assert all("anchor" in c and "runtime" not in c for c in checks)
    ids = [c["check_id"] for c in checks]
    assert ids == sorted(ids)
    _, t, _ = run(capsys, *args, "--timing")
    assert all("runtime" in c for c in json.loads(t)["suites"][0]["checks"])


def test_global_flags_before_subcommand(capsys):
    code, out, _ = run(capsys, "--seed", "3", "--tol", "1e-8", "verify", "kinematics",
                       "--group", "cyclic(2)", "--batch", "2")
    d = json.loads(out)
    assert code == 0 and d["suites"][0]["config"]["seed"] == 3


def test_verify_failure_exit_code(capsys):
    # an impossible tolerance makes residual checks fail with exit code 1
    code, out, _ = run(capsys, "verify", "kinematics", "--group", "cyclic(3)", "--batch", "3",
                       "--tol", "1e-300")
    assert code == 1 and not json.loads(out)["pass"]


def test_config_error_exit_code(capsys):
    code, _, err = run(capsys, "verify", "bogus")
    assert code == 2 and "suite" in err
    code, _, _ = run(capsys, "verify", "--batch", "0")
    assert code == 2
    code, _, _ = run(capsys, "nonsense")
    assert code == 2


def test_emit_csv_and_json(tmp_path):
    rows = [(2, 2, "half", 0.5, 0.5)]
    text = emit(rows, "csv", tmp_path / "c.csv")
    assert (tmp_path / "c.csv").read_text() == text
    assert text.splitlines()[1] == "2,2,half,0.5,0.5"
    assert emit({"b": 1, "a": np.float64(2.0)}, "json") == emit({"a": 2.0, "b": 1}, "json")


def test_framechange_unsharp_target(capsys, tmp_path):
    rng = np.random.default_rng(3)
    sc = tmp_path / "sc.json"
    sc.write_text(json.dumps({
        "group": "cyclic(3)",
        "frames": [{"kind": "canonical_left"},
                   {"rep": {"kind": "regular"}, "eta": {"re": [0.6, 0.8, 0.0], "im": [0, 0, 0]}}],
    }))
    st = tmp_path / "st.json"
    st.write_text(json.dumps(to_dict(random_state(rng, 9))))
    code, _, err = run(capsys, "framechange", "run", "--scenario", str(sc), "--state", str(st))
    assert code == 2 and "NotProportionalToIdentity" in err


def test_framechange_unsharp_target_reports_span_drop(capsys, tmp_path):
    from qrframes.frames import coherent_frame
    from qrframes.representations import cyclic_phase_rep

    z3 = make_preset("cyclic(3)")
    coh = coherent_frame(cyclic_phase_rep(z3, [0, 1]), np.ones(2) / np.sqrt(2))
    sc = tmp_path / "sc.json"
    sc.write_text(json.dumps({"group": "cyclic(3)",
                              "frames": [{"kind": "canonical_left"}, coh.to_dict()]}))
    st = tmp_path / "st.json"
    st.write_text(json.dumps(to_dict(random_state(np.random.default_rng(4), 6))))
    code, out, _ = run(capsys, "framechange", "run", "--scenario", str(sc), "--state", str(st))
    d = json.loads(out)
    assert code == 0 and d["residuals"]["inverse_round_trip"] is None
    assert d["span_dims"]["input"] < 6 * 6

"""Command line verbs, exit codes, and machine output."""

import json
import subprocess
import sys

import pytest

from dualis.cli import main

SPEC = {
    "objects": {
        "q2": {"type": "quiver", "vertices": [0, 1], "arrows": [[0, 1]]},
        "mat2": {"type": "coalgebra", "field": "q", "dim": 4,
                 "comult": [[0, 0, 0, "1"], [0, 1, 2, "1"],
                            [1, 0, 1, "1"], [1, 1, 3, "1"],
                            [2, 2, 0, "1"], [2, 3, 2, "1"],
                            [3, 2, 1, "1"], [3, 3, 3, "1"]],
                 "counit": ["1", "0", "0", "1"]},
        "nilp": {"type": "algebra", "field": "q", "dim": 2,
                 "mult": [[0, 0, 1, "1"]], "unit": None},
    },
    "checks": [
        {"check": "verify_pathdual_iso", "refs": ["q2"],
         "params": {"field": "q"}},
        {"check": "coreflexive", "refs": ["mat2"], "params": {}},
    ],
}


@pytest.fixture
def spec_path(tmp_path):
    p = tmp_path / "spec.json"
    p.write_text(json.dumps(SPEC))
    return str(p)


def test_run_passing_spec(spec_path, capsys):
    assert main(["run", spec_path]) == 0
    out = capsys.readouterr().out
    assert "PASS [0] verify_pathdual_iso" in out
    assert "all checks passed (2 checks)" in out


def test_run_json_output_is_canonical(spec_path, capsys):
    assert main(["run", spec_path, "--json", "--seed", "6"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["schema"] == "dualis-report/1"
    assert payload["seed"] == 6
    assert payload["passed"] is True
    assert len(payload["checks"]) == 2


def test_run_writes_machine_report_file(spec_path, tmp_path, capsys):
    out_path = tmp_path / "report.json"
    assert main(["run", spec_path, "--out", str(out_path)]) == 0
    text = capsys.readouterr().out
    assert "all checks passed" in text
    payload = json.loads(out_path.read_text())
    assert payload["schema"] == "dualis-report/1"


def test_run_failing_check_exits_one(tmp_path, capsys):
    doc = {"objects": {"line": {"type": "quiver-template", "name": "line"}},
           "checks": [{"check": "semiperfect", "refs": ["line"],
                       "params": {"side": "right", "radius": 2,
                                  "bound": 30}}]}
    p = tmp_path / "fail.json"
    p.write_text(json.dumps(doc))
    assert main(["run", str(p), "--json"]) == 1
    payload = json.loads(capsys.readouterr().out)
    assert payload["passed"] is False
    assert payload["checks"][0]["replay"]["refs"] == ["line"]


def test_input_errors_exit_two(tmp_path, capsys):
    assert main(["run", str(tmp_path / "missing.json")]) == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"objects": {')
    assert main(["run", str(bad)]) == 2
    err = capsys.readouterr().err
    assert "cannot read" in err
    assert "line" in err


def test_suite_verb(capsys):
    assert main(["suite", "randomized", "--trials", "5", "--seed", "3"]) == 0
    assert "adjunction-lifts" in capsys.readouterr().out
    assert main(["suite", "randomized", "--trials", "5", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["passed"] is True
    assert main(["suite", "randomized", "--field", "fp:banana"]) == 2


def test_dualize_both_directions(spec_path, capsys):
    assert main(["dualize", spec_path, "--object", "mat2", "--json"]) == 0
    block = json.loads(capsys.readouterr().out)
    assert block["type"] == "algebra"
    assert block["dim"] == 4
    assert block["unit"] == ["1", "0", "0", "1"]
    assert main(["dualize", spec_path, "--object", "nilp", "--json"]) == 0
    block = json.loads(capsys.readouterr().out)
    assert block["type"] == "coalgebra"
    assert block["counit"] is None
    assert block["comult"] == [[1, 0, 0, "1"]]


def test_unitalize_and_counitalize(spec_path, capsys):
    assert main(["unitalize", spec_path, "--object", "nilp", "--json"]) == 0
    block = json.loads(capsys.readouterr().out)
    assert block["dim"] == 3
    assert block["unit"] == ["0", "0", "1"]
    assert main(["counitalize", spec_path, "--object", "mat2",
                 "--json"]) == 0
    block = json.loads(capsys.readouterr().out)
    assert block["dim"] == 5
    assert block["counit"] == ["0", "0", "0", "0", "1"]


def test_object_kind_mismatch_and_missing_object(spec_path, capsys):
    assert main(["unitalize", spec_path, "--object", "q2"]) == 2
    assert main(["dualize", spec_path, "--object", "nope"]) == 2
    err = capsys.readouterr().err
    assert "nope" in err


def test_coreflexive_verb(spec_path, capsys):
    assert main(["coreflexive", spec_path, "--object", "mat2"]) == 0
    assert "PASS coreflexive" in capsys.readouterr().out
    assert main(["coreflexive", spec_path, "--object", "mat2",
                 "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload == {"bijective": True, "kernel_rank": 0,
                       "source_dim": 4, "target_dim": 4}


def test_semiperfect_verb(capsys):
    assert main(["semiperfect", "ray", "--side", "right", "--radius", "3",
                 "--bound", "50"]) == 0
    assert main(["semiperfect", "ray", "--side", "left", "--radius", "3",
                 "--bound", "50"]) == 1
    assert main(["semiperfect", "line"]) == 1
    assert main(["semiperfect", "star:3", "--side", "right"]) == 0
    assert main(["semiperfect", "banana"]) == 2
    capsys.readouterr()
    assert main(["semiperfect", "loop", "--side", "both", "--json"]) == 1
    rows = json.loads(capsys.readouterr().out)
    assert [r["side"] for r in rows] == ["left", "right"]
    assert all(r["status"] == "fails" for r in rows)


def test_module_entrypoint_subprocess(spec_path):
    proc = subprocess.run(
        [sys.executable, "-m", "dualis.cli", "run", spec_path, "--json"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["passed"] is True
    proc = subprocess.run([sys.executable, "-m", "dualis.cli", "--version"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "0.1.0"


def test_reports_byte_identical_across_processes(spec_path):
    def grab():
        proc = subprocess.run(
            [sys.executable, "-m", "dualis.cli", "run", spec_path,
             "--json", "--seed", "12"],
            capture_output=True, text=True)
        assert proc.returncode == 0
        return proc.stdout

    assert grab() == grab()

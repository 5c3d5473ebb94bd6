import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest

from septower.cli import execute, load_schema, main, render

DOCS = Path(__file__).resolve().parent.parent / "docs"

Q = {"kind": "Q"}
F5 = {"kind": "Fp", "p": 5}
S3_COSET = {"coset": {"degree": 3, "generators": ["(1 2)", "(1 2 3)"], "subgroup": ["(1 2)"]}}


def run(job, *args, tmp_path):
    src = tmp_path / "job.json"
    src.write_text(json.dumps(job))
    out = tmp_path / "report.json"
    code = main(["--input", str(src), "--output", str(out), "--quiet", *args])
    return code, json.loads(out.read_text()), out.read_text()


def test_degree_of_gaussian(tmp_path):
    code, rep, _ = run({"field": Q, "algebra": {"cyclic": [1, 0, 1]}, "command": "degree"}, tmp_path=tmp_path)
    assert code == 0 and rep == {"degree": 2}


def test_tower_of_split_pair(tmp_path):
    job = {"field": Q, "algebra": {"product": ["unit", "unit"]}, "command": "tower"}
    code, rep, _ = run(job, tmp_path=tmp_path)
    assert code == 0
    assert [lv["dim_over_k"] for lv in rep["levels"]] == [1, 2, 2, 0]
    assert rep["degree"] == 2
    assert all({"n", "dim_over_k", "dim_over_previous", "separable"} <= lv.keys() for lv in rep["levels"])


def test_coset_degree(tmp_path):
    code, rep, _ = run({"field": F5, "algebra": S3_COSET, "command": "degree"}, tmp_path=tmp_path)
    assert code == 0 and rep == {"degree": 3, "index": 3}


def test_sigma_serialization():
    rep = execute({"field": Q, "algebra": {"cyclic": {"poly": [1, 0, 1]}}, "command": "separable"})
    assert rep == {"separable": True, "sigma": ["1/2", "0", "0", "-1/2"]}
    rep = execute({"field": F5, "algebra": {"cyclic": [1, 0, 1]}, "command": "separable"})
    assert all(isinstance(c, int) for c in rep["sigma"])
    ext = {"kind": "ext", "minpoly": [1, 0, 1]}
    rep = execute({"field": ext, "algebra": "unit", "command": "separable"})
    assert rep["sigma"] == [["1", "0"]]


def test_structure_constants_source():
    job = {
        "field": Q,
        "algebra": {"structure_constants": {"dim": 2, "mult": [1, 0, 0, 0, 0, 0, 0, 1], "unit": [1, 1]}},
        "command": "validate",
    }
    assert execute(job) == {"valid": True, "dim": 2, "commutative": True}


def test_degree_one_report():
    rep = execute({"field": Q, "algebra": "unit", "command": "degree-one"})
    assert rep["degree_one"] is True and rep["tower_degree"] == 1


@pytest.mark.parametrize("job, code, kind", [
    ({"field": Q, "algebra": {"cyclic": [0, 0, 1]}, "command": "tower"}, 2, "NotSeparable"),
    ({"field": Q, "algebra": {"matrix": 2}, "command": "tower"}, 2, "NotCommutative"),
    ({"field": Q, "algebra": {"cyclic": [1, 0, 1]}, "command": "nope"}, 3, "InputError"),
    ({"field": {"kind": "Fp", "p": 6}, "algebra": "unit", "command": "degree"}, 3, "InputError"),
    ({"field": Q, "algebra": {"structure_constants": {"dim": 2, "mult": [0, 0, 0, 0, 0, 0, 0, 1],
                                                      "unit": [1, 0]}}, "command": "validate"}, 3, "NotUnital"),
    ({"field": Q, "algebra": {"split": 9}, "command": "degree"}, 3, "InputError"),
])
def test_error_exit_codes(tmp_path, job, code, kind):
    got, rep, _ = run(job, tmp_path=tmp_path)
    assert got == code
    assert rep["error"]["kind"] == kind
    jsonschema.validate(rep, load_schema("report"))


def test_nesting_limit():
    src = "unit"
    for _ in range(6):
        src = {"product": [src]}
    with pytest.raises(Exception) as exc:
        execute({"field": Q, "algebra": src, "command": "validate"})
    assert type(exc.value).__name__ == "InputError"


def test_max_dim_flag(tmp_path):
    job = {"field": Q, "algebra": {"split": 3}, "command": "degree"}
    assert run(job, "--max-dim", "2", tmp_path=tmp_path)[0] == 3
    assert run(job, "--max-dim", "3", tmp_path=tmp_path)[0] == 0


def test_bad_json(tmp_path):
    src = tmp_path / "job.json"
    src.write_text("{not json")
    out = tmp_path / "r.json"
    assert main(["--input", str(src), "--output", str(out), "--quiet"]) == 3
    assert json.loads(out.read_text())["error"]["kind"] == "InputError"


def test_threads_env(tmp_path, monkeypatch):
    job = {"field": Q, "algebra": "unit", "command": "degree"}
    monkeypatch.setenv("SEPTOWER_THREADS", "0")
    assert run(job, tmp_path=tmp_path)[0] == 3
    monkeypatch.setenv("SEPTOWER_THREADS", "2")
    assert run(job, tmp_path=tmp_path)[0] == 0


def test_check_command_and_seed(tmp_path):
    job = {"field": F5, "algebra": {"cyclic": [2, 0, 1]}, "command": "check"}
    code, rep, text_a = run(job, "--seed", "7", tmp_path=tmp_path)
    assert code == 0 and rep["passed"]
    assert {c["status"] for c in rep["checks"]} <= {"pass", "skip"}
    _, _, text_b = run(job, "--seed", "7", tmp_path=tmp_path)
    assert text_a == text_b


def test_seed_does_not_touch_core(tmp_path):
    job = {"field": Q, "algebra": {"cyclic": [-2, 0, 0, 1]}, "command": "tower"}
    a = run(job, "--seed", "1", tmp_path=tmp_path)[2]
    b = run(job, "--seed", "99", tmp_path=tmp_path)[2]
    assert a == b


@pytest.mark.parametrize("job", [
    {"field": Q, "algebra": {"tensor": [{"cyclic": [1, 0, 1]}, {"cyclic": [-2, 0, 1]}]}, "command": "tower"},
    {"field": F5, "algebra": S3_COSET, "command": "check"},
    {"field": {"kind": "ext", "p": 5, "minpoly": [3, 0, 1]}, "algebra": {"cyclic": [3, 0, 1]}, "command": "separable"},
    {"field": Q, "algebra": "zero", "command": "tower"},
])
def test_reports_match_schema_and_are_deterministic(job):
    a = render(execute(job))
    b = render(execute(json.loads(json.dumps(job))))
    assert a == b
    jsonschema.validate(json.loads(a), load_schema("report"))


def test_job_schema_is_valid():
    for name in ("job", "report"):
        jsonschema.Draft202012Validator.check_schema(load_schema(name))


def test_shipped_schemas_match_docs():
    for name in ("job", "report"):
        assert json.loads((DOCS / f"{name}.schema.json").read_text()) == load_schema(name)


def test_console_entry_point(tmp_path):
    job = json.dumps({"field": Q, "algebra": {"cyclic": [1, 0, 1]}, "command": "degree"})
    proc = subprocess.run([sys.executable, "-m", "septower.cli"], input=job, capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == {"degree": 2}

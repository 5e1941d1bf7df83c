"""CLI contract: golden reports, exit codes, replay lines."""

import os
import subprocess
import sys

import pytest

from picardlab.cli import main

from conftest import FIXTURES, GOLDEN, read_json_lines

UPDATE = os.environ.get("PICARDLAB_UPDATE_GOLDEN") == "1"

# (golden file, argv, expected exit code)
GOLDEN_RUNS = [
    ("check_trivial.jsonl", ["check", "trivial.json", "--cases", "5"], 0),
    ("check_doubling.jsonl", ["check", "doubling.json", "--cases", "5", "--seed", "11"], 0),
    ("check_z4_skeletal.jsonl", ["check", "z4_skeletal.json", "--cases", "5"], 0),
    ("check_flip_comm.jsonl", ["check", "flip_comm.json", "--cases", "10"], 1),
    ("fuzz_seed1.jsonl", ["fuzz", "--seed", "1", "--cases", "3"], 0),
]


def run(capsys, argv):
    argv = [str(FIXTURES / a) if a.endswith(".json") else a for a in argv]
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def golden_check(name, text):
    path = GOLDEN / name
    if UPDATE:
        path.write_text(text)
    assert path.exists(), f"missing golden {name}; rerun with PICARDLAB_UPDATE_GOLDEN=1"
    assert text == path.read_text()


@pytest.mark.parametrize("name, argv, code", GOLDEN_RUNS, ids=[g[0] for g in GOLDEN_RUNS])
def test_golden_reports(capsys, name, argv, code):
    got, out, _ = run(capsys, argv)
    assert got == code
    golden_check(name, out)
    again, out2, _ = run(capsys, argv)
    assert (again, out2) == (got, out)


def test_reports_are_sorted_with_stable_keys(capsys):
    _, out, _ = run(capsys, ["check", "z4_skeletal.json", "--cases", "3"])
    records = read_json_lines(out)
    names = [r["check"] for r in records]
    assert names == sorted(names)
    for line in out.splitlines():
        keys = list(__import__("json").loads(line))
        assert keys == sorted(keys)
    assert all(r["status"] == "pass" for r in records)


def test_trivial_stack_counts(capsys):
    _, out, _ = run(capsys, ["check", "trivial.json", "--cases", "2"])
    counts = {r["check"]: r for r in read_json_lines(out)}["strict.hat.power_counts"]
    assert counts["detail"] == {str(n): {"arrows": 1, "objects": 1} for n in range(5)}


def test_failure_prints_counterexample_and_replay(capsys):
    code, out, err = run(capsys, ["check", "flip_comm.json", "--cases", "10"])
    assert code == 1
    hexagon = {r["check"]: r for r in read_json_lines(out)}["skeletal.axioms.hexagon"]
    assert hexagon["status"] == "fail"
    assert {"X", "Y", "Z"} <= set(hexagon["counterexample"])
    assert "replay: picardlab check" in err and "--seed 3 --cases 10" in err


@pytest.mark.parametrize(
    "argv",
    [
        ["check", "bad_shape.json"],
        ["check", "bad_json.json"],
        ["check", "missing.json"],
        ["apply", "integers.json", "--matrix", "1,1,1", "--objects", "3;5"],
        ["apply", "integers.json", "--matrix", "1,x", "--objects", "3;5"],
        ["apply", "integers.json", "--matrix", "1,1", "--objects", "3,1;5"],
        ["normalize", "integers.json", "--expr", "(x1 + ", "--objects", "1"],
    ],
)
def test_input_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, argv)
    assert code == 2
    assert out == "" and err.startswith("error:")


def test_parse_error_names_line_and_field(capsys):
    _, _, err = run(capsys, ["check", "bad_shape.json"])
    assert "bad_shape.json:4: field 'd'" in err
    _, _, err = run(capsys, ["check", "bad_json.json"])
    assert "bad_json.json:4:" in err


def test_bad_flags_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["check", str(FIXTURES / "trivial.json"), "--seed", "-4"])
    assert info.value.code == 2
    capsys.readouterr()


@pytest.mark.parametrize(
    "matrix, expected",
    [("1,1", "8"), ("2,-1", "1"), ("1,0;0,1", "3;5"), ("0,1;1,0", "5;3"), ("0,0", "0")],
)
def test_apply(capsys, matrix, expected):
    code, out, _ = run(capsys, ["apply", "integers.json", "--matrix", matrix, "--objects", "3;5"])
    assert code == 0 and out == expected + "\n"


def test_apply_skeletal(capsys):
    code, out, _ = run(capsys, ["apply", "z4_skeletal.json", "--matrix", "1,1", "--objects", "3;3", "--model", "skeletal"])
    assert (code, out) == (0, "2\n")


def test_normalize(capsys):
    code, out, _ = run(capsys, ["normalize", "z4_skeletal.json", "--expr", "(x2 + x1)",
                                "--objects", "1;2", "--model", "skeletal"])
    assert code == 0
    (record,) = read_json_lines(out)
    assert record["canonical"] == "(x1 + x2)" and record["steps"] == ["comm@root"]
    assert record["arrow"] == {"payload": [-1], "source": [3], "target": [3]}


def test_fuzz_zero_cases_is_empty(capsys):
    assert run(capsys, ["fuzz", "--cases", "0"]) == (0, "", "")


def test_fuzz_seeds_differ_in_cases_not_status(capsys):
    _, a, _ = run(capsys, ["fuzz", "--seed", "1", "--cases", "2"])
    _, b, _ = run(capsys, ["fuzz", "--seed", "2", "--cases", "2"])
    ra, rb = read_json_lines(a), read_json_lines(b)
    assert [(r["check"], r["status"]) for r in ra] == [(r["check"], r["status"]) for r in rb]
    assert ra[-1]["detail"]["digest"] != rb[-1]["detail"]["digest"]


def test_fuzz_jobs_do_not_change_bytes(capsys):
    _, serial, _ = run(capsys, ["fuzz", "--seed", "5", "--cases", "2"])
    _, parallel, _ = run(capsys, ["fuzz", "--seed", "5", "--cases", "2", "--jobs", "2"])
    assert serial == parallel


def test_cases_env_default(capsys, monkeypatch):
    monkeypatch.setenv("PICARDLAB_CASES", "1")
    _, out, _ = run(capsys, ["fuzz", "--seed", "1"])
    assert read_json_lines(out)[-1]["detail"]["cases"] == 1
    monkeypatch.setenv("PICARDLAB_CASES", "many")
    code, _, err = run(capsys, ["fuzz"])
    assert code == 2 and "PICARDLAB_CASES" in err


def test_timing_is_opt_in(capsys):
    _, plain, _ = run(capsys, ["check", "trivial.json", "--cases", "1"])
    _, timed, _ = run(capsys, ["check", "trivial.json", "--cases", "1", "--timing"])
    assert "timing_ms" not in plain
    assert all("timing_ms" in r for r in read_json_lines(timed))


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "picardlab", "apply", str(FIXTURES / "integers.json"), "--matrix", "1,1", "--objects", "3;5"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0 and proc.stdout == "8\n"

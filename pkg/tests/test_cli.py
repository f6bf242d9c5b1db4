import json
import subprocess
import sys

import pytest

from sandpilion.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_tau_methods(capsys):
    for method in ("closed", "determinant", "brute"):
        code, out, _ = run(capsys, "tau", "--p", "2", "--s1", "1", "--s2", "1", "--method", method)
        assert code == 0
        assert out.strip() == "21"
    assert run(capsys, "tau", "--p", "1", "--method", "brute")[1].strip() == "8"


def test_tau_bad_input(capsys):
    code, _, err = run(capsys, "tau", "--p", "0", "--s1", "1", "--s2", "1")
    assert code == 2
    assert "error" in err


def test_tau_budget(capsys, monkeypatch):
    monkeypatch.setenv("SANDPILION_BUDGET", "6")
    code, _, _ = run(capsys, "tau", "--p", "3", "--method", "brute")
    assert code == 3


def test_tau_big_is_plain_decimal(capsys):
    _, out, _ = run(capsys, "tau", "--p", "60", "--s1", "4", "--s2", "4")
    assert out.strip().isdigit()
    assert len(out.strip()) > 25


def test_group(capsys):
    _, out, _ = run(capsys, "group", "--p", "4", "--method", "predictor")
    d = json.loads(out)
    assert d["invariant_factors"] == ["144"]
    assert d["case"] == "PMod3Is1"
    _, out, _ = run(capsys, "group", "--p", "2", "--s1", "2", "--s2", "2", "--method", "snf")
    d = json.loads(out)
    assert d["invariant_factors"] == ["4", "32"]
    assert "case" not in d
    _, out, _ = run(capsys, "group", "--p", "2", "--method", "predictor")
    assert json.loads(out)["case"] == "MergedBoundary"


def test_comb(capsys):
    _, out, _ = run(capsys, "comb", "--p", "6")
    d = json.loads(out)
    assert (d["mu"], d["leaves"], d["cyclic"]) == (1, 6, True)
    d = json.loads(run(capsys, "comb", "--p", "2")[1])
    assert (d["mu"], d["leaves"]) == (1, 2)
    d = json.loads(run(capsys, "comb", "--p", "8")[1])
    assert abs(int(d["claim2_minor"])) == 64
    assert d["claim1_odd"] is True
    assert run(capsys, "comb", "--p", "1")[0] == 2


def test_gf(capsys):
    _, out, _ = run(capsys, "gf", "--s1", "1", "--s2", "1", "--terms", "4")
    assert json.loads(out) == ["8", "21", "55", "144"]
    a = run(capsys, "gf", "--s1", "1", "--s2", "2", "--terms", "3")[1]
    b = run(capsys, "gf", "--s1", "2", "--s2", "1", "--terms", "3")[1]
    assert a == b
    assert run(capsys, "gf", "--s1", "0", "--s2", "1")[0] == 2


def test_export_dot(capsys, tmp_path):
    out = tmp_path / "t.dot"
    code, _, _ = run(capsys, "export", "--family", "bicoconut", "--p", "5", "--s1", "3",
                     "--s2", "4", "--format", "dot", "--output", str(out))
    assert code == 0
    text = out.read_text()
    nodes = [line for line in text.splitlines() if line.strip().endswith(";") and "--" not in line]
    assert len(nodes) == 12


def test_export_json(capsys):
    _, out, _ = run(capsys, "export", "--family", "comb", "--p", "3", "--format", "json", "--cone")
    d = json.loads(out)
    assert len(d["vertices"]) == 6


def test_verify_ok(capsys, tmp_path):
    report = tmp_path / "r.jsonl"
    code, out, _ = run(capsys, "verify", "--p", "1..6", "--s1", "1..3", "--s2", "1..3",
                       "--checks", "tau,group,symmetry", "--output", str(report))
    assert code == 0
    assert out.splitlines()[0] == "54 points, 162 checks, 0 failures"
    lines = report.read_text().splitlines()
    assert len(lines) == 54
    first = json.loads(lines[0])
    assert (first["p"], first["s1"], first["s2"]) == (1, 1, 1)
    assert "timestamp" in first


def test_verify_relation_checks(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "--p", "2..5", "--checks", "trunk,detMprime,cokernel,N",
                       "--output", str(tmp_path / "r.jsonl"))
    assert code == 0
    assert out.startswith("64 points")


def test_verify_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    args = ["verify", "--p", "1..4", "--s1", "1..2", "--s2", "1..2",
            "--checks", "tau,group,gf,leafgen", "--no-timestamp"]
    run(capsys, *args, "--output", str(a))
    run(capsys, *args, "--output", str(b), "--jobs", "2")
    assert a.read_bytes() == b.read_bytes()


def test_verify_bad_input(capsys, tmp_path):
    out = str(tmp_path / "r.jsonl")
    assert run(capsys, "verify", "--p", "5..3", "--output", out)[0] == 2
    assert run(capsys, "verify", "--p", "x", "--output", out)[0] == 2
    assert run(capsys, "verify", "--p", "1..2", "--checks", "bogus", "--output", out)[0] == 2


def test_verify_failure_exit(capsys, tmp_path, monkeypatch):
    import sandpilion.verify as verify

    real = verify.t_closed
    monkeypatch.setattr(verify, "t_closed", lambda params: real(params) + (params.p == 2))
    code, out, _ = run(capsys, "verify", "--p", "1..2", "--s1", "1", "--s2", "1",
                       "--checks", "tau", "--output", str(tmp_path / "r.jsonl"))
    assert code == 1
    lines = out.splitlines()
    assert lines[0] == "2 points, 2 checks, 1 failures"
    assert json.loads(lines[1])["p"] == 2


def test_verify_csv(capsys, tmp_path):
    out = tmp_path / "t.csv"
    code, _, _ = run(capsys, "verify", "--p", "1..2", "--s1", "1..2", "--s2", "1",
                     "--format", "csv", "--output", str(out))
    assert code == 0
    rows = out.read_text().splitlines()
    assert rows[0].startswith("p,s1,s2,t_closed,tau_determinant,tau_match")
    assert rows[1] == "1,1,1,8,8,true,8,8,true"


def test_bad_method_is_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["tau", "--p", "2", "--method", "magic"])
    assert exc.value.code == 2


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "sandpilion", "tau", "--p", "2"],
        capture_output=True, text=True, check=False,
    )
    assert res.returncode == 0
    assert res.stdout.strip() == "21"

import io
import json
import subprocess
import sys


from ordmatch.cli import main


def run(argv, capsys, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_patterns_r3(capsys):
    code, out, _ = run(["patterns", "--r", "3"], capsys)
    rows = json.loads(out)
    assert code == 0 and len(rows) == 10
    assert {r["word"] for r in rows} >= {"AAABBB", "AABABB", "ABABAB"}


def test_patterns_filters(capsys):
    _, out, _ = run(["patterns", "--r", "4", "--collectable"], capsys)
    assert len(json.loads(out)) == 27
    _, out, _ = run(["patterns", "--r", "4", "--partite"], capsys)
    assert len(json.loads(out)) == 8
    _, out, _ = run(["patterns", "--r", "4", "--big-brothers"], capsys)
    assert len(json.loads(out)) == 3
    _, out, _ = run(["patterns", "--r", "3", "--format", "csv"], capsys)
    assert out.splitlines()[0].startswith("word,") and len(out.splitlines()) == 11


def test_analyze_stdin(capsys, monkeypatch):
    code, out, _ = run(["analyze", "--input", "-", "--pattern", "AABB"], capsys, "AABBCC\n", monkeypatch)
    assert code == 0 and json.loads(out)["size"] == 3


def test_analyze_all_and_census(capsys):
    code, out, _ = run(["analyze", "--input", "AABACDCDDBCB", "--all", "--census"], capsys)
    data = json.loads(out)
    assert code == 0 and len(data["maxima"]) == 10 and data["census"]["AABABB"] == 1


def test_extract(capsys):
    code, out, _ = run(["extract", "--input", "AABBCC", "--params", "5/2,1,1"], capsys)
    data = json.loads(out)
    assert code == 0 and data["size"] == 3 and data["guarantee"] == "5/2"
    code, out, _ = run(["extract", "--input", "AABBCCDDEE", "--params", "1,1,1,1,1,1,1,1,1", "--improved3"], capsys)
    assert code == 2
    code, out, _ = run(["extract", "--input", "AAABBBCCCDDDEEE", "--params", "1,1,1,1,1,1,1,1,1", "--improved3"], capsys)
    assert code == 0 and json.loads(out)["size"] == 5


def test_extract_errors(capsys):
    code, _, err = run(["extract", "--input", "AABBCC", "--params", "3,1,1"], capsys)
    assert code == 2 and "need n" in err
    code, _, err = run(["extract", "--input", "AABABBCCC", "--params", "1,1,1,1,1,1,1,1,1", "--clean"], capsys)
    assert code == 2 and "clean" in err
    code, _, _ = run(["extract", "--input", "AABB", "--params", "x,y"], capsys)
    assert code == 2


def test_enumerate(capsys):
    code, out, _ = run(["enumerate", "--r", "3", "--n", "3", "--check", "count"], capsys)
    assert code == 0 and json.loads(out)["count"] == 280
    code, out, _ = run(["enumerate", "--r", "2", "--n", "7", "--check", "base2", "--params", "2,3,1"], capsys)
    data = json.loads(out)
    assert code == 0 and data["outcomes"]["failed"] == 0
    code, out, _ = run(["enumerate", "--r", "2", "--n", "8", "--check", "base2", "--params", "2,2,2"], capsys)
    assert json.loads(out)["precondition"] is False


def test_guard_exit_code(capsys):
    code, _, err = run(["enumerate", "--r", "2", "--n", "6", "--check", "count", "--guard-enum", "100"], capsys)
    assert code == 3 and "guard" in err


def test_construct(capsys):
    code, out, _ = run(["construct", "blowup", "--outer", "ABACCBABC", "--inner", "XYZYZXZXY", "--validate"], capsys)
    data = json.loads(out)
    assert code == 0 and data["word"] == "ABCDEFBCAGHIHIGEFDCABFDEIGH" and data["m_inheritable"]
    code, out, _ = run(["construct", "chain", "--pattern", "AABBAB", "--n", "3", "--validate"], capsys)
    assert code == 0 and json.loads(out)["is_chain"]
    code, out, _ = run(["construct", "layered", "--r", "2", "--spec", "AABB:2,ABBA:2,ABAB:2", "--validate"], capsys)
    assert code == 0 and json.loads(out)["n"] == 8
    code, out, _ = run(["construct", "p1star", "--n", "4", "--validate"], capsys)
    assert code == 0 and set(json.loads(out)["census"]) == {"AAABBB", "AABABB"}
    code, _, _ = run(["construct", "chain", "--pattern", "ABABAB", "--n", "3"], capsys)
    assert code == 2
    code, _, _ = run(["construct", "blowup"], capsys)
    assert code == 2


def test_sample_reproducible(capsys):
    _, a, _ = run(["sample", "--r", "3", "--n", "6", "--seed", "9"], capsys)
    _, b, _ = run(["sample", "--r", "3", "--n", "6", "--seed", "9"], capsys)
    assert a == b and json.loads(a)["n"] == 6
    _, c, _ = run(["sample", "--r", "3", "--n", "6", "--seed", "9", "--scheme", "online"], capsys)
    assert json.loads(c)["scheme"] == "online"


def test_experiment_outputs(capsys, tmp_path):
    out_json, out_csv = tmp_path / "r.json", tmp_path / "r.csv"
    argv = ["experiment", "--pattern", "ABBA", "--grid", "20,40,80", "--trials", "4", "--seed", "2"]
    code, a, _ = run(argv + ["--out", str(out_json), "--csv", str(out_csv)], capsys)
    _, b, _ = run(argv + ["--workers", "3"], capsys)
    assert code == 0 and a == b
    assert json.loads(out_json.read_text())["sizes"]["20"]
    assert out_csv.read_text().startswith("n,trial,size")


def test_verify_tables(capsys):
    code, out, err = run(["verify", "--suite", "tables"], capsys)
    assert code == 0 and json.loads(out)["ok"] and "PASS tables" in err


def test_usage_errors(capsys):
    assert main(["bogus"]) == 2
    assert main([]) == 2
    assert main(["analyze", "--input", "ABAB"]) == 2
    assert main(["analyze", "--input", "ABA", "--pattern", "ABAB"]) == 2


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "ordmatch", "analyze", "--input", "-", "--pattern", "AABB"],
        input="AABBCC", capture_output=True, text=True, check=False,
    )
    assert res.returncode == 0 and json.loads(res.stdout)["size"] == 3


def test_guard_flag_does_not_leak(capsys):
    import os

    run(["enumerate", "--r", "2", "--n", "3", "--check", "count", "--guard-enum", "5"], capsys)
    assert "ORDMATCH_GUARD_ENUM" not in os.environ

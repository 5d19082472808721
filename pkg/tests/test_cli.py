import json
import subprocess
import sys

import pytest

from invhoch.cli import EXIT_CAP, EXIT_INPUT, EXIT_MISMATCH, EXIT_OK, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture(scope="module")
def corpus(tmp_path_factory):
    d = tmp_path_factory.mktemp("corpus")
    assert main(["fixtures", "--emit", str(d)]) == EXIT_OK
    return d


def test_fixtures_emit(corpus, capsys, tmp_path):
    files = sorted(p.name for p in corpus.iterdir())
    assert len(files) == 20
    code, out, _ = run(capsys, "fixtures", "--emit", str(tmp_path), "--field", "2")
    assert code == EXIT_OK and "skipped dual_anti" in out
    assert len(list(tmp_path.iterdir())) == 16


def test_validate_corpus(corpus, capsys):
    code, out, _ = run(capsys, "validate", *map(str, sorted(corpus.iterdir())))
    assert code == EXIT_OK
    assert out.count("PASS") == 20


def test_validate_corrupted(corpus, tmp_path, capsys):
    d = json.loads((corpus / "k_Z2_Q.json").read_text())
    d["mul"][1][0] = ["0", "2"]  # g e = 2g
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(d))
    code, out, _ = run(capsys, "--json", "validate", str(p))
    assert code == EXIT_MISMATCH
    rep = json.loads(out)
    fails = {f["check"]: f["witness"] for f in rep["results"][0]["failures"]}
    i, j, k, l = fails["associativity"]
    c = [[[int(x) for x in row] for row in plane] for plane in d["mul"]]

    def mult(x, y):
        return [sum(x[a] * y[b] * c[a][b][r] for a in range(2) for b in range(2)) for r in range(2)]

    e = [[1, 0], [0, 1]]
    assert mult(mult(e[i], e[j]), e[k])[l] != mult(e[i], mult(e[j], e[k]))[l]
    assert "unit" in fails


def test_validate_broken_bimodule(corpus, tmp_path, capsys):
    d = json.loads((corpus / "dual_Q.regular.json").read_text())
    d["algebra"] = str(corpus / "dual_Q.json")
    d["involution"] = [["1", "0"], ["0", "-1"]]
    p = tmp_path / "badmod.json"
    p.write_text(json.dumps(d))
    code, out, _ = run(capsys, "validate", str(p))
    assert code == EXIT_MISMATCH and "(a m)* = m* a*" in out and "witness" in out


def test_validate_parse_error(tmp_path, capsys):
    p = tmp_path / "x.json"
    p.write_text('{"field": {"type": "rational"}, "dim": 1, "unit": ["one"]}')
    code, out, _ = run(capsys, "validate", str(p))
    assert code == EXIT_INPUT and "unit[0]" in out


def test_hh_regular(capsys):
    code, out, _ = run(capsys, "--json", "hh", "--algebra", "fixture:k", "--variant", "hh")
    rep = json.loads(out)
    assert code == EXIT_OK and rep["dims"] == [1, 0, 0, 0]


def test_hh_z2_oracle_check(capsys):
    code, out, _ = run(capsys, "--json", "hh", "--algebra", "fixture:k_Z2", "--variant", "ihh",
                       "--max-degree", "4", "--oracle", "check")
    rep = json.loads(out)
    assert code == EXIT_OK
    assert rep["dims"] == [2, 0, 0, 0] and rep["oracle_agrees"] and rep["certified"]
    assert {"command", "dims", "oracle_dims", "certificate", "seconds", "exit_code"} <= set(rep)


def test_hh_char2_uncertified(capsys):
    code, out, _ = run(capsys, "hh", "--algebra", "fixture:k", "--field", "2", "--variant", "ihh")
    assert code == EXIT_OK
    assert "uncertified" in out and "oracle dims:  [1, 1, 1, 1]" in out


def test_hh_oracle_only(capsys):
    code, out, _ = run(capsys, "--json", "hh", "--algebra", "fixture:dual", "--variant", "cohh",
                       "--oracle", "only")
    assert code == EXIT_OK and json.loads(out)["dims"] == [2, 1, 1, 1]


def test_hh_module_file(corpus, capsys):
    code, out, _ = run(capsys, "--json", "hh", "--algebra", str(corpus / "dual_anti_Q.json"),
                       "--module", str(corpus / "dual_anti_Q.regular.json"), "--variant", "icohh")
    assert code == EXIT_OK and json.loads(out)["dims"] == [1, 0, 0, 1]


def test_hh_mismatched_module(corpus, capsys):
    code, _, err = run(capsys, "hh", "--algebra", str(corpus / "dual_Q.json"),
                       "--module", str(corpus / "k_Z2_Q.regular.json"))
    assert code == EXIT_INPUT and "different algebra" in err


def test_size_cap_exit(capsys, monkeypatch):
    monkeypatch.setenv("INVHOCH_MAX_ENTRIES", "50")
    code, _, err = run(capsys, "hh", "--algebra", "fixture:dual")
    assert code == EXIT_CAP and "cap" in err
    monkeypatch.delenv("INVHOCH_MAX_ENTRIES")
    code, _, _ = run(capsys, "hh", "--algebra", "fixture:dual", "--max-entries", "50")
    assert code == EXIT_CAP


@pytest.mark.parametrize("argv", [
    ["hh", "--algebra", "fixture:nope"],
    ["hh", "--algebra", "fixture:k", "--field", "4"],
    ["hh", "--algebra", "fixture:dual_anti", "--field", "2"],
    ["hh", "--algebra", "/nonexistent.json"],
    ["hh", "--algebra", "fixture:k", "--max-degree", "0"],
])
def test_bad_input(argv, capsys):
    assert run(capsys, *argv)[0] == EXIT_INPUT


@pytest.mark.parametrize("name", ["k", "k_Z2", "dual_anti"])
def test_compare_braun(name, capsys):
    code, out, _ = run(capsys, "--json", "compare-braun", "--algebra", f"fixture:{name}", "--weight", "4")
    rep = json.loads(out)
    assert code == EXIT_OK and rep["ok"] and rep["signs"] == [-1, 1, -1, 1]


def test_console_entry_points(tmp_path):
    for cmd in (["invhoch"], [sys.executable, "-m", "invhoch"]):
        r = subprocess.run(cmd + ["hh", "--algebra", "fixture:k"], capture_output=True, text=True)
        assert r.returncode == 0 and "[1, 0, 0, 0]" in r.stdout

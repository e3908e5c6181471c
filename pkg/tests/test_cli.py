import json
import shutil
import subprocess
import sys

import pytest

from sots.classifier import ClassificationRecord, decide
from sots.cli import EXIT_USAGE, CacheFormatError, FileCache, main
from sots.two_squares import TwoSquaresVerdict


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def cache_path(tmp_path):
    return tmp_path / "cache.jsonl"


def test_decide_exit_codes(capsys, cache_path):
    c = str(cache_path)
    code, out, _ = run(capsys, "decide", "6", "7", "--cache", c)
    assert code == 0 and "verdict: yes" in out
    code, out, _ = run(capsys, "decide", "9", "3", "--cache", c)
    assert code == 0 and "witness: 27^2 + 1^2" in out
    code, out, _ = run(capsys, "decide", "13", "5", "--cache", c)
    assert code == 1 and "rule: base-5-mod-8" in out
    code, out, _ = run(capsys, "decide", "7", "13", "--no-cache", "--trial-bound", "50", "--rho-cap", "1")
    assert code == 2 and "blocking cofactor" in out


def test_decide_even_exponent_short_circuit(capsys):
    code, out, _ = run(capsys, "decide", "6", "4", "--no-cache", "--json")
    rec = ClassificationRecord.from_dict(json.loads(out)["record"])
    assert code == 0 and rec.verdict.witness == (36, 1) and rec.rule == "even-exponent"


def test_usage_errors(capsys):
    for argv in (["decide", "6", "x"], ["decide", "0", "3"], ["bogus"], ["chart", "--a-max", "-1"]):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == EXIT_USAGE
    code, _, err = run(capsys, "poly", "7", "--no-cache")
    assert code == EXIT_USAGE and "error" in err
    code, _, _ = run(capsys, "aurifeuille", "3", "10")
    assert code == EXIT_USAGE
    code, _, _ = run(capsys, "witness", "49", "--no-cache")
    assert code == EXIT_USAGE


def test_json_round_trip(capsys):
    for a, n in [(6, 7), (12, 3), (20, 9), (17, 17)]:
        code, out, _ = run(capsys, "decide", str(a), str(n), "--no-cache", "--json")
        rec = ClassificationRecord.from_dict(json.loads(out)["record"])
        assert rec == decide(a, n)
        assert json.loads(json.dumps(rec.to_dict())) == json.loads(out)["record"]
    code, out, _ = run(capsys, "represent", "279937", "--json")
    v = TwoSquaresVerdict.from_dict(json.loads(out)["verdict"])
    assert v.to_dict() == json.loads(out)["verdict"]
    v.check(279937)


def test_big_integers_are_strings(capsys):
    _, out, _ = run(capsys, "decide", "6", "7", "--no-cache", "--json")
    w = json.loads(out)["record"]["verdict"]["witness"]
    assert all(isinstance(x, str) for x in w)


def test_chart_rows(capsys, cache_path):
    code, out, _ = run(capsys, "chart", "--a-max", "50", "--n-max", "19", "--cache", str(cache_path))
    assert code == 0
    rows = {int(line.split()[0]): line for line in out.splitlines()[1:51]}
    assert "1, 7, 11, 19" in rows[24]
    assert rows[1].split()[1] == "all"
    assert rows[46].split()[1] == "-"
    assert out.rstrip().endswith("unknown: 0 (0.0%)")


def test_cache_determinism(capsys, cache_path):
    argv = ["chart", "--a-max", "30", "--n-max", "15", "--cache", str(cache_path)]
    _, cold, _ = run(capsys, *argv)
    lines = cache_path.read_text().splitlines()
    _, warm, _ = run(capsys, *argv)
    assert cold == warm
    assert cache_path.read_text().splitlines() == lines  # warm run appends nothing
    _, threaded, _ = run(capsys, "chart", "--a-max", "30", "--n-max", "15", "--no-cache", "--threads", "3")
    assert threaded == cold
    for line in lines:
        entry = json.loads(line)
        assert set(entry) == {"kind", "key", "payload"}


def test_cache_reload_matches(cache_path):
    cache = FileCache(cache_path)
    for a, n in [(6, 7), (12, 3), (7, 13), (17, 17)]:
        decide(a, n, cache=cache)
    again = FileCache(cache_path)
    assert again.records == cache.records
    assert again.factorizations == cache.factorizations


def test_duplicate_lines_tolerated(cache_path):
    cache = FileCache(cache_path)
    decide(6, 7, cache=cache)
    text = cache_path.read_text()
    cache_path.write_text(text + text)
    again = FileCache(cache_path)
    assert again.records == cache.records


def test_malformed_cache_line_reports_line_number(capsys, cache_path):
    cache = FileCache(cache_path)
    decide(6, 7, cache=cache)
    n_lines = len(cache_path.read_text().splitlines())
    with open(cache_path, "a") as fh:
        fh.write('{"kind": "verdict", "key": "1,1"\n')
    with pytest.raises(CacheFormatError, match=f":{n_lines + 1}:"):
        FileCache(cache_path)
    code, _, err = run(capsys, "decide", "6", "7", "--cache", str(cache_path))
    assert code == EXIT_USAGE and f":{n_lines + 1}:" in err


def test_tampered_cache_entry_rejected(cache_path):
    cache = FileCache(cache_path)
    decide(6, 7, cache=cache)
    lines = cache_path.read_text().splitlines()
    entry = next(e for e in map(json.loads, lines) if e["kind"] == "verdict")
    entry["payload"]["verdict"]["witness"] = ["476", "230"]
    cache_path.write_text(json.dumps(entry) + "\n")
    with pytest.raises(CacheFormatError, match=":1:"):
        FileCache(cache_path)


def test_env_var_selects_cache(capsys, tmp_path, monkeypatch):
    path = tmp_path / "env" / "c.jsonl"
    monkeypatch.setenv("SOTS_CACHE", str(path))
    run(capsys, "decide", "6", "7")
    assert path.exists() and path.read_text().strip()


def test_other_commands(capsys):
    code, out, _ = run(capsys, "witness", "148", "--no-cache")
    assert code == 0 and out.startswith("n = 9")
    code, out, _ = run(capsys, "aurifeuille", "3", "6")
    assert "F = x + 1" in out and "G = 1" in out and "verified: True" in out
    code, out, _ = run(capsys, "poly", "13")
    assert "f(X) = 13(13*X^2 + 3*X)^2" in out
    code, out, _ = run(capsys, "density", "100")
    assert "S(100) = 43" in out
    code, out, _ = run(capsys, "density", "100", "--json")
    assert json.loads(out)["count"] == "43"


def test_selftest_command(capsys):
    code, out, _ = run(capsys, "selftest")
    assert code == 0 and "0 failed" in out


def test_unknown_not_written_to_cache(capsys, cache_path):
    code, _, _ = run(capsys, "decide", "7", "13", "--cache", str(cache_path), "--trial-bound", "50", "--rho-cap", "1")
    assert code == 2
    for line in cache_path.read_text().splitlines() if cache_path.exists() else []:
        entry = json.loads(line)
        if entry["kind"] == "verdict":
            assert entry["payload"]["verdict"]["status"] != "unknown"
    assert FileCache(cache_path).get(7, 13) is None
    code, _, _ = run(capsys, "decide", "7", "13", "--cache", str(cache_path))
    assert code == 0


@pytest.mark.skipif(shutil.which("sots") is None, reason="console script not installed")
def test_installed_script_exit_codes(tmp_path):
    env_cache = str(tmp_path / "c.jsonl")
    r = subprocess.run(["sots", "decide", "6", "7", "--cache", env_cache], capture_output=True, text=True)
    assert r.returncode == 0
    r = subprocess.run(["sots", "decide", "20", "3", "--cache", env_cache], capture_output=True, text=True)
    assert r.returncode == 1
    r = subprocess.run([sys.executable, "-m", "sots.cli", "decide", "6", "x"], capture_output=True, text=True)
    assert r.returncode == EXIT_USAGE

import json
import subprocess
import sys

import pytest

from ncdbell import cli, pipeline
from ncdbell.bitstrings import write_file
from ncdbell.pipeline import read_csv

from conftest import random_bits


def run_cli(*argv):
    return cli.main([str(a) for a in argv])


def test_entropic_csv(tmp_path):
    out = tmp_path / "e.csv"
    assert run_cli("entropic", "--thetas", 0, 8.6, 15, "--out", out) == 0
    meta, rows = read_csv(out)
    assert meta["command"] == "entropic"
    assert [r["theta"] for r in rows] == ["0", "8.6", "15"]
    assert float(rows[0]["S_prime"]) == 0
    assert float(rows[1]["S_prime"]) == pytest.approx(0.237, abs=0.005)


def test_entropic_grid(tmp_path):
    out = tmp_path / "e.csv"
    assert run_cli("entropic", "--grid", 0, 20, 0.01, "--out", out) == 0
    _, rows = read_csv(out)
    assert len(rows) == 2001
    best = max(rows, key=lambda r: float(r["S_prime"]))
    assert 8.3 <= float(best["theta"]) <= 8.9


def test_sweep_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    args = ["sweep", "--thetas", 8.6, 30, "--n-pairs", 40_000, "--seed", 4]
    assert run_cli(*args, "--out", a) == 0
    assert run_cli(*args, "--jobs", 2, "--out", b) == 0
    assert a.read_bytes() == b.read_bytes()
    meta, rows = read_csv(a)
    assert meta["seed"] == "4" and meta["backend"] == "lzma" and meta["joint_mode"] == "interleave"
    assert len(rows) == 2


def test_global_flags_before_verb(tmp_path):
    out = tmp_path / "s.csv"
    assert cli.main(["--seed", "9", "--backend", "bzip2", "--joint-mode", "concat", "--out", str(out),
                     "sweep", "--thetas", "10", "--n-pairs", "20000"]) == 0
    meta, rows = read_csv(out)
    assert meta["seed"] == "9"
    assert rows[0]["backend"] == "bzip2" and rows[0]["joint_mode"] == "concat"


def test_sweep_error_marker(tmp_path, monkeypatch, capsys):
    calls = []
    real = pipeline.sweep_point

    def flaky(theta, *a, **kw):
        calls.append(theta)
        if len(calls) == 2:
            raise RuntimeError("codec exploded")
        return real(theta, *a, **kw)

    monkeypatch.setattr(pipeline, "sweep_point", flaky)
    out = tmp_path / "s.csv"
    assert run_cli("sweep", "--thetas", 5, 10, 15, "--n-pairs", 5000, "--out", out) == 1
    lines = out.read_text().splitlines()
    assert len(lines) == 4
    assert lines[2].startswith("5,")
    assert lines[3] == "# ERROR RuntimeError: codec exploded"
    err = capsys.readouterr().err.strip()
    assert json.loads(err.removeprefix("error: ")) == {"error": "RuntimeError", "message": "codec exploded"}


def test_bench(tmp_path):
    out = tmp_path / "b.csv"
    assert run_cli("bench", "--lengths", 100000, "--p-grid", 0, 0.5, "--pair-length", 50000, "--out", out) == 0
    _, rows = read_csv(out)
    lengths = [r for r in rows if r["study"] == "length"]
    corr = [r for r in rows if r["study"] == "correlation"]
    assert {r["backend"] for r in lengths} == {"lzma", "bzip2", "deflate", "lzw"}
    assert {r["backend"] for r in corr} == {"lzma", "bzip2", "deflate"}
    assert len(corr) == 6


def test_simulate_then_stats(tmp_path):
    runs = tmp_path / "runs"
    listing = tmp_path / "runs.csv"
    assert run_cli("simulate", "--theta", 8.6, "--n-pairs", 200_000, "--dir", runs, "--out", listing) == 0
    _, rows = read_csv(listing)
    assert [r["name"] for r in rows] == ["a0b0", "a1b0", "a1b1", "a0b1"]
    assert (runs / "a0b1.x.ncdb").exists() and (runs / "a0b1.meta.txt").exists()
    out = tmp_path / "stats.csv"
    assert run_cli("stats", runs, "--bits-per-file", 100_000, "--out", out) == 0
    _, stats = read_csv(out)
    assert stats[0]["file_count"] == "2"
    assert float(stats[0]["mean_S"]) > 0


def test_stats_insufficient(tmp_path, capsys):
    runs = tmp_path / "runs"
    run_cli("simulate", "--theta", 8.6, "--n-pairs", 20_000, "--dir", runs, "--out", tmp_path / "l.csv")
    assert run_cli("stats", runs, "--bits-per-file", 10_000) == 1
    err = json.loads(capsys.readouterr().err.strip().removeprefix("error: "))
    assert err["error"] == "InsufficientData"


def test_simulate_single_run(tmp_path):
    assert run_cli("simulate", "--angles", 0, 45, "--n-pairs", 1000, "--eta", 1, 0.5, 1, 0.5,
                   "--dir", tmp_path, "--out", tmp_path / "l.csv") == 0
    assert (tmp_path / "run.meta.txt").exists()


def test_ncd_verb(tmp_path):
    x = random_bits(50_000, seed=1)
    write_file(x, tmp_path / "x.ncdb")
    write_file(random_bits(50_000, seed=2), tmp_path / "y.ncdb")
    out = tmp_path / "n.csv"
    assert run_cli("ncd", tmp_path / "x.ncdb", tmp_path / "x.ncdb", "--out", out) == 0
    _, rows = read_csv(out)
    assert float(rows[0]["ncd"]) < 0.05
    assert run_cli("ncd", tmp_path / "x.ncdb", tmp_path / "y.ncdb", "--out", out) == 0
    _, rows = read_csv(out)
    assert float(rows[0]["ncd"]) > 0.95


def test_ncd_verb_bad_file(tmp_path, capsys):
    (tmp_path / "bad.ncdb").write_bytes(b"JUNKJUNKJUNKJUNK")
    assert run_cli("ncd", tmp_path / "bad.ncdb", tmp_path / "bad.ncdb") == 1
    assert "MalformedHeader" in capsys.readouterr().err


def test_symmetrize_verb(tmp_path):
    out = tmp_path / "s.csv"
    assert run_cli("symmetrize", "--n-pairs", 200_000, "--save", tmp_path / "sym", "--out", out) == 0
    _, rows = read_csv(out)
    sym = [r for r in rows if r["stream"] == "symmetrized"]
    raw = [r for r in rows if r["stream"] == "raw"]
    assert len(sym) == len(raw) == 4
    for r in sym:
        assert float(r["efficiency"]) == pytest.approx(float(r["target"]), rel=0.02)
    for r in raw:
        assert float(r["efficiency"]) == pytest.approx(float(r["target"]), rel=0.02)
    assert (tmp_path / "sym.meta.txt").exists()


def test_module_entry_point(tmp_path):
    res = subprocess.run([sys.executable, "-m", "ncdbell", "entropic", "--thetas", "8.6"],
                         capture_output=True, text=True, check=True)
    assert res.stdout.splitlines()[1] == "theta,S_prime,visibility"

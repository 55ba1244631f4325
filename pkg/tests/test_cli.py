from __future__ import annotations

import io
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from cspec import verify as V
from cspec.cli import run
from cspec.digraph import format_edge_list, parse_edge_list
from cspec.families import Infinity, Theta, Type5, build, type5_poly


def cli(*argv: str) -> tuple[int, str, str]:
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def graph_file(tmp_path: Path):
    def write(d, name: str = "g.txt") -> str:
        path = tmp_path / name
        path.write_text(format_edge_list(d), encoding="utf-8")
        return str(path)
    return write


def test_spectrum_infinity(graph_file):
    code, out, _ = cli("spectrum", graph_file(build(Infinity(3, 5))))
    assert code == 0
    assert out.splitlines()[0].startswith("{0, 1, ")
    assert "1.19385911132" in out
    code, out, _ = cli("spectrum", graph_file(build(Infinity(3, 5))), "--format", "json")
    data = json.loads(out)
    assert data["n"] == 7 and len(data["elements"]) == 3
    assert data["elements"][2]["witness"] == list(range(1, 8))


def test_classify_theta(graph_file):
    code, out, _ = cli("classify", graph_file(build(Theta(0, 2, 1))))
    assert code == 0 and out.strip() == "SCD3: theta(a=0,b=2,c=1)"
    code, out, _ = cli("classify", graph_file(build(Theta(0, 2, 1))), "--format", "json")
    info = json.loads(out)
    assert info["class"] == "Three3" and info["family"]["family"] == "theta"


def test_build_round_trip(tmp_path: Path):
    target = tmp_path / "t5.txt"
    code, _, _ = cli("build", "--family", "type5", "-n", "10", "--params", "i=4", "j=8", "-o", str(target))
    assert code == 0
    d = parse_edge_list(target.read_text())
    assert d == build(Type5(10, 4, 8))
    code, out, _ = cli("classify", str(target))
    assert out.strip() == "SCD3: type5(n=10,i=4,j=8)"
    code, out, _ = cli("build", "--family", "type4", "-n", "7", "--params", "chords=3:2,5:4")
    assert code == 0 and out.startswith("7 9\n")


def test_charpoly(graph_file):
    code, out, _ = cli("charpoly", graph_file(build(Infinity(3, 5))))
    assert code == 0 and out.strip() == "x^7 - x^4 - x^2"
    code, out, _ = cli("charpoly", "--family", "theta", "--params", "a=0", "b=2", "c=1")
    assert out.strip() == "x^5 - x^2 - 1"


def test_compare(graph_file):
    a = graph_file(build(Infinity(5, 5)), "a.txt")
    b = graph_file(build(Infinity(4, 6)), "b.txt")
    code, out, _ = cli("compare", a, b)
    assert code == 0 and out.splitlines()[0] == "Less"
    code, out, _ = cli("compare", b, a, "--format", "json")
    assert json.loads(out)["order"] == "Greater"


def test_verify_chain_text():
    code, out, _ = cli("verify", "chain-infinity", "--n", "9")
    assert code == 0
    assert out.startswith("chain-infinity: Verified rho(infinity(r=5,s=5)) < rho(infinity(r=4,s=6))")


def test_verify_csv():
    code, out, _ = cli("verify", "type5-distinct", "--n-min", "6", "--n-max", "20", "--format", "csv")
    assert code == 0
    header, row = out.strip().splitlines()
    assert header == "claim_id,status,reason,items,detail"
    assert row.startswith("type5-distinct,Verified")


def test_verify_report_check_round_trip(tmp_path: Path):
    code, out, _ = cli("verify", "theta-dcs", "--n-max", "12", "--format", "json", "--certificates")
    assert code == 0
    path = tmp_path / "r.json"
    path.write_text(out)
    code, out, _ = cli("check", str(path))
    assert code == 0 and "certificates sound" in out
    data = json.loads(path.read_text())
    data["certificates"][0]["roots"][0]["lo"] = data["certificates"][0]["roots"][0]["hi"]
    path.write_text(json.dumps(data))
    assert cli("check", str(path))[0] == 2


def test_refuted_exits_2(monkeypatch):
    monkeypatch.setattr(V, "type5_poly", lambda n, sizes: type5_poly(n, (4, 4, 4) if n == 6 else (5, 6, 7)))
    code, out, _ = cli("verify", "type5-distinct", "--n-min", "9", "--n-max", "9", "--threads", "1")
    assert code == 2
    assert "Refuted" in out and "COLLISION at n=9" in out


def test_skipped_is_success():
    code, out, _ = cli("verify", "type5-partial-order", "--t1", "6,10,12", "--t2", "8,9,11", "--n", "14")
    assert code == 0
    assert "Skipped (hypothesis not matched)" in out and "Greater" in out


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["nonsense"],
        ["verify", "no-such-claim"],
        ["spectrum"],
        ["spectrum", "/nonexistent/file.txt"],
        ["build", "--family", "theta", "--params", "a=1", "b=0", "c=0"],
        ["build", "--family", "type3", "--params", "i=3"],
        ["charpoly"],
        ["--threads", "0", "verify", "trinomial"],
    ],
)
def test_usage_errors_exit_1(argv):
    assert cli(*argv)[0] == 1


def test_malformed_edge_list_exit_1(tmp_path: Path):
    path = tmp_path / "bad.txt"
    path.write_text("3 2\n1 1\n2 3\n")
    code, _, err = cli("spectrum", str(path))
    assert code == 1 and "self-loop" in err


def test_capability_limit_exit_3(tmp_path: Path):
    path = tmp_path / "big.txt"
    code, out, _ = cli("random", "--n", "25", "--p", "0.25", "--strong", "--seed", "3")
    assert code == 0
    path.write_text(out)
    code, _, err = cli("spectrum", str(path))
    assert code == 3 and "--force" in err


def test_family_mode_beyond_scan_limit(graph_file):
    code, out, _ = cli("spectrum", graph_file(build(Type5(40, 10, 30))), "--format", "json")
    assert code == 0 and len(json.loads(out)["elements"]) == 3


def test_seed_determinism():
    a = cli("random", "--n", "8", "--p", "0.3", "--seed", "11")
    b = cli("random", "--n", "8", "--p", "0.3", "--seed", "11")
    c = cli("random", "--n", "8", "--p", "0.3", "--seed", "12")
    assert a == b and a[1] != c[1]
    assert cli("--seed", "11", "random", "--n", "8", "--p", "0.3") == a


def test_json_outputs_are_byte_identical(graph_file):
    path = graph_file(build(Infinity(4, 6)))
    for argv in (["spectrum", path], ["classify", path], ["verify", "type5-isomorphism", "--n", "10"]):
        first = cli(*argv, "--format", "json", "--threads", "1")
        second = cli(*argv, "--format", "json", "--threads", "1")
        assert first == second


def test_threads_env_and_module_entry(tmp_path: Path):
    env = dict(os.environ, CSPEC_THREADS="2")
    cmd = [sys.executable, "-m", "cspec", "verify", "type5-distinct", "--n-min", "20", "--n-max", "30", "--format", "json"]
    two = subprocess.run(cmd, capture_output=True, text=True, env=env, check=False)
    env["CSPEC_THREADS"] = "1"
    one = subprocess.run(cmd, capture_output=True, text=True, env=env, check=False)
    assert two.returncode == one.returncode == 0
    assert two.stdout == one.stdout
    env["CSPEC_THREADS"] = "lots"
    bad = subprocess.run(cmd, capture_output=True, text=True, env=env, check=False)
    assert bad.returncode == 1 and "CSPEC_THREADS" in bad.stderr

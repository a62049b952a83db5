import json

import pytest

from revgates.algebra import wire_rotation
from revgates.circuit import load, to_perm
from revgates.cli import main, parse_gate_spec
from revgates.constructions import rotation_target, word_cycle_target
from revgates.core import GatePerm
from revgates.groups import TargetClass


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_gate_specs():
    assert parse_gate_spec("rot3", 2).perm == wire_rotation(2)
    assert parse_gate_spec("controlled:0:rot3", 2).perm == rotation_target((0,))
    assert parse_gate_spec("controlled:0:controlled:1:rot3", 2).perm == rotation_target((0, 1))
    assert parse_gate_spec("cycle:0001,0010,0100", 2).perm == word_cycle_target(0)
    assert parse_gate_spec("swap:0,2", 3).perm == GatePerm(3, 1, (2, 1, 0))
    assert parse_gate_spec("fredkin", 2).perm.n == 3
    for bad in ("rot4", "swap:0", "cycle:01,1", "controlled:0", "fredkin:x", "swap:0,5"):
        with pytest.raises(ValueError):
            parse_gate_spec(bad, 2)


def test_components(capsys):
    code, rep = run_json(capsys, "components", "--kind", "G2", "--q", "2", "--n", "4")
    assert code == 0
    assert rep["result"] == {"count": 5, "sizes": [1, 4, 6, 4, 1]}
    assert rep["subcommand"] == "components"


def test_verify_generation(capsys):
    code, rep = run_json(capsys, "verify-generation", "--family", "P3", "--class", "alt", "--n", "4")
    assert code == 0 and rep["result"]["status"] == "PASS"
    code, rep = run_json(capsys, "verify-generation", "--family", "P4", "--class", "altcons",
                         "--q", "3", "--n", "3")
    assert code == 1 and rep["result"]["status"] == "FAIL"
    code, rep = run_json(capsys, "verify-generation", "--family", "P1", "--class", "full", "--n", "2")
    assert code == 0 and rep["result"]["order"] == "24"
    code, rep = run_json(capsys, "verify-generation", "--family", "P1", "--class", "cons", "--n", "2")
    assert code == 1 and "witness" in rep["result"]
    code, rep = run_json(capsys, "verify-generation", "--family", "P2", "--class", "modk", "--k", "2",
                         "--n", "3")
    assert code == 0


def test_parity_seq(capsys, tmp_path):
    code, rep = run_json(capsys, "parity-seq", "--gens", "fredkin", "--n", "4")
    assert code == 0 and rep["result"]["span_size"] <= 2
    path = tmp_path / "id.rg"
    path.write_text("revgate v1\nalphabet 2\nwires 3\n")
    code, rep = run_json(capsys, "parity-seq", "--circuit", str(path))
    assert rep["result"]["sequence"] == "0000"
    code, _, err = run(capsys, "parity-seq", "--n", "3")
    assert code == 2 and "exactly one" in err


def test_decompose_and_simulate(capsys, tmp_path):
    out = tmp_path / "wc.rg"
    code, rep = run_json(capsys, "decompose", "--target", "cycle:0001,0010,0100",
                         "--base", "controlled:0:rot3", "--n", "4", "--max-depth", "6",
                         "--out", str(out))
    assert code == 0 and rep["result"]["depth"] == 6
    assert to_perm(load(out)) == word_cycle_target(0)
    code, rep = run_json(capsys, "decompose", "--target", "cycle:0001,0010,0100",
                         "--base", "controlled:0:rot3", "--n", "4", "--max-depth", "5", "--algo", "bfs")
    assert code == 1 and rep["result"]["status"] == "exhausted"
    code, rep = run_json(capsys, "simulate", "--circuit", str(out), "--input", "0010")
    assert rep["result"]["output"] == "0100"


def test_simulate_trivial_cases(capsys, tmp_path):
    empty = tmp_path / "e.rg"
    empty.write_text("revgate v1\nalphabet 2\nwires 2\n")
    code, out, _ = run(capsys, "simulate", "--circuit", str(empty), "--input", "10")
    assert code == 0 and "output: 10" in out
    one = tmp_path / "n.rg"
    one.write_text("revgate v1\nalphabet 2\nwires 2\ngate n table 1 0\napply n 1\n")
    code, out, _ = run(capsys, "simulate", "--circuit", str(one), "--input", "10")
    assert "output: 11" in out
    code, _, err = run(capsys, "simulate", "--circuit", str(one), "--input", "102")
    assert code == 2


def test_lift(capsys, tmp_path):
    src = tmp_path / "wc.rg"
    run(capsys, "decompose", "--target", "cycle:0001,0010,0100", "--base", "controlled:0:rot3",
        "--n", "4", "--max-depth", "6", "--out", str(src))
    dst = tmp_path / "lifted.rg"
    code, rep = run_json(capsys, "lift", "--circuit", str(src), "--prefix", "1", "--out", str(dst))
    assert code == 0 and rep["result"]["wires"] == 5
    from revgates.algebra import controlled

    assert to_perm(load(dst)) == controlled((1,), word_cycle_target(0))


def test_synthesize(capsys, tmp_path):
    dst = tmp_path / "s.rg"
    code, rep = run_json(capsys, "synthesize", "--target", "cycle:000,011,101", "--basis", "P3",
                         "--out", str(dst))
    assert code == 0 and rep["result"]["class"] == "alt"
    assert to_perm(load(dst)) == parse_gate_spec("cycle:000,011,101", 2).perm
    code, rep = run_json(capsys, "synthesize", "--target", "swap:0,1", "--basis", "P1", "--q", "3",
                         "--n", "2")
    assert code == 0 and rep["result"]["class"] == "full"
    code, rep = run_json(capsys, "synthesize", "--target", "cycle:001,010", "--basis", "P3",
                         "--class", "alt")
    assert code == 1


def test_usage_errors(capsys):
    assert run(capsys, "check-paper", "--suite", "bogus")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "decompose", "--target", "nope", "--base", "rot3", "--n", "3",
               "--max-depth", "2")[0] == 2
    assert run(capsys, "simulate", "--circuit", "/nonexistent.rg", "--input", "0")[0] == 2


def test_resource_cap_exit(capsys):
    code, rep = run_json(capsys, "decompose", "--target", "controlled:00:rot3",
                         "--base", "controlled:0:rot3", "--n", "5", "--max-depth", "9",
                         "--mem-budget", "1M")
    assert code == 3 and rep["result"]["status"] == "CAP"


def test_json_payload_is_deterministic(capsys):
    argv = ["verify-generation", "--family", "P2", "--class", "cons", "--q", "3", "--n", "2"]
    _, a = run_json(capsys, *argv)
    _, b = run_json(capsys, *argv)
    a.pop("seconds"), b.pop("seconds")
    assert a == b


def test_check_paper_quick(capsys):
    code, out, _ = run(capsys, "check-paper", "--suite", "quick")
    lines = [ln for ln in out.splitlines() if ln.startswith(("PASS", "FAIL"))]
    assert code == 0
    assert len(lines) == 10 and all(ln.startswith("PASS") for ln in lines)

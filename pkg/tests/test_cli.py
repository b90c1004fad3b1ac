import json
import subprocess
import sys

import pytest

from k3disc7.cli import main
from k3disc7.ns_embed import weyl_projection
from k3disc7.symmetry import graph_automorphism_group


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_steiner_text_and_json(capsys):
    code, out = run(capsys, "steiner")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 759
    assert lines[0] == "inf 0 1 2 3 5 14 17"
    code, out = run(capsys, "steiner", "--json")
    data = json.loads(out)
    assert data["schema"] == "1" and data["count"] == 759


def test_graph(capsys, tmp_path):
    dot_path = tmp_path / "coxeter.dot"
    code, out = run(capsys, "graph", "--dot-file", str(dot_path))
    data = json.loads(out)
    assert data["nodes"] == 28 and data["edges"] == 42
    assert sum(len(v) for v in data["adjacency"].values()) == 84
    dot = dot_path.read_text()
    assert dot.count(" -- ") == 42 and dot == data["dot"]
    _, out = run(capsys, "graph", "--dot")
    assert out.startswith("graph coxeter {")


@pytest.mark.parametrize("rtype, count", [("A6A1", 28), ("A7", 14), ("D7", 28), ("E7", 56)])
def test_faces_by_type(capsys, rtype, count):
    _, out = run(capsys, "faces", "--type", rtype)
    data = json.loads(out)
    assert data["count"] == count == len(data["faces"])
    rec = data["faces"][0]
    assert {"lambda", "type", "attach", "norm", "profile"} <= set(rec)


def test_symmetry(capsys):
    _, out = run(capsys, "symmetry", "--pretty")
    data = json.loads(out)
    assert data["order"] == 336
    stab = {o["type"]: o["stabilizer_order"] for o in data["orbits"]}
    assert stab == {"A6A1": 12, "A7": 24, "D7": 12, "E7": 6}
    assert all(g.startswith("(") for g in data["generators"])


def test_fibration(capsys):
    _, out = run(capsys, "fibration", "--face", "D7q.1")
    data = json.loads(out)
    assert [d["type"] for d in data["diagrams"]] == ["E6~", "A11~"]
    assert len(data["involution"]) == 20 and len(data["fiber_class"]) == 20
    assert data["profile"] == [2, 5, 11, 14, 16, 23]


def test_reduce_w_prime(capsys):
    wp = json.dumps(list(weyl_projection()[0]))
    _, out = run(capsys, "reduce", "--vector", wp)
    data = json.loads(out)
    assert data["steps"] == [] and data["trace"] == [28]


def test_reduce_accepts_ambient_vectors(capsys):
    from k3disc7.ns_embed import build_ns_lattice
    from k3disc7.lorentzian import IIVector

    ns = build_ns_lattice()
    amb = IIVector.from_coords(ns.to_ambient(weyl_projection()[0]))
    _, out = run(capsys, "reduce", "--vector", json.dumps(amb.to_json()))
    assert json.loads(out)["steps"] == []


def test_decompose_word(capsys):
    g = graph_automorphism_group()[77].cycles()
    word = json.dumps(["A7t.1", g, "E7x.4", "D7q.2"])
    code, out = run(capsys, "decompose", "--word", word)
    data = json.loads(out)
    assert code == 0 and data["recomposed"] is True
    assert data["trace"][-1] == 28
    assert data["word"][1] == g


@pytest.mark.parametrize(
    "argv",
    [
        ["reduce", "--vector", "[1, 2"],
        ["reduce", "--vector", "{\"m\": 1}"],
        ["reduce", "--vector", "[1, 2, 3]"],
        ["decompose", "--word", "not json"],
        ["decompose", "--word", "[\"A6A1.1\"]"],
        ["decompose"],
        ["fibration", "--face", "nonsense"],
        ["faces", "--type", "B3"],
    ],
)
def test_bad_input_is_a_usage_error(capsys, argv):
    with pytest.raises(SystemExit) as info:
        main(argv)
    assert info.value.code == 2
    assert "error" in capsys.readouterr().err


def test_output_is_deterministic(capsys):
    first = run(capsys, "faces", "--type", "E7")[1]
    second = run(capsys, "faces", "--type", "E7")[1]
    assert first == second
    first = run(capsys, "verify", "--json", "--words", "15", "--seed", "4")[1]
    second = run(capsys, "verify", "--json", "--words", "15", "--seed", "4")[1]
    assert first == second


def test_verify_report(capsys):
    code, out = run(capsys, "verify", "--json", "--words", "25")
    report = json.loads(out)
    assert code == 0 and report["pass"] and report["schema"] == "1"
    assert sorted(c["id"] for c in report["criteria"]) == list(range(1, 12))
    assert {"type": "E7", "count": 56, "norm": "-2/7", "pairing": 7} in report["table"]
    claim = next(c for c in report["checks"] if c["claim"] == "w_prime_norm")
    assert claim["expected"] == 28 and claim["computed"] == 28


def test_verify_reports_failures(capsys, monkeypatch):
    from k3disc7 import verify

    monkeypatch.setattr(verify, "W_DOUBLE_PRIME", {"y": 0, "z": 0, "x": 0, "p": 0, "q": 0, "t": 0})
    code = main(["verify", "--words", "5"])
    captured = capsys.readouterr()
    assert code == 1
    assert "w_double_prime" in captured.err
    assert "[FAIL]  5." in captured.out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "k3disc7", "faces", "--type", "A7"], capture_output=True, text=True, check=True)
    assert json.loads(proc.stdout)["count"] == 14

import json

import pytest

from chordal_dijoins import io
from chordal_dijoins.cli import main

TRIANGLE = {
    "format": "dijoin-graph",
    "version": 1,
    "nodes": ["a", "b", "c"],
    "arcs": [
        {"tail": "a", "head": "b", "weight": 1},
        {"tail": "b", "head": "c", "weight": 1},
        {"tail": "a", "head": "c", "weight": 1},
    ],
}


@pytest.fixture
def triangle_file(tmp_path):
    path = tmp_path / "triangle.json"
    io.write_json(path, TRIANGLE)
    return path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr()


def test_pack_triangle(capsys, triangle_file):
    code, out = run(capsys, "pack", triangle_file, "--json")
    assert code == 0
    doc = json.loads(out.out)
    assert doc["tau"] == 2 and len(doc["dijoins"]) == 2 and doc["support_bound"] == 2


def test_pack_human_output(capsys, triangle_file):
    code, out = run(capsys, "pack", triangle_file, "--verify-steps")
    assert code == 0
    assert out.out.splitlines()[:2] == ["tau: 2", "support: 2"]


def test_pack_schrijver_is_rejected(capsys, tmp_path):
    fixture = tmp_path / "s.json"
    assert run(capsys, "fixture", "schrijver", "--out", fixture)[0] == 0
    code, out = run(capsys, "pack", fixture)
    assert code == 2
    assert "not chordal" in out.err


def test_verify_round_trip_and_tamper(capsys, tmp_path, triangle_file):
    packing = tmp_path / "p.json"
    assert run(capsys, "pack", triangle_file, "--out", packing)[0] == 0
    code, out = run(capsys, "verify", triangle_file, packing)
    assert code == 0 and "FAIL" not in out.out

    doc = json.loads(packing.read_text())
    doc["dijoins"][0]["multiplicity"] += 1
    doc["tau"] += 1
    packing.write_text(json.dumps(doc))
    code, out = run(capsys, "verify", triangle_file, packing)
    assert code == 1
    assert "FAIL  capacity" in out.out


def test_pack_is_byte_identical(capsys, triangle_file, tmp_path):
    outs = []
    for name in ("p1.json", "p2.json"):
        run(capsys, "pack", triangle_file, "--out", tmp_path / name)
        outs.append((tmp_path / name).read_bytes())
    assert outs[0] == outs[1]


def test_check_chordal(capsys, tmp_path, triangle_file):
    code, out = run(capsys, "check-chordal", triangle_file, "--json")
    assert code == 0 and json.loads(out.out)["chordal"] is True
    c4 = dict(TRIANGLE, nodes=["a", "b", "c", "d"], arcs=[
        {"tail": t, "head": h, "weight": 1} for t, h in ("ab", "bc", "cd", "ad")
    ])
    path = tmp_path / "c4.json"
    io.write_json(path, c4)
    code, out = run(capsys, "check-chordal", path, "--json")
    assert code == 0 and len(json.loads(out.out)["chordless_cycle"]) == 4


def test_min_dicut(capsys, triangle_file):
    code, out = run(capsys, "min-dicut", triangle_file, "--json")
    assert code == 0 and json.loads(out.out)["tau"] == 2


def test_gen_is_deterministic(capsys):
    _, a = run(capsys, "gen", "--n", 12, "--density", 0.4, "--max-weight", 3, "--seed", 5)
    _, b = run(capsys, "gen", "--n", 12, "--density", 0.4, "--max-weight", 3, "--seed", 5)
    assert a.out == b.out
    assert io.graph_from_dict(json.loads(a.out)).n == 12


def test_oracle(capsys, triangle_file):
    code, out = run(capsys, "oracle", triangle_file, "--max", "--json")
    assert code == 0 and json.loads(out.out)["max_packing_size"] == 2
    code, out = run(capsys, "oracle", triangle_file, "--k", 3)
    assert code == 0 and out.out.startswith("can pack 3: no")


def test_oracle_budget_exit_code(capsys, triangle_file):
    code, _ = run(capsys, "oracle", triangle_file, "--k", 2, "--budget", 1)
    assert code == 3


def test_missing_file(capsys, tmp_path):
    code, out = run(capsys, "pack", tmp_path / "nope.json")
    assert code == 2 and "cannot read" in out.err


def test_strongly_connected_reports_no_dicut(capsys, tmp_path):
    path = tmp_path / "cyc.json"
    io.write_json(path, dict(TRIANGLE, nodes=["a", "b"], arcs=[
        {"tail": "a", "head": "b", "weight": 1}, {"tail": "b", "head": "a", "weight": 1}
    ]))
    code, out = run(capsys, "pack", path)
    assert code == 0 and out.out.startswith("no dicut")

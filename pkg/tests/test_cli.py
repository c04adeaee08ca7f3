import json
import subprocess
import sys
from pathlib import Path

import pytest

from stackyfan import io
from stackyfan.cli import main
from stackyfan.render import drawn_segments, plane_coordinates, render_svg
from stackyfan.errors import DegeneratePlane, UnsupportedRank

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_golden(capsys):
    code, out, _ = run(capsys, "analyze", "ex_4_11")
    assert code == 0
    assert out == (GOLDEN / "analyze_ex_4_11.txt").read_text()
    code, out, _ = run(capsys, "analyze", "p1cubed", "--format", "json")
    assert out == (GOLDEN / "analyze_p1cubed.json").read_text()
    rep = json.loads(out)
    assert rep["ns"] == 0 and rep["gale_dual"]["rank"] == 3 and rep["gale_dual"]["torsion"] == []


def test_analyze_ex_6_4(capsys):
    code, out, _ = run(capsys, "analyze", "ex_6_4_sigma", "--format", "json")
    rep = json.loads(out)
    assert rep["ns"] == 1 and len(rep["minimal_nonsimplicial_cones"]) == 3


def test_cox_golden(capsys):
    code, out, _ = run(capsys, "cox", "ex_4_11", "--cone", "0")
    assert code == 0 and out == (GOLDEN / "cox_ex_4_11_0.txt").read_text()
    code, out, _ = run(capsys, "cox", "ex_4_11", "--cone", "1", "--format", "json")
    assert json.loads(out)["components"] == [[1], [0, 2]]
    code, out, _ = run(capsys, "cox", "p1cubed", "--cone", "0,1")
    assert "saturated: true" in out


def test_desingularize_golden(capsys, tmp_path):
    trace = tmp_path / "t.json"
    code, out, _ = run(capsys, "desingularize", "ex_4_10_a", "--mode", "stacky", "--trace", str(trace))
    assert code == 0
    assert out == (GOLDEN / "desing_ex_4_10_a.json").read_text()
    assert trace.read_text() == (GOLDEN / "trace_ex_4_10_a.json").read_text()
    assert io.loads(out).stacky_fan.fan.is_simplicial()


def test_desingularize_divisorial(capsys, tmp_path):
    outp, trace = tmp_path / "o.json", tmp_path / "t.json"
    code, _, _ = run(capsys, "desingularize", "ex_6_4_sigma", "--mode", "divisorial", "--out", str(outp), "--trace", str(trace))
    assert code == 0
    doc = io.load(outp)
    assert doc.stacky_fan.fan.canonical() == io.fixture("ex_6_4_sigma_prime").stacky_fan.fan.canonical()
    steps = json.loads(trace.read_text())["steps"]
    assert [s["cone_rays"] for s in steps[:2]] == [[0], [1]]


def test_desingularize_simplicial_is_identity(capsys):
    code, out, _ = run(capsys, "desingularize", "p1cubed", "--mode", "stacky")
    assert out == io.dumps(io.fixture("p1cubed"))


def test_subdivide(capsys):
    code, out, err = run(capsys, "subdivide", "ex_4_9", "--cone", "0,1")
    assert code == 0 and "new marker [2, 2]" in err
    assert io.loads(out).stacky_fan.markers[-1] == (2, 2)


def test_render_golden(capsys, tmp_path):
    p = tmp_path / "s.svg"
    code, _, _ = run(capsys, "render", "ex_6_4_sigma_prime", "--plane", "1,1,1", "--out", str(p))
    assert code == 0 and p.read_text() == (GOLDEN / "render_ex_6_4_sigma_prime.svg").read_text()


SIGMA_EDGES = [
    ("e3", "e1"), ("e3", "c"), ("e3", "e2"), ("c", "a"), ("c", "d"), ("c", "b"),
    ("d", "a"), ("d", "b"), ("a", "b"), ("a", "e1"), ("b", "e2"), ("e1", "e2"),
]


def _segments(name):
    # segments of the x+y+z=1 cross-section inside the positive orthant
    doc = io.fixture(name)
    return {frozenset(doc.label(i) for i in K) for K in drawn_segments(doc.stacky_fan.fan, (1, 1, 1))}


def test_render_sigma_adjacency():
    assert _segments("ex_6_4_sigma") == {frozenset(p) for p in SIGMA_EDGES}


def test_render_sigma_prime_adjacency():
    extra = [("e3", "a"), ("e3", "b"), ("a", "e2")]
    assert _segments("ex_6_4_sigma_prime") == {frozenset(p) for p in SIGMA_EDGES + extra}


def test_render_sigma_dprime_adjacency():
    extra = [("e3", "b"), ("a", "e2"), ("c", "e1")]
    assert _segments("ex_6_4_sigma_dprime") == {frozenset(p) for p in SIGMA_EDGES + extra}


def test_render_ex_4_9_wedge():
    doc = io.fixture("ex_4_9")
    from stackyfan.stacky import stacky_star_subdivide

    f = stacky_star_subdivide(doc.stacky_fan, [0, 1]).stacky_fan.fan
    assert len(plane_coordinates(f, None)) == 3
    assert len(drawn_segments(f)) == 2
    svg = render_svg(f, ["e1", "e1+2e2", "r2"])
    assert svg.count("<polygon") == 2 and svg == render_svg(f, ["e1", "e1+2e2", "r2"])


def test_render_errors(capsys, tmp_path):
    from stackyfan.fan import Fan

    f4 = Fan.from_data([tuple(int(i == j) for j in range(4)) for i in range(4)], [[0, 1, 2, 3]])
    with pytest.raises(UnsupportedRank):
        plane_coordinates(f4, (1, 1, 1, 1))
    f = io.fixture("ex_6_4_sigma").stacky_fan.fan
    with pytest.raises(DegeneratePlane):
        plane_coordinates(f, (1, -1, 0))
    code, _, err = run(capsys, "render", "ex_6_4_sigma", "--plane", "1,-1,0", "--out", str(tmp_path / "x.svg"))
    assert code == 2 and "DegeneratePlane" in err


def test_verify_golden_and_seed_stability(capsys):
    code, out, _ = run(capsys, "verify", "ex_4_9", "--seed", "1", "--iters", "5")
    assert code == 0 and out == (GOLDEN / "verify_ex_4_9.txt").read_text()
    _, again, _ = run(capsys, "verify", "ex_4_9", "--seed", "1", "--iters", "5")
    assert again == out


def _corrupted(tmp_path) -> Path:
    data = json.loads(io.fixture_text("ex_6_4_sigma"))
    data["max_cones"].append([0, 1, 2])  # overlaps the cones around d
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(data))
    return p


def test_verify_corrupted_fixture(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", str(_corrupted(tmp_path)))
    assert code == 2 and "IntersectionNotFace" in out


def test_exit_codes(capsys, tmp_path):
    assert run(capsys, "analyze", str(_corrupted(tmp_path)))[0] == 2
    assert run(capsys, "cox", "ex_4_11", "--cone", "0,2")[0] == 2
    assert run(capsys, "analyze", str(tmp_path / "missing.json"))[0] == 4
    bad = tmp_path / "bad_syntax.json"
    bad.write_text("{")
    assert run(capsys, "analyze", str(bad))[0] == 4


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "stackyfan", "analyze", "ex_4_9"], capture_output=True, text=True, check=True
    )
    assert proc.stdout.startswith("name: ex_4_9")

import json
import re
import xml.etree.ElementTree as ET

import pytest

from arccomplex.cli import main
from arccomplex.polygon import PolygonSpec, enumerate_arcs, fan_triangulation, parse_spec
from arccomplex.render import render_svg
from arccomplex.shelling import dumps_order, loads_order
from arccomplex.simplicial import build_complex, loads_complex

ALT6 = "P:m=6;punctured=0;colours=BRBRBR"
ALT4P = "P:m=4;punctured=1;colours=BRBR"
FULL6 = "P:m=6;punctured=0;colours=BBBBBB"


def run(capsys, *argv):
    status = main(list(argv))
    out = capsys.readouterr()
    return status, out.out, out.err


def test_certify(capsys):
    status, out, _ = run(capsys, "certify", ALT6)
    assert status == 0
    assert re.search(r"verdict\s+closed-ball", out) and re.search(r"dimension\s+2", out)
    status, out, _ = run(capsys, "certify", ALT6, "--json")
    doc = json.loads(out)
    assert (doc["verdict"], doc["dimension"], doc["seed"]) == ("closed-ball", 2, 0)
    status, out, _ = run(capsys, "certify", FULL6, "--full")
    assert status == 0 and "sphere" in out


def test_certify_without_blue_is_a_failure(capsys):
    status, out, _ = run(capsys, "certify", "P:m=4;punctured=1;colours=RRRR")
    assert status == 1 and "no blue vertex" in out


def test_parse_errors(capsys):
    for argv in (["certify", "P:m=6"], ["arcs", "P:m=3;punctured=0;colours=BRB"], ["bridge", "H:n=1;punctured=0"],
                 ["render", ALT6, "--arcs", "D(1,3)"], ["sweep"]):
        status, _, err = run(capsys, *argv)
        assert status == 2 and err.startswith("error:")
    with pytest.raises(SystemExit) as exc:
        main(["sweep", "--convex", "4-8"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


def test_check_shelling_good_and_bad(capsys, tmp_path):
    good = tmp_path / "good.txt"
    status, _, err = run(capsys, "shell", FULL6, "--full", "-o", str(good))
    assert status == 0 and "seed=0" in err
    status, out, _ = run(capsys, "check-shelling", FULL6, "--full", str(good))
    assert status == 0 and out.count("holds") == 2

    spec = parse_spec(FULL6)
    c = build_complex(spec)
    first = [fan_triangulation(spec, 0).arcs, fan_triangulation(spec, 3).arcs]
    order = loads_order(good.read_text(), c)
    rest = [f for f in order.order if f not in first]
    bad = tmp_path / "bad.txt"
    bad.write_text(dumps_order(type(order)(c, tuple(first + rest))))
    status, out, _ = run(capsys, "check-shelling", FULL6, "--full", str(bad))
    assert status == 1
    assert "fails at k=2" in out and "fails at (j,k)=(1, 2)" in out

    short = tmp_path / "short.txt"
    lines = good.read_text().splitlines()
    short.write_text(lines[0].replace("n=14", "n=13") + "\n" + "\n".join(lines[1:-1]) + "\n")
    status, _, err = run(capsys, "check-shelling", FULL6, "--full", str(short))
    assert status == 2 and "permutation" in err
    status, _, _ = run(capsys, "check-shelling", FULL6, "--full", str(tmp_path / "missing.txt"))
    assert status == 2


def test_shell_round_trip(capsys, tmp_path):
    for spec, extra in ((ALT4P, []), (ALT6, []), ("P:m=3;punctured=1;colours=BBB", ["--full"])):
        status, out, _ = run(capsys, "shell", spec, *extra)
        assert status == 0
        c = build_complex(parse_spec(spec), permitted_only=not extra)
        o = loads_order(out, c)
        assert dumps_order(o) == out


def test_complex_outputs(capsys):
    status, out, _ = run(capsys, "complex", ALT6)
    assert status == 0
    assert "f-vector         [6, 9, 4]" in out and "euler char.      1" in out
    assert "pseudo-manifold  yes" in out
    status, out, _ = run(capsys, "complex", ALT6, "--format", "text")
    c = loads_complex(out)
    assert set(c.facets) == set(build_complex(parse_spec(ALT6), True).facets)
    status, out, _ = run(capsys, "complex", ALT4P, "--format", "json")
    assert len(json.loads(out)["facets"]) == 6
    status, out, _ = run(capsys, "boundary", FULL6, "--full")
    assert out == "dim=1\n"


def test_lists(capsys):
    status, out, _ = run(capsys, "arcs", ALT4P)
    assert sorted(out.split()) == ["A(0,2)", "A(0,3)", "A(1,0)", "A(2,0)", "A(2,1)", "A(3,2)", "L(0)", "L(2)"]
    status, out, _ = run(capsys, "triangulations", FULL6, "--full")
    assert len(out.splitlines()) == 14
    status, out, _ = run(capsys, "flipgraph", FULL6, "--full")
    assert out.count(" -- ") == 21


def test_bridge(capsys):
    status, out, _ = run(capsys, "bridge", "H:n=3;punctured=0", "--certify")
    assert status == 0
    assert out.startswith("H:n=3;punctured=0 -> P:m=6;punctured=0;colours=BRBRBR")
    assert "isomorphism holds" in out and "closed-ball" in out


@pytest.mark.parametrize("spec", [ALT6, ALT4P, "P:m=7;punctured=1;colours=BBRBRRB", "P:m=2;punctured=1;colours=BR"])
def test_render(capsys, spec):
    status, out, _ = run(capsys, "render", spec)
    assert status == 0
    root = ET.fromstring(out)
    ns = "{http://www.w3.org/2000/svg}"
    paths = root.iter(f"{ns}path")
    classes = [p.get("class") for p in paths]
    p = parse_spec(spec)
    assert classes.count("edge") == p.m
    assert classes.count("arc") == p.triangulation_size
    fills = [c.get("fill") for c in root.iter(f"{ns}circle") if c.get("class") == "vertex"]
    assert len(fills) == p.m and len(set(fills)) == len(set(p.colouring))


def test_render_given_arcs(capsys):
    status, out, _ = run(capsys, "render", ALT6, "--arcs", "D(0,3)")
    assert status == 0 and 'data-arc="D(0,3)"' in out
    spec = PolygonSpec.uncoloured(5, True)
    svg = render_svg(spec, enumerate_arcs(spec)[:2])
    assert svg.count('class="arc"') == 2


def test_sweep_table(capsys):
    status, out, _ = run(capsys, "sweep", "--convex", "4..6", "--punctured", "2..3")
    assert status == 0
    assert out.startswith("# sweep seed=0\n")
    rows = [ln for ln in out.splitlines() if ln.startswith("P:")]
    for row in rows:
        assert row.endswith(" yes")
        if " full " in row:
            assert " sphere " in row
    assert "mismatches=0" in out


def test_output_file(capsys, tmp_path):
    target = tmp_path / "arcs.txt"
    status, out, _ = run(capsys, "arcs", ALT6, "-o", str(target))
    assert status == 0 and out == ""
    assert target.read_text().split()[0] == "D(0,2)"


COMMANDS = [
    ["arcs", ALT4P],
    ["triangulations", ALT6],
    ["complex", ALT4P],
    ["complex", ALT6, "--format", "json"],
    ["boundary", ALT4P],
    ["flipgraph", ALT6],
    ["shell", "P:m=6;punctured=1;colours=BRBRBR"],
    ["certify", "P:m=5;punctured=1;colours=BBRBR", "--json"],
    ["bridge", "H:n=2;punctured=1"],
    ["render", "P:m=5;punctured=1;colours=BBRBR"],
    ["sweep", "--convex", "4..5", "--punctured", "2..3"],
]


@pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: a[0])
def test_deterministic(capsys, argv):
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first == second

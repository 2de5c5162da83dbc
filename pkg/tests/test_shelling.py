import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arccomplex.polygon import (
    PolygonSpec,
    Triangulation,
    colourings,
    diagonal,
    enumerate_triangulations,
    fan_triangulation,
    loop,
    punctured_arc,
)
from arccomplex.sampling import sample_orders
from arccomplex.shelling import (
    ShellingOrder,
    certify,
    check_wilson_property,
    dumps_order,
    flip_path_to_fan,
    greedy_shelling,
    join_shelling,
    loads_order,
    loop_runs,
    loop_sequence,
    shell_coloured_convex,
    shell_coloured_punctured,
    verify_shelling,
)
from arccomplex.simplicial import ArcComplex, build_complex

ALT6 = PolygonSpec.convex("BRBRBR")
ALT4P = PolygonSpec.punctured_polygon("BRBR")
FULL6 = PolygonSpec.uncoloured(6, False)


def _bad_hexagon_order() -> ShellingOrder:
    c = build_complex(FULL6)
    first = [fan_triangulation(FULL6, 0).arcs, fan_triangulation(FULL6, 3).arcs]
    rest = [f for f in c.facets if f not in first]
    return ShellingOrder(c, tuple(first + rest))


# --- checkers --------------------------------------------------------------


def test_single_face_is_shelled():
    c = ArcComplex.from_facets([{"a", "b", "c"}])
    o = ShellingOrder(c, c.facets)
    assert verify_shelling(o).ok and check_wilson_property(o).ok


def test_bad_order_witness():
    o = _bad_hexagon_order()
    direct = verify_shelling(o)
    assert not direct.ok and direct.failing_index == 2
    wilson = check_wilson_property(o)
    assert not wilson.ok and wilson.failing_pair == (1, 2)


def test_order_must_be_a_permutation():
    c = build_complex(FULL6)
    with pytest.raises(ValueError):
        verify_shelling(ShellingOrder(c, c.facets[:-1]))
    with pytest.raises(ValueError):
        check_wilson_property(ShellingOrder(c, c.facets[:-1] + c.facets[:1]))


def test_checkers_on_a_hand_made_complex():
    # two triangles glued at a vertex: not shellable in any order
    bowtie = ArcComplex.from_facets([{"v", "a", "b"}, {"v", "c", "d"}])
    for order in itertools.permutations(bowtie.facets):
        o = ShellingOrder(bowtie, order)
        assert not verify_shelling(o).ok and not check_wilson_property(o).ok
    # a strip of three triangles: the two ends meet only in a vertex
    strip = ArcComplex.from_facets([{"a", "b", "c"}, {"b", "c", "d"}, {"c", "d", "e"}])
    results = {}
    for order in itertools.permutations(range(3)):
        o = ShellingOrder(strip, tuple(strip.facets[k] for k in order))
        assert verify_shelling(o).ok == check_wilson_property(o).ok
        results[order] = verify_shelling(o).ok
    assert not results[(0, 2, 1)] and results[(0, 1, 2)] and results[(1, 0, 2)]


EQUIV = [ALT6, ALT4P, FULL6, PolygonSpec.convex("BRRBRRR"), PolygonSpec.punctured_polygon("BBRBR"),
         PolygonSpec.uncoloured(4, True)]


@pytest.mark.parametrize("spec", EQUIV, ids=str)
def test_checkers_agree(spec):
    c = build_complex(spec, permitted_only=True)
    known = [greedy_shelling(c, seed=s) for s in range(3)]
    for o in sample_orders(c, 150, seed=1, known=known):
        a, b = verify_shelling(o), check_wilson_property(o)
        assert a.ok == b.ok
        assert a.failing_index == b.failing_index


@settings(max_examples=60, deadline=None)
@given(st.permutations(list(range(14))))
def test_checkers_agree_on_random_hexagon_orders(perm):
    c = build_complex(FULL6)
    o = ShellingOrder(c, tuple(c.facets[k] for k in perm))
    a, b = verify_shelling(o), check_wilson_property(o)
    assert a.ok == b.ok and a.failing_index == b.failing_index


# --- joins -----------------------------------------------------------------


def test_join_with_a_simplex():
    x = ArcComplex.from_facets([{"s"}])
    y = ArcComplex.from_facets([{"a", "b"}, {"b", "c"}, {"c", "d"}])
    oy = ShellingOrder(y, y.facets)
    joined = join_shelling(ShellingOrder(x, x.facets), oy)
    assert [f - {"s"} for f in joined.order] == list(oy.order)
    assert verify_shelling(joined).ok


def test_join_two_by_two_is_lex():
    x = ArcComplex.from_facets([{"a"}, {"b"}])
    y = ArcComplex.from_facets([{"c"}, {"d"}])
    joined = join_shelling(ShellingOrder(x, x.facets), ShellingOrder(y, y.facets))
    assert joined.order == (frozenset("ac"), frozenset("ad"), frozenset("bc"), frozenset("bd"))
    assert verify_shelling(joined).ok


def _sub_order(spec, verts):
    if len(verts) < 4:
        c = ArcComplex.from_facets([frozenset()])
        return ShellingOrder(c, c.facets)
    o = shell_coloured_convex(PolygonSpec.convex(spec.colouring[v] for v in verts))
    faces = [frozenset(diagonal(verts[a.i], verts[a.j]) for a in f) for f in o.order]
    return ShellingOrder(ArcComplex.from_facets(faces, o.complex.dim), tuple(faces))


@pytest.mark.parametrize("word", ["BRBRBR", "BRBRBRB", "BBRBRRB", "BRRBRRB"])
def test_star_of_a_diagonal_is_a_join(word):
    spec = PolygonSpec.convex(word)
    c = build_complex(spec, True)
    for d in c.vertices:
        star = [f for f in c.facets if d in f]
        ox = _sub_order(spec, list(range(d.i, d.j + 1)))
        oy = _sub_order(spec, list(range(d.j, spec.m)) + list(range(d.i + 1)))
        joined = join_shelling(ox, oy, embed=lambda x, y: {d} | x | y, target=ArcComplex.from_facets(star))
        assert verify_shelling(joined).ok


def test_join_rejects_a_bad_embedding():
    x = ArcComplex.from_facets([{"a"}, {"b"}])
    y = ArcComplex.from_facets([{"c"}])
    with pytest.raises(ValueError):
        join_shelling(ShellingOrder(x, x.facets), ShellingOrder(y, y.facets), embed=lambda p, q: frozenset("z"))


# --- constructors ----------------------------------------------------------


def test_convex_constructor_examples():
    o = shell_coloured_convex(PolygonSpec.convex("BRBR"))
    assert len(o) == 1 and verify_shelling(o).ok
    o = shell_coloured_convex(ALT6)
    assert o.provenance == "constructed" and verify_shelling(o).ok
    o = shell_coloured_convex(PolygonSpec.convex("BBBBBR"))
    assert len(o) == 14 and verify_shelling(o).ok


CONVEX = [s for m in range(4, 10) for s in colourings(m, False)]
PUNCTURED = [s for m in range(2, 7) for s in colourings(m, True)]


@pytest.mark.parametrize("spec", CONVEX, ids=str)
def test_convex_constructor_needs_no_repair(spec):
    o = shell_coloured_convex(spec)
    assert o.provenance == "constructed" and o.repair is None
    assert verify_shelling(o).ok and check_wilson_property(o).ok


@pytest.mark.parametrize("spec", PUNCTURED, ids=str)
def test_punctured_constructor(spec):
    o = shell_coloured_punctured(spec)
    assert verify_shelling(o).ok and check_wilson_property(o).ok
    # every face has exactly one loop, at a blue vertex, and stars stay contiguous
    runs = loop_runs(o)
    bases = [next(a for a in run[0] if a.is_loop).i for run in runs]
    assert bases == loop_sequence(spec)
    assert sum(map(len, runs)) == len(o.order)


def test_punctured_constructor_examples():
    o = shell_coloured_punctured(PolygonSpec.punctured_polygon("BR"))
    assert len(o) == 1 and o.order[0] == {loop(0)}
    o = shell_coloured_punctured(ALT4P)
    assert len(o) == 6 and verify_shelling(o).ok
    assert [len(r) for r in loop_runs(o)] == [3, 3]
    assert [next(a for a in r[0] if a.is_loop) for r in loop_runs(o)] == [loop(0), loop(2)]
    o = shell_coloured_punctured(PolygonSpec.punctured_polygon("BBBBR"))
    assert verify_shelling(o).ok
    assert len(set(o.order)) == len(o.order) == len(build_complex(PolygonSpec.punctured_polygon("BBBBR"), True))


def test_repairs_are_logged(caplog):
    spec = PolygonSpec.punctured_polygon("BRBRBR")
    with caplog.at_level("WARNING"):
        o = shell_coloured_punctured(spec)
    assert o.provenance == "greedy" and o.repair.startswith(str(spec))
    assert "reordered within cells" in o.repair
    assert any(str(spec) in r.getMessage() for r in caplog.records)


def test_constructors_reject_wrong_input():
    with pytest.raises(ValueError):
        shell_coloured_convex(ALT4P)
    with pytest.raises(ValueError):
        shell_coloured_punctured(ALT6)
    with pytest.raises(ValueError):
        shell_coloured_convex(PolygonSpec.convex("RRRR"))


# --- greedy ----------------------------------------------------------------


def test_greedy_examples():
    o = greedy_shelling(build_complex(PolygonSpec.uncoloured(3, True)))
    assert o is not None and len(o) == 6 and verify_shelling(o).ok
    single = ArcComplex.from_facets([{"a", "b"}])
    assert greedy_shelling(single).order == single.facets
    o = greedy_shelling(build_complex(FULL6))
    assert o is not None and verify_shelling(o).ok
    constructed = shell_coloured_convex(PolygonSpec.uncoloured(6, False))
    assert verify_shelling(constructed).ok and set(constructed.order) == set(o.order)


def test_greedy_gives_up_on_unshellable_and_tiny_budgets():
    bowtie = ArcComplex.from_facets([{"v", "a", "b"}, {"v", "c", "d"}])
    assert greedy_shelling(bowtie) is None
    assert greedy_shelling(build_complex(PolygonSpec.uncoloured(7, False)), budget=3) is None


def test_greedy_is_seeded():
    c = build_complex(PolygonSpec.uncoloured(5, True))
    assert greedy_shelling(c, seed=4).order == greedy_shelling(c, seed=4).order


def test_budget_environment(monkeypatch):
    from arccomplex import shelling

    monkeypatch.setenv(shelling.BUDGET_ENV, "7")
    assert shelling.default_budget() == 7
    monkeypatch.delenv(shelling.BUDGET_ENV)
    assert shelling.default_budget() == shelling.DEFAULT_BUDGET


# --- certificates ----------------------------------------------------------


def test_certificate_examples():
    cert = certify(ALT6)
    assert (cert.verdict, cert.dimension, cert.euler_characteristic) == ("closed-ball", 2, 1)
    cert = certify(ALT4P)
    assert (cert.verdict, cert.dimension) == ("closed-ball", 2)
    cert = certify(FULL6, permitted_only=False)
    assert (cert.verdict, cert.dimension, cert.euler_characteristic) == ("sphere", 2, 2)


def test_certificate_without_blue_is_inconclusive():
    cert = certify(PolygonSpec.punctured_polygon("RRR"))
    assert cert.verdict == "inconclusive" and cert.diagnostics


def test_certificate_json():
    cert = certify(ALT4P)
    doc = cert.to_dict()
    assert doc["verdict"] == "closed-ball" and doc["f_vector"] == [8, 13, 6]
    assert len(doc["shelling"]["faces"]) == 6
    assert cert.to_json() == certify(ALT4P).to_json()
    assert "6 maximal faces" in cert.report()


# --- flip paths ------------------------------------------------------------


def test_flip_path_from_a_fan_is_empty():
    assert flip_path_to_fan(ALT6, fan_triangulation(ALT6, 0), True) == []
    assert flip_path_to_fan(ALT4P, fan_triangulation(ALT4P, 2), True) == []


def test_flip_paths_convex():
    for t in enumerate_triangulations(ALT6, True):
        path = flip_path_to_fan(ALT6, t, True)
        arcs = set(t.arcs)
        base_degree = max(sum(v in (a.i, a.j) for a in t.arcs) for v in ALT6.blue_vertices)
        assert len(path) <= len(t.arcs) - base_degree
        for removed, added in path:
            arcs = (arcs - {removed}) | {added}
            assert Triangulation(ALT6, frozenset(arcs)).is_permissible()
        assert any(all(v in (a.i, a.j) for a in arcs) for v in ALT6.blue_vertices)


def test_flip_paths_punctured_stay_in_the_star():
    for t in enumerate_triangulations(ALT4P, True):
        path = flip_path_to_fan(ALT4P, t, True)
        arcs = set(t.arcs)
        for removed, added in path:
            assert not removed.is_loop and not added.is_loop
            arcs = (arcs - {removed}) | {added}
            assert t.loop in arcs
        assert arcs == fan_triangulation(ALT4P, t.loop.i).arcs


# --- order files -----------------------------------------------------------


@pytest.mark.parametrize("spec", [ALT6, ALT4P, PolygonSpec.punctured_polygon("BR")], ids=str)
def test_order_round_trip(spec):
    o = certify(spec).order
    text = dumps_order(o)
    back = loads_order(text, o.complex)
    assert back.order == o.order and back.provenance == o.provenance
    standalone = loads_order(text)
    assert standalone.order == o.order and standalone.complex.dim == o.complex.dim


def test_order_file_errors():
    c = build_complex(ALT6, True)
    for text in ("", "dim=2\n", "shelling d=2 n=5 provenance=user\nD(0,2) D(0,3) D(0,4)\n",
                 "shelling d=1 n=1 provenance=user\nD(0,2) D(0,3) D(0,4)\n"):
        with pytest.raises(ValueError):
            loads_order(text, c)


def test_punctured_arc_helper_consistency():
    assert punctured_arc(2, 2) == loop(2)

"""Shelling orders of arc complexes: checking, constructing and certifying.

Positions reported by the checkers are 1-based, matching the usual way a
shelling ``C_1, ..., C_n`` is written down.
"""

from __future__ import annotations

import json
import logging
import os
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Optional, Sequence, Union

from .polygon import (
    Arc,
    PolygonSpec,
    Triangulation,
    _cut,
    diagonal,
    fan_triangulation,
    flip,
    loop,
)
from .simplicial import (
    ArcComplex,
    _require_pure,
    boundary_complex,
    build_complex,
    euler_characteristic,
    f_vector,
    format_face,
    is_pseudomanifold_with_boundary,
    parse_face,
)

log = logging.getLogger(__name__)

DEFAULT_BUDGET = 200_000
BUDGET_ENV = "ARCCOMPLEX_SEARCH_BUDGET"

PROVENANCES = ("constructed", "greedy", "user")


@dataclass(frozen=True)
class ShellingOrder:
    complex: ArcComplex = field(compare=False, repr=False)
    order: tuple[frozenset, ...]
    provenance: str = "user"
    # set when a constructor's own order failed verification and greedy search replaced it
    repair: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "order", tuple(frozenset(f) for f in self.order))
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")

    def __len__(self) -> int:
        return len(self.order)


@dataclass(frozen=True)
class ShellingCheck:
    ok: bool
    failing_index: Optional[int] = None
    failing_pair: Optional[tuple[int, int]] = None

    def __bool__(self) -> bool:
        return self.ok


def _order_masks(o: ShellingOrder) -> list[int]:
    c = o.complex
    if len(o.order) != len(c.facets) or set(o.order) != set(c.facets):
        raise ValueError("order is not a permutation of the maximal faces of its complex")
    return [c.mask(f) for f in o.order]


def verify_shelling(o: ShellingOrder) -> ShellingCheck:
    """Check the shelling condition directly.

    For every ``k >= 2`` the complex generated by the intersections
    ``C_j & C_k`` (``j < k``) is reduced to its maximal faces, all of which
    must have dimension ``d - 1``.
    """
    _require_pure(o.complex)
    masks = _order_masks(o)
    ridge = o.complex.dim
    for k in range(1, len(masks)):
        current = masks[k]
        meets = sorted({masks[j] & current for j in range(k)}, key=int.bit_count, reverse=True)
        maximal: list[int] = []
        for face in meets:
            if any(face & other == face for other in maximal):
                continue
            if face.bit_count() != ridge:
                return ShellingCheck(False, k + 1)
            maximal.append(face)
    return ShellingCheck(True)


def check_wilson_property(o: ShellingOrder) -> ShellingCheck:
    """For all ``j < k`` look for ``i < k`` with ``C_i & C_k`` a ridge containing ``C_j & C_k``."""
    _require_pure(o.complex)
    masks = _order_masks(o)
    ridge = o.complex.dim
    for k in range(1, len(masks)):
        current = masks[k]
        meets = [masks[i] & current for i in range(k)]
        ridges = [x for x in meets if x.bit_count() == ridge]
        for j, meet in enumerate(meets):
            if not any(meet & r == meet for r in ridges):
                return ShellingCheck(False, k + 1, (j + 1, k + 1))
    return ShellingCheck(True)


def lex_join(xs: Sequence, ys: Sequence, combine: Callable) -> list:
    return [combine(x, y) for x in xs for y in ys]


def join_shelling(
    ox: ShellingOrder,
    oy: ShellingOrder,
    embed: Union[Mapping, Callable, None] = None,
    target: Optional[ArcComplex] = None,
) -> ShellingOrder:
    """Lexicographic shelling of a join from shellings of its two factors.

    ``embed`` sends a pair (face of X, face of Y) to a maximal face of the
    join; by default the two faces are united.
    """
    if embed is None:
        combine = lambda x, y: x | y
    elif callable(embed):
        combine = embed
    else:
        combine = lambda x, y: frozenset(embed[(x, y)])
    faces = [frozenset(f) for f in lex_join(ox.order, oy.order, combine)]
    if len(set(faces)) != len(faces):
        raise ValueError("embedding is not injective on pairs of maximal faces")
    if target is None:
        target = ArcComplex.from_facets(faces)
    elif set(faces) != set(target.facets):
        raise ValueError("embedding does not hit every maximal face of the join")
    return ShellingOrder(target, tuple(faces), "constructed")


# ---------------------------------------------------------------------------
# constructors


def _base_vertex(word: Sequence[str]) -> int:
    """Least blue vertex whose clockwise neighbour is red (0 if all blue)."""
    k = len(word)
    for b in range(k):
        if word[b] == "B" and word[b - 1] == "R":
            return b
    if "R" in word:
        raise ValueError("colouring has no blue vertex")
    return 0


def _pair(p: int, q: int) -> tuple[int, int]:
    return (p, q) if p < q else (q, p)


@lru_cache(maxsize=None)
def _convex_cells(word: tuple[str, ...]) -> tuple[tuple[frozenset, ...], ...]:
    """Recursive star decomposition order for a coloured convex polygon.

    Vertices are ``0..k-1`` ccw.  Relabel ``1..k`` ccw from a blue vertex
    whose clockwise neighbour (label ``k``) is red.  The triangle on the
    boundary edge ``(1, k)`` has apex ``p``; cells are grouped by apex,
    ``p = k-1`` first and then blue ``p`` descending.  Each cell is the join
    of the two polygons on either side of the triangle.
    """
    k = len(word)
    if k <= 3:
        return ((frozenset(),),)
    b = _base_vertex(word)

    def lab(p):
        return (b + p - 1) % k

    apexes = [k - 1] + [p for p in range(k - 2, 1, -1) if word[lab(p)] == "B"]
    out = []
    for p in apexes:
        sigma = set()
        if p != 2:
            sigma.add(_pair(lab(1), lab(p)))
        if p != k - 1:
            sigma.add(_pair(lab(p), lab(k)))
        sigma = frozenset(sigma)
        left = _sub_order(word, [lab(q) for q in range(1, p + 1)])
        right = _sub_order(word, [lab(q) for q in range(p, k + 1)])
        out.append(tuple(lex_join(left, right, lambda x, y: sigma | x | y)))
    return tuple(out)


def _convex_order(word: tuple[str, ...]) -> tuple[frozenset, ...]:
    return tuple(f for cell in _convex_cells(word) for f in cell)


def _sub_order(word: tuple[str, ...], vertices: list[int]) -> tuple[frozenset, ...]:
    if len(vertices) <= 3:
        return (frozenset(),)
    inner = _convex_order(tuple(word[v] for v in vertices))
    return tuple(frozenset(_pair(vertices[p], vertices[q]) for p, q in f) for f in inner)


def _word(spec: PolygonSpec) -> tuple[str, ...]:
    return tuple(c.value for c in spec.colouring)


def _finish(c: ArcComplex, cells: list[list[frozenset]], spec: PolygonSpec, budget: Optional[int], seed: int) -> ShellingOrder:
    """Verify a constructed order; repair it by search if verification fails.

    The repair first searches for a shelling that keeps the constructed
    cells in their order and only reorders faces inside each cell.  Only if
    that fails is the search left unconstrained.
    """
    faces = [f for cell in cells for f in cell]
    order = ShellingOrder(c, tuple(faces), "constructed")
    if set(faces) != set(c.facets) or len(faces) != len(c.facets):
        raise AssertionError(f"constructed cells for {spec} do not partition the maximal faces")
    check = verify_shelling(order)
    if check.ok:
        return order
    reason = f"shelling condition fails at position {check.failing_index}"
    cell_of = {f: k for k, cell in enumerate(cells) for f in cell}
    repaired = greedy_shelling(c, budget=budget, seed=seed, cells=[cell_of[f] for f in c.facets])
    how = "reordered within cells"
    if repaired is None:
        repaired = greedy_shelling(c, budget=budget, seed=seed)
        how = "unconstrained search"
    if repaired is None:
        raise RuntimeError(f"no shelling found for {spec}: constructed order rejected ({reason}) and search failed")
    note = f"{spec}: {reason}; {how}"
    log.warning("constructed order repaired: %s", note)
    return ShellingOrder(c, repaired.order, "greedy", repair=note)


def shell_coloured_convex(spec: PolygonSpec, budget: Optional[int] = None, seed: int = 0) -> ShellingOrder:
    """Shelling of the permitted subcomplex of a coloured convex polygon."""
    if spec.punctured:
        raise ValueError("shell_coloured_convex needs a convex polygon")
    if not spec.has_blue:
        raise ValueError(f"{spec} has no blue vertex")
    c = build_complex(spec, permitted_only=True)
    cells = [[frozenset(diagonal(p, q) for p, q in f) for f in cell] for cell in _convex_cells(_word(spec))]
    return _finish(c, cells, spec, budget, seed)


def loop_sequence(spec: PolygonSpec) -> list[int]:
    """Blue loop bases in cell order: ccw from the base vertex."""
    b = _base_vertex(_word(spec))
    return [(b + s) % spec.m for s in range(spec.m) if spec.is_blue(b + s)]


def shell_coloured_punctured(spec: PolygonSpec, budget: Optional[int] = None, seed: int = 0) -> ShellingOrder:
    """Shelling of the permitted subcomplex of a coloured punctured polygon.

    Cells are the stars of the blue loops; each star is shelled through the
    convex polygon obtained by cutting along its loop.
    """
    if not spec.punctured:
        raise ValueError("shell_coloured_punctured needs a punctured polygon")
    if not spec.has_blue:
        raise ValueError(f"{spec} has no blue vertex")
    c = build_complex(spec, permitted_only=True)
    cells = []
    for v in loop_sequence(spec):
        cut = _cut(spec, v)
        star = _convex_order(_word(cut.polygon))
        cells.append([frozenset({loop(v)} | {cut.from_cut(diagonal(p, q)) for p, q in f}) for f in star])
    return _finish(c, cells, spec, budget, seed)


def loop_runs(o: ShellingOrder) -> list[list[frozenset]]:
    """Split a punctured-polygon order into maximal runs sharing a loop."""
    runs: list[list[frozenset]] = []
    current = None
    for f in o.order:
        base = next(a for a in f if a.is_loop)
        if base != current:
            runs.append([])
            current = base
        runs[-1].append(f)
    return runs


# ---------------------------------------------------------------------------
# search


def default_budget() -> int:
    value = os.environ.get(BUDGET_ENV)
    return int(value) if value else DEFAULT_BUDGET


def greedy_shelling(
    c: ArcComplex,
    budget: Optional[int] = None,
    seed: int = 0,
    cells: Optional[Sequence[int]] = None,
) -> Optional[ShellingOrder]:
    """Depth-first search for a shelling, preferring faces with many shared ridges.

    Dead prefixes are memoised by their face set, since whether a prefix can
    be completed depends only on which faces it contains.  ``cells`` (one
    label per maximal face of ``c``) forces faces to appear in non-decreasing
    label order.  Returns None when the search fails or the node budget runs
    out; neither is evidence of non-shellability.
    """
    _require_pure(c)
    n = len(c.facets)
    if n == 0:
        return None
    budget = default_budget() if budget is None else budget
    masks = c.masks
    ridge = c.dim
    rank = list(range(n))
    random.Random(seed).shuffle(rank)

    def place(state, g):
        cover, pending = state
        new_cover, new_pending = {}, {}
        for f, covered in cover.items():
            if f == g:
                continue
            waiting = pending[f]
            meet = masks[g] & masks[f]
            if meet.bit_count() == ridge:
                covered = covered + [meet]
                waiting = [x for x in waiting if x & meet != x]
            elif not any(meet & x == meet for x in covered):
                waiting = waiting + [meet]
            new_cover[f] = covered
            new_pending[f] = waiting
        return new_cover, new_pending

    def candidates(state):
        cover, pending = state
        ready = [f for f in cover if not pending[f] and cover[f]]
        if cells is not None and cover:
            current = min(cells[f] for f in cover)
            ready = [f for f in ready if cells[f] == current]
        ready.sort(key=lambda f: (-len(cover[f]), rank[f]))
        return ready

    root = ({f: [] for f in range(n)}, {f: [] for f in range(n)})
    first = sorted(range(n), key=rank.__getitem__)
    if cells is not None:
        first = [f for f in first if cells[f] == min(cells)]
    stack = [[root, first, 0, 0]]
    order: list[int] = []
    failed: set[int] = set()
    nodes = 0
    while stack and len(order) < n:
        frame = stack[-1]
        state, options, pos, used = frame
        if pos >= len(options):
            failed.add(used)
            stack.pop()
            if stack:
                order.pop()
            continue
        frame[2] += 1
        g = options[pos]
        grown = used | (1 << g)
        if grown in failed:
            continue
        nodes += 1
        if nodes > budget:
            log.info("greedy shelling search exhausted its budget of %d nodes", budget)
            return None
        order.append(g)
        if len(order) == n:
            break
        child = place(state, g)
        stack.append([child, candidates(child), 0, grown])
    if len(order) < n:
        return None
    result = ShellingOrder(c, tuple(c.facets[g] for g in order), "greedy")
    if not verify_shelling(result).ok:
        raise AssertionError("greedy search produced an order that fails verification")
    return result


# ---------------------------------------------------------------------------
# certificates

VERDICTS = ("closed-ball", "sphere", "inconclusive")


@dataclass(frozen=True)
class BallCertificate:
    spec: str
    permitted_only: bool
    dimension: int
    pseudomanifold: bool
    shelling_verified: bool
    boundary_empty: bool
    euler_characteristic: int
    f_vector: tuple[int, ...]
    verdict: str
    order: Optional[ShellingOrder] = field(default=None, repr=False)
    diagnostics: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "spec": self.spec,
            "permitted_only": self.permitted_only,
            "dimension": self.dimension,
            "pseudomanifold": self.pseudomanifold,
            "shelling_verified": self.shelling_verified,
            "boundary_empty": self.boundary_empty,
            "euler_characteristic": self.euler_characteristic,
            "f_vector": list(self.f_vector),
            "verdict": self.verdict,
            "shelling": None
            if self.order is None
            else {
                "provenance": self.order.provenance,
                "repair": self.order.repair,
                "faces": [format_face(f) for f in self.order.order],
            },
            "diagnostics": list(self.diagnostics),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def report(self) -> str:
        subject = "permitted subcomplex" if self.permitted_only else "arc complex"
        lines = [
            f"certificate for the {subject} of {self.spec}",
            f"  verdict            {self.verdict}",
            f"  dimension          {self.dimension}",
            f"  f-vector           {list(self.f_vector)}",
            f"  euler char.        {self.euler_characteristic}",
            f"  pseudo-manifold    {'yes' if self.pseudomanifold else 'no'}",
            f"  boundary           {'empty' if self.boundary_empty else 'non-empty'}",
            f"  shelling verified  {'yes' if self.shelling_verified else 'no'}",
        ]
        if self.order is not None:
            n = len(self.order)
            lines.append(f"  shelling source    {self.order.provenance} ({n} maximal face{'' if n == 1 else 's'})")
            if self.order.repair:
                lines.append(f"  repair             {self.order.repair}")
        lines += [f"  note: {d}" for d in self.diagnostics]
        return "\n".join(lines) + "\n"


def certify(spec: PolygonSpec, permitted_only: bool = True, budget: Optional[int] = None, seed: int = 0) -> BallCertificate:
    """Danaraj-Klee certificate: shellable pseudo-manifold, with or without boundary."""
    diagnostics: list[str] = []
    if permitted_only and not spec.has_blue:
        return BallCertificate(str(spec), True, -1, False, False, True, 0, (), "inconclusive",
                               diagnostics=("no blue vertex: the permitted subcomplex is empty",))
    c = build_complex(spec, permitted_only)
    pm = is_pseudomanifold_with_boundary(c)
    if not pm.ok:
        diagnostics.append(f"not a pseudo-manifold: {pm.witness}")
    fv = tuple(f_vector(c))
    chi = euler_characteristic(c)
    boundary_empty = not boundary_complex(c).facets if c.is_pure else False

    order = None
    try:
        if not permitted_only and spec.punctured:
            order = greedy_shelling(c, budget=budget, seed=seed)
            if order is None:
                diagnostics.append("greedy shelling search exhausted its budget")
        elif spec.punctured:
            order = shell_coloured_punctured(spec, budget=budget, seed=seed)
        else:
            target = spec if permitted_only else spec.all_blue()
            order = shell_coloured_convex(target, budget=budget, seed=seed)
            if not permitted_only:
                order = ShellingOrder(c, order.order, order.provenance, order.repair)
    except (ValueError, RuntimeError) as exc:
        diagnostics.append(f"no shelling: {exc}")
        order = None
    shelled = order is not None and verify_shelling(order).ok
    if order is not None and order.repair:
        diagnostics.append(f"constructor repaired by greedy search ({order.repair})")

    verdict = "inconclusive"
    if pm.ok and shelled:
        expected_chi = 1 + (-1) ** c.dim if boundary_empty else 1
        if chi == expected_chi:
            verdict = "sphere" if boundary_empty else "closed-ball"
        else:
            diagnostics.append(f"euler characteristic {chi} disagrees with the expected {expected_chi}")
    return BallCertificate(str(spec), permitted_only, c.dim, pm.ok, shelled, boundary_empty, chi, fv,
                           verdict, order, tuple(diagnostics))


# ---------------------------------------------------------------------------
# flip paths


def flip_path_to_fan(spec: PolygonSpec, t: Triangulation, permitted_only: bool = False) -> list[tuple[Arc, Arc]]:
    """Flips (removed, added) taking ``t`` to a fan at a blue vertex.

    Each flip turns an arc opposite the base vertex into an arc at the base,
    so every intermediate triangulation only gains arcs at a blue vertex.
    Punctured triangulations keep their loop and are fanned from its base.
    """
    if permitted_only and not t.is_permissible():
        raise ValueError(f"{t} is not permissible")
    if spec.punctured:
        base = t.loop.i
        if permitted_only and not spec.is_blue(base):
            raise ValueError(f"loop of {t} sits at a red vertex")
        cut = _cut(spec, base)

        def at_base(a: Arc) -> bool:
            return not a.is_loop and cut.to_cut(a).i == 0
    else:
        choices = spec.blue_vertices if permitted_only else list(range(spec.m))
        if not choices:
            raise ValueError(f"{spec} has no blue vertex")
        degree = {v: sum(v in (a.i, a.j) for a in t.arcs) for v in choices}
        base = min(choices, key=lambda v: (-degree[v], v))

        def at_base(a: Arc) -> bool:
            return base in (a.i, a.j)

    path = []
    current = t
    while True:
        for a in sorted(current.arcs):
            if a.is_loop or at_base(a):
                continue
            result = flip(spec, current, a, permitted_only)
            if result is not None and at_base(result[1]):
                current = result[0]
                path.append((a, result[1]))
                break
        else:
            break
    if spec.punctured and current != fan_triangulation(spec, base):
        raise AssertionError("flip path did not reach the fan")
    return path


# ---------------------------------------------------------------------------
# order files


def dumps_order(o: ShellingOrder) -> str:
    lines = [f"shelling d={o.complex.dim} n={len(o.order)} provenance={o.provenance}"]
    lines += [format_face(f) for f in o.order]
    return "\n".join(lines) + "\n"


def loads_order(text: str, complex: Optional[ArcComplex] = None) -> ShellingOrder:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("shelling "):
        raise ValueError("order file must start with a 'shelling d=<d> n=<count> provenance=<tag>' line")
    header = dict(tok.split("=", 1) for tok in lines[0].split()[1:])
    try:
        dim, count, provenance = int(header["d"]), int(header["n"]), header["provenance"]
    except (KeyError, ValueError) as exc:
        raise ValueError(f"malformed order header {lines[0]!r}") from exc
    faces = [parse_face(ln) for ln in lines[1:]]
    if len(faces) != count:
        raise ValueError(f"header announces {count} faces but the file lists {len(faces)}")
    if complex is None:
        complex = ArcComplex.from_facets(faces, dim)
    elif complex.dim != dim:
        raise ValueError(f"order has d={dim} but the complex has dimension {complex.dim}")
    return ShellingOrder(complex, tuple(faces), provenance)

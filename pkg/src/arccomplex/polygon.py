"""Bicoloured convex and once-punctured polygons, their arcs and triangulations.

Vertices are numbered ``0..m-1`` counterclockwise.  A convex diagonal is an
unordered pair ``{i, j}`` stored with ``i < j``.  An arc of a once-punctured
polygon is an ordered pair ``(i, j)``: the side of the arc that does not
contain the puncture holds exactly the vertices strictly between ``i`` and
``j`` counterclockwise.  ``(i, i)`` is the loop at ``i`` that cuts off a
once-punctured monogon.

Disjointness of punctured arcs is decided on the branched double cover,
which is a ``2m``-gon: every arc lifts to one chord (a loop lifts to a
diameter) or to two antipodal chords, and two arcs cross exactly when some
pair of lifted chords interleaves.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterable, Optional


class Colour(str, Enum):
    RED = "R"
    BLUE = "B"


class ArcKind(str, Enum):
    DIAGONAL = "D"
    PUNCTURED = "A"


@dataclass(frozen=True)
class PolygonSpec:
    """A convex or once-punctured ``m``-gon with a red/blue vertex colouring.

    Convex polygons need ``m >= 3`` (the triangle only appears as the result
    of cutting a once-punctured bigon open) and punctured ones ``m >= 2``.
    """

    m: int
    punctured: bool
    colouring: tuple[Colour, ...]

    def __post_init__(self):
        minimum = 2 if self.punctured else 3
        if self.m < minimum:
            kind = "punctured" if self.punctured else "convex"
            raise ValueError(f"a {kind} polygon needs at least {minimum} vertices, got m={self.m}")
        colouring = tuple(Colour(c) for c in self.colouring)
        if len(colouring) != self.m:
            raise ValueError(f"colouring has {len(colouring)} entries for m={self.m}")
        object.__setattr__(self, "colouring", colouring)

    @classmethod
    def convex(cls, colours: str | Iterable[Colour]) -> "PolygonSpec":
        colours = tuple(colours)
        return cls(len(colours), False, colours)

    @classmethod
    def punctured_polygon(cls, colours: str | Iterable[Colour]) -> "PolygonSpec":
        colours = tuple(colours)
        return cls(len(colours), True, colours)

    @classmethod
    def uncoloured(cls, m: int, punctured: bool) -> "PolygonSpec":
        return cls(m, punctured, (Colour.BLUE,) * m)

    def colour(self, v: int) -> Colour:
        return self.colouring[v % self.m]

    def is_blue(self, v: int) -> bool:
        return self.colouring[v % self.m] is Colour.BLUE

    @property
    def blue_vertices(self) -> list[int]:
        return [v for v in range(self.m) if self.colouring[v] is Colour.BLUE]

    @property
    def has_blue(self) -> bool:
        return Colour.BLUE in self.colouring

    @property
    def is_bicoloured(self) -> bool:
        return len(set(self.colouring)) == 2

    @property
    def is_nontrivial(self) -> bool:
        """True when some arc is rejected (has two red endpoints)."""
        return any(not is_permitted(self, a) for a in enumerate_arcs(self))

    @property
    def dimension(self) -> int:
        """Dimension of the full arc complex."""
        return self.m - 2 if self.punctured else self.m - 4

    @property
    def triangulation_size(self) -> int:
        return self.dimension + 1

    def with_colouring(self, colours: str | Iterable[Colour]) -> "PolygonSpec":
        return PolygonSpec(self.m, self.punctured, tuple(colours))

    def all_blue(self) -> "PolygonSpec":
        return PolygonSpec.uncoloured(self.m, self.punctured)

    def __str__(self) -> str:
        word = "".join(c.value for c in self.colouring)
        return f"P:m={self.m};punctured={int(self.punctured)};colours={word}"


_SPEC_RE = re.compile(r"^P:m=(\d+);punctured=([01]);colours=([RB]*)$")


def parse_spec(text: str) -> PolygonSpec:
    match = _SPEC_RE.match(text.strip())
    if not match:
        raise ValueError(f"cannot parse polygon spec {text!r}; expected P:m=<m>;punctured=<0|1>;colours=<RB...>")
    m, punctured, colours = int(match[1]), match[2] == "1", match[3]
    if len(colours) != m:
        raise ValueError(f"colour word {colours!r} has length {len(colours)}, expected {m}")
    if not punctured and m < 4:
        raise ValueError(f"a convex polygon needs at least 4 vertices, got m={m}")
    return PolygonSpec(m, punctured, tuple(colours))


@dataclass(frozen=True, order=True)
class Arc:
    kind: ArcKind
    i: int
    j: int

    @property
    def is_loop(self) -> bool:
        return self.kind is ArcKind.PUNCTURED and self.i == self.j

    @property
    def endpoints(self) -> tuple[int, int]:
        return self.i, self.j

    def __str__(self) -> str:
        if self.kind is ArcKind.DIAGONAL:
            return f"D({self.i},{self.j})"
        if self.i == self.j:
            return f"L({self.i})"
        return f"A({self.i},{self.j})"


def diagonal(i: int, j: int) -> Arc:
    return Arc(ArcKind.DIAGONAL, min(i, j), max(i, j))


def punctured_arc(i: int, j: int) -> Arc:
    return Arc(ArcKind.PUNCTURED, i, j)


def loop(v: int) -> Arc:
    return Arc(ArcKind.PUNCTURED, v, v)


_ARC_RE = re.compile(r"^(?:([DA])\((\d+),(\d+)\)|L\((\d+)\))$")


def parse_arc(text: str) -> Arc:
    match = _ARC_RE.match(text.strip())
    if not match:
        raise ValueError(f"cannot parse arc {text!r}; expected D(i,j), A(i,j) or L(i)")
    if match[4] is not None:
        return loop(int(match[4]))
    i, j = int(match[2]), int(match[3])
    if match[1] == "D":
        if i >= j:
            raise ValueError(f"diagonal {text!r} must be written with i < j")
        return diagonal(i, j)
    if i == j:
        raise ValueError(f"{text!r}: write loops as L(i)")
    return punctured_arc(i, j)


def format_arcs(arcs: Iterable[Arc]) -> str:
    return " ".join(str(a) for a in sorted(arcs))


def parse_arcs(text: str) -> list[Arc]:
    return [parse_arc(tok) for tok in text.split()]


def is_arc_of(spec: PolygonSpec, a: Arc) -> bool:
    m = spec.m
    if not (0 <= a.i < m and 0 <= a.j < m):
        return False
    if spec.punctured:
        return a.kind is ArcKind.PUNCTURED and a.j != (a.i + 1) % m
    return a.kind is ArcKind.DIAGONAL and a.i < a.j and (a.j - a.i) not in (1, m - 1)


def _check_arc(spec: PolygonSpec, a: Arc) -> None:
    if not is_arc_of(spec, a):
        raise ValueError(f"{a} is not an arc of {spec}")


def span(spec: PolygonSpec, a: Arc) -> int:
    """Number of boundary steps on the puncture-free side (``m`` for a loop)."""
    if not spec.punctured:
        return a.j - a.i
    t = (a.j - a.i) % spec.m
    return t or spec.m


@dataclass(frozen=True)
class ChordLift:
    n: int
    chords: frozenset[tuple[int, int]]


def lift(spec: PolygonSpec, a: Arc) -> ChordLift:
    """Chords of ``a`` on the ``m``-gon (convex) or the ``2m``-gon (punctured)."""
    _check_arc(spec, a)
    if not spec.punctured:
        return ChordLift(spec.m, frozenset({(a.i, a.j)}))
    m, n = spec.m, 2 * spec.m
    t = span(spec, a)
    chords = set()
    for base in (a.i, a.i + m):
        p, q = base % n, (base + t) % n
        chords.add((min(p, q), max(p, q)))
    return ChordLift(n, frozenset(chords))


def _interleave(c: tuple[int, int], d: tuple[int, int]) -> bool:
    a, b = c
    x, y = d
    if len({a, b, x, y}) < 4:
        return False
    return (a < x < b) != (a < y < b)


def _lifts_cross(la: ChordLift, lb: ChordLift) -> bool:
    return any(_interleave(c, d) for c in la.chords for d in lb.chords)


def arcs_cross(spec: PolygonSpec, a: Arc, b: Arc) -> bool:
    """True when no representatives of ``a`` and ``b`` are disjoint."""
    la, lb = lift(spec, a), lift(spec, b)
    if a == b:
        return False
    return _lifts_cross(la, lb)


def is_permitted(spec: PolygonSpec, a: Arc) -> bool:
    return spec.is_blue(a.i) or spec.is_blue(a.j)


def enumerate_arcs(spec: PolygonSpec, permitted_only: bool = False) -> list[Arc]:
    if permitted_only:
        _require_blue(spec)
    return list(_arcs(spec, permitted_only))


@lru_cache(maxsize=None)
def _arcs(spec: PolygonSpec, permitted_only: bool) -> tuple[Arc, ...]:
    m = spec.m
    if spec.punctured:
        arcs = [punctured_arc(i, j) for i in range(m) for j in range(m) if j != (i + 1) % m]
    else:
        arcs = [diagonal(i, j) for i in range(m) for j in range(i + 2, m) if (i, j) != (0, m - 1)]
    if permitted_only:
        arcs = [a for a in arcs if is_permitted(spec, a)]
    return tuple(sorted(arcs))


def _require_blue(spec: PolygonSpec) -> None:
    if not spec.has_blue:
        raise ValueError(f"{spec} has no blue vertex, so its permitted subcomplex is empty")


@dataclass(frozen=True)
class ArcSystem:
    """Arcs of a polygon indexed ``0..n-1`` with bitmask compatibility rows."""

    arcs: tuple[Arc, ...]
    index: dict
    compatible: tuple[int, ...]

    def mask(self, arcs: Iterable[Arc]) -> int:
        out = 0
        for a in arcs:
            out |= 1 << self.index[a]
        return out

    def unmask(self, mask: int) -> frozenset[Arc]:
        return frozenset(self.arcs[k] for k in _bits(mask))


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@lru_cache(maxsize=None)
def arc_system(spec: PolygonSpec, permitted_only: bool = False) -> ArcSystem:
    arcs = _arcs(spec, permitted_only)
    lifts = [lift(spec, a) for a in arcs]
    rows = []
    for k, la in enumerate(lifts):
        row = 0
        for l, lb in enumerate(lifts):
            if k != l and not _lifts_cross(la, lb):
                row |= 1 << l
        rows.append(row)
    return ArcSystem(arcs, {a: k for k, a in enumerate(arcs)}, tuple(rows))


def maximal_compatible_sets(spec: PolygonSpec, permitted_only: bool = False) -> list[frozenset[Arc]]:
    """All maximal sets of pairwise non-crossing arcs, canonically ordered.

    Bron-Kerbosch with pivoting on the compatibility graph.  Nothing here
    assumes the maximal sets share a size, so purity can be checked on the
    result rather than built in.
    """
    if permitted_only:
        _require_blue(spec)
    system = arc_system(spec, permitted_only)
    rows = system.compatible
    found: list[int] = []

    def expand(clique: int, candidates: int, excluded: int) -> None:
        if not candidates and not excluded:
            found.append(clique)
            return
        pool = candidates | excluded
        pivot = max(_bits(pool), key=lambda u: (rows[u] & candidates).bit_count())
        for v in _bits(candidates & ~rows[pivot]):
            bit = 1 << v
            expand(clique | bit, candidates & rows[v], excluded & rows[v])
            candidates &= ~bit
            excluded |= bit

    everything = (1 << len(system.arcs)) - 1
    expand(0, everything, 0)
    faces = [system.unmask(mask) for mask in found]
    return sorted(faces, key=lambda f: tuple(sorted(f)))


@dataclass(frozen=True)
class Triangulation:
    spec: PolygonSpec
    arcs: frozenset[Arc]

    def __post_init__(self):
        arcs = frozenset(self.arcs)
        object.__setattr__(self, "arcs", arcs)
        for a in arcs:
            _check_arc(self.spec, a)
        if len(arcs) != self.spec.triangulation_size:
            raise ValueError(
                f"a triangulation of {self.spec} has {self.spec.triangulation_size} arcs, got {len(arcs)}"
            )
        for a, b in itertools.combinations(sorted(arcs), 2):
            if arcs_cross(self.spec, a, b):
                raise ValueError(f"{a} and {b} cross")
        if self.spec.punctured and sum(a.is_loop for a in arcs) != 1:
            raise ValueError("a triangulation of a punctured polygon has exactly one loop")

    @property
    def loop(self) -> Optional[Arc]:
        return next((a for a in self.arcs if a.is_loop), None)

    def is_permissible(self) -> bool:
        return all(is_permitted(self.spec, a) for a in self.arcs)

    def __str__(self) -> str:
        return format_arcs(self.arcs)


def enumerate_triangulations(spec: PolygonSpec, permitted_only: bool = False) -> list[Triangulation]:
    return [Triangulation(spec, face) for face in maximal_compatible_sets(spec, permitted_only)]


def _check_pairwise_disjoint(spec: PolygonSpec, arcs: Iterable[Arc]) -> None:
    for a, b in itertools.combinations(sorted(arcs), 2):
        if arcs_cross(spec, a, b):
            raise ValueError(f"{a} and {b} cross")


def flip(spec: PolygonSpec, t: Triangulation, a: Arc, permitted_only: bool = False) -> Optional[tuple[Triangulation, Arc]]:
    """The other completion of ``t - {a}``, or None when ``t - {a}`` has only one."""
    if a not in t.arcs:
        raise ValueError(f"{a} is not an arc of the triangulation {t}")
    rest = t.arcs - {a}
    system = arc_system(spec, permitted_only)
    common = (1 << len(system.arcs)) - 1
    for b in rest:
        if b not in system.index:
            return None
        common &= system.compatible[system.index[b]]
    common &= ~system.mask(rest)
    if a in system.index:
        common &= ~(1 << system.index[a])
    replacements = sorted(system.unmask(common))
    if not replacements:
        return None
    if len(replacements) > 1:
        raise ValueError(f"{format_arcs(rest)} has more than two completions")
    b = replacements[0]
    return Triangulation(spec, rest | {b}), b


def fan_triangulation(spec: PolygonSpec, v: int) -> Triangulation:
    m = spec.m
    if spec.punctured:
        arcs = {loop(v)} | {punctured_arc(v, (v + s) % m) for s in range(2, m)}
    else:
        arcs = {diagonal(v, (v + s) % m) for s in range(2, m - 1)}
    return Triangulation(spec, frozenset(arcs))


# ---------------------------------------------------------------------------
# cutting along a loop


@dataclass(frozen=True)
class Cut:
    """A punctured polygon cut open along the loop at ``v``.

    The convex polygon has vertices ``0..m``: ``0`` and ``m`` are the two
    copies of ``v`` and ``k`` is the original vertex ``v + k``.
    """

    source: PolygonSpec
    v: int
    polygon: PolygonSpec
    forward: dict
    backward: dict

    def to_cut(self, a: Arc) -> Arc:
        return self.forward[a]

    def from_cut(self, d: Arc) -> Arc:
        return self.backward[d]


def cut_along_loop(spec: PolygonSpec, a: Arc) -> Cut:
    if not spec.punctured or not a.is_loop:
        raise ValueError(f"{a} is not a loop of a punctured polygon")
    _check_arc(spec, a)
    return _cut(spec, a.i)


@lru_cache(maxsize=None)
def _cut(spec: PolygonSpec, v: int) -> Cut:
    m = spec.m
    colours = tuple(spec.colour(v + k) for k in range(m)) + (spec.colour(v),)
    polygon = PolygonSpec(m + 1, False, colours)
    forward, backward = {}, {}
    for a in _arcs(spec, False):
        if a.is_loop:
            continue
        start = (a.i - v) % m
        end = start + span(spec, a)
        if end > m:
            continue
        d = diagonal(start, end)
        forward[a] = d
        backward[d] = a
    return Cut(spec, v, polygon, forward, backward)


# ---------------------------------------------------------------------------
# extension to a triangulation


def _regions(vertices: list[int], chords: set[tuple[int, int]]) -> list[list[int]]:
    """Split a convex polygon (ccw vertex list) along non-crossing chords."""
    position = {u: k for k, u in enumerate(vertices)}
    for p, q in sorted(chords):
        if p in position and q in position:
            a, b = sorted((position[p], position[q]))
            if b - a >= 2 and not (a == 0 and b == len(vertices) - 1):
                rest = chords - {(p, q)}
                left = vertices[a:b + 1]
                right = vertices[b:] + vertices[:a + 1]
                return _regions(left, rest) + _regions(right, rest)
    return [vertices]


def _fan_regions(
    vertices: list[int], chords: set[tuple[int, int]], blue: set[int] | None
) -> set[tuple[int, int]]:
    added = set()
    for region in _regions(vertices, chords):
        if len(region) < 4:
            continue
        choices = sorted(u for u in region if blue is None or u in blue)
        if not choices:
            raise ValueError(f"region {region} has no blue vertex to fan from")
        base = choices[0]
        k = region.index(base)
        for step in range(2, len(region) - 1):
            u = region[(k + step) % len(region)]
            added.add((min(base, u), max(base, u)))
    return added


def extend_to_triangulation(spec: PolygonSpec, partial: Iterable[Arc], permitted_only: bool = False) -> Triangulation:
    """Complete a set of pairwise disjoint arcs to a triangulation.

    Untriangulated regions are fanned from their smallest blue vertex (any
    vertex when colours are ignored).  In the punctured case a loop is added
    first if there is none: at a blue endpoint of an outermost arc, which
    is the arc separating the puncture from the others.
    """
    partial = frozenset(partial)
    for a in partial:
        _check_arc(spec, a)
    _check_pairwise_disjoint(spec, partial)
    if permitted_only:
        _require_blue(spec)
        rejected = [a for a in partial if not is_permitted(spec, a)]
        if rejected:
            raise ValueError(f"{format_arcs(rejected)} is rejected under {spec}")
    ok = spec.is_blue if permitted_only else (lambda u: True)

    if not spec.punctured:
        chords = {(a.i, a.j) for a in partial}
        blue = set(spec.blue_vertices) if permitted_only else None
        added = _fan_regions(list(range(spec.m)), chords, blue)
        return Triangulation(spec, partial | {diagonal(p, q) for p, q in added})

    loops = [a for a in partial if a.is_loop]
    if loops:
        base = loops[0]
    else:
        base = loop(_loop_vertex(spec, partial, ok))
    cut = cut_along_loop(spec, base)
    inner = partial - {base}
    chords = {(d.i, d.j) for d in (cut.to_cut(a) for a in inner)}
    polygon = cut.polygon
    blue = {u for u in range(polygon.m) if polygon.is_blue(u)} if permitted_only else None
    added = _fan_regions(list(range(polygon.m)), chords, blue)
    arcs = partial | {base} | {cut.from_cut(diagonal(p, q)) for p, q in added}
    return Triangulation(spec, arcs)


def _loop_vertex(spec: PolygonSpec, partial: frozenset[Arc], ok) -> int:
    if not partial:
        return next(v for v in range(spec.m) if ok(v))
    outer = [a for a in sorted(partial) if not any(_nested(spec, a, b) for b in partial if b != a)]
    for a in outer:
        ends = sorted({a.i, a.j})
        for v in ends:
            if ok(v):
                return v
    raise ValueError("no outermost arc has an admissible endpoint")


def _nested(spec: PolygonSpec, a: Arc, b: Arc) -> bool:
    """True when the puncture-free side of ``a`` lies inside that of ``b``."""
    m = spec.m
    offset = (a.i - b.i) % m
    return offset + span(spec, a) <= span(spec, b)


# ---------------------------------------------------------------------------
# colourings


def colourings(m: int, punctured: bool = False, up_to_symmetry: bool = True, need_blue: bool = True) -> list[PolygonSpec]:
    """Every colouring of the ``m``-gon, optionally one per dihedral orbit.

    Orbit representatives are the lexicographically least word of each orbit
    over the alphabet ``B < R``.
    """
    words = set()
    for word in itertools.product("BR", repeat=m):
        if need_blue and "B" not in word:
            continue
        if up_to_symmetry:
            word = min(_dihedral_images(word))
        words.add("".join(word))
    return [PolygonSpec(m, punctured, tuple(w)) for w in sorted(words)]


def _dihedral_images(word: tuple[str, ...]):
    m = len(word)
    for r in range(m):
        rotated = word[r:] + word[:r]
        yield rotated
        yield rotated[::-1]

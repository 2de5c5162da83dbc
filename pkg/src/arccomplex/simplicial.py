"""Finite simplicial complexes given by their maximal faces.

Faces are frozensets of vertices (arcs, usually).  Internally each face is
also kept as a bitmask over the sorted vertex list, which makes the subset
and intersection tests used everywhere in the shelling code cheap.
"""

from __future__ import annotations

import itertools
import json
import math
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Optional

import networkx as nx

from .polygon import (
    PolygonSpec,
    format_arcs,
    maximal_compatible_sets,
    parse_arc,
)


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class ArcComplex:
    """A finite simplicial complex listed by its maximal faces."""

    vertices: tuple
    facets: tuple[frozenset, ...]
    dim: Optional[int] = None

    def __post_init__(self):
        facets = tuple(frozenset(f) for f in self.facets)
        object.__setattr__(self, "facets", facets)
        object.__setattr__(self, "vertices", tuple(self.vertices))
        if self.dim is None:
            object.__setattr__(self, "dim", max((len(f) for f in facets), default=0) - 1)
        known = set(self.vertices)
        for f in facets:
            if not f <= known:
                raise ValueError(f"face {sorted(map(str, f))} uses vertices outside the vertex set")
        masks = self.masks
        if len(set(masks)) != len(masks):
            raise ValueError("a maximal face is listed twice")
        for a, b in itertools.permutations(range(len(masks)), 2):
            if masks[a] & masks[b] == masks[a]:
                raise ValueError(f"face #{a} is contained in face #{b}; only maximal faces may be listed")

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable[Hashable]], dim: Optional[int] = None) -> "ArcComplex":
        facets = [frozenset(f) for f in facets]
        vertices = sorted(set().union(*facets)) if facets else []
        return cls(tuple(vertices), tuple(facets), dim)

    @cached_property
    def index(self) -> dict:
        return {v: k for k, v in enumerate(self.vertices)}

    @cached_property
    def masks(self) -> tuple[int, ...]:
        index = self.index
        return tuple(sum(1 << index[v] for v in f) for f in self.facets)

    def mask(self, face: Iterable[Hashable]) -> int:
        return sum(1 << self.index[v] for v in face)

    def face(self, mask: int) -> frozenset:
        return frozenset(self.vertices[k] for k in _bits(mask))

    @property
    def is_pure(self) -> bool:
        return all(len(f) == self.dim + 1 for f in self.facets)

    def __len__(self) -> int:
        return len(self.facets)


def build_complex(spec: PolygonSpec, permitted_only: bool = False) -> ArcComplex:
    """Arc complex of ``spec`` (or its permitted subcomplex) by its triangulations."""
    facets = maximal_compatible_sets(spec, permitted_only)
    vertices = sorted(set().union(*facets))
    return ArcComplex(tuple(vertices), tuple(facets))


def f_vector(c: ArcComplex) -> list[int]:
    faces: set[int] = set()
    for mask in c.masks:
        bits = [1 << k for k in _bits(mask)]
        for r in range(1, len(bits) + 1):
            for combo in itertools.combinations(bits, r):
                faces.add(sum(combo))
    counts = Counter(m.bit_count() for m in faces)
    return [counts.get(k + 1, 0) for k in range(c.dim + 1)]


def euler_characteristic(c: ArcComplex) -> int:
    return sum((-1) ** k * n for k, n in enumerate(f_vector(c)))


@dataclass(frozen=True)
class Codim1Classification:
    """How many maximal faces contain each ``(d-1)``-face of a pure complex."""

    counts: dict
    interior: list = field(default_factory=list)
    boundary: list = field(default_factory=list)
    violations: list = field(default_factory=list)


def _ridge_counts(c: ArcComplex) -> dict[int, list[int]]:
    ridges: dict[int, list[int]] = {}
    for k, mask in enumerate(c.masks):
        for bit in _bits(mask):
            ridges.setdefault(mask & ~(1 << bit), []).append(k)
    return ridges


def _require_pure(c: ArcComplex) -> None:
    if not c.is_pure:
        sizes = sorted({len(f) for f in c.facets})
        raise ValueError(f"complex is not pure: maximal faces have sizes {sizes}")


def classify_codim1(c: ArcComplex) -> Codim1Classification:
    ridges = _ridge_counts(c)
    counts = {c.face(r): len(ks) for r, ks in ridges.items()}
    order = sorted(ridges, key=lambda r: tuple(sorted(c.face(r))))
    interior = [c.face(r) for r in order if len(ridges[r]) == 2]
    boundary = [c.face(r) for r in order if len(ridges[r]) == 1]
    violations = [c.face(r) for r in order if len(ridges[r]) >= 3]
    return Codim1Classification(counts, interior, boundary, violations)


def dual_graph(c: ArcComplex) -> nx.Graph:
    """Maximal faces (by position) joined when they share a ``(d-1)``-face."""
    _require_pure(c)
    graph = nx.Graph()
    graph.add_nodes_from(range(len(c.facets)))
    for members in _ridge_counts(c).values():
        graph.add_edges_from(itertools.combinations(members, 2))
    return graph


def strongly_connected(c: ArcComplex) -> bool:
    graph = dual_graph(c)
    return graph.number_of_nodes() > 0 and nx.is_connected(graph)


@dataclass(frozen=True)
class PseudomanifoldReport:
    ok: bool
    witness: Optional[str] = None
    violating_face: Optional[frozenset] = None


def is_pseudomanifold_with_boundary(c: ArcComplex) -> PseudomanifoldReport:
    if not c.is_pure:
        sizes = sorted({len(f) for f in c.facets})
        return PseudomanifoldReport(False, f"not pure: maximal faces have sizes {sizes}")
    if not strongly_connected(c):
        return PseudomanifoldReport(False, "dual graph is disconnected")
    violations = classify_codim1(c).violations
    if violations:
        face = violations[0]
        return PseudomanifoldReport(
            False, f"face {{{format_arcs(face)}}} lies in more than two maximal faces", face
        )
    return PseudomanifoldReport(True)


def boundary_complex(c: ArcComplex) -> ArcComplex:
    _require_pure(c)
    faces = classify_codim1(c).boundary
    vertices = sorted(set().union(*faces)) if faces else []
    return ArcComplex(tuple(vertices), tuple(faces), c.dim - 1)


@dataclass(frozen=True)
class FlipGraphStats:
    vertices: int
    edges: int
    diameter: float


def flip_graph_stats(c: ArcComplex) -> FlipGraphStats:
    graph = dual_graph(c)
    n, e = graph.number_of_nodes(), graph.number_of_edges()
    if n == 0 or not nx.is_connected(graph):
        return FlipGraphStats(n, e, math.inf)
    return FlipGraphStats(n, e, nx.diameter(graph))


# ---------------------------------------------------------------------------
# serialization

EMPTY_FACE = "-"


def format_face(face: Iterable) -> str:
    text = format_arcs(face)
    return text or EMPTY_FACE


def parse_face(line: str) -> frozenset:
    line = line.strip()
    if line == EMPTY_FACE:
        return frozenset()
    return frozenset(parse_arc(tok) for tok in line.split())


def dumps_complex(c: ArcComplex) -> str:
    lines = [f"dim={c.dim}"] + [format_face(f) for f in c.facets]
    return "\n".join(lines) + "\n"


def loads_complex(text: str) -> ArcComplex:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("dim="):
        raise ValueError("complex file must start with a dim=<d> line")
    dim = int(lines[0][4:])
    return ArcComplex.from_facets([parse_face(ln) for ln in lines[1:]], dim)


def complex_to_dict(c: ArcComplex) -> dict:
    return {
        "dim": c.dim,
        "vertices": [str(v) for v in c.vertices],
        "facets": [[str(v) for v in sorted(f)] for f in c.facets],
    }


def complex_from_dict(doc: dict) -> ArcComplex:
    vertices = tuple(parse_arc(v) for v in doc["vertices"])
    facets = tuple(frozenset(parse_arc(v) for v in f) for f in doc["facets"])
    return ArcComplex(vertices, facets, doc["dim"])


def dumps_complex_json(c: ArcComplex) -> str:
    return json.dumps(complex_to_dict(c), indent=2) + "\n"


def dual_graph_dot(c: ArcComplex, name: str = "flipgraph") -> str:
    graph = dual_graph(c)
    lines = [f"graph {name} {{", "  node [shape=box, fontsize=10];"]
    for k, face in enumerate(c.facets):
        lines.append(f'  t{k} [label="{format_face(face)}"];')
    for a, b in sorted(tuple(sorted(e)) for e in graph.edges()):
        lines.append(f"  t{a} -- t{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"

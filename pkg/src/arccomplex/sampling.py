"""Random orders of maximal faces for exercising the shelling checkers.

Uniform permutations almost always fail at the second or third face, so
they say little about the checkers.  Orders grown through the dual graph
and small perturbations of a known shelling fail late or not at all, which
is where the two checkers could disagree.
"""

from __future__ import annotations

import random
from typing import Iterable, Iterator, Optional

from .shelling import ShellingOrder
from .simplicial import ArcComplex, dual_graph


def connected_growth(c: ArcComplex, rng: random.Random) -> list[int]:
    """Random order in which every face after the first shares a ridge with an earlier one."""
    graph = dual_graph(c)
    n = len(c.facets)
    start = rng.randrange(n)
    order, seen = [start], {start}
    frontier = set(graph[start])
    while len(order) < n:
        if not frontier:
            # disconnected dual graph: jump to a fresh component
            rest = sorted(set(range(n)) - seen)
            frontier = {rng.choice(rest)}
        g = rng.choice(sorted(frontier))
        order.append(g)
        seen.add(g)
        frontier |= set(graph[g])
        frontier -= seen
    return order


def perturb(order: list[int], rng: random.Random) -> list[int]:
    out = list(order)
    if len(out) < 2:
        return out
    if rng.random() < 0.5:
        k = rng.randrange(len(out) - 1)
        out[k], out[k + 1] = out[k + 1], out[k]
    else:
        face = out.pop(rng.randrange(len(out)))
        out.insert(rng.randrange(len(out) + 1), face)
    return out


def sample_orders(
    c: ArcComplex,
    count: int = 100,
    seed: int = 0,
    known: Iterable[ShellingOrder] = (),
) -> Iterator[ShellingOrder]:
    """``count`` orders of the maximal faces of ``c`` (fewer if it has fewer permutations).

    Mixes the ``known`` orders, their perturbations, dual-graph growth orders
    and uniform permutations, in roughly equal parts.
    """
    rng = random.Random(seed)
    n = len(c.facets)
    position = {f: k for k, f in enumerate(c.facets)}
    bases = [[position[f] for f in o.order] for o in known]
    limit = _factorial_cap(n, count)
    seen: set[tuple[int, ...]] = set()
    attempts = 0

    def emit(order: list[int]) -> Optional[ShellingOrder]:
        key = tuple(order)
        if key in seen:
            return None
        seen.add(key)
        return ShellingOrder(c, tuple(c.facets[k] for k in order), "user")

    for base in bases:
        o = emit(base)
        if o is not None:
            yield o
    while len(seen) < limit and attempts < 50 * count:
        attempts += 1
        kind = attempts % 3
        if kind == 0 and bases:
            order = perturb(rng.choice(bases), rng)
            for _ in range(rng.randrange(3)):
                order = perturb(order, rng)
        elif kind == 1:
            order = connected_growth(c, rng)
        else:
            order = list(range(n))
            rng.shuffle(order)
        o = emit(order)
        if o is not None:
            yield o


def _factorial_cap(n: int, count: int) -> int:
    total = 1
    for k in range(2, n + 1):
        total *= k
        if total >= count:
            return count
    return min(total, count)

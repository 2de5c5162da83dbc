"""Batch certification over families of coloured polygons."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Optional

from .polygon import PolygonSpec, colourings
from .shelling import certify


@dataclass(frozen=True)
class SweepConfig:
    convex: Optional[tuple[int, int]] = None
    punctured: Optional[tuple[int, int]] = None
    up_to_symmetry: bool = True
    include_full: bool = True
    jobs: int = 1
    seed: int = 0
    budget: Optional[int] = None


@dataclass(frozen=True)
class SweepRow:
    spec: str
    punctured: bool
    m: int
    permitted_only: bool
    nontrivial: bool
    dimension: int
    facets: int
    euler: int
    boundary_empty: bool
    verdict: str
    expected: str
    shelling: str
    repair: Optional[str]

    @property
    def ok(self) -> bool:
        return self.verdict == self.expected


def sweep_specs(config: SweepConfig) -> list[tuple[PolygonSpec, bool]]:
    jobs = []
    for punctured, span in ((False, config.convex), (True, config.punctured)):
        if span is None:
            continue
        lo, hi = span
        for m in range(lo, hi + 1):
            if config.include_full:
                jobs.append((PolygonSpec.uncoloured(m, punctured), False))
            for spec in colourings(m, punctured, up_to_symmetry=config.up_to_symmetry):
                jobs.append((spec, True))
    return jobs


def expected_verdict(spec: PolygonSpec, permitted_only: bool) -> str:
    """Sphere when nothing is rejected (full complex), closed ball otherwise."""
    if permitted_only and spec.is_nontrivial:
        return "closed-ball"
    return "sphere"


def _row(args) -> SweepRow:
    spec, permitted_only, seed, budget = args
    cert = certify(spec, permitted_only, budget=budget, seed=seed)
    order = cert.order
    return SweepRow(
        spec=str(spec),
        punctured=spec.punctured,
        m=spec.m,
        permitted_only=permitted_only,
        nontrivial=permitted_only and spec.is_nontrivial,
        dimension=cert.dimension,
        facets=0 if order is None else len(order),
        euler=cert.euler_characteristic,
        boundary_empty=cert.boundary_empty,
        verdict=cert.verdict,
        expected=expected_verdict(spec, permitted_only),
        shelling="-" if order is None else order.provenance,
        repair=None if order is None else order.repair,
    )


def run_sweep(config: SweepConfig) -> list[SweepRow]:
    work = [(spec, permitted, config.seed, config.budget) for spec, permitted in sweep_specs(config)]
    if config.jobs > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            return list(pool.map(_row, work))
    return [_row(w) for w in work]


def format_table(rows: list[SweepRow], seed: int = 0) -> str:
    header = f"{'polygon':<34} {'complex':<9} {'d':>2} {'facets':>6} {'chi':>4} {'boundary':<9} {'verdict':<12} {'expected':<12} {'shelling':<11} ok"
    lines = [f"# sweep seed={seed}", header]
    for r in rows:
        lines.append(
            f"{r.spec:<34} {'permitted' if r.permitted_only else 'full':<9} {r.dimension:>2} {r.facets:>6} "
            f"{r.euler:>4} {'empty' if r.boundary_empty else 'non-empty':<9} {r.verdict:<12} {r.expected:<12} "
            f"{r.shelling:<11} {'yes' if r.ok else 'NO'}"
        )
    repairs = [r.repair for r in rows if r.repair]
    failures = sum(not r.ok for r in rows)
    lines.append(f"# rows={len(rows)} mismatches={failures} repairs={len(repairs)}")
    lines += [f"# repair: {note}" for note in repairs]
    return "\n".join(lines) + "\n"

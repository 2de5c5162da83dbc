"""Compare the direct shelling check with the pairwise (Wilson) check.

For each complex in the sweep, sample orders (the constructed shelling,
perturbations of it, dual-graph growth orders and uniform permutations) and
count how often the two checkers disagree on the verdict or on the first
failing position.
"""

import argparse
import sys
from collections import Counter
from dataclasses import dataclass

from arccomplex.sampling import sample_orders
from arccomplex.shelling import certify, check_wilson_property, verify_shelling
from arccomplex.sweep import SweepConfig, sweep_specs


@dataclass(frozen=True)
class EquivalenceConfig:
    sweep: SweepConfig
    orders: int = 100
    seed: int = 0


def run(config: EquivalenceConfig) -> int:
    disagreements = 0
    histogram: Counter = Counter()
    for spec, permitted_only in sweep_specs(config.sweep):
        cert = certify(spec, permitted_only)
        c = cert.order.complex
        n = 0
        for o in sample_orders(c, config.orders, seed=config.seed, known=[cert.order]):
            a, b = verify_shelling(o), check_wilson_property(o)
            n += 1
            histogram["shelling" if a.ok else f"fails at k={a.failing_index}" if a.failing_index <= 3 else "fails late"] += 1
            if a.ok != b.ok or a.failing_index != b.failing_index:
                disagreements += 1
                print(f"DISAGREE {spec} permitted={permitted_only}: {a} vs {b}")
        print(f"{str(spec):<34} {'permitted' if permitted_only else 'full':<9} faces={len(c):>4} orders={n}")
    print("# outcome histogram:", dict(sorted(histogram.items())))
    print(f"# disagreements={disagreements}")
    return disagreements


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--convex", type=int, nargs=2, default=(4, 8), metavar=("LO", "HI"))
    parser.add_argument("--punctured", type=int, nargs=2, default=(2, 5), metavar=("LO", "HI"))
    parser.add_argument("--orders", type=int, default=100)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    config = EquivalenceConfig(SweepConfig(tuple(args.convex), tuple(args.punctured)), args.orders, args.seed)
    return 1 if run(config) else 0


if __name__ == "__main__":
    sys.exit(main())

"""Certify every colouring over a range of polygon sizes and print the table.

    python scripts/run_sweep.py --convex 4 9 --punctured 2 6 --jobs 4
"""

import argparse
import sys

from arccomplex.sweep import SweepConfig, format_table, run_sweep


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--convex", type=int, nargs=2, default=(4, 9), metavar=("LO", "HI"))
    parser.add_argument("--punctured", type=int, nargs=2, default=(2, 6), metavar=("LO", "HI"))
    parser.add_argument("--all-colourings", action="store_true")
    parser.add_argument("--jobs", type=int, default=1)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    config = SweepConfig(
        convex=tuple(args.convex),
        punctured=tuple(args.punctured),
        up_to_symmetry=not args.all_colourings,
        jobs=args.jobs,
        seed=args.seed,
    )
    rows = run_sweep(config)
    sys.stdout.write(format_table(rows, seed=config.seed))
    return 0 if all(r.ok for r in rows) else 1


if __name__ == "__main__":
    sys.exit(main())

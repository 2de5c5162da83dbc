"""Flip-graph sizes and diameters of full and permitted arc complexes."""

import argparse

from arccomplex.polygon import PolygonSpec, colourings
from arccomplex.simplicial import build_complex, flip_graph_stats


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--convex", type=int, nargs=2, default=(4, 9), metavar=("LO", "HI"))
    parser.add_argument("--punctured", type=int, nargs=2, default=(2, 6), metavar=("LO", "HI"))
    args = parser.parse_args()
    print(f"{'polygon':<34} {'complex':<9} {'faces':>6} {'flips':>6} {'diameter':>8}")
    for punctured, (lo, hi) in ((False, args.convex), (True, args.punctured)):
        for m in range(lo, hi + 1):
            jobs = [(PolygonSpec.uncoloured(m, punctured), False)] + [(s, True) for s in colourings(m, punctured)]
            for spec, permitted_only in jobs:
                s = flip_graph_stats(build_complex(spec, permitted_only))
                kind = "permitted" if permitted_only else "full"
                print(f"{str(spec):<34} {kind:<9} {s.vertices:>6} {s.edges:>6} {s.diameter:>8}")


if __name__ == "__main__":
    main()

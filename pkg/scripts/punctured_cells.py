"""Show where the loop-star order of a punctured polygon breaks, if it does.

For every colouring in range, the stars of the blue loops are concatenated
ccw from the base vertex, each shelled through its cut polygon.  When the
concatenation is not a shelling, print the first failing face, the earlier
face it meets badly and whether reordering inside the stars fixes it.
"""

import argparse

from arccomplex.polygon import _cut, colourings, diagonal, format_arcs, loop
from arccomplex.shelling import (
    ShellingOrder,
    _convex_order,
    _word,
    greedy_shelling,
    loop_runs,
    loop_sequence,
    shell_coloured_punctured,
    verify_shelling,
)
from arccomplex.simplicial import build_complex


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--punctured", type=int, nargs=2, default=(2, 7), metavar=("LO", "HI"))
    args = parser.parse_args()
    lo, hi = args.punctured
    for m in range(lo, hi + 1):
        for spec in colourings(m, True):
            o = shell_coloured_punctured(spec)
            if o.repair is None:
                print(f"{spec}: loop stars in order {[len(r) for r in loop_runs(o)]} shell directly")
                continue
            print(o.repair)
            print(f"  repaired order keeps the stars contiguous: {[len(r) for r in loop_runs(o)]}")
            _explain(spec)


def _explain(spec) -> None:
    # rebuild the unrepaired order to show the witness
    c = build_complex(spec, True)
    faces = []
    for v in loop_sequence(spec):
        cut = _cut(spec, v)
        faces += [frozenset({loop(v)} | {cut.from_cut(diagonal(p, q)) for p, q in f})
                  for f in _convex_order(_word(cut.polygon))]
    order = ShellingOrder(c, tuple(faces))
    k = verify_shelling(order).failing_index
    current = faces[k - 1]
    meets = [faces[j] & current for j in range(k - 1)]
    bad = max((x for x in meets if not any(x < y and len(y) == c.dim for y in meets) and len(x) < c.dim),
              key=len)
    j = meets.index(bad)
    print(f"  C_{k} = {format_arcs(current)}")
    print(f"  C_{j + 1} = {format_arcs(faces[j])}")
    print(f"  meet {format_arcs(bad)} lies in no earlier ridge of C_{k}")
    assert greedy_shelling(c) is not None


if __name__ == "__main__":
    main()

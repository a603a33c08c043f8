#!/usr/bin/env python3
"""Trend of the exhaustive tripling estimate as the search window grows.

For U = {0,1}^d the true value is 2^d, attained already by singleton pairs;
for non-quasicube sets like {0,1,2} the window minimum decreases toward the
infimum as the box and cardinality cap grow.  This prints the trend table.

Usage: python3 scripts/window_growth.py [--max-level 4]
"""

import argparse
from fractions import Fraction

from sumsetlab.groups import GroupContext, PointSet
from sumsetlab.search import SearchConfig, beta_estimate, frac_str


def trend(U: PointSet, windows) -> None:
    print(f"U = {list(U.points)}")
    print(f"{'box':>16} {'card':>4} {'pairs':>9} {'ratio':>10} {'ratio^2':>10}")
    for box, card in windows:
        cfg = SearchConfig(box=box, max_cardinality=card)
        r = beta_estimate(U, cfg)
        print(f"{str(box):>16} {card:>4} {r.nodes:>9} "
              f"{r.value_float:>10.6f} {frac_str(r.value_exact):>10}")
    print()


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-level", type=int, default=4)
    args = ap.parse_args()

    z1, z2 = GroupContext(1), GroupContext(2)
    line_windows = [(((0, k),), k + 1) for k in range(1, args.max_level + 2)]

    trend(PointSet.of(z1, [(0,), (1,)]), line_windows)
    trend(PointSet.of(z1, [(0,), (1,), (2,)]), line_windows)
    trend(PointSet.of(z1, [(0,), (1,), (3,)]), line_windows)
    trend(
        PointSet.of(z2, [(0, 0), (1, 0), (0, 1), (1, 1)]),
        [(((0, k), (0, k)), min(k + 1, 4) ** 2) for k in range(1, 3)],
    )


if __name__ == "__main__":
    main()

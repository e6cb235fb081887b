"""Compare the collinearity trapezoid K0 with multistart covers for squares with one corner cut.

For each (alpha, beta) on a grid the script prints the closed-form ratio, the
measured ratio at K0, the best area found by the search (warm-started from K0
as well as from random placements) and the ratio of that cover. Covers that
beat K0 are optionally drawn next to it.

    python3 scripts/truncated_square_scan.py --grid 0.08 0.16 0.24 0.32 0.40 --restarts 6
"""

import argparse
import itertools
from fractions import Fraction
from pathlib import Path

import numpy as np

from qcover.capacity import is_q_cover, systolic_ratio
from qcover.cases import case_truncated_square
from qcover.normals import enumerate_normal_shapes
from qcover.search import SearchConfig, placed_shapes, placement_inside, search_min_cover
from qcover.svg import HULL_COLOR, PALETTE, Scene


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--grid", type=float, nargs="+", default=[0.08, 0.16, 0.24, 0.32, 0.40])
    ap.add_argument("--restarts", type=int, default=6)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--svg-dir", type=Path, help="draw each cover that beats K0")
    args = ap.parse_args()
    if args.svg_dir:
        args.svg_dir.mkdir(parents=True, exist_ok=True)

    print(f"{'alpha':>6} {'beta':>6} {'formula':>12} {'ratio K0':>12} {'area K0':>12} "
          f"{'best area':>12} {'best ratio':>12} {'as fraction':>12}")
    beaten = 0
    for k, (alpha, beta) in enumerate(itertools.product(args.grid, args.grid)):
        if alpha + beta >= 1:
            continue
        c = case_truncated_square(alpha, beta)
        shapes = enumerate_normal_shapes(c.Q)
        res = search_min_cover(c.Q, SearchConfig(restarts=args.restarts, rng_seed=args.seed + k), shapes,
                               warm_starts=(placement_inside(c.K, shapes),))
        assert is_q_cover(res.hull, c.Q)
        frac = Fraction(res.best_area).limit_denominator(2000)
        print(f"{alpha:6.2f} {beta:6.2f} {c.expected_ratio:12.9f} {systolic_ratio(c.K, c.Q):12.9f} "
              f"{c.K.area:12.9f} {res.best_area:12.9f} {systolic_ratio(res.hull, c.Q):12.9f} {str(frac):>12}")
        if res.best_area < c.K.area - 1e-6:
            beaten += 1
            if args.svg_dir:
                sc = Scene(caption=f"alpha={alpha} beta={beta}: area {res.best_area:.9f} vs K0 {c.K.area:.9f}")
                for j, pts in enumerate(placed_shapes(shapes, res.best_placement)):
                    sc.add(pts, PALETTE[j % len(PALETTE)])
                sc.add(res.hull.vertices, HULL_COLOR, fill=False)
                shift = np.array([1.3 * np.ptp(res.hull.vertices[:, 0]), 0.0])
                sc.add(c.K.vertices - c.K.vertices.min(axis=0) + res.hull.vertices.min(axis=0) + shift,
                       PALETTE[2], fill=False)
                sc.write(args.svg_dir / f"truncated_{alpha:.2f}_{beta:.2f}.svg")
    print(f"covers smaller than K0: {beaten}")


if __name__ == "__main__":
    main()

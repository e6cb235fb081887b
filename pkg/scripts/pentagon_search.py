"""Multistart search for small covers of the regular pentagon, compared with the rotated pentagon.

    python3 scripts/pentagon_search.py --restarts 16 --svg pentagon.svg
"""

import argparse

import numpy as np

from qcover.capacity import systolic_ratio
from qcover.cases import case_pentagon_hko
from qcover.normals import enumerate_normal_shapes
from qcover.search import SearchConfig, placed_shapes, search_min_cover
from qcover.svg import HULL_COLOR, PALETTE, Scene


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--restarts", type=int, default=16)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--svg")
    args = ap.parse_args()

    c = case_pentagon_hko()
    shapes = enumerate_normal_shapes(c.Q)
    res = search_min_cover(c.Q, SearchConfig(restarts=args.restarts, rng_seed=args.seed, workers=args.workers),
                           shapes)
    areas = np.array(res.restart_areas)
    print(f"rotated pentagon K: area {c.K.area:.12f}, ratio {systolic_ratio(c.K, c.Q):.12f}")
    print(f"search best:        area {res.best_area:.12f}, ratio {systolic_ratio(res.hull, c.Q):.12f}, "
          f"hull vertices {len(res.hull)}")
    print(f"restarts within 1e-6 of area K: {int(np.sum(areas <= c.K.area + 1e-6))} / {len(areas)}")
    print("restart areas:", " ".join(f"{a:.9f}" for a in sorted(areas)))
    if args.svg:
        sc = Scene(caption=f"area {res.best_area:.10f}")
        for k, pts in enumerate(placed_shapes(shapes, res.best_placement)):
            sc.add(pts, PALETTE[k % 2])
        sc.add(res.hull.vertices, HULL_COLOR, fill=False)
        sc.write(args.svg)


if __name__ == "__main__":
    main()

"""Equality covers of quadrilaterals: one-parameter family on (a-1)(b-1) = 1, uniqueness elsewhere.

Prints the hexagonal members of the boundary family, then the spread of the
optimal placements found by multistart search at a few parameter pairs.

    python3 scripts/quadrilateral_family.py --restarts 12
"""

import argparse
import itertools

import numpy as np

from qcover.capacity import systolic_ratio
from qcover.cases import quadri3_member, quadri3_slide, quadrilateral_from_ab
from qcover.search import SearchConfig, search_min_cover


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--restarts", type=int, default=12)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    print("boundary family members")
    for a in (1.5, 2.0, 3.0):
        sub, d = quadri3_slide(a)
        for s in (0.0, 0.02, 0.05):
            Q, K = quadri3_member(a, s)
            print(f"  a={a:4.2f} classes={sub} dir={d.tolist()} s={s:.2f}: {len(K)} vertices, "
                  f"area {K.area:.12f}, ratio {systolic_ratio(K, Q):.12f}")

    print("multistart optima (area within 1e-6 of 1)")
    for a, b in [(1.5, 3.0), (3.0, 1.5), (1.25, 5.0), (2.0, 3.5), (2.15, 4.05), (4.0, 4.0)]:
        res = search_min_cover(quadrilateral_from_ab(a, b), SearchConfig(restarts=args.restarts, rng_seed=args.seed))
        opt = [p.translations for p, A in zip(res.placements, res.restart_areas) if abs(A - 1) <= 1e-6]
        spread = max((np.abs(x - y).max() for x, y in itertools.combinations(opt, 2)), default=0.0)
        print(f"  (a, b) = ({a}, {b}), (a-1)(b-1) = {(a - 1) * (b - 1):.3f}: "
              f"{len(opt)}/{args.restarts} optimal, placement spread {spread:.3e}")


if __name__ == "__main__":
    main()

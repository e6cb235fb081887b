"""Draw the named covers with their normal shapes placed inside.

    python3 scripts/figures.py --out figures
"""

import argparse
from pathlib import Path

from qcover.capacity import systolic_ratio
from qcover.cases import (
    case_hexagon_nonregular_swapped,
    case_hexagon_regular,
    case_pentagon_hko,
    case_quadrilateral,
    case_triangle,
    case_truncated_square,
    hexa2_member,
    quadri3_member,
)
from qcover.geometry import max_inscribed_homothet
from qcover.normals import enumerate_normal_shapes
from qcover.svg import HULL_COLOR, PALETTE, Scene


def fitted(K, Q):
    """Each normal shape of Q translated into K by the fitting LP."""
    out = []
    for s in enumerate_normal_shapes(Q):
        f = max_inscribed_homothet(s.vertices, K)
        out.append(s.vertices + f.shift)
    return out


def draw(path, K, shapes, caption):
    sc = Scene(caption=caption)
    for k, pts in enumerate(shapes):
        sc.add(pts, PALETTE[k % len(PALETTE)])
    sc.add(K.vertices, HULL_COLOR, fill=False)
    sc.write(path)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path("figures"))
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    for case in (case_triangle(), case_quadrilateral(2.0, 3.5), case_pentagon_hko(),
                 case_truncated_square(0.2, 0.3), case_hexagon_regular(), case_hexagon_nonregular_swapped()):
        name = case.name.split("(")[0]
        r = systolic_ratio(case.K, case.Q)
        draw(args.out / f"{name}.svg", case.K, fitted(case.K, case.Q), f"{case.name}: ratio {r:.10f}")
        print(f"{name:20s} ratio {r:.12f}")

    K, placed = hexa2_member([0.02, 0.01])
    draw(args.out / "hexagon-family.svg", K, placed, f"hexagon family member: area {K.area:.10f}")
    Q, K = quadri3_member(1.5, 0.05)
    draw(args.out / "quadrilateral-family.svg", K, fitted(K, Q), f"boundary family member: area {K.area:.10f}")
    print(f"wrote {len(list(args.out.glob('*.svg')))} figures to {args.out}")


if __name__ == "__main__":
    main()

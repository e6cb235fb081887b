"""Acceptance criteria 1-11, one verdict line each (printed in the terminal summary).

Run alone with ``python3 -m pytest tests/test_acceptance.py`` or ``python3 tests/test_acceptance.py``.
"""

import itertools

import numpy as np
import pytest

from qcover.capacity import capacity, is_q_cover, systolic_ratio
from qcover.cases import (
    HKO_RATIO,
    case_hexagon_regular,
    case_pentagon_hko,
    case_quadrilateral,
    case_triangle,
    case_truncated_square,
    hexa2_member,
    quadrilateral_from_ab,
    tri2_member,
    truncated_square_ratio,
    unit_width_hexagon,
    unit_width_triangle,
)
from qcover.certificates import cap_overlap, caps, croissant_check, quadrilateral_certificate, steiner_symmetrize
from qcover.decomposition import decompose, verify_minkowski_fit
from qcover.geometry import GeometryError, convex_hull, max_inscribed_homothet, regular_polygon
from qcover.norm import ClosedPolyline, q_length
from qcover.normals import enumerate_normal_shapes
from qcover.search import SearchConfig, placement_inside, search_min_cover
from support import (
    homothet_oracle,
    random_convex_polygon,
    random_croissant,
    random_points_polygon,
    random_snapped_curve,
    shapely_polygon,
)

# criterion -> list of (part, passed, detail); printed by the conftest summary hook
RESULTS: dict[int, list[tuple[str, bool, str]]] = {}
RATIOS: list[float] = []


def record(criterion: int, part: str, passed: bool, detail: str = "") -> bool:
    RESULTS.setdefault(criterion, []).append((part, bool(passed), detail))
    return bool(passed)


def ratio(K, Q) -> float:
    r = systolic_ratio(K, Q)
    RATIOS.append(r)
    return r


def summary_lines() -> list[str]:
    lines = []
    for c in sorted(RESULTS):
        parts = RESULTS[c]
        ok = all(p for _, p, _ in parts)
        failed = [f"{name} ({detail})" if detail else name for name, p, detail in parts if not p]
        text = "; ".join(failed) if failed else "; ".join(f"{name} {detail}".strip() for name, _, detail in parts)
        lines.append(f"criterion {c:2d}: {'PASS' if ok else 'FAIL'}  {text}")
    return lines


def angles(v):
    out = []
    for i in range(3):
        a, b = v[i - 1] - v[i], v[(i + 1) % 3] - v[i]
        out.append(np.arccos(np.clip(a @ b / np.hypot(*a) / np.hypot(*b), -1, 1)))
    return np.sort(out)


# --- 1 ---------------------------------------------------------------------------------


def test_c01_normal_shape_census():
    rng = np.random.default_rng(101)
    tri = [len(enumerate_normal_shapes(random_convex_polygon(rng, 3))) for _ in range(20)]
    record(1, "triangles", all(n == 2 for n in tri), "2 classes x20")
    quads = []
    while len(quads) < 20:
        Q = random_convex_polygon(rng, 4)
        e = Q.edges()
        if min(abs(e[0, 0] * e[2, 1] - e[0, 1] * e[2, 0]), abs(e[1, 0] * e[3, 1] - e[1, 1] * e[3, 0])) > 1e-3:
            quads.append(len(enumerate_normal_shapes(Q)))
    record(1, "quadrilaterals", all(n == 4 for n in quads), "4 classes x20")
    pent = enumerate_normal_shapes(regular_polygon(5))
    err = max(np.abs(angles(s.vertices) - [np.pi / 5, np.pi / 5, 3 * np.pi / 5]).max() for s in pent)
    record(1, "pentagon", len(pent) == 10 and err <= 1e-9, f"10 classes, angle err {err:.1e}")
    hexa = enumerate_normal_shapes(unit_width_hexagon())
    tris = [s for s in hexa if s.kind == "triangle"]
    segs = [s for s in hexa if s.kind == "segment"]
    e_tri = max(np.abs(np.asarray(t.edge_lengths) - 2 / 3).max() for t in tris) if tris else np.inf
    e_seg = max(abs(np.hypot(*(s.vertices[1] - s.vertices[0])) - 1) for s in segs) if segs else np.inf
    ok = len(tris) == 2 and len(segs) == 3 and e_tri <= 1e-9 and e_seg <= 1e-9
    record(1, "hexagon", ok, f"2+3 classes, side err {max(e_tri, e_seg):.1e}")
    assert all(p for _, p, _ in RESULTS[1])


# --- 2 ---------------------------------------------------------------------------------


def test_c02_hko_counterexample():
    c = case_pentagon_hko()
    cap = capacity(c.K, c.Q).capacity
    r = ratio(c.K, c.Q)
    record(2, "capacity", abs(cap - 1) <= 1e-9, f"{cap:.12f}")
    record(2, "ratio", abs(r - HKO_RATIO) <= 1e-9, f"{r:.12f}")
    assert all(p for _, p, _ in RESULTS[2])


# --- 3 ---------------------------------------------------------------------------------

GRID_AB = np.linspace(1.2, 5.0, 5)


def test_c03_quadrilateral_theorem():
    worst = dict(cap=0.0, residual=0.0, const=0.0, search=0.0, product=0.0)
    weights_ok = True
    for k, (a, b) in enumerate(itertools.product(GRID_AB, GRID_AB)):
        case = case_quadrilateral(a, b)
        Q = case.Q
        worst["cap"] = max(worst["cap"], abs(capacity(case.K, Q).capacity - 1))
        ratio(case.K, Q)
        cert = quadrilateral_certificate(Q)
        worst["residual"] = max(worst["residual"], cert.residual)
        worst["const"] = max(worst["const"], abs(cert.constant_value - 1))
        w = np.array(cert.weights)
        weights_ok &= bool(np.all(w >= 0) and abs(w.sum() - 1) <= 1e-12)
        res = search_min_cover(Q, SearchConfig(restarts=4, rng_seed=k))
        worst["search"] = max(worst["search"], abs(res.best_area - 1))
        worst["product"] = max(worst["product"], abs(res.best_area * Q.area - 0.5))
    record(3, "capacity", worst["cap"] <= 1e-9, f"max err {worst['cap']:.1e}")
    record(3, "certificate", worst["residual"] <= 1e-9 and worst["const"] <= 1e-9 and weights_ok,
           f"residual {worst['residual']:.1e}, constant err {worst['const']:.1e}")
    record(3, "search", worst["search"] <= 1e-6, f"max |area-1| {worst['search']:.1e}")
    record(3, "product", worst["product"] <= 1e-6, f"max |area*areaQ-1/2| {worst['product']:.1e}")
    assert all(p for _, p, _ in RESULTS[3])


# --- 4 ---------------------------------------------------------------------------------


def optimal_placements(a, b, restarts=12, seed=0):
    res = search_min_cover(quadrilateral_from_ab(a, b), SearchConfig(restarts=restarts, rng_seed=seed))
    return [p.translations for p, A in zip(res.placements, res.restart_areas) if abs(A - 1) <= 1e-6]


def spread(placements) -> float:
    return max((np.abs(x - y).max() for x, y in itertools.combinations(placements, 2)), default=0.0)


def test_c04_equality_family_structure():
    for a, b in [(1.5, 3.0), (3.0, 1.5)]:
        opt = optimal_placements(a, b)
        d = spread(opt)
        record(4, f"boundary ({a},{b})", len(opt) >= 2 and d > 1e-2, f"{len(opt)} optima, spread {d:.3f}")
    for a, b in [(2.0, 3.5), (2.15, 4.05), (4.0, 4.0)]:
        opt = optimal_placements(a, b)
        d = spread(opt)
        record(4, f"generic ({a},{b})", len(opt) >= 2 and d <= 1e-4, f"{len(opt)} optima, spread {d:.1e}")
    assert all(p for _, p, _ in RESULTS[4])


# --- 5 ---------------------------------------------------------------------------------


def test_c05_triangle_and_hexagon_minima():
    rng = np.random.default_rng(505)
    worst = 0.0
    for k in range(20):
        Q = random_convex_polygon(rng, 3)
        res = search_min_cover(Q, SearchConfig(restarts=3, rng_seed=k))
        worst = max(worst, abs(res.best_area - 1 / (2 * Q.area)))
    record(5, "20 triangles", worst <= 1e-6, f"max err {worst:.1e}")
    H = unit_width_hexagon()
    res = search_min_cover(H, SearchConfig(restarts=6, rng_seed=0))
    err = abs(res.best_area - 1 / np.sqrt(3))
    record(5, "hexagon", err <= 1e-6, f"err {err:.1e}")
    r_err = 0.0
    for c in (case_triangle(), case_hexagon_regular()):
        for K in (c.K, c.K.reflect()):
            r_err = max(r_err, abs(ratio(K, c.Q) - 1))
    record(5, "K0 candidates", r_err <= 1e-9, f"ratio err {r_err:.1e}")
    T = unit_width_triangle()
    tri_members = [tri2_member(T, o) for o in ([0.03, -0.02], [-0.04, 0.015])]
    hex_members = [hexa2_member(o)[0] for o in ([0.02, 0.01], [-0.015, 0.02])]
    fam_err = max(
        max(abs(K.area - np.sqrt(3) / 2) for K in tri_members),
        max(abs(K.area - 1 / np.sqrt(3)) for K in hex_members),
    )
    covers = all(is_q_cover(K, T) for K in tri_members) and all(is_q_cover(K, H) for K in hex_members)
    for K in tri_members:
        ratio(K, T)
    for K in hex_members:
        ratio(K, H)
    record(5, "equality families", fam_err <= 1e-9 and covers, f"area err {fam_err:.1e}")
    assert all(p for _, p, _ in RESULTS[5])


# --- 6 ---------------------------------------------------------------------------------

GRID_TS = [0.08, 0.16, 0.24, 0.32, 0.40]


def test_c06_truncated_square_closed_form():
    worst, below = 0.0, True
    for alpha, beta in itertools.product(GRID_TS, GRID_TS):
        c = case_truncated_square(alpha, beta)
        r = ratio(c.K, c.Q)
        worst = max(worst, abs(r - truncated_square_ratio(alpha, beta)))
        below &= r < 1
    record(6, "closed form", worst <= 1e-9, f"max err {worst:.1e}")
    record(6, "ratio < 1", below, "25 grid points")
    assert worst <= 1e-9 and below


@pytest.mark.xfail(strict=True, reason="the search finds covers smaller than the trapezoid K0 when alpha != beta")
def test_c06_truncated_square_search_finds_nothing_smaller():
    smaller = []
    for k, (alpha, beta) in enumerate(itertools.product(GRID_TS, GRID_TS)):
        c = case_truncated_square(alpha, beta)
        shapes = enumerate_normal_shapes(c.Q)
        res = search_min_cover(c.Q, SearchConfig(restarts=2, rng_seed=k), shapes,
                               warm_starts=(placement_inside(c.K, shapes),))
        if res.best_area < c.K.area - 1e-6:
            smaller.append((alpha, beta, c.K.area, res.best_area))
            ratio(res.hull, c.Q)
    detail = f"{len(smaller)}/25 grid points beat K0"
    if smaller:
        a, b, k0, best = max(smaller, key=lambda s: s[2] - s[3])
        detail += f", largest gap at ({a},{b}): {k0:.6f} vs {best:.6f}"
        symmetric = [s for s in smaller if s[0] == s[1]]
        detail += f", symmetric points among them: {len(symmetric)}"
    record(6, "no smaller cover", not smaller, detail)
    assert not smaller, detail


# --- 7 ---------------------------------------------------------------------------------


def test_c07_decomposition_fuzz():
    bad = []
    for i in range(500):
        rng = np.random.default_rng([7, i])
        Q = random_convex_polygon(rng, int(rng.integers(3, 9)))
        shapes = enumerate_normal_shapes(Q)
        curve = ClosedPolyline(random_snapped_curve(rng, Q, max_edges=20))
        pieces, schedule = decompose(curve, Q, shapes)
        L = q_length(Q, curve)
        replay = schedule.replay(curve.vertices[0], pieces)
        counts = [sum(e in p.edge_indices for p in pieces) for e in range(len(curve))]
        at_vertex = np.cumsum([0] + counts)
        tol = 1e-9 * curve.diameter
        K = convex_hull(np.vstack([s.vertices for s in shapes]))
        checks = (
            abs(sum(p.weight for p in pieces) - L) <= 1e-9,
            np.abs(replay[at_vertex[:-1]] - curve.vertices).max() <= tol
            and np.abs(replay[-1] - replay[0]).max() <= tol,
            len(pieces) <= len(curve),
            bool(verify_minkowski_fit(curve, pieces, K, shapes)),
        )
        if not all(checks):
            bad.append((i, checks))
    record(7, "500 cases", not bad, f"{len(bad)} failures" + (f", first {bad[0]}" if bad else ""))
    assert not bad


# --- 8 ---------------------------------------------------------------------------------


def test_c08_croissant_and_symmetrization():
    bad = 0
    gap = 0.0
    for i in range(500):
        rng = np.random.default_rng([8, i])
        a, b = random_croissant(rng)
        r = croissant_check(a, b)
        a2, b2 = steiner_symmetrize(a, b)
        r2 = croissant_check(a2, b2)
        gap = max(gap, r.enclosed - r.hull_area)
        ok = (r.enclosed <= r.hull_area + 1e-12 and abs(r2.enclosed - r.enclosed) <= 1e-12
              and r2.hull_area <= r.hull_area + 1e-12)
        bad += not ok
    record(8, "500 cases", bad == 0, f"{bad} failures, max act - hull {gap:.1e}")
    assert bad == 0


# --- 9 ---------------------------------------------------------------------------------


def test_c09_caps_lemma():
    worst = 0.0
    n = 0
    i = 0
    while n < 500:
        rng = np.random.default_rng([9, i])
        i += 1
        K = random_points_polygon(rng, int(rng.integers(5, 15)))
        w = rng.dirichlet(np.ones(len(K)), size=int(rng.integers(3, 9)))
        try:
            Phi = convex_hull(w @ K.vertices)
        except GeometryError:
            continue
        cs = caps(Phi, K)
        worst = max(worst, cap_overlap(cs) / K.area)
        # independent intersection areas from shapely on the first 100 pairs
        if n < 100:
            polys = [shapely_polygon(c.triangle) for c in cs if c.area > 0]
            for p, q in itertools.combinations(polys, 2):
                worst = max(worst, p.intersection(q).area / K.area)
        n += 1
    record(9, "500 nested pairs", worst <= 1e-12, f"max overlap / area {worst:.1e}")
    assert worst <= 1e-12


# --- 10 --------------------------------------------------------------------------------


def test_c10_lp_against_oracle():
    worst_above, worst_gap = 0.0, 0.0
    for i in range(50):
        rng = np.random.default_rng([10, i])
        K = random_points_polygon(rng, int(rng.integers(4, 12)))
        T = rng.normal(scale=0.5, size=(int(rng.integers(2, 6)), 2))
        lp = max_inscribed_homothet(T, K).scale
        orc = homothet_oracle(T, K)
        worst_above = max(worst_above, orc - lp)
        worst_gap = max(worst_gap, (lp - orc) / max(lp, 1.0))
    # bisection resolution bounds the oracle from above; the 1e-3 grid limits how close it gets from below
    ok = worst_above <= 1e-6 and worst_gap <= 2e-3
    record(10, "50 instances", ok, f"oracle - LP <= {worst_above:.1e}, LP - oracle <= {worst_gap:.1e} (rel)")
    assert ok


# --- 11 --------------------------------------------------------------------------------


def test_c11_monotonicity_and_ratio_bound():
    worst = -np.inf
    n = i = 0
    while n < 200:
        rng = np.random.default_rng([11, i])
        i += 1
        K = random_points_polygon(rng)
        Qo = random_points_polygon(rng)
        w = rng.dirichlet(np.ones(len(Qo)), size=int(rng.integers(3, 7)))
        try:
            Qi = convex_hull(w @ Qo.vertices)
        except GeometryError:
            continue
        worst = max(worst, capacity(K, Qi).capacity - capacity(K, Qo).capacity)
        ratio(K, Qo)
        n += 1
    record(11, "200 nested pairs", worst <= 1e-9, f"max c(KxQ) - c(KxQ') {worst:.1e}")
    top = max(RATIOS)
    record(11, "ratios < 2", top < 2, f"{len(RATIOS)} ratios, max {top:.6f}")
    assert worst <= 1e-9 and top < 2


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))

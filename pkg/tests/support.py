"""Random instances and independent oracles shared by the test modules."""

import numpy as np
from hypothesis import strategies as st

from qcover.geometry import ConvexPolygon, GeometryError, convex_hull, wedge
from qcover.norm import normal_fan

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def random_convex_polygon(rng, n: int, stretch: bool = True) -> ConvexPolygon:
    """``n`` points at well-separated angles on an ellipse, randomly rotated and shifted."""
    while True:
        gaps = rng.uniform(0.35, 1.0, size=n)
        ang = np.cumsum(gaps / gaps.sum() * 2 * np.pi) + rng.uniform(0, 2 * np.pi)
        pts = np.column_stack([np.cos(ang), np.sin(ang)])
        if stretch:
            A = np.diag(rng.uniform(0.5, 1.5, size=2))
            c, s = np.cos(ang[0]), np.sin(ang[0])
            pts = pts @ (A @ np.array([[c, -s], [s, c]])).T
        pts = pts + rng.normal(scale=0.3, size=2)
        try:
            P = ConvexPolygon(pts)
        except GeometryError:
            continue
        if len(P) == n and min_turn(P) > 1e-3:
            return P


def min_turn(P: ConvexPolygon) -> float:
    e = P.edges()
    e = e / np.hypot(e[:, 0], e[:, 1])[:, None]
    return min(wedge(e[i], e[(i + 1) % len(e)]) for i in range(len(e)))


def random_points_polygon(rng, k: int = 10, scale: float = 1.0) -> ConvexPolygon:
    while True:
        try:
            return convex_hull(rng.normal(scale=scale, size=(k, 2)))
        except GeometryError:
            continue


def random_snapped_curve(rng, Q: ConvexPolygon, max_edges: int = 20) -> np.ndarray:
    """Closed curve whose edges follow normal directions of Q (random positive mix, then closed)."""
    D = normal_fan(Q).directions
    m = len(D)
    while True:
        k = int(rng.integers(3, max_edges - 2))
        idx = rng.integers(0, m, size=k)
        lengths = rng.uniform(0.1, 1.0, size=k)
        s = (lengths[:, None] * D[idx]).sum(axis=0)
        # close the curve with a nonnegative combination of at most two fan directions
        target = -s
        if np.hypot(*target) < 1e-9:
            edges = list(zip(idx, lengths))
        else:
            ang = np.mod(np.arctan2(target[1], target[0]), 2 * np.pi)
            fan_ang = np.mod(np.arctan2(D[:, 1], D[:, 0]), 2 * np.pi)
            j = int(np.searchsorted(fan_ang, ang)) - 1
            a, b = j % m, (j + 1) % m
            coef = np.linalg.lstsq(np.column_stack([D[a], D[b]]), target, rcond=None)[0]
            if np.any(coef < -1e-12):
                continue
            edges = list(zip(idx, lengths)) + [(a, coef[0]), (b, coef[1])]
        edges = [(i, L) for i, L in edges if L > 1e-6]
        if len(edges) < 2 or len(edges) > max_edges:
            continue
        order = rng.permutation(len(edges))
        vecs = np.array([edges[i][1] * D[edges[i][0]] for i in order])
        pts = np.cumsum(np.vstack([[0.0, 0.0], vecs[:-1]]), axis=0)
        return pts + rng.normal(size=2)


def random_croissant(rng, m=None):
    """Chains ``a`` and ``b = a - l u`` with a fixed direction ``u`` and unimodal lengths ``l``."""
    m = int(rng.integers(2, 8)) if m is None else m
    ang = rng.uniform(0, 2 * np.pi)
    u = np.array([np.cos(ang), np.sin(ang)])
    peak = int(rng.integers(0, m))
    lengths = np.sort(rng.uniform(0, 2, size=m))
    lengths = np.concatenate([lengths[: peak + 1], np.sort(lengths[peak + 1 :])[::-1]])
    lengths[peak] = lengths.max() + 0.1
    a = rng.normal(size=(m, 2))
    return a, a - lengths[:, None] * u


# --- oracles ---------------------------------------------------------------------------


def homothet_oracle(T, K: ConvexPolygon, grid: float = 1e-3, bisection: float = 1e-6) -> float:
    """Largest scale found by bisection on a grid of horizontal translations.

    For each ``t_x`` on a grid of spacing ``grid`` the admissible ``t_y`` form an
    interval, so feasibility at a given scale is decided column by column.
    """
    T = np.asarray(T, dtype=float)
    n, h = K.facets()
    sT = (T @ n.T).max(axis=0)
    span = K.diameter / max(np.ptp(T, axis=0).max(), 1e-12)
    xs = np.arange(K.vertices[:, 0].min() - span * max(T[:, 0].max(), 0.0) - grid,
                   K.vertices[:, 0].max() - span * min(T[:, 0].min(), 0.0) + grid, grid)
    up, down, flat = n[:, 1] > 1e-15, n[:, 1] < -1e-15, np.abs(n[:, 1]) <= 1e-15

    def feasible(lam):
        r = h - lam * sT  # n_x t_x + n_y t_y <= r
        rest = r[None, :] - xs[:, None] * n[None, :, 0]
        hi = np.min(np.where(up, rest / np.where(up, n[:, 1], 1.0), np.inf), axis=1)
        lo = np.max(np.where(down, rest / np.where(down, n[:, 1], 1.0), -np.inf), axis=1)
        ok = np.all(np.where(flat, rest >= 0, True), axis=1)
        return bool(np.any(ok & (lo <= hi)))

    lo, hi = 0.0, 1.0
    while feasible(hi):
        lo, hi = hi, 2.0 * hi
    while hi - lo > bisection:
        mid = 0.5 * (lo + hi)
        lo, hi = (mid, hi) if feasible(mid) else (lo, mid)
    return lo


def winding_oracle(vertices, points) -> np.ndarray:
    """Winding numbers by summing signed turning angles (vectorized, independent of the crossing rule)."""
    v = np.asarray(vertices, dtype=float)
    p = np.atleast_2d(points)
    a = v[None, :, :] - p[:, None, :]
    b = np.roll(v, -1, axis=0)[None, :, :] - p[:, None, :]
    cross = a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]
    dot = (a * b).sum(axis=-1)
    return np.rint(np.arctan2(cross, dot).sum(axis=1) / (2 * np.pi)).astype(int)


def shapely_polygon(P):
    from shapely.geometry import Polygon

    v = P.vertices if isinstance(P, ConvexPolygon) else np.asarray(P)
    return Polygon(v)

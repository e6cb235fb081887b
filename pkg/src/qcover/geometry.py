"""Planar primitives: convex polygons, hulls, areas, affine maps and homothet fitting."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

# Relative tolerance; multiplied by the characteristic length (diameter) of the inputs.
REL_TOL = 1e-9


class GeometryError(ValueError):
    """Raised when an input violates a geometric precondition."""


def wedge(s, t) -> float:
    """Oriented area of the parallelogram spanned by ``s`` and ``t``."""
    return float(s[0] * t[1] - s[1] * t[0])


def as_points(points) -> np.ndarray:
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise GeometryError(f"expected an (n, 2) array of points, got shape {pts.shape}")
    if not np.all(np.isfinite(pts)):
        raise GeometryError("non-finite coordinate")
    return pts


def diameter(points) -> float:
    pts = np.asarray(points, dtype=float)
    if len(pts) < 2:
        return 0.0
    d = pts[:, None, :] - pts[None, :, :]
    return float(np.sqrt((d**2).sum(axis=-1)).max())


def shoelace(vertices) -> float:
    """Signed area of the closed polygonal line through ``vertices``."""
    v = np.asarray(vertices, dtype=float)
    x, y = v[:, 0], v[:, 1]
    return 0.5 * float(np.dot(x, np.roll(y, -1)) - np.dot(y, np.roll(x, -1)))


def _canonical_start(v: np.ndarray) -> np.ndarray:
    # lowest, then leftmost
    i = int(np.lexsort((v[:, 0], v[:, 1]))[0])
    return np.roll(v, -i, axis=0)


@dataclass(frozen=True, eq=False)
class ConvexPolygon:
    """Strictly convex polygon, stored counterclockwise from its lowest-then-leftmost vertex.

    Clockwise input is reversed. Anything that is not strictly convex
    (repeated vertices, reflex or straight turns) raises ``GeometryError``.
    """

    vertices: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = as_points(self.vertices).copy()
        if len(v) < 3:
            raise GeometryError("a polygon needs at least 3 vertices")
        if shoelace(v) < 0:
            v = v[::-1]
        tol = REL_TOL * diameter(v)
        if tol == 0.0:
            raise GeometryError("degenerate polygon")
        edges = np.roll(v, -1, axis=0) - v
        if np.any(np.hypot(edges[:, 0], edges[:, 1]) <= tol):
            raise GeometryError("repeated vertex")
        turns = edges[:, 0] * np.roll(edges[:, 1], -1) - edges[:, 1] * np.roll(edges[:, 0], -1)
        lengths = np.hypot(edges[:, 0], edges[:, 1])
        if np.any(turns <= tol * np.roll(lengths, -1)):
            raise GeometryError("polygon is not strictly convex")
        v = _canonical_start(v)
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)

    @classmethod
    def from_unordered(cls, points) -> "ConvexPolygon":
        """Build from the vertices of a convex polygon listed in any order."""
        pts = as_points(points)
        c = pts.mean(axis=0)
        order = np.argsort(np.arctan2(pts[:, 1] - c[1], pts[:, 0] - c[0]), kind="stable")
        return cls(pts[order])

    def __len__(self):
        return len(self.vertices)

    def __repr__(self):
        return f"ConvexPolygon({np.round(self.vertices, 6).tolist()})"

    @property
    def area(self) -> float:
        return shoelace(self.vertices)

    @property
    def diameter(self) -> float:
        return diameter(self.vertices)

    @property
    def tol(self) -> float:
        return REL_TOL * self.diameter

    @property
    def centroid(self) -> np.ndarray:
        v = self.vertices
        w = v[:, 0] * np.roll(v[:, 1], -1) - v[:, 1] * np.roll(v[:, 0], -1)
        c = ((v + np.roll(v, -1, axis=0)) * w[:, None]).sum(axis=0) / (3.0 * w.sum())
        return c

    def edges(self) -> np.ndarray:
        return np.roll(self.vertices, -1, axis=0) - self.vertices

    def facets(self) -> tuple[np.ndarray, np.ndarray]:
        """Unit outward normals ``n`` and offsets ``h`` with the polygon = {x : n.x <= h}."""
        e = self.edges()
        n = np.column_stack([e[:, 1], -e[:, 0]])
        n /= np.hypot(n[:, 0], n[:, 1])[:, None]
        h = np.einsum("ij,ij->i", n, self.vertices)
        return n, h

    def contains(self, points, tol: float | None = None) -> np.ndarray:
        """Boolean mask: points inside (or within ``tol`` of) the polygon."""
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        tol = self.tol if tol is None else tol
        n, h = self.facets()
        return np.all(pts @ n.T <= h + tol, axis=1)

    def translate(self, t) -> "ConvexPolygon":
        return ConvexPolygon(self.vertices + np.asarray(t, dtype=float))

    def scale(self, factor: float, center=(0.0, 0.0)) -> "ConvexPolygon":
        c = np.asarray(center, dtype=float)
        return ConvexPolygon(c + factor * (self.vertices - c))

    def reflect(self) -> "ConvexPolygon":
        """Point reflection through the origin."""
        return ConvexPolygon(-self.vertices)

    def rotate(self, angle: float) -> "ConvexPolygon":
        c, s = np.cos(angle), np.sin(angle)
        return ConvexPolygon(self.vertices @ np.array([[c, s], [-s, c]]))

    def allclose(self, other: "ConvexPolygon", atol: float = 1e-9) -> bool:
        return self.vertices.shape == other.vertices.shape and np.allclose(
            self.vertices, other.vertices, atol=atol, rtol=0.0
        )


def regular_polygon(n: int, circumradius: float = 1.0, phase: float = 0.0) -> ConvexPolygon:
    k = np.arange(n)
    ang = phase + 2 * np.pi * k / n
    return ConvexPolygon(circumradius * np.column_stack([np.cos(ang), np.sin(ang)]))


def polygon_area(P: ConvexPolygon) -> float:
    return P.area


def hull_indices(points, tol: float = 0.0) -> list[int]:
    """Indices of the convex hull vertices, counterclockwise (monotone chain).

    Hull vertices closer than ``tol`` to the line through their hull
    neighbours are dropped afterwards.
    """
    pts = np.asarray(points, dtype=float)
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    P = pts.tolist()

    def keep(chain, k):
        b = P[k]
        while len(chain) >= 2:
            o, a = P[chain[-2]], P[chain[-1]]
            if (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]) <= 0.0:
                chain.pop()
            else:
                break
        chain.append(k)

    lower: list[int] = []
    for k in order:
        keep(lower, int(k))
    upper: list[int] = []
    for k in order[::-1]:
        keep(upper, int(k))
    hull = lower[:-1] + upper[:-1]
    if tol > 0.0:
        changed = True
        while changed and len(hull) > 3:
            changed = False
            for i in range(len(hull)):
                o, a, b = pts[hull[i - 1]], pts[hull[i]], pts[hull[(i + 1) % len(hull)]]
                base = np.hypot(*(b - o))
                if base == 0.0 or wedge(a - o, b - o) <= tol * base:
                    del hull[i]
                    changed = True
                    break
    return hull


def hull_area(points) -> float:
    """Area of the convex hull of ``points`` (zero for degenerate sets)."""
    idx = hull_indices(points)
    if len(idx) < 3:
        return 0.0
    return shoelace(np.asarray(points, dtype=float)[idx])


def convex_hull(points) -> ConvexPolygon:
    pts = as_points(points)
    tol = REL_TOL * diameter(pts)
    idx = hull_indices(pts, tol)
    if len(idx) < 3:
        raise GeometryError("points are collinear; the hull is degenerate")
    return ConvexPolygon(pts[idx])


# --- homothet fitting -------------------------------------------------------


@dataclass(frozen=True)
class FitResult:
    """Largest ``scale`` with ``scale * T + shift`` inside ``K``."""

    scale: float
    shift: np.ndarray
    residual: float = 0.0


def _fit_constraints(T, K: ConvexPolygon):
    n, h = K.facets()
    sT = (np.asarray(T, dtype=float) @ n.T).max(axis=0)
    # rows act on (t_x, t_y, lambda)
    A = np.column_stack([n, sT])
    return A, h


def max_inscribed_homothet(T, K: ConvexPolygon) -> FitResult:
    """Maximise ``lambda`` subject to ``lambda * T + t`` lying in ``K``.

    ``T`` is any finite point set (a segment, a triangle, a polygon's vertices).
    The three-variable LP is solved by enumerating every basis of three facet
    constraints; the maximiser is then substituted back into all constraints.
    """
    T = as_points(T)
    A, h = _fit_constraints(T, K)
    m = len(h)
    tol = K.tol
    triples = np.array(list(itertools.combinations(range(m), 3)))
    As = A[triples]
    hs = h[triples]
    dets = np.linalg.det(As)
    ok = np.abs(dets) > 1e-12
    As, hs = As[ok], hs[ok]
    sols = np.linalg.solve(As, hs[..., None])[..., 0]
    feas = np.all(sols @ A.T <= h + tol, axis=1) & (sols[:, 2] >= -tol)
    sols = sols[feas]
    if len(sols) == 0:
        # T is a single point (up to tolerance): any scale fits in principle
        raise GeometryError("fitting LP has no basic feasible solution")
    best = sols[:, 2].max()
    # among (numerically) optimal bases keep the first for determinism
    k = int(np.flatnonzero(sols[:, 2] >= best - 1e-14 * max(1.0, abs(best)))[0])
    x = sols[k]
    lam = max(float(x[2]), 0.0)
    shift = x[:2].copy()
    residual = float(max(0.0, (A @ np.array([shift[0], shift[1], lam]) - h).max()))
    if residual > 10 * tol:
        raise GeometryError(f"fit certification failed (residual {residual:.3e})")
    return FitResult(scale=lam, shift=shift, residual=residual)


# --- affine maps ------------------------------------------------------------


@dataclass(frozen=True)
class AffineMap:
    linear: np.ndarray
    shift: np.ndarray = field(default_factory=lambda: np.zeros(2))

    def __post_init__(self):
        L = np.asarray(self.linear, dtype=float).reshape(2, 2)
        if abs(np.linalg.det(L)) < 1e-14:
            raise GeometryError("affine map is singular")
        object.__setattr__(self, "linear", L)
        object.__setattr__(self, "shift", np.asarray(self.shift, dtype=float).reshape(2))

    @property
    def det(self) -> float:
        return float(np.linalg.det(self.linear))

    def __call__(self, points) -> np.ndarray:
        return np.asarray(points, dtype=float) @ self.linear.T + self.shift

    def dual(self) -> "AffineMap":
        """The inverse-transpose linear part, acting on the momentum factor."""
        return AffineMap(np.linalg.inv(self.linear).T)

    def compose(self, other: "AffineMap") -> "AffineMap":
        """``self`` after ``other``."""
        return AffineMap(self.linear @ other.linear, self.linear @ other.shift + self.shift)


def apply_affine(M: AffineMap, P: ConvexPolygon) -> ConvexPolygon:
    return ConvexPolygon(M(P.vertices))


def normalize_quadrilateral(Q: ConvexPolygon) -> tuple[AffineMap, ConvexPolygon]:
    """Map ``Q`` so that its diagonals become perpendicular unit segments.

    With ``A, B, C, D`` the canonical vertex order, ``AC`` is sent along the
    x-axis and ``BD`` along the y-axis, and the diagonals cross at the origin.
    """
    if len(Q) != 4:
        raise GeometryError("normalize_quadrilateral needs exactly 4 vertices")
    A, B, C, D = Q.vertices
    L = np.linalg.inv(np.column_stack([C - A, D - B]))
    # crossing point of the diagonals: A + s (C - A) = B + r (D - B)
    s, _ = np.linalg.solve(np.column_stack([C - A, B - D]), B - A)
    X = A + s * (C - A)
    M = AffineMap(L, -L @ X)
    return M, apply_affine(M, Q)


# --- clipping ---------------------------------------------------------------


def clip_convex(subject, clip: ConvexPolygon) -> np.ndarray:
    """Sutherland-Hodgman clip of a convex point sequence against ``clip``."""
    out = [tuple(p) for p in np.asarray(subject, dtype=float)]
    n, h = clip.facets()
    for nj, hj in zip(n, h):
        if not out:
            break
        inp, out = out, []
        for i, p in enumerate(inp):
            q = inp[(i + 1) % len(inp)]
            dp = nj[0] * p[0] + nj[1] * p[1] - hj
            dq = nj[0] * q[0] + nj[1] * q[1] - hj
            if dp <= 0:
                out.append(p)
            if (dp < 0 < dq) or (dq < 0 < dp):
                r = dp / (dp - dq)
                out.append((p[0] + r * (q[0] - p[0]), p[1] + r * (q[1] - p[1])))
    return np.array(out, dtype=float).reshape(-1, 2)


def intersection_area(P, Q: ConvexPolygon) -> float:
    """Area of the intersection of convex point sequence ``P`` (ccw) with ``Q``."""
    pts = clip_convex(P, Q)
    if len(pts) < 3:
        return 0.0
    return abs(shoelace(pts))

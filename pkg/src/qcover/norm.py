"""Q-normed geometry: support functions, Q-lengths and normal fans."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import ConvexPolygon, GeometryError, as_points, diameter, REL_TOL


def support(Q: ConvexPolygon, x) -> float:
    """``max_{y in Q} <x, y>``; negative values are possible when 0 is outside Q."""
    x = np.asarray(x, dtype=float)
    return float((Q.vertices @ x).max())


def support_many(Q: ConvexPolygon, X) -> np.ndarray:
    return (np.asarray(X, dtype=float) @ Q.vertices.T).max(axis=1)


def centered(Q: ConvexPolygon) -> ConvexPolygon:
    """Translate Q so its centroid sits at the origin."""
    return Q.translate(-Q.centroid)


class ClosedPolyline:
    """Oriented closed polygonal curve; the last vertex connects back to the first."""

    def __init__(self, vertices):
        v = as_points(vertices).copy()
        if len(v) < 1:
            raise GeometryError("empty polyline")
        v.setflags(write=False)
        self.vertices = v

    def __len__(self):
        return len(self.vertices)

    def __repr__(self):
        return f"ClosedPolyline({np.round(self.vertices, 6).tolist()})"

    def edges(self) -> np.ndarray:
        return np.roll(self.vertices, -1, axis=0) - self.vertices

    def translate(self, t) -> "ClosedPolyline":
        return ClosedPolyline(self.vertices + np.asarray(t, dtype=float))

    def scale(self, factor: float) -> "ClosedPolyline":
        return ClosedPolyline(self.vertices * factor)

    def reversed(self) -> "ClosedPolyline":
        return ClosedPolyline(self.vertices[::-1])

    @property
    def diameter(self) -> float:
        return diameter(self.vertices)

    def is_stationary(self, tol: float = 0.0) -> bool:
        return bool(np.all(np.abs(self.vertices - self.vertices[0]) <= tol))


def q_length(Q: ConvexPolygon, curve) -> float:
    """Sum of the Q-norms of the edges of a closed curve."""
    if not isinstance(curve, ClosedPolyline):
        curve = ClosedPolyline(curve)
    Qc = centered(Q)
    return float(support_many(Qc, curve.edges()).sum())


@dataclass(frozen=True)
class NormalFan:
    """Unit outward side normals of Q sorted by angle in [0, 2 pi).

    ``side_index[k]`` is the side of Q (edge from vertex i to i+1) whose
    normal is ``directions[k]``.
    """

    directions: np.ndarray
    side_index: tuple[int, ...]

    def __len__(self):
        return len(self.directions)

    @property
    def angles(self) -> np.ndarray:
        return np.mod(np.arctan2(self.directions[:, 1], self.directions[:, 0]), 2 * np.pi)


def normal_fan(Q: ConvexPolygon) -> NormalFan:
    n, _ = Q.facets()
    ang = np.mod(np.arctan2(n[:, 1], n[:, 0]), 2 * np.pi)
    order = np.argsort(ang, kind="stable")
    d = n[order].copy()
    d.setflags(write=False)
    return NormalFan(d, tuple(int(i) for i in order))


def width(Q: ConvexPolygon, u) -> float:
    """Euclidean width of Q in the direction of the unit vector ``u``."""
    u = np.asarray(u, dtype=float)
    return support(Q, u) + support(Q, -u)


def _line_through(direction, Q: ConvexPolygon):
    # support line {y : <d, y> = ||d||_Q}
    d = np.asarray(direction, dtype=float)
    return d, support(Q, d)


def _line_intersection(l1, l2) -> np.ndarray:
    (a, c1), (b, c2) = l1, l2
    return np.linalg.solve(np.array([a, b]), np.array([c1, c2]))


def q_perimeter_via_support_lines(u, v, w, Q: ConvexPolygon) -> float:
    """Oriented Q-perimeter of ``u -> v -> w -> u`` from euclidean distances.

    The support lines of Q for the directions ``w - v`` and ``u - w`` meet at a
    point; its distance to the support line for ``v - u``, signed towards the
    outside of Q, times ``|v - u|`` is the perimeter.
    """
    u, v, w = (np.asarray(p, dtype=float) for p in (u, v, w))
    scale = max(diameter(np.array([u, v, w])), 1.0)
    if abs((v - u)[0] * (w - u)[1] - (v - u)[1] * (w - u)[0]) <= REL_TOL * scale**2:
        raise GeometryError("degenerate triangle; use q_length_segment_via_width")
    p = _line_intersection(_line_through(w - v, Q), _line_through(u - w, Q))
    d, c = _line_through(v - u, Q)
    nd = np.linalg.norm(d)
    dist = (c - d @ p) / nd
    return float(dist * nd)


def q_length_segment_via_width(u, v, Q: ConvexPolygon) -> float:
    """Back-and-forth Q-length of ``[u, v]``: distance between the two support lines times ``|v - u|``."""
    d = np.asarray(v, dtype=float) - np.asarray(u, dtype=float)
    L = float(np.linalg.norm(d))
    if L == 0.0:
        return 0.0
    return width(Q, d / L) * L

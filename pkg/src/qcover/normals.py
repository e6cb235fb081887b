"""Translation classes of Q-normal triangles and segments."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .geometry import ConvexPolygon, shoelace, wedge
from .norm import ClosedPolyline, centered, normal_fan, support_many

ANGLE_TOL = 1e-8
DEDUP_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class NormalShape:
    """One translation class of Q-normal triangles (``kind='triangle'``) or segments.

    ``vertices`` is the class representative as a point set, counterclockwise
    and anchored with its lowest-then-leftmost vertex at the origin.
    ``direction_indices`` index the normal fan in the order the boundary is
    traversed so that every oriented side follows an outward normal of Q;
    ``edge_lengths`` are the euclidean lengths of those sides.
    """

    class_id: int
    kind: str
    direction_indices: tuple[int, ...]
    edge_lengths: tuple[float, ...]
    vertices: np.ndarray
    follows_ccw: bool = True
    traversal: np.ndarray | None = field(default=None, repr=False)

    @property
    def representative(self) -> ClosedPolyline:
        """The unit-Q-perimeter curve (a 2-gon for segments) following fan directions."""
        return ClosedPolyline(self.normal_curve)

    @property
    def normal_curve(self) -> np.ndarray:
        # vertices in the traversal order; side k follows fan direction direction_indices[k]
        if self.traversal is not None:
            return self.traversal
        v = self.vertices
        if self.kind == "segment" or self.follows_ccw:
            return v
        return np.roll(v[::-1], 1, axis=0)

    @property
    def area(self) -> float:
        return normal_shape_area(self)

    def __repr__(self):
        return (
            f"NormalShape(id={self.class_id}, {self.kind}, dirs={self.direction_indices}, "
            f"lengths={tuple(round(x, 9) for x in self.edge_lengths)})"
        )


def normal_shape_area(s: NormalShape) -> float:
    if s.kind == "segment":
        return 0.0
    return abs(shoelace(s.vertices))


def _anchor(points: np.ndarray) -> np.ndarray:
    pts = np.asarray(points, dtype=float)
    if shoelace(pts) < 0:
        pts = pts[::-1]
    i = int(np.lexsort((pts[:, 0], pts[:, 1]))[0])
    pts = np.roll(pts, -i, axis=0)
    return pts - pts[0]


def _same_set(a: np.ndarray, b: np.ndarray, tol: float) -> bool:
    return a.shape == b.shape and bool(np.all(np.abs(a - b) <= tol))


def _opposite(u, v) -> bool:
    return abs(wedge(u, v)) <= ANGLE_TOL and float(np.dot(u, v)) < 0


def positive_dependency(u1, u2, u3) -> np.ndarray | None:
    """Coefficients ``c > 0`` with ``c1 u1 + c2 u2 + c3 u3 = 0``, or None.

    The scale is fixed by the cross products themselves.
    """
    c = np.array([wedge(u2, u3), wedge(u3, u1), wedge(u1, u2)])
    if np.all(c > ANGLE_TOL):
        return c
    if np.all(c < -ANGLE_TOL):
        return -c
    return None


def enumerate_normal_shapes(Q: ConvexPolygon) -> list[NormalShape]:
    """All translation classes of Q-normal segments and triangles.

    Segments come first (one per pair of opposite fan directions), then
    triangles (two per enclosing triple of directions, point reflections of each
    other), with duplicates across triples merged.
    """
    Qc = centered(Q)
    fan = normal_fan(Q)
    U = fan.directions
    h = support_many(Qc, U)
    m = len(U)
    shapes: list[tuple] = []

    for i, j in itertools.combinations(range(m), 2):
        if _opposite(U[i], U[j]):
            L = 1.0 / (h[i] + h[j])
            rep = _anchor_segment(L * U[i])
            trav = rep if rep[1] @ U[i] > 0 else rep[::-1].copy()
            shapes.append(("segment", (i, j), (L, L), rep, True, trav))

    for i, j, k in itertools.combinations(range(m), 3):
        if any(_opposite(U[a], U[b]) for a, b in ((i, j), (j, k), (i, k))):
            continue
        c = positive_dependency(U[i], U[j], U[k])
        if c is None:
            continue
        s = 1.0 / float(c @ h[[i, j, k]])
        lengths = s * c
        e = lengths[:, None] * U[[i, j, k]]
        for order in ((0, 1, 2), (0, 2, 1)):
            curve = np.array([[0.0, 0.0], e[order[0]], e[order[0]] + e[order[1]]])
            ccw = shoelace(curve) > 0
            rep = _anchor(curve)
            low = curve[np.lexsort((curve[:, 0], curve[:, 1]))[0]]
            shapes.append(
                (
                    "triangle",
                    tuple((i, j, k)[o] for o in order),
                    tuple(float(lengths[o]) for o in order),
                    rep,
                    ccw,
                    curve - low,
                )
            )

    out: list[NormalShape] = []
    for kind, dirs, lengths, rep, ccw, trav in shapes:
        scale = max(float(np.abs(rep).max()), 1.0)
        if any(o.kind == kind and _same_set(o.vertices, rep, DEDUP_TOL * scale) for o in out):
            continue
        rep, trav = rep.copy(), trav.copy()
        rep.setflags(write=False)
        trav.setflags(write=False)
        out.append(NormalShape(len(out), kind, dirs, lengths, rep, ccw, trav))
    return out


def _anchor_segment(vec: np.ndarray) -> np.ndarray:
    pts = np.array([[0.0, 0.0], vec])
    i = int(np.lexsort((pts[:, 0], pts[:, 1]))[0])
    pts = pts[[i, 1 - i]]
    return pts - pts[0]


def find_class(shapes: list[NormalShape], points) -> NormalShape:
    """The class whose representative is a positive multiple of the given point set, up to translation."""
    pts = np.asarray(points, dtype=float)
    kind = "segment" if len(pts) == 2 else "triangle"
    probe = _anchor_segment(pts[1] - pts[0]) if kind == "segment" else _anchor(pts)
    probe = probe / np.abs(probe).max()
    for s in shapes:
        if s.kind != kind:
            continue
        ref = s.vertices / np.abs(s.vertices).max()
        if _same_set(ref, probe, 1e-7):
            return s
    raise ValueError("no normal-shape class matches the given points")

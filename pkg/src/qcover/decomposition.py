"""Cutting a closed curve into interleaved normal triangles and segments.

A closed polygonal curve of unit Q-length is first rewritten so that every
edge follows an outward normal of Q (each edge inside the normal cone of a
vertex of Q is split into two edges along the cone's generators). The snapped
curve is then peeled greedily: a smallest positively dependent set of edges
(an opposite pair, else a triple enclosing the origin) determines a normal
shape, which is removed with the largest weight that keeps all residual edge
lengths nonnegative. At least one edge is used up in every round.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .geometry import ConvexPolygon, GeometryError, REL_TOL, max_inscribed_homothet, wedge
from .norm import ClosedPolyline, NormalFan, normal_fan
from .normals import ANGLE_TOL, NormalShape, enumerate_normal_shapes, find_class, positive_dependency


@dataclass(frozen=True, eq=False)
class DecompositionPiece:
    """``weight`` times the normal curve of class ``class_id``.

    ``anchored_curve`` lists the scaled class vertices in traversal order,
    starting with the side that lies on edge ``edge_indices[0]`` of the
    snapped curve; the sides lie on the edges ``edge_indices`` in order.
    """

    weight: float
    class_id: int
    anchored_curve: ClosedPolyline
    edge_indices: tuple[int, ...]

    def segment_vectors(self) -> np.ndarray:
        return self.anchored_curve.edges()


@dataclass(frozen=True)
class InterleavingSchedule:
    """Order in which the pieces advance: ``(piece, side of that piece)`` per step."""

    steps: tuple[tuple[int, int], ...]

    def replay(self, start, pieces: list[DecompositionPiece]) -> np.ndarray:
        """Partial sums of the scheduled side vectors, starting from ``start``."""
        vecs = [p.segment_vectors() for p in pieces]
        out = [np.asarray(start, dtype=float)]
        for i, k in self.steps:
            out.append(out[-1] + vecs[i][k])
        return np.array(out)


def _direction_index(fan: NormalFan, e: np.ndarray) -> int | None:
    L = float(np.hypot(*e))
    u = e / L
    for k, d in enumerate(fan.directions):
        if abs(wedge(d, u)) <= ANGLE_TOL and float(d @ u) > 0:
            return k
    return None


def _merge_short_edges(v: np.ndarray, tol: float) -> np.ndarray:
    keep = [v[0]]
    for p in v[1:]:
        if np.hypot(*(p - keep[-1])) > tol:
            keep.append(p)
    while len(keep) > 1 and np.hypot(*(keep[0] - keep[-1])) <= tol:
        keep.pop()
    return np.array(keep)


def snap_to_normal_directions(curve, Q: ConvexPolygon) -> ClosedPolyline:
    """Split every edge that is not along a normal of Q into two edges that are.

    An edge ``e`` strictly inside the cone spanned by adjacent fan directions
    ``nu, xi`` becomes ``a nu`` followed by ``b xi`` with ``a, b > 0``. The
    Q-norm is linear on that cone, so the Q-length is unchanged, and the new
    corner lies outside the old edge, so the hull can only grow.
    """
    if not isinstance(curve, ClosedPolyline):
        curve = ClosedPolyline(curve)
    tol = REL_TOL * max(curve.diameter, 1e-300)
    v = _merge_short_edges(curve.vertices, tol)
    if len(v) < 2:
        raise GeometryError("curve is stationary")
    fan = normal_fan(Q)
    D, ang = fan.directions, fan.angles
    m = len(D)
    out = []
    for i, p in enumerate(v):
        e = v[(i + 1) % len(v)] - p
        out.append(p)
        if _direction_index(fan, e) is not None:
            continue
        a = np.mod(np.arctan2(e[1], e[0]), 2 * np.pi)
        k = int(np.searchsorted(ang, a)) - 1  # fan direction just clockwise of e
        nu, xi = D[k % m], D[(k + 1) % m]
        coef = np.linalg.solve(np.column_stack([nu, xi]), e)
        if np.any(coef <= 0):
            raise GeometryError("edge is not inside a normal cone of Q")
        out.append(p + coef[0] * nu)
    return ClosedPolyline(np.array(out))


def _fan_indices(curve: ClosedPolyline, fan: NormalFan) -> list[int]:
    idx = []
    for e in curve.edges():
        k = _direction_index(fan, e)
        if k is None:
            raise GeometryError("edge does not follow a normal direction of Q; snap the curve first")
        idx.append(k)
    return idx


def _minimal_dependent(active: list[int], dirs: list[int], U: np.ndarray):
    for i, j in itertools.combinations(active, 2):
        a, b = U[dirs[i]], U[dirs[j]]
        if abs(wedge(a, b)) <= ANGLE_TOL and float(a @ b) < 0:
            return (i, j)
    for i, j, k in itertools.combinations(active, 3):
        if positive_dependency(U[dirs[i]], U[dirs[j]], U[dirs[k]]) is not None:
            return (i, j, k)
    return None


def decompose(curve, Q: ConvexPolygon, shapes: list[NormalShape] | None = None
              ) -> tuple[list[DecompositionPiece], InterleavingSchedule]:
    """Greedy interleaving decomposition of a snapped closed curve.

    Subsets are chosen deterministically: opposite pairs before triples, each
    in lexicographic order of edge indices. The edge with the smallest ratio
    of residual length to class side length (first index on ties) is used up.
    """
    if not isinstance(curve, ClosedPolyline):
        curve = ClosedPolyline(curve)
    fan = normal_fan(Q)
    U = fan.directions
    shapes = enumerate_normal_shapes(Q) if shapes is None else shapes
    E = curve.edges()
    scale = max(curve.diameter, 1e-300)
    if np.hypot(*E.sum(axis=0)) > 1e-9 * scale:
        raise GeometryError("curve is not closed")
    dirs = _fan_indices(curve, fan)
    resid = np.hypot(E[:, 0], E[:, 1])
    tol = 1e-11 * scale
    pieces: list[DecompositionPiece] = []
    while True:
        active = [i for i in range(len(resid)) if resid[i] > tol]
        if not active:
            break
        group = _minimal_dependent(active, dirs, U)
        if group is None:
            raise GeometryError("residual curve admits no positive dependency; is the curve closed?")
        probe = _class_sides(group, dirs, U)
        cls = find_class(shapes, np.cumsum(np.vstack([[0.0, 0.0], probe[:-1]]), axis=0))
        pts = _rolled_curve(cls, probe[0])
        side_vecs = np.roll(pts, -1, axis=0) - pts
        lengths = np.hypot(side_vecs[:, 0], side_vecs[:, 1])
        ratios = resid[list(group)] / lengths
        lam = float(ratios.min())
        used = group[int(np.argmin(ratios))]
        for g, L in zip(group, lengths):
            resid[g] -= lam * L
        resid[used] = 0.0
        pieces.append(DecompositionPiece(lam, cls.class_id, ClosedPolyline(lam * pts), tuple(group)))
    steps = []
    for e in range(len(E)):
        for i, p in enumerate(pieces):
            if e in p.edge_indices:
                steps.append((i, p.edge_indices.index(e)))
    return pieces, InterleavingSchedule(tuple(steps))


def _class_sides(group, dirs, U) -> np.ndarray:
    """Side vectors (unit Q-perimeter is fixed later by class matching) in edge order."""
    if len(group) == 2:
        c = np.array([1.0, 1.0])
    else:
        c = positive_dependency(*(U[dirs[g]] for g in group))
    return c[:, None] * U[[dirs[g] for g in group]]


def _rolled_curve(shape: NormalShape, first_side: np.ndarray) -> np.ndarray:
    """Class normal curve started at the side parallel to ``first_side``."""
    v = shape.normal_curve
    sides = np.roll(v, -1, axis=0) - v
    for k, s in enumerate(sides):
        if abs(wedge(s, first_side)) <= 1e-9 * np.hypot(*s) * np.hypot(*first_side) and float(s @ first_side) > 0:
            return np.roll(v, -k, axis=0)
    raise GeometryError("class representative has no side along the requested direction")


@dataclass(frozen=True)
class FitVerdict:
    """Outcome of the Minkowski-combination containment check."""

    fits: bool
    translation: np.ndarray
    witness: np.ndarray | None = None
    violation: float = 0.0
    method: str = "combination"

    def __bool__(self):
        return self.fits


def verify_minkowski_fit(curve, pieces: list[DecompositionPiece], K: ConvexPolygon,
                         shapes: list[NormalShape], tol: float | None = None) -> FitVerdict:
    """Check that the curve, rescaled to unit Q-length, fits into ``K``.

    Every class used by a piece is fitted into ``K`` (translation ``t_j``). If
    each fits at scale 1 the curve lies in the convex combination of those
    translated classes, whose translation is assembled from the pieces'
    starting vertices. Containment of every vertex is then tested directly;
    on failure the facet normal of ``K`` with the largest violation is
    returned as a separating direction.
    """
    if not isinstance(curve, ClosedPolyline):
        curve = ClosedPolyline(curve)
    total = sum(p.weight for p in pieces)
    if total <= 0:
        raise GeometryError("empty decomposition")
    v = curve.vertices / total
    tol = K.tol if tol is None else tol
    shift = -v[0]
    fits = {}
    for p in pieces:
        if p.class_id not in fits:
            fits[p.class_id] = max_inscribed_homothet(shapes[p.class_id].vertices, K)
        start = p.anchored_curve.vertices[0] / p.weight
        shift = shift + (p.weight / total) * (start + fits[p.class_id].shift)
    n, h = K.facets()
    slack = (v + shift) @ n.T - h
    worst = float(slack.max())
    if worst <= tol:
        return FitVerdict(True, shift)
    # the convex-combination translation failed (some class does not fit); fall back to the LP
    fit = max_inscribed_homothet(v, K)
    if fit.scale >= 1.0 - tol / max(K.diameter, 1e-300):
        # shrinking the fitted copy about its centroid keeps it inside K
        return FitVerdict(True, fit.shift + (fit.scale - 1.0) * v.mean(axis=0), method="lp")
    j = int(np.unravel_index(np.argmax(slack), slack.shape)[1])
    return FitVerdict(False, shift, witness=n[j].copy(), violation=worst)

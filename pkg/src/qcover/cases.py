"""Named instances: the polygons Q, their notable covers K and the expected values.

Expected values are reproduced by the pipeline (construction, normal shapes,
LP fits, capacity, ratio); nothing downstream is hand-inserted.

* triangle: ``Q`` the regular triangle of unit width, ``K`` the regular
  hexagon traced by both normal triangles about a common centroid; smallest
  cover area ``1/(2 area Q) = sqrt(3)/2``.
* quadrilateral ``(a, b)``: ``Q`` with unit perpendicular diagonals, ``K`` the
  unit square; smallest cover area 1.
* pentagon: the regular pentagon against itself rotated by a right angle;
  ratio ``(sqrt(5) + 3) / 5 > 1``.
* truncated square ``(alpha, beta)``: the trapezoid determined by three
  collinearity conditions; ratio ``1/(1 + (alpha^2+beta^2) gamma^2 / (1 - alpha^2 - beta^2 - gamma^2))``.
* regular hexagon: ``K`` the regular triangle of unit height; area ``1/sqrt(3)``.
* swapped hexagon: a hexagonal equality cover of a boundary quadrilateral
  becomes the new ``Q``; four candidate covers with ratio 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import fsolve

from .capacity import capacity
from .geometry import (
    ConvexPolygon,
    GeometryError,
    clip_convex,
    convex_hull,
    max_inscribed_homothet,
    regular_polygon,
    wedge,
)
from .normals import NormalShape, enumerate_normal_shapes

HKO_RATIO = (np.sqrt(5.0) + 3.0) / 5.0
UNIT_SQUARE = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])


class ParameterError(ValueError):
    """Raised when case parameters are outside their admissible range."""


@dataclass(frozen=True, eq=False)
class CaseInstance:
    name: str
    Q: ConvexPolygon
    K: ConvexPolygon
    expected_ratio: float | None = None
    expected_min_area: float | None = None
    equality_family_params: dict = field(default_factory=dict)
    candidates: tuple[ConvexPolygon, ...] = ()


# --- triangle ---------------------------------------------------------------------


def unit_width_triangle() -> ConvexPolygon:
    return regular_polygon(3, 2.0 / 3.0, np.pi / 2)


def case_triangle() -> CaseInstance:
    Q = unit_width_triangle()
    tri = [s for s in enumerate_normal_shapes(Q) if s.kind == "triangle"]
    K = convex_hull(np.vstack([s.vertices - s.vertices.mean(axis=0) for s in tri]))
    return CaseInstance("triangle", Q, K, expected_ratio=1.0, expected_min_area=1.0 / (2.0 * Q.area))


def tri2_member(Q: ConvexPolygon, offset) -> ConvexPolygon:
    """Hull of the two normal triangles of a triangle ``Q``, the second moved by ``offset``.

    ``offset = 0`` is the symmetric placement (common centroid). Small offsets
    stay in the equality family as long as the hull stays an alternating
    hexagon; at the family's boundary it is a parallelogram.
    """
    tri = [s for s in enumerate_normal_shapes(Q) if s.kind == "triangle"]
    if len(tri) != 2:
        raise ParameterError("Q must be a triangle")
    a, b = (s.vertices - s.vertices.mean(axis=0) for s in tri)
    return convex_hull(np.vstack([a, b + np.asarray(offset, dtype=float)]))


# --- quadrilaterals ---------------------------------------------------------------------


def _offsets(a: float, b: float) -> tuple[float, float]:
    q = b * (a - 1.0) / (2.0 * a * b - a - b)
    return q + (1.0 - q) / a, q


def quadrilateral_from_ab(a: float, b: float) -> ConvexPolygon:
    """Normalized quadrilateral with ``|AG|/|AB| = a`` and ``|AH|/|AD| = b``."""
    if not (np.isfinite(a) and np.isfinite(b) and a > 1 and b > 1):
        raise ParameterError(f"need finite a, b > 1, got ({a}, {b})")
    p, q = _offsets(a, b)
    return ConvexPolygon(np.array([[-p, 0.0], [0.0, -q], [1.0 - p, 0.0], [0.0, 1.0 - q]]))


def folio_area(a: float, b: float) -> float:
    """Smallest cover area ``ab(ab-1)/(2ab-a-b)`` in the ruler normalization of the same ``(a, b)``.

    Documentation only: that normalization is fixed by a drawing, so tests use
    the affine-invariant target ``min area * area Q = 1/2`` instead.
    """
    return a * b * (a * b - 1.0) / (2.0 * a * b - a - b)


def _line_meet(p1, p2, p3, p4) -> np.ndarray:
    d1, d2 = p2 - p1, p4 - p3
    s = wedge(p3 - p1, d2) / wedge(d1, d2)
    return p1 + s * d1


def pappus_residual(p: float, q: float) -> float:
    """Distance of ``G = AB x CD`` from the line ``EF`` for the quadrilateral with offsets ``p, q``."""
    A, B, C, D = (np.array(v) for v in ([-p, 0.0], [0.0, -q], [1.0 - p, 0.0], [0.0, 1.0 - q]))
    E, F = np.array([-p, 1.0 - q]), np.array([1.0 - p, -q])
    G = _line_meet(A, B, C, D)
    d = F - E
    return abs(wedge(d, G - E)) / np.hypot(*d)


def case_quadrilateral(a: float, b: float, perturbation: float = 1e-7) -> CaseInstance:
    """Quadrilateral with parameters ``(a, b)`` and its square cover.

    Very large parameters make two sides nearly parallel; ``a`` and ``b`` are
    capped at ``1/perturbation`` so that the sides stay distinguishable.
    """
    if not (np.isfinite(a) and np.isfinite(b) and a > 1 and b > 1):
        raise ParameterError(f"need finite a, b > 1, got ({a}, {b})")
    a = min(a, 1.0 / perturbation)
    b = min(b, 1.0 / perturbation)
    Q = quadrilateral_from_ab(a, b)
    res = pappus_residual(*_offsets(a, b))
    if res > 1e-9:
        raise GeometryError(f"E, F, G are not collinear (residual {res:.3g})")
    K = ConvexPolygon(UNIT_SQUARE)
    return CaseInstance(
        f"quadrilateral(a={a!r}, b={b!r})", Q, K, expected_ratio=1.0, expected_min_area=1.0,
        equality_family_params={"a": a, "b": b, "pappus_residual": res,
                                "boundary": abs((a - 1.0) * (b - 1.0) - 1.0) <= 1e-12},
    )


def square_placement(shapes: list[NormalShape]) -> list[np.ndarray]:
    """Vertices of each class translated into the unit square by the fitting LP."""
    K0 = ConvexPolygon(UNIT_SQUARE)
    out = []
    for s in shapes:
        f = max_inscribed_homothet(s.vertices, K0)
        if abs(f.scale - 1.0) > 1e-9:
            raise GeometryError(f"class {s.class_id} does not fit the unit square tightly")
        out.append(s.vertices + f.shift)
    return out


_AXES = np.array([[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0], [0.0, -1.0]])


def quadri3_slide(a: float) -> tuple[tuple[int, ...], np.ndarray]:
    """Classes and direction along which the boundary square deforms at constant area.

    Scans subsets of at most two classes (lexicographically) and the four axis
    directions; returns the first move that keeps the hull area at 1 for two
    step sizes while changing the hull.
    """
    b = 1.0 + 1.0 / (a - 1.0)
    shapes = enumerate_normal_shapes(quadrilateral_from_ab(a, b))
    base = square_placement(shapes)
    for k in (1, 2):
        for sub in itertools.combinations(range(len(base)), k):
            for d in _AXES:
                ok = True
                for step in (1e-3, 2e-2):
                    pts = np.vstack([v + (step * d if i in sub else 0.0) for i, v in enumerate(base)])
                    H = convex_hull(pts)
                    if abs(H.area - 1.0) > 1e-12 or len(H) == 4:
                        ok = False
                        break
                if ok:
                    return sub, d
    raise GeometryError("no area-preserving slide found")


def quadri3_member(a: float, s: float) -> tuple[ConvexPolygon, ConvexPolygon]:
    """``(Q, K)``: boundary quadrilateral ``(a-1)(b-1) = 1`` and a hexagonal cover of area 1.

    ``K`` is the unit square with the slide of :func:`quadri3_slide` applied at
    distance ``s``; ``s = 0`` returns the square itself.
    """
    if not a > 1:
        raise ParameterError("need a > 1")
    b = 1.0 + 1.0 / (a - 1.0)
    Q = quadrilateral_from_ab(a, b)
    base = square_placement(enumerate_normal_shapes(Q))
    sub, d = quadri3_slide(a)
    pts = np.vstack([v + (s * d if i in sub else 0.0) for i, v in enumerate(base)])
    K = convex_hull(pts)
    if abs(K.area - 1.0) > 1e-12:
        raise ParameterError(f"slide s={s} leaves the equality family (area {K.area:.15g})")
    return Q, K


# --- pentagons ---------------------------------------------------------------------------


def case_pentagon_hko() -> CaseInstance:
    Q = regular_polygon(5)
    K = Q.rotate(np.pi / 2)
    K = K.scale(1.0 / capacity(K, Q).capacity)
    return CaseInstance("pentagon-hko", Q, K, expected_ratio=HKO_RATIO, expected_min_area=None)


def truncated_square(alpha: float, beta: float) -> ConvexPolygon:
    gamma = 1.0 - alpha - beta
    if not (0 < alpha < 1 and 0 < beta < 1 and 0 < gamma < 1):
        raise ParameterError(f"need 0 < alpha, beta, 1 - alpha - beta < 1, got ({alpha}, {beta})")
    return ConvexPolygon(np.array([[0.0, 0.0], [1.0 - alpha, 0.0], [1.0 - alpha, alpha],
                                   [beta, 1.0 - beta], [0.0, 1.0 - beta]]))


def truncated_square_ratio(alpha: float, beta: float) -> float:
    gamma = 1.0 - alpha - beta
    return 1.0 / (1.0 + (alpha**2 + beta**2) * gamma**2 / (1.0 - alpha**2 - beta**2 - gamma**2))


_TRAPEZOID_LINES = (
    ("T2a", "Vbot", "T1b", "Hend"),
    ("Hend", "T2b", "T1c", "Vtop"),
    ("Vtop", "T2c", "H0", "T1a"),
)


def _trapezoid_points(x, alpha, beta) -> dict:
    tv, t2, t1 = x[:2], x[2:4], x[4:]
    Lh, Lv = 1.0 / (1.0 - alpha), 1.0 / (1.0 - beta)
    return {
        "H0": np.zeros(2), "Hend": np.array([Lh, 0.0]),
        "Vbot": tv, "Vtop": tv + [0.0, Lv],
        "T2a": t2, "T2b": t2 + [1.0, 1.0], "T2c": t2 + [0.0, 1.0],
        "T1a": t1, "T1b": t1 + [1.0, 0.0], "T1c": t1 + [1.0, 1.0],
    }


def _trapezoid_residual(x, alpha, beta) -> list[float]:
    p = _trapezoid_points(x, alpha, beta)
    out = []
    for line in _TRAPEZOID_LINES:
        a, b = p[line[0]], p[line[-1]]
        for m in line[1:-1]:
            out.append(wedge(b - a, p[m] - a))
    return out


def case_truncated_square(alpha: float, beta: float) -> CaseInstance:
    """Square with one corner cut, and the trapezoid cover from three collinearities.

    The five normal shapes are the horizontal segment ``H`` (at the origin),
    the vertical segment ``V`` and the triangles ``T1 = conv{0, e1, e1+e2}``
    and ``T2 = conv{0, e1+e2, e2}``. Their translations are fixed by requiring
    that ``T2a, Vbot, T1b, Hend``, ``Hend, T2b, T1c, Vtop`` and ``Vtop, T2c, H0, T1a``
    are collinear; the sides of the trapezoid lie on these three lines and on
    the line through ``H``.
    """
    Q = truncated_square(alpha, beta)
    x0 = np.array([0.52, -0.52, 0.156, -0.727, -0.208, -0.364])
    x, info, ier, msg = fsolve(_trapezoid_residual, x0, args=(alpha, beta), xtol=1e-14, full_output=True)
    res = float(np.max(np.abs(_trapezoid_residual(x, alpha, beta))))
    if res > 1e-10:
        raise GeometryError(f"collinearity system did not converge ({msg.strip()})")
    K = convex_hull(np.array(list(_trapezoid_points(x, alpha, beta).values())))
    return CaseInstance(
        f"truncated-square(alpha={alpha!r}, beta={beta!r})", Q, K,
        expected_ratio=truncated_square_ratio(alpha, beta), expected_min_area=None,
        equality_family_params={"alpha": alpha, "beta": beta, "collinearity_residual": res,
                                "translations": x},
    )


# --- hexagons ---------------------------------------------------------------------------


def unit_width_hexagon() -> ConvexPolygon:
    return regular_polygon(6, 1.0 / np.sqrt(3.0))


def case_hexagon_regular() -> CaseInstance:
    Q = unit_width_hexagon()
    K = regular_polygon(3, 2.0 / 3.0, np.pi / 2)
    return CaseInstance("hexagon-regular", Q, K, expected_ratio=1.0, expected_min_area=1.0 / np.sqrt(3.0))


def _segment_triangle(segments: list[NormalShape]) -> list[np.ndarray]:
    """Both ways of chaining three segment classes into a closed triangle (ccw each)."""
    d = [s.vertices[1] - s.vertices[0] for s in segments]
    out = []
    for signs in itertools.product((1.0, -1.0), repeat=3):
        e = [sg * v for sg, v in zip(signs, d)]
        for perm in itertools.permutations(range(3)):
            chain = [e[i] for i in perm]
            if np.hypot(*np.sum(chain, axis=0)) > 1e-9 or wedge(chain[0], chain[1]) <= 0:
                continue
            v = np.cumsum(np.vstack([[0.0, 0.0], chain[:-1]]), axis=0)
            out.append((v, [perm[0], perm[1], perm[2]]))
    return out


def hexa2_member(offset) -> tuple[ConvexPolygon, list[np.ndarray]]:
    """Equality cover of the regular hexagon with two degrees of freedom.

    The three unit segments form an equilateral triangle; the normal triangle
    of the same orientation lies inside it, and the oppositely oriented one
    (centred on the triangle's centroid plus ``offset``) pokes out through all
    three sides. Returns the hull and the placed shapes.
    """
    Q = unit_width_hexagon()
    shapes = enumerate_normal_shapes(Q)
    segs = [s for s in shapes if s.kind == "segment"]
    tris = [s for s in shapes if s.kind == "triangle"]
    for v, order in _segment_triangle(segs):
        frame = ConvexPolygon(v)
        fits = [max_inscribed_homothet(t.vertices, frame) for t in tris]
        inner = [i for i, f in enumerate(fits) if f.scale >= 1.0 - 1e-9]
        if len(inner) == 1:
            break
    else:
        raise GeometryError("no segment triangle holds a normal triangle")
    yellow = tris[inner[0]].vertices + fits[inner[0]].shift
    o = tris[1 - inner[0]].vertices
    orange = o - o.mean(axis=0) + v.mean(axis=0) + np.asarray(offset, dtype=float)
    placed = [v[[k, (k + 1) % 3]] for k in range(3)] + [yellow, orange]
    return convex_hull(np.vstack(placed)), placed


def case_hexagon_nonregular_swapped(a: float = 1.5, s: float = 0.07) -> CaseInstance:
    """Hexagonal equality cover ``H`` of a boundary quadrilateral, used as the new ``Q``.

    ``H`` is centrally symmetric, so it is twice as large as the triangle on
    its alternate vertices, and that triangle turned by a right angle is a
    cover ``K0`` of ``H`` attaining equality. The quadrilateral itself is the
    second candidate ``K1`` (capacity is symmetric in the two factors).
    """
    Q4, H = quadri3_member(a, s)
    if len(H) != 6:
        raise ParameterError("slide parameter does not give a hexagon")
    K1 = Q4
    best = None
    for start in (0, 1):
        for sign in (1.0, -1.0):
            tri = ConvexPolygon(H.vertices[start::2]).rotate(sign * np.pi / 2)
            err = abs(_ratio(tri, H) - 1.0)
            if best is None or err < best[0] - 1e-12:
                best = (err, tri)
    K0 = best[1]
    return CaseInstance(
        f"hexagon-swapped(a={a!r}, s={s!r})", H, K0, expected_ratio=1.0, expected_min_area=None,
        equality_family_params={"a": a, "s": s},
        candidates=(K0, K1, K0.reflect(), K1.reflect()),
    )


def _ratio(K: ConvexPolygon, Q: ConvexPolygon) -> float:
    c = capacity(K, Q).capacity
    return c * c / (2.0 * K.area * Q.area)


def shift_region(T, K: ConvexPolygon) -> np.ndarray:
    """Vertices of ``{t : T + t in K}`` (an intersection of half-planes, possibly degenerate)."""
    T = np.asarray(T, dtype=float)
    n, h = K.facets()
    rhs = h - (T @ n.T).max(axis=0)
    R = 4.0 * K.diameter + float(np.abs(T).max()) + float(np.abs(K.vertices).max())
    box = [[-R, -R], [R, -R], [R, R], [-R, R]]
    region = np.array(box, dtype=float)
    for nj, rj in zip(n, rhs):
        region = clip_convex(region, _HalfPlane(nj, rj))
        if len(region) == 0:
            break
    return region


@dataclass(frozen=True)
class _HalfPlane:
    normal: np.ndarray
    offset: float

    def facets(self):
        return self.normal[None, :], np.array([self.offset])


def slides_freely(T, K: ConvexPolygon, tol: float = 1e-9) -> float:
    """Diameter of the set of translations that put ``T`` inside ``K``; positive means it slides."""
    R = shift_region(T, K)
    if len(R) == 0:
        return 0.0
    d = R[:, None, :] - R[None, :, :]
    return float(np.hypot(d[..., 0], d[..., 1]).max())


CASES = {
    "triangle": case_triangle,
    "quadrilateral": case_quadrilateral,
    "pentagon-hko": case_pentagon_hko,
    "truncated-square": case_truncated_square,
    "hexagon-regular": case_hexagon_regular,
    "hexagon-swapped": case_hexagon_nonregular_swapped,
}

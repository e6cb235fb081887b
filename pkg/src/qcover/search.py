"""Numerical search for smallest Q-covers.

The objective is the area of the convex hull of all Q-normal shapes, each
translated independently; shape 0 stays at the origin. It is nonsmooth, so the
local stage alternates three derivative-free moves:

* Nelder-Mead over all free coordinates,
* mixed-area descent: with ``H`` the current hull, an LP finds the
  translations minimising the mixed area ``V(H, conv U(t))`` (a convex
  piecewise-linear function of ``t``). Minkowski's inequality
  ``V(H, U)^2 >= area(H) area(U)`` makes every LP step non-increasing,
* cyclic coordinate descent with shrinking steps.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog, minimize

from ._kernels import placement_hull_area
from .capacity import is_q_cover
from .geometry import ConvexPolygon, GeometryError, convex_hull, hull_indices, max_inscribed_homothet
from .normals import NormalShape, enumerate_normal_shapes

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Placement:
    """One translation per normal-shape class; row 0 is pinned to the origin."""

    translations: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.translations, dtype=float).reshape(-1, 2).copy()
        if np.any(t[0] != 0.0):
            raise ValueError("translation of class 0 must be exactly (0, 0)")
        t.setflags(write=False)
        object.__setattr__(self, "translations", t)

    @classmethod
    def from_free(cls, x) -> "Placement":
        return cls(np.vstack([[0.0, 0.0], np.asarray(x, dtype=float).reshape(-1, 2)]))

    @classmethod
    def gauge_fixed(cls, translations) -> "Placement":
        """Remove the common shift so that class 0 sits at the origin."""
        t = np.asarray(translations, dtype=float).reshape(-1, 2)
        return cls(t - t[0])

    @property
    def free(self) -> np.ndarray:
        return self.translations[1:].ravel().copy()

    def __len__(self):
        return len(self.translations)


@dataclass(frozen=True)
class SearchConfig:
    restarts: int = 64
    rng_seed: int = 0
    polish_tolerance: float = 1e-10
    max_iterations: int = 40
    nm_maxfev: int = 4000
    kicks: int = 4
    kick_scale: float = 0.05
    workers: int = 1

    def __post_init__(self):
        if self.restarts < 1 or self.max_iterations < 1 or self.nm_maxfev < 1 or self.workers < 1:
            raise ValueError("search configuration values must be positive")
        if self.kicks < 0 or not self.kick_scale > 0:
            raise ValueError("kicks must be nonnegative and kick_scale positive")
        if not self.polish_tolerance > 0:
            raise ValueError("polish_tolerance must be positive")
        if not 0 <= self.rng_seed < 2**64:
            raise ValueError("rng_seed must be a 64-bit unsigned integer")


@dataclass(frozen=True)
class SearchResult:
    best_placement: Placement
    best_area: float
    hull: ConvexPolygon
    is_cover_certified: bool
    restart_areas: tuple[float, ...]
    best_restart: int
    placements: tuple[Placement, ...] = ()


class _Objective:
    """Packs shape vertices into flat arrays for the compiled hull-area kernel."""

    def __init__(self, shapes: list[NormalShape]):
        self.shapes = shapes
        self.m = len(shapes)
        self.points = np.concatenate([s.vertices for s in shapes])
        self.owner = np.concatenate([[k] * len(s.vertices) for k, s in enumerate(shapes)]).astype(np.int64)
        self.px = np.ascontiguousarray(self.points[:, 0])
        self.py = np.ascontiguousarray(self.points[:, 1])
        self.scale = max(float(np.ptp(s.vertices, axis=0).max()) for s in shapes)

    def __call__(self, x) -> float:
        return placement_hull_area(np.asarray(x, dtype=float), self.px, self.py, self.owner)

    def placed(self, x) -> np.ndarray:
        t = np.vstack([[0.0, 0.0], np.asarray(x, dtype=float).reshape(-1, 2)])
        return self.points + t[self.owner]


def hull_area_objective(Q: ConvexPolygon, placement: Placement,
                        shapes: list[NormalShape] | None = None) -> float:
    """Area of the hull of every normal shape translated by ``placement``."""
    shapes = enumerate_normal_shapes(Q) if shapes is None else shapes
    if len(placement) != len(shapes):
        raise ValueError(f"placement has {len(placement)} translations for {len(shapes)} classes")
    return _Objective(shapes)(placement.free)


def placed_shapes(shapes: list[NormalShape], placement: Placement) -> list[np.ndarray]:
    return [s.vertices + t for s, t in zip(shapes, placement.translations)]


def _mixed_area_step(obj: _Objective, x: np.ndarray) -> np.ndarray | None:
    U = obj.placed(x)
    H = U[hull_indices(U)]
    if len(H) < 3:
        return None
    e = np.roll(H, -1, axis=0) - H
    ell = np.hypot(e[:, 0], e[:, 1])
    n = np.column_stack([e[:, 1], -e[:, 0]]) / ell[:, None]
    J, d, N = len(n), 2 * (obj.m - 1), len(obj.points)
    # variables: free translations (d), support values s_j (J)
    A = np.zeros((J * N, d + J))
    proj = obj.points @ n.T  # (N, J)
    for j in range(J):
        rows = slice(j * N, (j + 1) * N)
        block = A[rows]
        for i, c in enumerate(obj.owner):
            if c > 0:
                block[i, 2 * c - 2 : 2 * c] = n[j]
        block[:, d + j] = -1.0
    b = -proj.T.ravel()
    cost = np.concatenate([np.zeros(d), ell])
    res = linprog(cost, A_ub=A, b_ub=b, bounds=[(None, None)] * (d + J), method="highs")
    if res.status != 0:
        return None
    return res.x[:d]


def _explore(obj: _Objective, x: np.ndarray, fx: float, step: float):
    """One coordinate sweep: keep the first improving +-step move in each coordinate."""
    x = x.copy()
    for i in range(len(x)):
        for sgn in (1.0, -1.0):
            y = x.copy()
            y[i] += sgn * step
            fy = obj(y)
            if fy < fx:
                x, fx = y, fy
                break
    return x, fx


def _pattern_search(obj: _Objective, x: np.ndarray, fx: float, step: float, tol: float,
                    max_evals: int):
    """Hooke-Jeeves: coordinate exploration plus moves along the last successful displacement."""
    base, fbase = x.copy(), fx
    per_sweep = 2 * len(x)
    evals = 0
    while step > tol and evals < max_evals:
        y, fy = _explore(obj, base, fbase, step)
        evals += per_sweep
        if not fy < fbase:
            step *= 0.5
            continue
        while evals < max_evals:
            z = y + (y - base)
            base, fbase = y, fy
            y, fy = _explore(obj, z, obj(z), step)
            evals += per_sweep + 1
            if not fy < fbase:
                break
    return base, fbase


def _polish(obj: _Objective, x: np.ndarray, tol: float, max_rounds: int = 200):
    fx = obj(x)
    for _ in range(max_rounds):
        y = _mixed_area_step(obj, x)
        if y is None:
            break
        fy = obj(y)
        if not fy < fx - tol * tol:
            break
        x, fx = y, fy
    return _pattern_search(obj, x, fx, 1e-3 * obj.scale, tol * obj.scale, 5000 * len(x))


def polish_placement(Q: ConvexPolygon, placement: Placement, tolerance: float = 1e-10,
                     shapes: list[NormalShape] | None = None) -> Placement:
    """Local refinement that never increases the objective; stops once steps fall below ``tolerance``."""
    shapes = enumerate_normal_shapes(Q) if shapes is None else shapes
    obj = _Objective(shapes)
    x, _ = _polish(obj, placement.free, tolerance)
    return Placement.from_free(x)


def _local_search(obj: _Objective, x: np.ndarray, config: SearchConfig):
    fx = obj(x)
    for _ in range(config.max_iterations):
        if obj.m > 1:
            res = minimize(obj, x, method="Nelder-Mead",
                           options=dict(xatol=1e-13, fatol=1e-15, maxfev=config.nm_maxfev, adaptive=True))
            y, fy = res.x, float(res.fun)
        else:
            y, fy = x, fx
        y, fy = _polish(obj, y, config.polish_tolerance)
        if not fy < fx - config.polish_tolerance:
            if fy < fx:
                x, fx = y, fy
            break
        x, fx = y, fy
    return x, fx


def _hop(obj: _Objective, x0: np.ndarray, config: SearchConfig, rng: np.random.Generator):
    """Local search, then ``kicks`` random perturbations of the incumbent, each refined again."""
    x, fx = _local_search(obj, x0, config)
    for _ in range(config.kicks):
        z = x + rng.normal(scale=config.kick_scale * obj.scale, size=x.size)
        y, fy = _local_search(obj, z, config)
        if fy < fx:
            x, fx = y, fy
    return x, fx


def _restart(args):
    shapes, config, r = args
    obj = _Objective(shapes)
    rng = np.random.default_rng([config.rng_seed, r])
    x0 = rng.uniform(-obj.scale, obj.scale, size=2 * (obj.m - 1))
    return _hop(obj, x0, config, rng)


def placement_inside(K: ConvexPolygon, shapes: list[NormalShape]) -> Placement:
    """Translations putting every class inside ``K`` (largest-homothet fits, gauge fixed).

    Requires ``K`` to be a Q-cover; the hull of the placed shapes then lies in ``K``.
    """
    t = []
    for s in shapes:
        f = max_inscribed_homothet(s.vertices, K)
        if f.scale < 1.0 - 1e-9:
            raise GeometryError(f"class {s.class_id} does not fit into K")
        # scale about the centroid back to 1 keeps the copy inside K
        t.append(f.shift + (f.scale - 1.0) * s.vertices.mean(axis=0))
    return Placement.gauge_fixed(np.array(t))


def _warm(args):
    shapes, config, r, x0 = args
    rng = np.random.default_rng([config.rng_seed, r])
    return _hop(_Objective(shapes), np.asarray(x0, dtype=float), config, rng)


def search_min_cover(Q: ConvexPolygon, config: SearchConfig = SearchConfig(),
                     shapes: list[NormalShape] | None = None,
                     warm_starts: tuple[Placement, ...] = ()) -> SearchResult:
    """Multistart local search for the smallest-area Q-cover.

    Each restart draws its initial placement from its own stream seeded by
    ``(rng_seed, restart index)``, so the result does not depend on how the
    restarts are scheduled. Every local optimum is then kicked ``kicks`` times
    (basin hopping) and the best refinement is kept. ``warm_starts`` are refined as extra restarts
    numbered after the random ones. Ties in area go to the lowest index.
    """
    shapes = enumerate_normal_shapes(Q) if shapes is None else shapes
    jobs = [(shapes, config, r) for r in range(config.restarts)]
    warm = [(shapes, config, config.restarts + k, p.free) for k, p in enumerate(warm_starts)]
    if config.workers > 1:
        with ProcessPoolExecutor(config.workers) as pool:
            outcomes = list(pool.map(_restart, jobs)) + list(pool.map(_warm, warm))
    else:
        outcomes = [_restart(j) for j in jobs] + [_warm(w) for w in warm]
    areas = [float(f) for _, f in outcomes]
    best = int(np.argmin(areas))
    placement = Placement.from_free(outcomes[best][0])
    obj = _Objective(shapes)
    pts = obj.placed(placement.free)
    try:
        hull = convex_hull(pts)
    except GeometryError:
        raise GeometryError("optimal hull is degenerate") from None
    certified = bool(is_q_cover(hull, Q, shapes=shapes))
    log.debug("search over %d restarts: best %.15g from restart %d", config.restarts, areas[best], best)
    return SearchResult(
        best_placement=placement,
        best_area=hull.area,
        hull=hull,
        is_cover_certified=certified,
        restart_areas=tuple(areas),
        best_restart=best,
        placements=tuple(Placement.from_free(x) for x, _ in outcomes),
    )

"""EHZ capacity of polygonal lagrangian products through the covering criterion."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import ConvexPolygon, FitResult, GeometryError, max_inscribed_homothet
from .normals import NormalShape, enumerate_normal_shapes

COVER_TOL = 1e-8


@dataclass(frozen=True)
class CapacityReport:
    capacity: float
    binding_class: int
    tight_classes: tuple[int, ...]
    fits: tuple[tuple[int, FitResult], ...]


def capacity(K: ConvexPolygon, Q: ConvexPolygon, shapes: list[NormalShape] | None = None,
             tie_tol: float = 1e-9) -> CapacityReport:
    """``c(K x Q)``: the smallest scale at which some Q-normal shape stops fitting into K.

    Every class is fitted independently; the minimum is taken by value and
    ties (within ``tie_tol`` relative) are all reported, the smallest class id
    being the binding one.
    """
    if shapes is None:
        shapes = enumerate_normal_shapes(Q)
    fits = tuple((s.class_id, max_inscribed_homothet(s.vertices, K)) for s in shapes)
    scales = np.array([f.scale for _, f in fits])
    c = float(scales.min())
    tight = tuple(cid for cid, f in fits if f.scale <= c + tie_tol * max(c, 1e-300))
    return CapacityReport(capacity=c, binding_class=tight[0], tight_classes=tight, fits=fits)


def systolic_ratio(K: ConvexPolygon, Q: ConvexPolygon) -> float:
    """``c(K x Q)^2 / (2 area K area Q)``; Viterbo's inequality says this is at most 1."""
    c = capacity(K, Q).capacity
    return c * c / (2.0 * K.area * Q.area)


@dataclass(frozen=True)
class CoverVerdict:
    is_cover: bool
    binding_class: int
    fit: FitResult
    capacity: float

    def __bool__(self):
        return self.is_cover


def is_q_cover(K: ConvexPolygon, Q: ConvexPolygon, tol: float = COVER_TOL,
               shapes: list[NormalShape] | None = None) -> CoverVerdict:
    """True when every Q-normal shape fits into K (capacity at least ``1 - tol``)."""
    rep = capacity(K, Q, shapes)
    fit = dict(rep.fits)[rep.binding_class]
    return CoverVerdict(rep.capacity >= 1.0 - tol, rep.binding_class, fit, rep.capacity)


def contains_polygon(outer: ConvexPolygon, inner: ConvexPolygon, tol: float | None = None) -> bool:
    tol = outer.tol if tol is None else tol
    return bool(np.all(outer.contains(inner.vertices, tol)))


def monotonicity_check(K: ConvexPolygon, Q_inner: ConvexPolygon, Q_outer: ConvexPolygon,
                       tol: float = 1e-9) -> bool:
    """Check ``c(K x Q_inner) <= c(K x Q_outer)`` for nested ``Q_inner`` inside ``Q_outer``."""
    if not contains_polygon(Q_outer, Q_inner):
        raise GeometryError("Q_inner is not contained in Q_outer")
    c_in = capacity(K, Q_inner).capacity
    c_out = capacity(K, Q_outer).capacity
    return c_in <= c_out + tol * max(1.0, c_out)

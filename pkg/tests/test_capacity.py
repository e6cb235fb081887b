import numpy as np
import pytest
from hypothesis import given

from qcover.capacity import capacity, contains_polygon, is_q_cover, monotonicity_check, systolic_ratio
from qcover.cases import HKO_RATIO, case_pentagon_hko
from qcover.geometry import AffineMap, ConvexPolygon, GeometryError, apply_affine, convex_hull, regular_polygon
from support import random_convex_polygon, random_points_polygon, seeds


def test_hko_pair():
    c = case_pentagon_hko()
    rep = capacity(c.K, c.Q)
    assert rep.capacity == pytest.approx(1.0, abs=1e-9)
    assert systolic_ratio(c.K, c.Q) == pytest.approx(HKO_RATIO, abs=1e-9)
    assert HKO_RATIO == pytest.approx(1.0472135955, abs=1e-10)
    # all ten classes are tight in the rotated pentagon
    assert len(rep.tight_classes) == 10


def test_capacity_is_homogeneous(rng):
    K = random_convex_polygon(rng, 5)
    Q = random_convex_polygon(rng, 4)
    c = capacity(K, Q).capacity
    assert capacity(K.scale(0.5), Q).capacity == pytest.approx(0.5 * c, rel=1e-12)
    assert capacity(K, Q.scale(2.0)).capacity == pytest.approx(2.0 * c, rel=1e-12)


@given(seeds)
def test_ratio_is_affine_invariant(seed):
    rng = np.random.default_rng(seed)
    K = random_convex_polygon(rng, int(rng.integers(3, 7)))
    Q = random_convex_polygon(rng, int(rng.integers(3, 7)))
    L = rng.normal(size=(2, 2)) + 2 * np.eye(2)
    if abs(np.linalg.det(L)) < 0.1:
        return
    M = AffineMap(L)
    r1 = systolic_ratio(K, Q)
    r2 = systolic_ratio(apply_affine(M, K), apply_affine(M.dual(), Q))
    assert r1 == pytest.approx(r2, rel=1e-9)


@given(seeds)
def test_capacity_is_symmetric_in_the_factors(seed):
    rng = np.random.default_rng(seed)
    K = random_convex_polygon(rng, int(rng.integers(3, 7)))
    Q = random_convex_polygon(rng, int(rng.integers(3, 7)))
    assert capacity(K, Q).capacity == pytest.approx(capacity(Q, K).capacity, rel=1e-9)


@given(seeds)
def test_monotone_in_q(seed):
    rng = np.random.default_rng(seed)
    K = random_points_polygon(rng)
    Qo = random_points_polygon(rng)
    w = rng.dirichlet(np.ones(len(Qo)), size=5)
    try:
        Qi = convex_hull(w @ Qo.vertices)
    except GeometryError:
        return
    assert monotonicity_check(K, Qi, Qo)


def test_monotonicity_needs_nested_pair():
    Q = regular_polygon(4)
    with pytest.raises(GeometryError):
        monotonicity_check(Q, Q.scale(2.0), Q)


def test_cover_verdict():
    Q = regular_polygon(3, 2 / 3, np.pi / 2)
    K = regular_polygon(6, 2 / 3 / np.sqrt(3) * 1.0)
    v = is_q_cover(K.scale(10.0), Q)
    assert v and v.capacity > 1
    assert not is_q_cover(K.scale(1e-3), Q)
    assert contains_polygon(K.scale(2.0), K)

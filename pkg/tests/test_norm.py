import numpy as np
import pytest
from hypothesis import given, strategies as st

from qcover.geometry import ConvexPolygon, GeometryError, regular_polygon, wedge
from qcover.norm import (
    ClosedPolyline,
    normal_fan,
    q_length,
    q_length_segment_via_width,
    q_perimeter_via_support_lines,
    support,
    width,
)
from support import random_convex_polygon, seeds

SQUARE = ConvexPolygon(np.array([[-0.5, -0.5], [0.5, -0.5], [0.5, 0.5], [-0.5, 0.5]]))


def test_support_of_square():
    assert support(SQUARE, [1.0, 0.0]) == pytest.approx(0.5)
    assert support(SQUARE, [1.0, 1.0]) == pytest.approx(1.0)


def test_q_length_of_unit_square_curve_under_square_norm():
    curve = ClosedPolyline([[0, 0], [1, 0], [1, 1], [0, 1]])
    # each unit edge has norm 1/2 against the centered unit square
    assert q_length(SQUARE, curve) == pytest.approx(2.0)


@given(seeds, st.integers(3, 8))
def test_q_length_invariant_under_translating_q(seed, n):
    rng = np.random.default_rng(seed)
    Q = random_convex_polygon(rng, n)
    curve = rng.normal(size=(6, 2))
    a = q_length(Q, curve)
    b = q_length(Q.translate(rng.normal(size=2) * 3), curve)
    assert a == pytest.approx(b, rel=1e-12)
    # and under translating the curve, positively homogeneous in scaling
    assert q_length(Q, curve + 7.0) == pytest.approx(a, rel=1e-12)
    assert q_length(Q, 2.5 * curve) == pytest.approx(2.5 * a, rel=1e-12)


@given(seeds)
def test_segment_q_length_is_width_times_length(seed):
    rng = np.random.default_rng(seed)
    Q = random_convex_polygon(rng, int(rng.integers(3, 8)))
    u, v = rng.normal(size=(2, 2))
    assert q_length(Q, [u, v]) == pytest.approx(q_length_segment_via_width(u, v, Q), rel=1e-10)


@given(seeds)
def test_triangle_perimeter_via_support_lines(seed):
    rng = np.random.default_rng(seed)
    Q = random_convex_polygon(rng, int(rng.integers(3, 8)))
    u, v, w = rng.normal(size=(3, 2))
    if abs(wedge(v - u, w - u)) < 1e-3:
        return
    assert q_perimeter_via_support_lines(u, v, w, Q) == pytest.approx(q_length(Q, [u, v, w]), rel=1e-9, abs=1e-12)


def test_degenerate_triangle_perimeter_raises():
    with pytest.raises(GeometryError):
        q_perimeter_via_support_lines([0, 0], [1, 0], [2, 0], SQUARE)


def test_width_of_hexagon():
    H = regular_polygon(6, 1 / np.sqrt(3))
    for k in range(6):
        a = np.pi / 6 + k * np.pi / 3
        assert width(H, [np.cos(a), np.sin(a)]) == pytest.approx(1.0)


def test_normal_fan_sorted():
    fan = normal_fan(regular_polygon(5))
    assert np.all(np.diff(fan.angles) > 0)
    assert np.allclose(np.hypot(*fan.directions.T), 1.0)
    assert sorted(fan.side_index) == list(range(5))

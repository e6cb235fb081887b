import numpy as np
import pytest
from hypothesis import given, strategies as st

from qcover.geometry import ConvexPolygon, regular_polygon, wedge
from qcover.norm import normal_fan, q_length
from qcover.normals import enumerate_normal_shapes, find_class, positive_dependency
from support import random_convex_polygon, seeds


def kinds(shapes):
    return sorted(s.kind for s in shapes)


def test_triangle_has_two_classes():
    shapes = enumerate_normal_shapes(regular_polygon(3))
    assert kinds(shapes) == ["triangle", "triangle"]


def test_square_has_two_segments():
    Q = ConvexPolygon(np.array([[0, 0], [1, 0], [1, 1], [0, 1.0]]))
    shapes = enumerate_normal_shapes(Q)
    assert kinds(shapes) == ["segment", "segment"]
    for s in shapes:
        assert np.hypot(*(s.vertices[1] - s.vertices[0])) == pytest.approx(1.0)


def test_regular_pentagon_has_ten_congruent_triangles():
    shapes = enumerate_normal_shapes(regular_polygon(5))
    assert len(shapes) == 10
    for s in shapes:
        v = s.vertices
        ang = []
        for i in range(3):
            a, b = v[i - 1] - v[i], v[(i + 1) % 3] - v[i]
            ang.append(np.arccos(a @ b / np.hypot(*a) / np.hypot(*b)))
        np.testing.assert_allclose(sorted(ang), [np.pi / 5, np.pi / 5, 3 * np.pi / 5], atol=1e-9)


def test_regular_hexagon_census():
    shapes = enumerate_normal_shapes(regular_polygon(6, 1 / np.sqrt(3)))
    segs = [s for s in shapes if s.kind == "segment"]
    tris = [s for s in shapes if s.kind == "triangle"]
    assert len(segs) == 3 and len(tris) == 2
    for s in segs:
        assert np.hypot(*(s.vertices[1] - s.vertices[0])) == pytest.approx(1.0, abs=1e-9)
    for t in tris:
        np.testing.assert_allclose(t.edge_lengths, [2 / 3] * 3, atol=1e-9)


def test_truncated_square_census():
    a, b = 0.2, 0.3
    Q = ConvexPolygon(np.array([[0, 0], [1 - a, 0], [1 - a, a], [b, 1 - b], [0, 1 - b]]))
    assert kinds(enumerate_normal_shapes(Q)) == ["segment", "segment", "triangle", "triangle"]


@given(seeds, st.integers(3, 8))
def test_shapes_have_unit_q_perimeter_and_follow_normals(seed, n):
    Q = random_convex_polygon(np.random.default_rng(seed), n)
    fan = normal_fan(Q)
    shapes = enumerate_normal_shapes(Q)
    assert len(shapes) >= 1
    for s in shapes:
        curve = s.normal_curve
        assert q_length(Q, curve) == pytest.approx(1.0, rel=1e-9)
        e = np.roll(curve, -1, axis=0) - curve
        for k, vec in zip(s.direction_indices, e):
            u = vec / np.hypot(*vec)
            assert u @ fan.directions[k] == pytest.approx(1.0, abs=1e-9)
    # classes are distinct point sets
    reps = [s.vertices for s in shapes]
    for i in range(len(reps)):
        for j in range(i):
            if reps[i].shape == reps[j].shape:
                assert not np.allclose(reps[i], reps[j], atol=1e-7)


@given(seeds)
def test_generic_quadrilateral_has_four_triangles(seed):
    Q = random_convex_polygon(np.random.default_rng(seed), 4)
    e = Q.edges()
    if min(abs(wedge(e[0], e[2])), abs(wedge(e[1], e[3]))) < 1e-3:
        return
    assert kinds(enumerate_normal_shapes(Q)) == ["triangle"] * 4


def test_census_invariant_under_translating_q(rng):
    Q = random_convex_polygon(rng, 6)
    a = enumerate_normal_shapes(Q)
    b = enumerate_normal_shapes(Q.translate([3.0, -2.0]))
    assert len(a) == len(b)
    for s, t in zip(a, b):
        np.testing.assert_allclose(s.vertices, t.vertices, atol=1e-12)


def test_positive_dependency():
    u = [np.array([1.0, 0.0]), np.array([-0.5, np.sqrt(3) / 2]), np.array([-0.5, -np.sqrt(3) / 2])]
    c = positive_dependency(*u)
    assert np.all(c > 0)
    np.testing.assert_allclose(sum(ci * ui for ci, ui in zip(c, u)), 0.0, atol=1e-12)
    assert positive_dependency(np.array([1.0, 0]), np.array([0, 1.0]), np.array([1.0, 1.0])) is None


def test_find_class_roundtrip():
    shapes = enumerate_normal_shapes(regular_polygon(5))
    for s in shapes:
        assert find_class(shapes, 3.0 * s.vertices + 1.0).class_id == s.class_id
    with pytest.raises(ValueError):
        find_class(shapes, [[0, 0], [1, 0], [0.2, 0.9]])

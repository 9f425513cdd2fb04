import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from quantip.geometry import (
    Box,
    EmptyPolytopeError,
    EnumerationBudgetError,
    GeometryError,
    HPolytope,
    LinearInequality,
    UnboundedError,
    VPolytope,
    bound_rows,
    bounding_box,
    extreme_points,
    fix_rows,
    hull_facets,
    integer_points,
    integer_row,
    point_in_hull,
    sharpen_strict,
    substitute,
    vertices,
)


def rows_of(h):
    return {(r.coeffs, r.rhs) for r in h.rows}


def box_polytope(*bounds):
    dim = len(bounds)
    rows = []
    for c, (lo, hi) in enumerate(bounds):
        rows += bound_rows(dim, c, lo=lo, hi=hi)
    return HPolytope(dim, rows)


# --- hull_facets -----------------------------------------------------------


def test_hull_unit_square():
    h = hull_facets(VPolytope(2, [(0, 0), (1, 0), (0, 1), (1, 1)]))
    assert rows_of(h) == {((-1, 0), 0), ((1, 0), 1), ((0, -1), 0), ((0, 1), 1)}


def test_hull_single_point_degenerate():
    h = hull_facets(VPolytope(2, [(0, 0)]))
    assert rows_of(h) == {((1, 0), 0), ((-1, 0), 0), ((0, 1), 0), ((0, -1), 0)}


def test_hull_rejects_empty_and_large_dim():
    with pytest.raises(GeometryError):
        hull_facets(VPolytope(2, []))
    with pytest.raises(GeometryError):
        hull_facets(VPolytope(9, [tuple([0] * 9)]))


def test_hull_interior_points_are_dropped():
    h = hull_facets(VPolytope(2, [(0, 0), (4, 0), (0, 4), (1, 1)]))
    got = vertices(h).vertices
    assert got == ((F(0), F(0)), (F(0), F(4)), (F(4), F(0)))


def test_hull_band_lift_matches_membership_oracle():
    # Lifted band strips for a small instance in dimension 3; the integer
    # points of the facet system must match direct hull-membership tests.
    rng = random.Random(5)
    pts = []
    for i, a in enumerate((F(1, 3), F(2, 5), F(3, 4)), start=1):
        for x in (1, 4):
            for s in (-1, 1):
                pts.append((F(x), F(i), a * x + s * F(1, 4)))
    h = hull_facets(VPolytope(3, pts))
    inside = set(integer_points(h))
    box = bounding_box(h)
    for p in box.points():
        assert (p in inside) == point_in_hull(p, pts)


# --- vertices --------------------------------------------------------------


def test_vertices_unit_interval():
    h = box_polytope((0, 1))
    assert vertices(h).vertices == ((F(0),), (F(1),))


def test_vertices_triangle_by_pairwise_intersection():
    # Independent oracle: intersect facet pairs and keep feasible points.
    rows = [
        LinearInequality((-1, 0), -1),       # y1 >= 1
        LinearInequality((0, 1), 1),         # y2 <= 1
        LinearInequality((1, -2), -1),       # 2*y2 - y1 >= 1
    ]
    h = HPolytope(2, rows)
    expected = set()
    for r1, r2 in itertools.combinations(rows, 2):
        det = r1.coeffs[0] * r2.coeffs[1] - r1.coeffs[1] * r2.coeffs[0]
        if det == 0:
            continue
        x = F(r1.rhs * r2.coeffs[1] - r1.coeffs[1] * r2.rhs, det)
        y = F(r1.coeffs[0] * r2.rhs - r1.rhs * r2.coeffs[0], det)
        if h.contains((x, y)):
            expected.add((x, y))
    assert set(vertices(h).vertices) == expected


def test_vertices_unbounded_signals():
    with pytest.raises(UnboundedError):
        vertices(HPolytope(1, [LinearInequality((-1,), 0)]))
    with pytest.raises(UnboundedError):
        # Bounded in one coordinate only.
        vertices(HPolytope(2, bound_rows(2, 0, lo=0, hi=1)))


def test_vertices_empty_system():
    h = HPolytope(1, [LinearInequality((1,), -1), LinearInequality((-1,), 0)])
    assert vertices(h).vertices == ()


def test_round_trip_same_point_set():
    h = box_polytope((0, 2), (0, 2))
    redundant = HPolytope(2, h.rows + (LinearInequality((1, 1), 10),))
    again = hull_facets(vertices(redundant))
    assert rows_of(again) == rows_of(h.canonical())


# --- integer_points / bounding_box -----------------------------------------


def test_integer_points_unit_square():
    assert integer_points(box_polytope((0, 1), (0, 1))) == [
        (0, 0), (0, 1), (1, 0), (1, 1),
    ]


def test_integer_points_primitive_triangle():
    tri = hull_facets(VPolytope(2, [(0, 0), (1, 0), (2, 1)]))
    assert integer_points(tri) == [(0, 0), (1, 0), (2, 1)]


def test_integer_points_band_matches_direct_scan():
    # w within 1/3 of x/3 over x in [1, 3], scanned directly.
    a, eps, n = F(1, 3), F(1, 3), 3
    band = HPolytope(2, [
        LinearInequality((-1, 0), -1),
        LinearInequality((1, 0), n),
        integer_row((a, -1), eps),
        integer_row((-a, 1), eps),
    ])
    expected = [
        (x, w)
        for x in range(1, n + 1)
        for w in range(-2, 4)
        if abs(a * x - w) <= eps
    ]
    assert integer_points(band) == expected


def test_integer_points_budget():
    wide = box_polytope((0, 10**4), (0, 10**4))
    with pytest.raises(EnumerationBudgetError):
        integer_points(wide, budget=10**6)


def test_bounding_box_examples():
    assert bounding_box(box_polytope((0, 1), (0, 1))) == Box((0, 0), (1, 1))
    thin = HPolytope(1, [integer_row((3,), F(2)), integer_row((-3,), F(-1))])
    with pytest.raises(EmptyPolytopeError):
        bounding_box(thin)  # [1/3, 2/3] holds no integer


def test_bounding_box_matches_vertex_scan():
    pts = [(F(1), F(1, 2)), (F(5), F(7, 3)), (F(2), F(-3, 4))]
    h = hull_facets(VPolytope(2, pts))
    box = bounding_box(h)
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    assert box.lo == (1, 0) and box.hi == (5, 2)
    assert box.lo[0] >= min(xs) and box.hi[1] <= max(ys)


# --- sharpen_strict ---------------------------------------------------------


def test_sharpen_examples():
    assert sharpen_strict(
        LinearInequality((F(1, 2),), F(3, 2), strict=True)
    ) == LinearInequality((1,), 2)
    # w > x/2 - 1, written as x/2 - w < 1.
    assert sharpen_strict(
        LinearInequality((F(1, 2), -1), F(1), strict=True)
    ) == LinearInequality((1, -2), 1)
    # The complement-strip edge for alpha=2/3, eps=1/4.
    assert sharpen_strict(
        LinearInequality((F(2, 3), -1), F(-1, 4), strict=True)
    ) == LinearInequality((8, -12), -4)


def test_sharpen_rejects_closed_rows():
    with pytest.raises(ValueError):
        sharpen_strict(LinearInequality((1,), 0))


@settings(max_examples=25, deadline=None)
@given(st.data())
def test_sharpen_preserves_integer_points(data):
    dim = data.draw(st.integers(1, 3))
    coeffs = tuple(
        F(data.draw(st.integers(-12, 12)), data.draw(st.integers(1, 12)))
        for _ in range(dim)
    )
    if not any(coeffs):
        coeffs = coeffs[:-1] + (F(1),)
    rhs = F(data.draw(st.integers(-24, 24)), data.draw(st.integers(1, 12)))
    strict = LinearInequality(coeffs, rhs, strict=True)
    closed = sharpen_strict(strict)
    assert not closed.strict
    for point in itertools.product(range(-20, 21), repeat=dim):
        assert strict.holds(point) == closed.holds(point)


# --- hull membership and extremeness ----------------------------------------


def test_point_in_hull_basic():
    tri = [(0, 0), (2, 0), (0, 2)]
    assert point_in_hull((F(1, 2), F(1, 2)), tri)
    assert point_in_hull((0, 2), tri)
    assert not point_in_hull((2, 2), tri)
    assert not point_in_hull((0, 0), [])


def test_extreme_points_filters_midpoints():
    assert extreme_points([(0, 0), (2, 0), (1, 0), (0, 2)]) == (
        (F(0), F(0)), (F(0), F(2)), (F(2), F(0)),
    )


def test_round_trip_random_small():
    rng = random.Random(11)
    for _ in range(40):
        dim = rng.randint(1, 4)
        pts = [
            tuple(F(rng.randint(-10, 10), rng.randint(1, 4)) for _ in range(dim))
            for _ in range(rng.randint(1, 10))
        ]
        v = VPolytope(dim, pts)
        assert vertices(hull_facets(v)).vertices == extreme_points(pts)


def test_integer_points_consistency_with_box_filter():
    # integer_points must agree with filtering the bounding box by rows.
    h = hull_facets(VPolytope(2, [(0, 0), (3, 1), (1, 3)]))
    box = bounding_box(h)
    direct = [p for p in box.points() if h.contains(p)]
    assert integer_points(h) == direct


# --- helpers -----------------------------------------------------------------


def test_substitute_slices():
    h = box_polytope((0, 3), (1, 2))
    slice_at_2 = substitute(h, 0, 2)
    assert integer_points(slice_at_2) == [(1,), (2,)]


def test_fix_rows_pin_coordinate():
    h = HPolytope(2, bound_rows(2, 0, lo=0, hi=2) + fix_rows(2, 1, 1))
    assert integer_points(h) == [(0, 1), (1, 1), (2, 1)]


def test_vpolytope_canonical_keeps_extremes_only():
    v = VPolytope(2, [(0, 0), (2, 0), (1, 0), (0, 2), (1, 1)])
    assert v.canonical().vertices == ((F(0), F(0)), (F(0), F(2)), (F(2), F(0)))


def test_bounding_box_of_staircase_box():
    from quantip.fibonacci import build_gadget

    g = build_gadget(3)
    h = box_polytope((g.box.lo[0], g.box.hi[0]), (g.box.lo[1], g.box.hi[1]))
    assert bounding_box(h) == Box((1, 0), (5, 3))


def test_exactness_types():
    h = hull_facets(VPolytope(1, [(F(1, 3),), (F(5, 2),)]))
    for row in h.rows:
        assert all(isinstance(c, int) for c in row.coeffs)
        assert isinstance(row.rhs, int)
    for v in vertices(h).vertices:
        assert all(isinstance(c, F) for c in v)

import random

import pytest

from quantip.compress import (
    binary_tags,
    compress_union,
    lifted_union_vertices,
    pigeonhole_witness,
    tag_width,
)
from quantip.geometry import (
    GeometryError,
    HPolytope,
    VPolytope,
    bound_rows,
    hull_facets,
    integer_points,
    vertices,
)


def interval(lo, hi):
    return HPolytope(1, bound_rows(1, 0, lo=lo, hi=hi))


def box2(xlo, xhi, ylo, yhi):
    return HPolytope(2, bound_rows(2, 0, lo=xlo, hi=xhi) + bound_rows(2, 1, lo=ylo, hi=yhi))


def test_tag_width_values():
    assert tag_width(1) == 0
    assert tag_width(2) == 1
    assert tag_width(3) == 2
    assert tag_width(4) == 2
    assert tag_width(5) == 3


def test_binary_tags_low_bit_first():
    assert binary_tags(3) == [(0, 0), (1, 0), (0, 1)]


def test_two_intervals_example():
    folded, tags = compress_union([interval(0, 1), interval(3, 4)])
    assert tags == [(0,), (1,)]
    assert integer_points(folded) == [(0, 0), (1, 0), (3, 1), (4, 1)]
    projected = {p[0] for p in integer_points(folded)}
    assert projected == {0, 1, 3, 4}


def test_single_part_is_identity():
    part = interval(2, 5)
    folded, tags = compress_union([part])
    assert folded is part
    assert tags == [()]


def test_dimension_cap_and_empty_list():
    parts = [HPolytope(8, [r for c in range(8) for r in bound_rows(8, c, lo=0, hi=1)])] * 2
    with pytest.raises(GeometryError):
        compress_union(parts)
    with pytest.raises(ValueError):
        compress_union([])


def test_unbounded_part_rejected():
    with pytest.raises(GeometryError):
        compress_union([interval(0, 1), HPolytope(1, bound_rows(1, 0, lo=0))])


def random_part(rng, n):
    if rng.random() < 0.5:
        rows = []
        for c in range(n):
            lo = rng.randint(-5, 4)
            rows += bound_rows(n, c, lo=lo, hi=rng.randint(lo, 5))
        return HPolytope(n, rows)
    while True:
        pts = [
            tuple(rng.randint(-5, 5) for _ in range(n))
            for _ in range(n + 1)
        ]
        v = VPolytope(n, pts)
        if len(v.vertices) >= 2:
            return hull_facets(v)


def test_projection_and_slice_identity_sweep():
    rng = random.Random(99)
    for _ in range(40):
        n = rng.randint(1, 3)
        r = rng.randint(1, 5)
        parts = [random_part(rng, n) for _ in range(r)]
        folded, tags = compress_union(parts)
        union_points = set()
        for part in parts:
            union_points.update(integer_points(part))
        folded_points = integer_points(folded) if isinstance(folded, HPolytope) else []
        assert {p[:n] for p in folded_points} == union_points
        # Slice identity: at tag t_j the fold holds exactly part j's points.
        width = tag_width(r)
        if width:
            for part, tag in zip(parts, tags):
                sliced = {p[:n] for p in folded_points if p[n:] == tag}
                assert sliced == set(integer_points(part))


def test_lifted_union_matches_hull_vertices():
    parts = [interval(0, 1), interval(3, 4), interval(7, 9)]
    lifted, tags = lifted_union_vertices(parts)
    folded, tags2 = compress_union(parts)
    assert tags == tags2
    assert set(vertices(folded).vertices) == set(lifted.vertices)


def test_pigeonhole_examples():
    points = [(0, 0), (2, 0), (4, 2)]
    i, j, midpoint = pigeonhole_witness(points, [(0,), (1,), (2,)])
    assert (i, j) == (0, 2)
    assert midpoint == (2, 1, 1)
    assert midpoint[:2] not in set(points)
    with pytest.raises(ValueError):
        pigeonhole_witness([(0, 0), (2, 0)], [(0,), (1,)])  # width not below 1
    with pytest.raises(ValueError):
        pigeonhole_witness([(0, 0), (2, 1), (4, 4)], [(0,), (1,), (2,)])  # odd coord
    with pytest.raises(ValueError):
        pigeonhole_witness([(0, 0), (2, 2), (4, 4)], [(0,), (1,), (2,)])  # collinear


def test_pigeonhole_always_finds_collision():
    rng = random.Random(5)
    for r in (5, 6, 7, 8):
        for _ in range(25):
            xs = sorted(rng.sample(range(-8, 9), r))
            points = [(2 * x, 2 * x * x) for x in xs]
            width = tag_width(r) - 1
            tags = [tuple(rng.randint(-4, 4) for _ in range(width)) for _ in range(r)]
            i, j, midpoint = pigeonhole_witness(points, tags)
            assert i != j
            assert all((a - b) % 2 == 0 for a, b in zip(tags[i], tags[j]))
            assert midpoint[:2] not in set(points)

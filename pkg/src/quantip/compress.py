"""Folding a union of polytopes into one polytope in a few extra dimensions.

A union of r bounded polytopes in R^n becomes a single polytope in
R^(n+l), l = ceil(log2 r): lift each part onto a distinct 0/1 vertex of
the l-cube and take the convex hull.  Because the chosen tags are extreme
points of the cube, the integer points of the hull live exactly on the
lifted copies, so projecting them back onto the first n coordinates
recovers precisely the union's integer points.

The companion lower bound: fewer than ceil(log2 r) extra coordinates can
never realize r convex-position points (with even coordinates) as a
projection of integer points, because two lifts would share a parity
class and their integer midpoint would project into the forbidden
interior.  ``pigeonhole_witness`` exhibits that collision.
"""

from __future__ import annotations

from .geometry import (
    MAX_DIM,
    GeometryError,
    VPolytope,
    extreme_points,
    hull_facets,
    vertices,
)


def tag_width(r: int) -> int:
    """ceil(log2 r), the number of extra 0/1 coordinates for r parts."""
    if r < 1:
        raise ValueError("need at least one part")
    return (r - 1).bit_length()


def binary_tags(r: int):
    """Distinct cube vertices for r parts: j encoded in binary, low bit first."""
    width = tag_width(r)
    return [tuple((j >> b) & 1 for b in range(width)) for j in range(r)]


def lifted_union_vertices(parts):
    """Vertex list of the folded union, with its tags (V-form of the fold).

    Works in any dimension; used directly when the folded hull would
    exceed the facet-enumeration cap.
    """
    if not parts:
        raise ValueError("need at least one part")
    n = parts[0].dim
    if any(p.dim != n for p in parts):
        raise ValueError("parts must share one ambient dimension")
    tags = binary_tags(len(parts))
    lifted = []
    for part, tag in zip(parts, tags):
        for v in vertices(part).vertices:
            lifted.append(v + tag)
    if not lifted:
        raise GeometryError("every part is empty")
    return VPolytope(n + tag_width(len(parts)), lifted), tags


def compress_union(parts):
    """Fold bounded polytopes into one inequality system plus its tag list.

    A point x lies in the union of the parts' integer points exactly when
    some integer tag t makes (x, t) an integer point of the returned
    polytope.  One part is returned unchanged with an empty tag.
    """
    if not parts:
        raise ValueError("need at least one part")
    if len(parts) == 1:
        return parts[0], [()]
    n = parts[0].dim
    width = tag_width(len(parts))
    if n + width > MAX_DIM:
        raise GeometryError(
            f"folded dimension {n + width} exceeds cap {MAX_DIM}"
        )
    lifted, tags = lifted_union_vertices(parts)
    return hull_facets(lifted), tags


def pigeonhole_witness(points, tags):
    """Indices with parity-equal tags and the integer midpoint of their lifts.

    Preconditions (checked): the planar points are in convex position with
    all-even coordinates, the tags all have the same width, and that width
    is strictly below ceil(log2 r).  Under those conditions two tags must
    agree mod 2 componentwise, the lifted midpoint is integral, and its
    planar projection falls strictly inside the hull, off the point set.
    """
    points = [tuple(int(c) for c in p) for p in points]
    tags = [tuple(int(c) for c in t) for t in tags]
    r = len(points)
    if len(tags) != r or r < 1:
        raise ValueError("points and tags must pair up")
    if any(len(p) != 2 for p in points):
        raise ValueError("points must be planar")
    widths = {len(t) for t in tags}
    if len(widths) != 1:
        raise ValueError("tags must share one width")
    width = widths.pop()
    if width >= tag_width(r):
        raise ValueError(
            f"tag width {width} is not below ceil(log2 {r}) = {tag_width(r)}"
        )
    if any(c % 2 for p in points for c in p):
        raise ValueError("point coordinates must all be even")
    if len(set(points)) != r or len(extreme_points(points)) != r:
        raise ValueError("points must be distinct and in convex position")

    seen = {}
    for j, tag in enumerate(tags):
        parity = tuple(c % 2 for c in tag)
        if parity in seen:
            i = seen[parity]
            lift_i = points[i] + tags[i]
            lift_j = points[j] + tags[j]
            midpoint = tuple((a + b) // 2 for a, b in zip(lift_i, lift_j))
            if midpoint[:2] in set(points):
                raise GeometryError("midpoint landed on the point set")
            return i, j, midpoint
        seen[parity] = j
    raise AssertionError("pigeonhole collision is guaranteed for 2^width < r")

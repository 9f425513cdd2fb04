"""Exact rational polyhedral computation in small fixed dimension.

Everything here is exact: coordinates are arbitrary-precision rationals
(``fractions.Fraction``), inequality systems carry integer coefficients,
and no operation ever rounds.  Floating point is never used.

The two workhorse conversions, facet enumeration for a vertex set and
vertex enumeration for an inequality system, are both driven by a single
exact double-description pass over a pointed homogeneous cone.  Facet
enumeration reduces to vertex enumeration of the polar polytope inside
the affine hull of the input points, so lower-dimensional hulls come out
with an explicit pair of opposite inequalities for each deficient
direction.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

Rational = Fraction

#: Hard cap on the ambient dimension of any V<->H conversion.
MAX_DIM = 8

#: Default ceiling on candidate lattice points per enumeration call.
ENUMERATION_BUDGET = 10**7


class GeometryError(Exception):
    """Base class for all polyhedral computation failures."""


class UnboundedError(GeometryError):
    """The inequality system describes an unbounded polyhedron."""


class EmptyPolytopeError(GeometryError):
    """An operation that needs a nonempty polytope got an empty one."""


class EnumerationBudgetError(GeometryError):
    """Lattice-point enumeration would exceed the configured budget."""

    def __init__(self, size, budget):
        super().__init__(f"enumeration box has {size} candidates, budget is {budget}")
        self.size = size
        self.budget = budget


class _NonPointedError(GeometryError):
    """Internal: the homogeneous cone has a nontrivial lineality space."""


def _as_fraction_tuple(values):
    return tuple(Fraction(v) for v in values)


def _dot(a, b):
    total = 0
    for x, y in zip(a, b):
        total += x * y
    return total


def _primitive(vec):
    """Divide an integer vector by the gcd of its entries (gcd kept positive)."""
    g = 0
    for v in vec:
        g = math.gcd(g, abs(v))
    if g <= 1:
        return tuple(vec)
    return tuple(v // g for v in vec)


def _sign_normalized(vec):
    """Flip a vector so its first nonzero entry is positive."""
    for v in vec:
        if v > 0:
            return tuple(vec)
        if v < 0:
            return tuple(-x for x in vec)
    return tuple(vec)


def _clear_denominators(values):
    """Scale rationals by the lcm of their denominators; returns ints."""
    fracs = [Fraction(v) for v in values]
    scale = math.lcm(*(f.denominator for f in fracs)) if fracs else 1
    return tuple(int(f * scale) for f in fracs), scale


@dataclass(frozen=True)
class LinearInequality:
    """One row ``coeffs . x <= rhs`` (or ``<`` when strict).

    Closed rows must be integral; strict rows may carry rationals and exist
    only transiently, until :func:`sharpen_strict` turns them into closed
    integral rows with the same integer solutions.
    """

    coeffs: tuple
    rhs: object
    strict: bool = False

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if not self.strict:
            if not all(isinstance(c, int) for c in self.coeffs) or not isinstance(self.rhs, int):
                raise ValueError("closed inequalities must have integer coefficients")

    @property
    def dim(self):
        return len(self.coeffs)

    def evaluate(self, point):
        return _dot(self.coeffs, point)

    def holds(self, point) -> bool:
        value = _dot(self.coeffs, point)
        return value < self.rhs if self.strict else value <= self.rhs

    def canonical(self) -> "LinearInequality":
        """Reduce by the joint gcd of coefficients and right-hand side."""
        if self.strict:
            raise ValueError("canonical form is defined for closed rows only")
        g = 0
        for c in self.coeffs:
            g = math.gcd(g, abs(c))
        g = math.gcd(g, abs(self.rhs))
        if g <= 1:
            return self
        return LinearInequality(tuple(c // g for c in self.coeffs), self.rhs // g)

    def integer_complement(self) -> "LinearInequality":
        """The row satisfied by exactly the integer points violating this one."""
        if self.strict:
            raise ValueError("complement is defined for closed rows only")
        return LinearInequality(tuple(-c for c in self.coeffs), -self.rhs - 1)


def integer_row(coeffs, rhs, strict=False) -> LinearInequality:
    """Clear denominators so the row has integer entries (solutions unchanged)."""
    cleared, _ = _clear_denominators(list(coeffs) + [rhs])
    return LinearInequality(cleared[:-1], cleared[-1], strict=strict)


def sharpen_strict(ineq: LinearInequality) -> LinearInequality:
    """Turn ``a . x < b`` into a closed integral row with the same integer points.

    Multiplies through by the least common denominator, then replaces the
    resulting ``a . x < b`` over the integers with ``a . x <= b - 1``.
    """
    if not ineq.strict:
        raise ValueError("sharpen_strict expects a strict inequality")
    cleared = integer_row(ineq.coeffs, ineq.rhs, strict=True)
    return LinearInequality(cleared.coeffs, cleared.rhs - 1, strict=False)


@dataclass(frozen=True)
class HPolytope:
    """A polyhedron as a closed integral inequality system ``A x <= b``."""

    dim: int
    rows: tuple

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        if self.dim < 1:
            raise ValueError("dimension must be positive")
        for row in self.rows:
            if not isinstance(row, LinearInequality) or row.strict:
                raise ValueError("HPolytope rows must be closed LinearInequality values")
            if row.dim != self.dim:
                raise ValueError("row length does not match ambient dimension")

    def contains(self, point) -> bool:
        return all(row.holds(point) for row in self.rows)

    def canonical(self) -> "HPolytope":
        rows = sorted({(r.coeffs, r.rhs) for r in (row.canonical() for row in self.rows)})
        return HPolytope(self.dim, tuple(LinearInequality(c, b) for c, b in rows))


@dataclass(frozen=True)
class VPolytope:
    """A polytope as a deduplicated, lexicographically sorted vertex list."""

    dim: int
    vertices: tuple

    def __post_init__(self):
        pts = sorted({_as_fraction_tuple(v) for v in self.vertices})
        for p in pts:
            if len(p) != self.dim:
                raise ValueError("vertex length does not match ambient dimension")
        object.__setattr__(self, "vertices", tuple(pts))

    def canonical(self) -> "VPolytope":
        """Keep only the extreme points of the convex hull."""
        return VPolytope(self.dim, extreme_points(self.vertices))


@dataclass(frozen=True)
class Box:
    """A closed integer box, one ``[lo, hi]`` interval per coordinate."""

    lo: tuple
    hi: tuple

    def __post_init__(self):
        object.__setattr__(self, "lo", tuple(int(v) for v in self.lo))
        object.__setattr__(self, "hi", tuple(int(v) for v in self.hi))
        if len(self.lo) != len(self.hi):
            raise ValueError("lo and hi must have equal length")
        if any(a > b for a, b in zip(self.lo, self.hi)):
            raise ValueError("box requires lo <= hi componentwise")

    @property
    def dim(self):
        return len(self.lo)

    def size(self) -> int:
        n = 1
        for a, b in zip(self.lo, self.hi):
            n *= b - a + 1
        return n

    def contains(self, point) -> bool:
        return all(a <= x <= b for a, x, b in zip(self.lo, point, self.hi))

    def points(self):
        return itertools.product(*(range(a, b + 1) for a, b in zip(self.lo, self.hi)))


# ---------------------------------------------------------------------------
# exact linear algebra helpers


def _independent_rows(rows, dim):
    """Greedy selection of linearly independent rows; returns their indices."""
    reduced = []  # (pivot column, eliminated row as Fractions)
    chosen = []
    for idx, row in enumerate(rows):
        vec = [Fraction(v) for v in row]
        for pivot_col, ref in reduced:
            if vec[pivot_col]:
                factor = vec[pivot_col]
                vec = [a - factor * b for a, b in zip(vec, ref)]
        pivot_col = next((j for j, v in enumerate(vec) if v), None)
        if pivot_col is None:
            continue
        pivot = vec[pivot_col]
        reduced.append((pivot_col, [v / pivot for v in vec]))
        chosen.append(idx)
        if len(chosen) == dim:
            break
    return chosen


def _invert(matrix):
    """Exact inverse of a square rational matrix (Gauss-Jordan)."""
    n = len(matrix)
    work = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
            for i, row in enumerate(matrix)]
    for col in range(n):
        pivot_row = next((i for i in range(col, n) if work[i][col]), None)
        if pivot_row is None:
            raise GeometryError("matrix is singular")
        work[col], work[pivot_row] = work[pivot_row], work[col]
        pivot = work[col][col]
        work[col] = [v / pivot for v in work[col]]
        for i in range(n):
            if i != col and work[i][col]:
                factor = work[i][col]
                work[i] = [a - factor * b for a, b in zip(work[i], work[col])]
    return [row[n:] for row in work]


def _rref(vectors, dim):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    rows = [[Fraction(v) for v in vec] for vec in vectors]
    pivots = []
    rank = 0
    for col in range(dim):
        pivot_row = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if pivot_row is None:
            continue
        rows[rank], rows[pivot_row] = rows[pivot_row], rows[rank]
        pivot = rows[rank][col]
        rows[rank] = [v / pivot for v in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                factor = rows[i][col]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(rows):
            break
    return rows[:rank], pivots


def _null_space(vectors, dim):
    """Primitive integer basis of {a : a . v = 0 for every v}, deterministic."""
    rows, pivots = _rref(vectors, dim)
    free_cols = [c for c in range(dim) if c not in pivots]
    basis = []
    for free in free_cols:
        vec = [Fraction(0)] * dim
        vec[free] = Fraction(1)
        for row, pivot_col in zip(rows, pivots):
            vec[pivot_col] = -row[free]
        ints, _ = _clear_denominators(vec)
        basis.append(_sign_normalized(_primitive(ints)))
    return basis


# ---------------------------------------------------------------------------
# double description over a pointed cone


def _extreme_rays(rows, dim):
    """Extreme rays of the pointed cone {y : r . y <= 0 for r in rows}.

    Incremental double description: start from a simplicial subcone spanned
    by ``dim`` independent rows, then clip with the remaining rows one at a
    time, combining adjacent rays across the new hyperplane.  Adjacency is
    the combinatorial test on sets of tight constraints, valid because the
    cone stays pointed throughout.
    """
    rows = [tuple(r) for r in rows]
    basis_idx = _independent_rows(rows, dim)
    if len(basis_idx) < dim:
        raise _NonPointedError("cone has a nontrivial lineality space")

    inverse = _invert([rows[i] for i in basis_idx])
    rays = []
    masks = []
    for j in range(dim):
        column = [-inverse[i][j] for i in range(dim)]
        ints, _ = _clear_denominators(column)
        rays.append(_primitive(ints))
        mask = 0
        for pos, row_idx in enumerate(basis_idx):
            if pos != j:
                mask |= 1 << row_idx
        masks.append(mask)

    basis_set = set(basis_idx)
    for idx, row in enumerate(rows):
        if idx in basis_set or not any(row):
            continue
        values = [_dot(row, ray) for ray in rays]
        positive = [i for i, v in enumerate(values) if v > 0]
        if not positive:
            bit = 1 << idx
            for i, v in enumerate(values):
                if v == 0:
                    masks[i] |= bit
            continue
        negative = [i for i, v in enumerate(values) if v < 0]
        zero = [i for i, v in enumerate(values) if v == 0]

        new_rays = []
        new_masks = []
        bit = 1 << idx
        count = len(rays)
        for p in positive:
            mask_p = masks[p]
            for q in negative:
                common = mask_p & masks[q]
                if common.bit_count() < dim - 2:
                    continue
                adjacent = True
                for s in range(count):
                    if s != p and s != q and masks[s] & common == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                vp, vq = values[p], values[q]
                combo = tuple(vp * b - vq * a for a, b in zip(rays[p], rays[q]))
                new_rays.append(_primitive(combo))
                new_masks.append(common | bit)

        kept_rays = [rays[i] for i in zero] + [rays[i] for i in negative]
        kept_masks = [masks[i] | bit for i in zero] + [masks[i] for i in negative]
        rays = kept_rays + new_rays
        masks = kept_masks + new_masks

    return rays


def _fm_feasible(rows, dim) -> bool:
    """Exact Fourier-Motzkin feasibility over the rationals."""
    system = [(list(r.coeffs), r.rhs) for r in rows]
    for col in range(dim):
        kept, positive, negative = [], [], []
        for coeffs, rhs in system:
            if coeffs[col] > 0:
                positive.append((coeffs, rhs))
            elif coeffs[col] < 0:
                negative.append((coeffs, rhs))
            else:
                kept.append((coeffs, rhs))
        for cp, bp in positive:
            for cn, bn in negative:
                fp, fn = -cn[col], cp[col]
                combo = [fp * a + fn * b for a, b in zip(cp, cn)]
                rhs = fp * bp + fn * bn
                g = 0
                for v in combo:
                    g = math.gcd(g, abs(v))
                g = math.gcd(g, abs(rhs))
                if g > 1:
                    combo = [v // g for v in combo]
                    rhs = rhs // g
                kept.append((combo, rhs))
        system = [(list(c), b) for c, b in {(tuple(c), b) for c, b in kept}]
        if len(system) > 20000:
            raise GeometryError("Fourier-Motzkin blow-up")
    return all(rhs >= 0 for _, rhs in system)


def _cone_vertices(hom_rows, dim):
    """Vertices (and boundedness flag) from the homogenized cone rays."""
    rays = _extreme_rays(hom_rows, dim + 1)
    verts = []
    recession = False
    for ray in rays:
        if ray[dim] > 0:
            verts.append(tuple(Fraction(c, ray[dim]) for c in ray[:dim]))
        elif any(ray[:dim]):
            recession = True
    return verts, recession


def vertices(polytope: HPolytope) -> VPolytope:
    """Exact vertex enumeration for a bounded inequality system.

    Raises :class:`UnboundedError` when the described polyhedron is
    unbounded; an infeasible system yields an empty vertex list.
    """
    if polytope.dim > MAX_DIM:
        raise GeometryError(f"dimension {polytope.dim} exceeds cap {MAX_DIM}")
    hom = [row.coeffs + (-row.rhs,) for row in polytope.rows]
    hom.append((0,) * polytope.dim + (-1,))
    try:
        verts, recession = _cone_vertices(hom, polytope.dim)
    except _NonPointedError:
        if _fm_feasible(polytope.rows, polytope.dim):
            raise UnboundedError("system has a two-sided recession direction") from None
        return VPolytope(polytope.dim, ())
    if not verts:
        return VPolytope(polytope.dim, ())
    if recession:
        raise UnboundedError("system has a recession direction")
    return VPolytope(polytope.dim, verts)


def hull_facets(vpoly: VPolytope) -> HPolytope:
    """Facet system of the convex hull of a vertex list.

    The rational solution set of the returned system equals the hull
    exactly.  Lower-dimensional hulls get a pair of opposite inequalities
    per direction missing from the affine hull; rows are gcd-reduced and
    sorted lexicographically.
    """
    if vpoly.dim > MAX_DIM:
        raise GeometryError(f"dimension {vpoly.dim} exceeds cap {MAX_DIM}")
    points = vpoly.vertices
    if not points:
        raise EmptyPolytopeError("hull of an empty vertex list")
    origin = points[0]
    diffs = [tuple(a - b for a, b in zip(p, origin)) for p in points[1:]]

    basis_idx = _independent_rows(diffs, vpoly.dim)
    basis = [diffs[i] for i in basis_idx]
    k = len(basis)

    rows_out = []
    for normal in _null_space(basis, vpoly.dim):
        rhs = _dot(normal, origin)
        row = integer_row(normal, rhs).canonical()
        rows_out.append(row)
        rows_out.append(LinearInequality(tuple(-c for c in row.coeffs), -row.rhs))

    if k == 0:
        return HPolytope(vpoly.dim, rows_out).canonical()

    # Invertible coordinate selection: pivot columns of the basis matrix.
    _, pivot_coords = _rref(basis, vpoly.dim)
    square = [[basis[j][c] for j in range(k)] for c in pivot_coords]
    to_local = _invert(square)

    def local(point):
        delta = [point[c] - origin[c] for c in pivot_coords]
        return tuple(_dot(to_local[i], delta) for i in range(k))

    local_points = [local(p) for p in points]
    centroid = tuple(sum(col) / len(local_points) for col in zip(*local_points))

    polar_rows = []
    for lp in local_points:
        direction = tuple(a - b for a, b in zip(lp, centroid))
        if not any(direction):
            continue
        ints, scale = _clear_denominators(direction)
        polar_rows.append(ints + (-scale,))
    polar_rows.append((0,) * k + (-1,))

    polar_vertices, recession = _cone_vertices(polar_rows, k)
    if recession:
        raise GeometryError("polar polytope unexpectedly unbounded")

    for y in polar_vertices:
        functional = [_dot(y, [to_local[i][j] for i in range(k)]) for j in range(k)]
        ambient = [Fraction(0)] * vpoly.dim
        for j, c in enumerate(pivot_coords):
            ambient[c] = functional[j]
        rhs = 1 + _dot(y, centroid) + sum(
            functional[j] * origin[c] for j, c in enumerate(pivot_coords)
        )
        rows_out.append(integer_row(ambient, rhs).canonical())

    return HPolytope(vpoly.dim, rows_out).canonical()


def bounding_box(polytope: HPolytope) -> Box:
    """Smallest integer box containing the system's integer points.

    Computed from the vertex coordinates by ceiling the minima and flooring
    the maxima; raises when the system is unbounded, empty, or too thin to
    contain an integer point in some direction.
    """
    verts = vertices(polytope).vertices
    if not verts:
        raise EmptyPolytopeError("empty system has no bounding box")
    lo, hi = [], []
    for coords in zip(*verts):
        lo.append(math.ceil(min(coords)))
        hi.append(math.floor(max(coords)))
    if any(a > b for a, b in zip(lo, hi)):
        raise EmptyPolytopeError("system contains no integer points")
    return Box(tuple(lo), tuple(hi))


def integer_points(polytope: HPolytope, budget: int = ENUMERATION_BUDGET):
    """All integer points of a bounded system, in lexicographic order."""
    try:
        box = bounding_box(polytope)
    except EmptyPolytopeError:
        return []
    size = box.size()
    if size > budget:
        raise EnumerationBudgetError(size, budget)
    rows = [(row.coeffs, row.rhs) for row in polytope.rows]
    result = []
    for point in box.points():
        for coeffs, rhs in rows:
            if _dot(coeffs, point) > rhs:
                break
        else:
            result.append(point)
    return result


# ---------------------------------------------------------------------------
# exact convex-combination feasibility (phase-1 simplex with Bland's rule)


def point_in_hull(point, hull_vertices) -> bool:
    """Exact test whether ``point`` lies in the convex hull of the vertices."""
    hull_vertices = list(hull_vertices)
    if not hull_vertices:
        return False
    dim = len(point)
    n = len(hull_vertices)
    m = dim + 1

    rows = [[Fraction(v[i]) for v in hull_vertices] for i in range(dim)]
    rows.append([Fraction(1)] * n)
    rhs = [Fraction(point[i]) for i in range(dim)] + [Fraction(1)]
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]

    tableau = [
        rows[i] + [Fraction(int(i == j)) for j in range(m)] + [rhs[i]]
        for i in range(m)
    ]
    basis = [n + i for i in range(m)]
    ncols = n + m

    while True:
        in_basis = set(basis)
        costs = [Fraction(int(basis[i] >= n)) for i in range(m)]
        entering = None
        for j in range(ncols):
            if j in in_basis:
                continue
            reduced = (1 if j >= n else 0) - sum(
                costs[i] * tableau[i][j] for i in range(m) if costs[i]
            )
            if reduced < 0:
                entering = j
                break
        if entering is None:
            break
        leaving = None
        best = None
        for i in range(m):
            coef = tableau[i][entering]
            if coef > 0:
                ratio = tableau[i][-1] / coef
                if best is None or ratio < best or (
                    ratio == best and basis[i] < basis[leaving]
                ):
                    best = ratio
                    leaving = i
        if leaving is None:
            break
        pivot = tableau[leaving][entering]
        tableau[leaving] = [v / pivot for v in tableau[leaving]]
        for i in range(m):
            if i != leaving and tableau[i][entering]:
                factor = tableau[i][entering]
                tableau[i] = [a - factor * b for a, b in zip(tableau[i], tableau[leaving])]
        basis[leaving] = entering

    infeasibility = sum(tableau[i][-1] for i in range(m) if basis[i] >= n)
    return infeasibility == 0


def extreme_points(points):
    """The extreme-point subset of a point list (exact, order-normalized)."""
    pts = sorted({_as_fraction_tuple(p) for p in points})
    out = []
    for i, p in enumerate(pts):
        others = pts[:i] + pts[i + 1:]
        if not point_in_hull(p, others):
            out.append(p)
    return tuple(out)


# ---------------------------------------------------------------------------
# row builders shared by the instance compilers


def bound_rows(dim, coord, lo=None, hi=None):
    """Rows pinning one coordinate to ``[lo, hi]`` (either side optional)."""
    rows = []
    if lo is not None:
        coeffs = [0] * dim
        coeffs[coord] = -1
        rows.append(integer_row(coeffs, -Fraction(lo)))
    if hi is not None:
        coeffs = [0] * dim
        coeffs[coord] = 1
        rows.append(integer_row(coeffs, Fraction(hi)))
    return rows


def fix_rows(dim, coord, value):
    """An opposite pair of rows forcing one coordinate to a fixed value."""
    return bound_rows(dim, coord, lo=value, hi=value)


def embed_rows(rows, dim, offset):
    """Re-home rows of a smaller system at coordinate ``offset`` of a larger one."""
    out = []
    for row in rows:
        coeffs = [0] * dim
        for j, c in enumerate(row.coeffs):
            coeffs[offset + j] = c
        out.append(LinearInequality(tuple(coeffs), row.rhs))
    return out


def substitute(polytope: HPolytope, coord, value) -> HPolytope:
    """The slice of a system at ``x[coord] = value``, one dimension lower."""
    value = int(value)
    rows = []
    for row in polytope.rows:
        coeffs = row.coeffs[:coord] + row.coeffs[coord + 1:]
        rows.append(LinearInequality(coeffs, row.rhs - row.coeffs[coord] * value))
    return HPolytope(polytope.dim - 1, rows)

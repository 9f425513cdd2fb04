"""Instance compilers: approximation and quantified-SAT problems as sentences.

Each compiler takes a small combinatorial or number-theoretic instance and
emits, exactly over the integers, the equivalent polyhedral object:

* ``gsa_to_three_quantifiers``: an exists/forall/exists sentence over one
  polytope in R^6 whose truth equals the approximation decision.
* ``q3sat_to_sentence``: a (k+2)-quantifier sentence over one polytope in
  R^(k+7) whose truth equals the quantified 3-CNF value.
* ``count_gsa_to_projection``: a nested pair of 3-polytopes whose
  set-difference projection count complements the approximation count.
* ``complement_to_simplices``: the difference of two nested 3-polytopes as
  closed simplices carrying exactly the difference's integer points.
* ``gsa_to_two_quantifiers``: an exists/forall sentence over a union of
  three 4-polytopes, again equivalent to the approximation decision.
* ``dbs_split``: the subsystem family whose joint solvability matches the
  full system's (the bounded-witness split in small variable dimension).

All constructions are pure and deterministic.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .compress import binary_tags, compress_union, tag_width
from .fibonacci import build_gadget
from .geometry import (
    MAX_DIM,
    Box,
    HPolytope,
    LinearInequality,
    VPolytope,
    bound_rows,
    embed_rows,
    fix_rows,
    hull_facets,
    integer_row,
    sharpen_strict,
    vertices,
)
from .gsa import GsaInstance


# ---------------------------------------------------------------------------
# sentence and instance containers


@dataclass(frozen=True)
class QuantBlock:
    """One quantifier block over an integer box (or an unbounded final exists)."""

    quantifier: str
    box: Box | None
    dim: int

    def __post_init__(self):
        if self.quantifier not in ("exists", "forall"):
            raise ValueError("quantifier must be 'exists' or 'forall'")
        if self.box is not None and self.box.dim != self.dim:
            raise ValueError("box dimension mismatch")
        if self.box is None and self.quantifier != "exists":
            raise ValueError("only an exists block may be unbounded")


@dataclass(frozen=True)
class QuantSentence:
    """Alternating quantifier blocks over one final inequality system.

    The constraint is held either as an inequality system or, above the
    facet-enumeration cap, as a vertex list; both carry exact semantics.
    """

    blocks: tuple
    constraint: object   # HPolytope | VPolytope

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))
        if not self.blocks:
            raise ValueError("a sentence needs at least one block")
        if sum(b.dim for b in self.blocks) != self.constraint.dim:
            raise ValueError("block dimensions must sum to the constraint dimension")
        for b in self.blocks[:-1]:
            if b.box is None:
                raise ValueError("only the innermost block may be unbounded")


@dataclass(frozen=True)
class Literal:
    """One 3-CNF literal: variable ``index`` of quantifier block ``block``."""

    block: int
    index: int
    negated: bool = False


@dataclass(frozen=True)
class Q3SatInstance:
    """k alternating blocks of ell Boolean variables under 3-CNF clauses."""

    k: int
    ell: int
    prefix: tuple
    clauses: tuple

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(
            self, "clauses", tuple(tuple(cl) for cl in self.clauses)
        )
        if self.k < 1 or self.ell < 1:
            raise ValueError("k and ell must be positive")
        if len(self.prefix) != self.k:
            raise ValueError("prefix length must equal k")
        if self.prefix[-1] != "exists":
            raise ValueError("the innermost quantifier must be exists")
        for a, b in zip(self.prefix, self.prefix[1:]):
            if a == b or a not in ("exists", "forall"):
                raise ValueError("prefix must strictly alternate")
        if not self.clauses:
            raise ValueError("at least one clause is required")
        for clause in self.clauses:
            if len(clause) != 3:
                raise ValueError("clauses must have exactly three literals")
            for lit in clause:
                if not 1 <= lit.block <= self.k or not 1 <= lit.index <= self.ell:
                    raise ValueError(f"literal {lit} out of range")


@dataclass(frozen=True)
class ProjectionInstance:
    """Nested 3-polytopes inner within outer, plus the count normalizer N."""

    inner: HPolytope
    outer: HPolytope
    N: int

    def __post_init__(self):
        if self.inner.dim != 3 or self.outer.dim != 3:
            raise ValueError("projection instances live in dimension 3")
        for v in vertices(self.inner).vertices:
            if not self.outer.contains(v):
                raise ValueError("inner polytope is not contained in the outer one")


@dataclass(frozen=True)
class TwoQuantifierForm:
    """exists x in x_box, forall z in z_box: (x, z) in one of three parts."""

    x_box: Box
    z_box: Box
    parts: tuple

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        if len(self.parts) != 3:
            raise ValueError("the disjunctive form has exactly three parts")
        if self.x_box.dim != 1 or self.z_box.dim != 3:
            raise ValueError("boxes must have dimensions 1 and 3")
        if any(p.dim != 4 for p in self.parts):
            raise ValueError("parts must live in dimension 4")


# ---------------------------------------------------------------------------
# shared construction helpers


def _band_vertices(inst: GsaInstance, i: int):
    """Corner points of the closed band strip for component i (4 of them)."""
    a = inst.alpha[i - 1]
    return [
        (Fraction(1), a - inst.eps),
        (Fraction(1), a + inst.eps),
        (Fraction(inst.N), a * inst.N - inst.eps),
        (Fraction(inst.N), a * inst.N + inst.eps),
    ]


def _lift_with_point(vertex, point, at):
    """Insert a planar point into a vertex tuple at position ``at``."""
    return vertex[:at] + (Fraction(point[0]), Fraction(point[1])) + vertex[at:]


def _chain_lift(parts_vertices, gadget, at):
    """Lifted vertex list of the staircase hull: copy j gets chain point j."""
    lifted = []
    for point, verts in zip(gadget.points, parts_vertices):
        for v in verts:
            lifted.append(_lift_with_point(v, point, at))
    return lifted


def _region_prism_rows(region: HPolytope, dim, x_dims, x_hi, y_at, zero_from):
    """Rows for box^x_dims x region x {0}: the sentence's non-chain cover."""
    rows = []
    for j in range(x_dims):
        rows += bound_rows(dim, j, lo=0, hi=x_hi)
    rows += embed_rows(region.rows, dim, y_at)
    for c in range(zero_from, dim):
        rows += fix_rows(dim, c, 0)
    return rows


# ---------------------------------------------------------------------------
# decision reduction: three alternating quantifiers


def gsa_to_three_quantifiers(inst: GsaInstance) -> QuantSentence:
    """Compile an approximation instance into an exists/forall/exists sentence.

    The sentence ranges x over [1, N], y over the staircase box, and z over
    three unbounded integers; its constraint is the fold (two tag
    coordinates) of the two staircase regions (with the witness coordinate
    pinned to zero) and the hull of all lifted band strips.  Truth of the
    sentence equals the decision answer.
    """
    d = inst.d
    if d < 2:
        raise ValueError("the staircase construction needs d >= 2")
    gadget = build_gadget(d)

    band_lift = _chain_lift(
        [_band_vertices(inst, i) for i in range(1, d + 1)], gadget, at=1
    )
    band_hull = hull_facets(VPolytope(4, band_lift))

    above = HPolytope(4, _region_prism_rows(
        gadget.region_above, 4, x_dims=1, x_hi=inst.N, y_at=1, zero_from=3,
    ))
    below = HPolytope(4, _region_prism_rows(
        gadget.region_below, 4, x_dims=1, x_hi=inst.N, y_at=1, zero_from=3,
    ))

    folded, _tags = compress_union([above, below, band_hull])
    blocks = (
        QuantBlock("exists", Box((1,), (inst.N,)), 1),
        QuantBlock("forall", gadget.box, 2),
        QuantBlock("exists", None, 3),
    )
    return QuantSentence(blocks, folded)


# ---------------------------------------------------------------------------
# quantified 3-CNF reduction


def _literal_cell(lit: Literal, k: int, ell: int) -> HPolytope:
    """The (x, w) polytope whose integer points witness one literal.

    The witness w pins the parity of floor(x_j / 2^(index-1)); both rows of
    the parity test are denominator-cleared, with the strict one sharpened.
    """
    dim = k + 1
    hi = 2**ell - 1
    rows = []
    for c in range(dim):
        rows += bound_rows(dim, c, lo=0, hi=hi)
    scale = Fraction(1, 2 ** (lit.index - 1))
    xj = lit.block - 1
    base = [Fraction(0)] * dim
    base[xj] = scale
    if lit.negated:
        # exists w: 2w > x_j*scale - 1 and 2w <= x_j*scale
        upper = list(base)
        upper[k] -= 2
        rows.append(sharpen_strict(LinearInequality(tuple(upper), Fraction(1), strict=True)))
        lower = [-v for v in base]
        lower[k] += 2
        rows.append(integer_row(lower, Fraction(0)))
    else:
        # exists w: 2w+1 > x_j*scale - 1 and 2w+1 <= x_j*scale
        upper = list(base)
        upper[k] -= 2
        rows.append(sharpen_strict(LinearInequality(tuple(upper), Fraction(2), strict=True)))
        lower = [-v for v in base]
        lower[k] += 2
        rows.append(integer_row(lower, Fraction(-1)))
    return HPolytope(dim, rows)


def q3sat_to_sentence(inst: Q3SatInstance) -> QuantSentence:
    """Compile quantified 3-CNF into a (k+2)-quantifier sentence.

    Block j ranges over [0, 2^ell - 1], encoding the j-th Boolean tuple in
    binary.  Each clause folds its three literal cells into one polytope,
    the clause polytopes are lifted onto the staircase (one chain point per
    clause), and the two staircase regions absorb the non-chain box points.
    The final fold lives in R^(k+7); above the facet cap (k >= 2) the
    constraint is kept in vertex form with identical semantics.
    """
    k, ell = inst.k, inst.ell
    hi = 2**ell - 1
    clauses = list(inst.clauses)
    if len(clauses) == 1:
        # The staircase needs two chain points; a repeated clause is inert.
        clauses = clauses * 2
    gadget = build_gadget(len(clauses))

    clause_vertex_lists = []
    for clause in clauses:
        cells = [_literal_cell(lit, k, ell) for lit in clause]
        folded_clause, _ = compress_union(cells)        # dim k+3
        clause_vertex_lists.append(vertices(folded_clause).vertices)

    chain_lift = _chain_lift(clause_vertex_lists, gadget, at=k)   # dim k+5
    piece_dim = k + 5
    above = HPolytope(piece_dim, _region_prism_rows(
        gadget.region_above, piece_dim, x_dims=k, x_hi=hi, y_at=k, zero_from=k + 2,
    ))
    below = HPolytope(piece_dim, _region_prism_rows(
        gadget.region_below, piece_dim, x_dims=k, x_hi=hi, y_at=k, zero_from=k + 2,
    ))

    final_dim = k + 7
    if final_dim <= MAX_DIM:
        chain_hull = hull_facets(VPolytope(piece_dim, chain_lift))
        constraint, _ = compress_union([above, below, chain_hull])
        constraint_vertices = vertices(constraint).vertices
    else:
        constraint, _ = lifted_union_from_vertex_lists(
            [vertices(above).vertices, vertices(below).vertices,
             VPolytope(piece_dim, chain_lift).vertices],
            piece_dim,
        )
        constraint_vertices = constraint.vertices

    z_lo, z_hi = [], []
    for c in range(k + 2, final_dim):
        column = [v[c] for v in constraint_vertices]
        z_lo.append(math.ceil(min(column)))
        z_hi.append(math.floor(max(column)))
    z_box = Box(tuple(z_lo), tuple(z_hi))

    blocks = [QuantBlock(q, Box((0,), (hi,)), 1) for q in inst.prefix]
    blocks.append(QuantBlock("forall", gadget.box, 2))
    blocks.append(QuantBlock("exists", z_box, 5))
    return QuantSentence(tuple(blocks), constraint)


def lifted_union_from_vertex_lists(vertex_lists, dim):
    """Vertex-form fold of pre-computed part vertex lists (any dimension)."""
    tags = binary_tags(len(vertex_lists))
    lifted = []
    for verts, tag in zip(vertex_lists, tags):
        for v in verts:
            lifted.append(tuple(v) + tag)
    return VPolytope(dim + tag_width(len(vertex_lists)), lifted), tags


# ---------------------------------------------------------------------------
# counting reduction: projection of a polytope difference


def count_gsa_to_projection(inst: GsaInstance) -> ProjectionInstance:
    """Compile the counting problem into nested 3-polytopes.

    Component i's complement strip is raised by a spacing m_i and placed in
    the plane y = i.  The inner polytope's top edge is the strip's exact
    lower boundary; the outer polytope's top edge is the strip's sharpened
    upper boundary.  With that pairing, for every integer x the slice of
    outer-minus-inner holds an integer w exactly when the open strip does,
    so N minus the difference's projection count equals the answer count.
    """
    d = inst.d
    spacing = _spacings(inst)

    inner_pts, outer_pts = [], []
    for i in range(1, d + 1):
        a = inst.alpha[i - 1]
        lcd = math.lcm(a.denominator, inst.eps.denominator)
        lower1 = a + inst.eps + spacing[i - 1]
        lowerN = a * inst.N + inst.eps + spacing[i - 1]
        upper1 = a + 1 - inst.eps - Fraction(1, lcd) + spacing[i - 1]
        upperN = a * inst.N + 1 - inst.eps - Fraction(1, lcd) + spacing[i - 1]
        anchor = [(Fraction(inst.N), Fraction(i), Fraction(0)),
                  (Fraction(1), Fraction(i), Fraction(0))]
        inner_pts += [(Fraction(1), Fraction(i), lower1),
                      (Fraction(inst.N), Fraction(i), lowerN)] + anchor
        outer_pts += [(Fraction(1), Fraction(i), upper1),
                      (Fraction(inst.N), Fraction(i), upperN)] + anchor

    inner = hull_facets(VPolytope(3, inner_pts))
    outer = hull_facets(VPolytope(3, outer_pts))
    return ProjectionInstance(inner=inner, outer=outer, N=inst.N)


def _ceil_height(inst: GsaInstance) -> int:
    """ceil(1 + N * max alpha), the integer height scale of the embedding."""
    return math.ceil(1 + inst.N * max(inst.alpha))


def _spacings(inst: GsaInstance):
    """Strictly concave, strictly increasing plane offsets m_1 < ... < m_d.

    m_i = 4*ceil(T)*i*(2d - i) has second difference -8*ceil(T), which
    keeps every plane's strip above the chords spanned by its neighbors.
    """
    d = inst.d
    ceil_t = _ceil_height(inst)
    return [4 * ceil_t * i * (2 * d - i) for i in range(1, d + 1)]


# ---------------------------------------------------------------------------
# triangulating a polytope difference


def complement_to_simplices(inner: HPolytope, outer: HPolytope):
    """Closed simplices carrying exactly the integer points of outer minus inner.

    The difference is split by the first violated inner row: for row f the
    cell is (outer) AND (integer complement of row f) AND (rows before f).
    Cells are disjoint, their union holds exactly the integer points of the
    half-open difference, and each cell is triangulated by pulling from its
    lexicographically least vertex.  Degenerate cells yield lower-dimensional
    simplices with fewer vertices.
    """
    if inner.dim != 3 or outer.dim != 3:
        raise ValueError("triangulation is implemented for dimension 3")
    for v in vertices(inner).vertices:
        if not outer.contains(v):
            raise ValueError("inner polytope is not contained in the outer one")

    inner_rows = inner.canonical().rows
    simplices = []
    for f, row in enumerate(inner_rows):
        cell_rows = list(outer.rows) + [row.integer_complement()] + list(inner_rows[:f])
        cell = vertices(HPolytope(3, cell_rows))
        if cell.vertices:
            simplices.extend(_triangulate(cell))
    return simplices


def _affine_dim(points):
    from .geometry import _independent_rows

    origin = points[0]
    diffs = [tuple(a - b for a, b in zip(p, origin)) for p in points[1:]]
    return len(_independent_rows(diffs, len(origin)))


def _order_convex_polygon(points):
    """Cyclic order of coplanar convex-position points, exactly."""
    from .geometry import _independent_rows

    origin = points[0]
    diffs = [tuple(a - b for a, b in zip(p, origin)) for p in points[1:]]
    basis_idx = _independent_rows(diffs, len(origin))
    u, w = diffs[basis_idx[0]], diffs[basis_idx[1]]
    a, b = _pivot_pair(u, w)
    det = u[a] * w[b] - u[b] * w[a]

    def planar(p):
        # Coordinates in the (u, w) frame via two independent components.
        delta = tuple(x - y for x, y in zip(p, origin))
        return (Fraction(delta[a] * w[b] - delta[b] * w[a], det),
                Fraction(u[a] * delta[b] - u[b] * delta[a], det))

    flat = sorted(planar(p) + (idx,) for idx, p in enumerate(points))

    def chain(seq):
        out = []
        for item in seq:
            while len(out) >= 2:
                (x1, y1, _), (x2, y2, _) = out[-2], out[-1]
                cross = (x2 - x1) * (item[1] - y1) - (y2 - y1) * (item[0] - x1)
                if cross <= 0:
                    out.pop()
                else:
                    break
            out.append(item)
        return out

    lower = chain(flat)
    upper = chain(list(reversed(flat)))
    ordered = lower[:-1] + upper[:-1]
    return [points[item[2]] for item in ordered]


def _pivot_pair(u, w):
    for a, b in itertools.combinations(range(len(u)), 2):
        if u[a] * w[b] - u[b] * w[a] != 0:
            return a, b
    raise ValueError("vectors do not span a plane")


def _triangulate(cell: VPolytope):
    """Pulling triangulation of one cell, valid down to degenerate cells."""
    pts = cell.vertices
    dim = cell.dim
    if len(pts) <= 2:
        return [VPolytope(dim, pts)]
    if _affine_dim(pts) == 2:
        ring = _order_convex_polygon(list(pts))
        return [
            VPolytope(dim, (ring[0], ring[i], ring[i + 1]))
            for i in range(1, len(ring) - 1)
        ]

    apex = pts[0]
    facets = hull_facets(cell)
    out = []
    for row in facets.rows:
        if row.evaluate(apex) == row.rhs:
            continue
        face = [p for p in pts if row.evaluate(p) == row.rhs]
        ring = _order_convex_polygon(face)
        for i in range(1, len(ring) - 1):
            out.append(VPolytope(dim, (apex, ring[0], ring[i], ring[i + 1])))
    return out


# ---------------------------------------------------------------------------
# decision reduction with two quantifiers and three parts


def gsa_to_two_quantifiers(inst: GsaInstance) -> TwoQuantifierForm:
    """Compile the decision problem into exists x, forall z over three parts.

    For each x, the integers of [-1, T] split into the strip below the band
    and the strip above its lower edge exactly when the band holds an
    integer; lifting both strip families onto the staircase and prisming
    the two staircase regions gives three 4-polytopes whose union absorbs
    every z exactly at the approximable x.
    """
    d = inst.d
    if d < 2:
        raise ValueError("the staircase construction needs d >= 2")
    gadget = build_gadget(d)
    height = 1 + inst.N * max(inst.alpha)     # exact rational T

    low_lists, high_lists = [], []
    for i in range(1, d + 1):
        a = inst.alpha[i - 1]
        low_lists.append([
            (Fraction(1), Fraction(-1)),
            (Fraction(inst.N), Fraction(-1)),
            (Fraction(1), a + inst.eps - 1),
            (Fraction(inst.N), a * inst.N + inst.eps - 1),
        ])
        high_lists.append([
            (Fraction(1), a - inst.eps),
            (Fraction(inst.N), a * inst.N - inst.eps),
            (Fraction(1), height),
            (Fraction(inst.N), height),
        ])

    low_lift = _chain_lift(low_lists, gadget, at=1)
    high_hull = hull_facets(VPolytope(4, _chain_lift(high_lists, gadget, at=1)))

    above_rows = bound_rows(4, 0, lo=1, hi=inst.N)
    above_rows += embed_rows(gadget.region_above.rows, 4, 1)
    above_rows += bound_rows(4, 3, lo=-1)
    above_rows.append(integer_row((0, 0, 0, 1), height))
    above_prism = HPolytope(4, above_rows)

    below_corner_pts = []
    for y in vertices(gadget.region_below).vertices:
        for x in (Fraction(1), Fraction(inst.N)):
            for w in (Fraction(-1), height):
                below_corner_pts.append((x, y[0], y[1], w))
    merged_below = hull_facets(VPolytope(4, below_corner_pts + low_lift))

    z_box = Box(
        gadget.box.lo + (-1,),
        gadget.box.hi + (math.floor(height),),
    )
    return TwoQuantifierForm(
        x_box=Box((1,), (inst.N,)),
        z_box=z_box,
        parts=(above_prism, merged_below, high_hull),
    )


# ---------------------------------------------------------------------------
# subsystem split in small variable dimension


def dbs_split(matrix, rhs, d2: int):
    """All square-count subsystems of ``matrix . (x, y) <= rhs``.

    Returns every choice of 2^d2 rows as a pair (submatrix, subvector);
    joint integer solvability in y of all subsystems coincides with the
    full system's for every fixed parameter x.
    """
    matrix = [tuple(int(c) for c in row) for row in matrix]
    rhs = [int(b) for b in rhs]
    if len(matrix) != len(rhs):
        raise ValueError("matrix and right-hand side must pair up")
    if d2 < 1:
        raise ValueError("the variable dimension must be positive")
    size = 2**d2
    if len(matrix) < size:
        raise ValueError(f"need at least {size} rows, got {len(matrix)}")
    out = []
    for subset in itertools.combinations(range(len(matrix)), size):
        out.append((
            tuple(matrix[i] for i in subset),
            tuple(rhs[i] for i in subset),
        ))
    return out

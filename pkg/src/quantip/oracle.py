"""Ground truth by exhaustive enumeration.

These evaluators are deliberately naive: alternating quantifiers over
integer boxes with early exit, membership tested row by row (or, for a
vertex-form constraint, by exact convex-combination feasibility).  They
exist to be obviously correct so every compiler in this package can be
checked against them at desk scale.
"""

from __future__ import annotations

import itertools
import math

from .geometry import (
    Box,
    HPolytope,
    VPolytope,
    bounding_box,
    hull_facets,
    integer_points,
    point_in_hull,
)
from .gsa import OracleBudgetError
from .reductions import Q3SatInstance, QuantSentence, TwoQuantifierForm

#: Default ceiling on the number of innermost membership tests.
ORACLE_BUDGET = 10**8


def _constraint_zbox(constraint, offset, dim):
    """Integer box covering the constraint's integer points on a coordinate span."""
    if isinstance(constraint, VPolytope):
        verts = constraint.vertices
    else:
        box = bounding_box(constraint)
        return Box(box.lo[offset:offset + dim], box.hi[offset:offset + dim])
    lo, hi = [], []
    for c in range(offset, offset + dim):
        column = [v[c] for v in verts]
        lo.append(math.ceil(min(column)))
        hi.append(math.floor(max(column)))
    return Box(tuple(lo), tuple(hi))


def eval_sentence(sentence: QuantSentence, budget: int = ORACLE_BUDGET) -> bool:
    """Truth of an alternating-quantifier sentence over integer boxes.

    An unbounded innermost exists block is evaluated over the constraint's
    own bounding box, which is sound because the constraint is bounded.
    The candidate count is estimated up front against the budget.
    """
    resolved = []
    offset = 0
    total = 1
    for index, block in enumerate(sentence.blocks):
        box = block.box
        if box is None:
            box = _constraint_zbox(sentence.constraint, offset, block.dim)
        points = list(box.points())
        total *= len(points)
        if total > budget:
            raise OracleBudgetError(
                f"block {index} blows the candidate count to {total} (budget {budget})"
            )
        resolved.append((block.quantifier, points, offset, block.dim))
        offset += block.dim

    constraint = sentence.constraint
    if isinstance(constraint, HPolytope):
        slices = [
            [row.coeffs[off:off + dim] for row in constraint.rows]
            for _, _, off, dim in resolved
        ]
        rhs = [row.rhs for row in constraint.rows]
        nrows = len(rhs)

        def descend(level, partial):
            quant, points, _, _ = resolved[level]
            last = level == len(resolved) - 1
            want_all = quant == "forall"
            for pt in points:
                sums = partial
                cols = slices[level]
                updated = [sums[r] + _dot(cols[r], pt) for r in range(nrows)]
                if last:
                    value = all(updated[r] <= rhs[r] for r in range(nrows))
                else:
                    value = descend(level + 1, updated)
                if value and not want_all:
                    return True
                if not value and want_all:
                    return False
            return want_all

        return descend(0, [0] * nrows)

    hull = constraint.vertices

    def descend_v(level, prefix):
        quant, points, _, _ = resolved[level]
        last = level == len(resolved) - 1
        want_all = quant == "forall"
        for pt in points:
            full = prefix + pt
            value = point_in_hull(full, hull) if last else descend_v(level + 1, full)
            if value and not want_all:
                return True
            if not value and want_all:
                return False
        return want_all

    return descend_v(0, ())


def _dot(a, b):
    total = 0
    for x, y in zip(a, b):
        total += x * y
    return total


def eval_q3sat(inst: Q3SatInstance, budget_bits: int = 20) -> bool:
    """Truth of a quantified 3-CNF sentence by exhausting the Boolean blocks."""
    if inst.k * inst.ell > budget_bits:
        raise OracleBudgetError(
            f"{inst.k * inst.ell} Boolean variables exceed the {budget_bits}-bit budget"
        )
    block_values = list(itertools.product((0, 1), repeat=inst.ell))

    def clause_value(assignment, clause):
        for lit in clause:
            bit = assignment[lit.block - 1][lit.index - 1]
            if (not bit) if lit.negated else bit:
                return True
        return False

    def descend(level, assignment):
        if level == inst.k:
            return all(clause_value(assignment, cl) for cl in inst.clauses)
        want_all = inst.prefix[level] == "forall"
        for values in block_values:
            result = descend(level + 1, assignment + (values,))
            if result and not want_all:
                return True
            if not result and want_all:
                return False
        return want_all

    return descend(0, ())


def project_count(outer: HPolytope, inner: HPolytope, budget: int = 10**7) -> int:
    """Count of distinct first coordinates among integer points of outer minus inner.

    A point belongs to the difference when it satisfies every outer row and
    violates at least one inner row.
    """
    firsts = set()
    for point in integer_points(outer, budget=budget):
        if not inner.contains(point):
            firsts.add(point[0])
    return len(firsts)


def project_count_union(parts, budget: int = 10**7) -> int:
    """Count of distinct first coordinates among the union's integer points.

    Accepts inequality-form or vertex-form parts; vertex-form parts are
    converted through exact facet enumeration first.
    """
    firsts = set()
    for part in parts:
        if isinstance(part, VPolytope):
            if not part.vertices:
                continue
            part = hull_facets(part)
        for point in integer_points(part, budget=budget):
            firsts.add(point[0])
    return len(firsts)


def eval_two_quantifier(form: TwoQuantifierForm, budget: int = ORACLE_BUDGET) -> bool:
    """Truth of: exists x in x_box, forall z in z_box, (x, z) in some part."""
    z_points = list(form.z_box.points())
    if form.x_box.size() * len(z_points) > budget:
        raise OracleBudgetError("two-quantifier evaluation exceeds budget")
    for (x,) in form.x_box.points():
        if all(
            any(part.contains((x,) + z) for part in form.parts)
            for z in z_points
        ):
            return True
    return False

"""Convex staircase of Fibonacci-coordinate points inside an integer box.

``build_gadget(d)`` places the points (F(2i-1), F(2i-2)) for i = 1..d in
the box [1, F(2d-1)] x [0, F(2d-2)].  The points form a strictly convex
chain, and the integer points of the box split exactly three ways: the
chain points themselves, a convex region strictly above the chain, and a
convex region strictly below it.  That exact split is what lets a "for
all points on the chain" be simulated by a "for all points in the box"
inside the sentence compilers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .geometry import Box, HPolytope, LinearInequality


def fibonacci(n: int) -> int:
    """F(0) = 0, F(1) = 1, F(n) = F(n-1) + F(n-2)."""
    if n < 0:
        raise ValueError("fibonacci is defined for n >= 0")
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


@dataclass(frozen=True)
class FibGadget:
    """The staircase points, their box, and the two complementary regions."""

    d: int
    points: tuple          # ((F1, F0), (F3, F2), ..., (F(2d-1), F(2d-2)))
    box: Box               # [1, F(2d-1)] x [0, F(2d-2)]
    region_above: HPolytope
    region_below: HPolytope


@lru_cache(maxsize=None)
def build_gadget(d: int) -> FibGadget:
    """Construct the d-point staircase with its above/below regions."""
    if d < 2:
        raise ValueError("the staircase needs at least two points")
    fib = [fibonacci(n) for n in range(2 * d + 1)]
    points = tuple((fib[2 * i - 1], fib[2 * i - 2]) for i in range(1, d + 1))
    top_x, top_y = fib[2 * d - 1], fib[2 * d - 2]

    above = HPolytope(2, (
        LinearInequality((-1, 0), -1),                       # y1 >= 1
        LinearInequality((0, 1), top_y),                     # y2 <= F(2d-2)
        LinearInequality((top_y, -top_x), -1),               # y2*F(2d-1) - y1*F(2d-2) >= 1
    ))
    below_rows = [
        LinearInequality((1, 0), top_x),                     # y1 <= F(2d-1)
        LinearInequality((0, -1), 0),                        # y2 >= 0
    ]
    for i in range(1, d + 1):
        # y2*F(2i) - y1*F(2i-1) <= -2
        below_rows.append(LinearInequality((-fib[2 * i - 1], fib[2 * i]), -2))
    below = HPolytope(2, tuple(below_rows))

    return FibGadget(d, points, Box((1, 0), (top_x, top_y)), above, below)


@dataclass(frozen=True)
class GadgetReport:
    """Outcome of the five structural checks, with the first counterexample."""

    chain_convex: bool          # strictly increasing, constant turning sign
    cells_empty: bool           # no interior points in segments/triangles, index identity
    split_exhaustive: bool      # every non-chain box point is strictly above or below
    above_exact: bool           # strictly-above set == region_above
    below_exact: bool           # strictly-below set == region_below
    counterexample: tuple | None
    points_checked: int

    @property
    def all_passed(self) -> bool:
        return (self.chain_convex and self.cells_empty and self.split_exhaustive
                and self.above_exact and self.below_exact)


def _chain_value(points, x):
    """Height of the chain at abscissa x (piecewise linear interpolation)."""
    for (x0, y0), (x1, y1) in zip(points, points[1:]):
        if x0 <= x <= x1:
            return Fraction(y0) + Fraction(y1 - y0, x1 - x0) * (x - x0)
    raise ValueError(f"abscissa {x} outside the chain range")


def check_properties(gadget: FibGadget, per_point: bool | None = None) -> GadgetReport:
    """Verify the five structural properties by exhausting the box.

    The box is walked column by column; inside a column every region is an
    integer interval whose exact endpoints come from the defining rows, so
    each lattice point is accounted for without per-point arithmetic.  With
    ``per_point`` (default for small boxes) every point is additionally
    re-tested directly against the raw inequality rows.
    """
    d = gadget.d
    fib = [fibonacci(n) for n in range(2 * d + 2)]
    points = gadget.points
    top_x, top_y = gadget.box.hi
    if per_point is None:
        per_point = gadget.box.size() <= 300_000

    counterexample = None

    # Chain convexity: both coordinates strictly increase and every turn has
    # the same orientation sign.
    chain_convex = all(
        b[0] > a[0] and b[1] > a[1] for a, b in zip(points, points[1:])
    )
    turn_signs = set()
    for a, b, c in zip(points, points[1:], points[2:]):
        cross = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0])
        turn_signs.add(0 if cross == 0 else (1 if cross > 0 else -1))
    if 0 in turn_signs or len(turn_signs) > 1:
        chain_convex = False

    # Primitive cells: each chain segment has no interior lattice point, each
    # triangle (origin, p_i, p_{i+1}) has none either (Pick's theorem), and
    # the alternating index identity holds for all usable indices.
    cells_empty = True
    for a, b in zip(points, points[1:]):
        if math.gcd(b[0] - a[0], b[1] - a[1]) != 1:
            cells_empty = False
        area2 = abs(a[0] * b[1] - a[1] * b[0])
        boundary = (math.gcd(a[0], a[1]) + math.gcd(b[0], b[1])
                    + math.gcd(b[0] - a[0], b[1] - a[1]))
        interior = Fraction(area2, 2) - Fraction(boundary, 2) + 1
        if interior != 0:
            cells_empty = False
    for i in range(0, 2 * d - 3):
        if fib[i] * fib[i + 3] - fib[i + 1] * fib[i + 2] != (-1) ** (i + 1):
            cells_empty = False

    # Column walk over the box.
    split_exhaustive = True
    above_exact = True
    below_exact = True
    points_checked = 0
    chain_x = {p[0]: p[1] for p in points}

    for x in range(1, top_x + 1):
        chain = _chain_value(points, x)
        on_value = chain if chain.denominator == 1 else None

        # Strictly-above integer interval within the column.
        true_above_lo = int(chain) + 1 if chain.denominator == 1 else math.ceil(chain)
        # Strictly-below integer interval within the column.
        true_below_hi = int(chain) - 1 if chain.denominator == 1 else math.floor(chain)

        # Region rows restricted to this column (the box bounds are implied).
        region_above_lo = math.ceil(Fraction(1 + x * top_y, top_x))
        region_below_hi = min(
            math.floor(Fraction(x * fib[2 * i - 1] - 2, fib[2 * i]))
            for i in range(1, d + 1)
        )

        column = top_y + 1
        points_checked += column

        # Chain points on this column must be exactly the staircase points.
        expected_on = chain_x.get(x)
        actual_on = int(on_value) if on_value is not None and 0 <= on_value <= top_y else None
        if expected_on != actual_on:
            split_exhaustive = False
            counterexample = counterexample or (x, actual_on)

        if min(true_above_lo, top_y + 1) != min(region_above_lo, top_y + 1):
            above_exact = False
            counterexample = counterexample or (x, max(true_above_lo, region_above_lo))
        if max(true_below_hi, -1) != max(region_below_hi, -1):
            below_exact = False
            counterexample = counterexample or (x, min(true_below_hi, region_below_hi))

        if per_point:
            for y in range(0, top_y + 1):
                in_above = gadget.region_above.contains((x, y))
                in_below = gadget.region_below.contains((x, y))
                is_chain = chain_x.get(x) == y
                if (in_above + in_below + is_chain) != 1:
                    split_exhaustive = False
                    counterexample = counterexample or (x, y)

    return GadgetReport(
        chain_convex=chain_convex,
        cells_empty=cells_empty,
        split_exhaustive=split_exhaustive,
        above_exact=above_exact,
        below_exact=below_exact,
        counterexample=counterexample,
        points_checked=points_checked,
    )

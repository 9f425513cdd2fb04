"""Simultaneous-approximation instances and their brute-force ground truth.

An instance asks whether some integer x in [1, N] brings every multiple
x*alpha_i within eps of an integer.  The decision and counting oracles
here simply enumerate x; the band/gap polygons are the exact planar
systems whose integer slices encode "x is within eps" and its complement
for one coordinate of alpha.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .geometry import (
    GeometryError,
    HPolytope,
    LinearInequality,
    integer_row,
    sharpen_strict,
)


class OracleBudgetError(GeometryError):
    """A brute-force evaluation would exceed its enumeration budget."""


@dataclass(frozen=True)
class GsaInstance:
    """Target vector alpha, search bound N, and tolerance eps.

    Components of alpha are normalized into [0, 1); the distance to the
    nearest integer is invariant under integer shifts, and the
    normalization keeps every derived polygon in a predictable range.
    Instances with eps >= 1/2 are legal but trivially satisfied.
    """

    alpha: tuple
    N: int
    eps: Fraction

    def __post_init__(self):
        alpha = tuple(Fraction(a) % 1 for a in self.alpha)
        if not alpha:
            raise ValueError("alpha must have at least one component")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "N", int(self.N))
        object.__setattr__(self, "eps", Fraction(self.eps))
        if self.N < 1:
            raise ValueError("N must be a positive integer")
        if self.eps <= 0:
            raise ValueError("eps must be positive")

    @property
    def d(self) -> int:
        return len(self.alpha)

    @property
    def trivial(self) -> bool:
        """Every x qualifies once eps reaches 1/2."""
        return self.eps >= Fraction(1, 2)


def frac_dist(beta) -> Fraction:
    """Distance from a rational to the nearest integer, in [0, 1/2]."""
    rem = Fraction(beta) % 1
    return min(rem, 1 - rem)


def gsa_norm(x: int, alpha) -> Fraction:
    """max_i of the fractional distance of x * alpha_i."""
    return max(frac_dist(x * Fraction(a)) for a in alpha)


def gsa_decide(inst: GsaInstance, budget: int = 10**7) -> bool:
    """Is there an x in [1, N] with gsa_norm(x, alpha) <= eps?"""
    if inst.trivial:
        return True
    if inst.N > budget:
        raise OracleBudgetError(f"N={inst.N} exceeds budget {budget}")
    return any(gsa_norm(x, inst.alpha) <= inst.eps for x in range(1, inst.N + 1))


def gsa_count(inst: GsaInstance, budget: int = 10**7) -> int:
    """How many x in [1, N] have gsa_norm(x, alpha) <= eps?"""
    if inst.trivial:
        return inst.N
    if inst.N > budget:
        raise OracleBudgetError(f"N={inst.N} exceeds budget {budget}")
    return sum(1 for x in range(1, inst.N + 1) if gsa_norm(x, inst.alpha) <= inst.eps)


def band_polygon(inst: GsaInstance, i: int) -> HPolytope:
    """The closed strip {1 <= x <= N, alpha_i*x - eps <= w <= alpha_i*x + eps}.

    Integer points (x, w) of the strip witness that component i is within
    eps at x.  Rows are denominator-cleared to integers.
    """
    a = _component(inst, i)
    return HPolytope(2, (
        LinearInequality((-1, 0), -1),
        LinearInequality((1, 0), inst.N),
        integer_row((a, -1), inst.eps),     # alpha*x - w <= eps
        integer_row((-a, 1), inst.eps),     # w - alpha*x <= eps
    ))


def gap_polygon(inst: GsaInstance, i: int) -> HPolytope:
    """The sharpened complement strip {alpha_i*x + eps < w < alpha_i*x + 1 - eps}.

    Both strict edges are sharpened to closed integral rows, which keeps the
    integer points unchanged.  For every integer x in [1, N] exactly one of
    band/gap contains an integer w: the band interval sits inside a
    half-open unit interval, which holds exactly one integer.
    """
    a = _component(inst, i)
    return HPolytope(2, (
        LinearInequality((-1, 0), -1),
        LinearInequality((1, 0), inst.N),
        sharpen_strict(LinearInequality((a, -1), -inst.eps, strict=True)),
        sharpen_strict(LinearInequality((-a, 1), 1 - inst.eps, strict=True)),
    ))


def slice_interval(polytope: HPolytope, x: int):
    """Exact integer w-interval of a planar system at abscissa x, or None.

    Only valid for systems whose rows involve (x, w); returns the pair
    (lo, hi) of the integer range, or None when the slice has no integers.
    """
    lo, hi = None, None
    for row in polytope.rows:
        cx, cw = row.coeffs
        rest = row.rhs - cx * x
        if cw > 0:
            bound = Fraction(rest, cw)
            hi = bound if hi is None else min(hi, bound)
        elif cw < 0:
            bound = Fraction(rest, cw)
            lo = bound if lo is None else max(lo, bound)
        elif rest < 0:
            return None
    if lo is None or hi is None:
        raise GeometryError("slice is unbounded in w")
    ilo, ihi = math.ceil(lo), math.floor(hi)
    if ilo > ihi:
        return None
    return ilo, ihi


def _component(inst: GsaInstance, i: int) -> Fraction:
    if not 1 <= i <= inst.d:
        raise ValueError(f"component index {i} out of range 1..{inst.d}")
    return inst.alpha[i - 1]

"""Exact lattice-point counts in axis-intercept simplices, composition
counts, and Stirling bracket values.

The simplex with intercepts (a_1, ..., a_m) is the set of nonnegative
points z with sum(z_j / a_j) <= 1 (or < 1 in strict mode). Counting slices
on the largest intercept first and recurses on the rescaled rest; with
floating intercepts, boundary ties are broken by an absolute 1e-12 slack
toward inclusion (non-strict) or exclusion (strict). Passing only ints or
Fractions switches to exact rational arithmetic with no slack.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .errors import InvalidArgumentError, ResourceLimitError
from .numutil import TIE_SLACK, effective_guard

DEFAULT_POINT_GUARD = 1_000_000_000


@dataclass(frozen=True)
class SimplexSpec:
    """Positive axis intercepts a_1..a_m of a nonnegative simplex."""

    bounds: tuple

    def __post_init__(self):
        if len(self.bounds) == 0:
            raise InvalidArgumentError("a simplex needs at least one intercept")
        for a in self.bounds:
            if not a > 0:
                raise InvalidArgumentError(f"intercepts must be positive, got {a}")

    @property
    def dimension(self) -> int:
        return len(self.bounds)


def _axis_cap(a, strict: bool, exact: bool) -> int:
    """Largest admissible coordinate on an axis with intercept a (may be -1
    when strict and a is tiny)."""
    if exact:
        if strict:
            f = Fraction(a)
            return (f.numerator - 1) // f.denominator if f.denominator == 1 else math.floor(f)
        return math.floor(Fraction(a))
    if strict:
        return math.ceil(a - TIE_SLACK) - 1
    return math.floor(a + TIE_SLACK)


def count_lattice_points(spec: SimplexSpec, strict: bool = False,
                         guard: int | None = None) -> int:
    """Exact number of nonnegative integer points in the simplex.

    Raises ResourceLimitError (with the partial count attached) once more
    than ``guard`` points have been accumulated.
    """
    guard = effective_guard(guard, DEFAULT_POINT_GUARD)
    exact = all(isinstance(a, (int, Fraction)) for a in spec.bounds)
    bounds = sorted(spec.bounds, reverse=True)
    counted = 0

    def recurse(bs) -> int:
        nonlocal counted
        a = bs[0]
        cap = _axis_cap(a, strict, exact)
        if cap < 0:
            return 0
        if len(bs) == 1:
            counted += cap + 1
            if counted > guard:
                raise ResourceLimitError(
                    f"lattice point guard {guard} exceeded", partial=counted)
            return cap + 1
        total = 0
        rest = bs[1:]
        for j in range(cap + 1):
            if j == 0:
                total += recurse(rest)
                continue
            scale = 1 - (Fraction(j, 1) / a if exact else j / a)
            total += recurse([scale * b for b in rest])
        return total

    return recurse(bounds)


class FactorialBound(NamedTuple):
    value: float        # prod(a_j)/m!; inf once past the float range
    log_value: float    # always finite: sum(ln a_j) - ln(m!)
    log_only: bool      # True when value overflowed and log_value is the answer


def factorial_volume_bound(spec: SimplexSpec) -> FactorialBound:
    """prod(a_j)/m!, the simplex-volume lower bound for the point count.

    The exact count always exceeds this value strictly; that inequality is
    asserted test-side over the verification grids.
    """
    m = spec.dimension
    log_value = math.fsum(math.log(a) for a in spec.bounds) - math.lgamma(m + 1)
    value = 1.0
    for a in spec.bounds:
        value *= float(a)
    value /= math.factorial(m)
    return FactorialBound(value, log_value, not math.isfinite(value))


def compositions_count(k: int, m: int) -> int:
    """Number of ways to write k as an ordered sum of m nonnegative
    integers: C(k+m-1, k). Empty case: 1 for k=0, m=0; 0 for k>0, m=0."""
    if k < 0 or m < 0:
        raise InvalidArgumentError(f"need k, m >= 0, got k={k}, m={m}")
    if m == 0:
        return 1 if k == 0 else 0
    return math.comb(k + m - 1, k)


def cumulative_compositions(l: int, m: int, include_zero: bool = True) -> int:
    """Sum of compositions_count(k, m) for k from 0 (or 1) through l.

    With include_zero this equals the lattice-point count of the
    equal-intercept simplex [l]*m, i.e. C(l+m, m); excluding zero drops the
    origin-only term."""
    if l < 0 or m < 1:
        raise InvalidArgumentError(f"need l >= 0 and m >= 1, got l={l}, m={m}")
    start = 0 if include_zero else 1
    return sum(compositions_count(k, m) for k in range(start, l + 1))


def stirling_value(z: float) -> float:
    """sqrt(2*pi*z) * (z/e)^z. For every integer z in [1, 170] the factorial
    satisfies stirling_value(z) < z! < 2*stirling_value(z)."""
    if z <= 0:
        raise InvalidArgumentError(f"stirling_value needs z > 0, got {z}")
    log_st = 0.5 * math.log(2.0 * math.pi * z) + z * (math.log(z) - 1.0)
    if log_st > 709.0:
        return math.inf
    return math.exp(log_st)

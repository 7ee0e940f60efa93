"""Geometric prime binning and the exact count sandwich it induces.

The primes below n are split into r bins J_i = (n/e^i, n/e^(i-1)], the
first bin open at n. r is the smallest depth whose last bin still reaches
down past 2: r = [ln n] when the fractional part of ln n is below ln 2
(narrow case, tag "r1"), else r = [ln n] + 1 (wide case, tag "r2").

Aggregating the exponent vector of a smooth integer per bin maps the
factorisation simplex onto an r-dimensional weighted simplex. Two weight
vectors bracket ln p on each bin:

* lower weights  ln n - i  (the wide case's last bin holds only the prime
  2, whose honest bracket floor is ln 2; the formula value would be
  negative there and would unbound the enumeration),
* upper weights  ln n - i + 1.

Counting aggregated vectors z with sum(lower_i * z_i) < ln N, each z
weighted by its number of per-prime assignments, yields an exact integer
upper bound for the smooth count; summing prod(m_i^z_i / z_i!) over
sum(upper_i * z_i) < ln N yields a real lower bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateWeightError, InvalidArgumentError, ResourceLimitError
from .lattice import compositions_count
from .numutil import LogSumExp, effective_guard, strict_cap
from .primes import PrimeTable, smoothness_index

DEFAULT_ENUM_GUARD = 100_000_000

CASE_NARROW = "r1"
CASE_WIDE = "r2"


@dataclass(frozen=True)
class BinningSpec:
    n: float
    r: int
    case_tag: str
    bins: tuple                  # (lo, hi) per bin, 1-based order
    weights_upper: tuple         # ln n - i + 1
    weights_lower: tuple         # ln n - i, last replaced by ln 2 in the wide case
    prime_counts: tuple          # exact sieve counts per bin
    count_floor_estimates: tuple  # n / (e^i * (ln n - i)) per bin
    count_pnt_estimates: tuple   # (e-1)*n / ((ln n - i) * e^i) per bin


def build_binning(n: float, table: PrimeTable) -> BinningSpec:
    """Build the bin decomposition for the factor base {p < n}; needs n > e
    so at least one bin exists.

    Exact per-bin prime counts come from the table; the two analytic count
    estimates are stored alongside for comparison only (they may be
    negative or infinite in the last bin and are never used in counting).
    """
    if n <= math.e:
        raise InvalidArgumentError(f"binning needs n > e, got n={n}")
    if n > table.limit:
        raise InvalidArgumentError(
            f"n={n} exceeds the prime table limit {table.limit}")
    log_n = math.log(n)
    whole = math.floor(log_n)
    # Boundary ties (ln n integral, or exactly whole + ln 2) take the
    # narrow case; both are measure-zero in n.
    case = CASE_WIDE if log_n > whole + math.log(2.0) else CASE_NARROW
    r = whole + 1 if case == CASE_WIDE else whole

    edges = [n * math.exp(-i) for i in range(r + 1)]
    bins = tuple((edges[i], edges[i - 1]) for i in range(1, r + 1))
    counts = []
    for i in range(1, r + 1):
        hi_count = table.count_below(n) if i == 1 else table.count(edges[i - 1])
        counts.append(hi_count - table.count(edges[i]))

    weights_upper = tuple(log_n - i + 1.0 for i in range(1, r + 1))
    lower = [log_n - i for i in range(1, r + 1)]
    if case == CASE_WIDE:
        lower[-1] = math.log(2.0)
    floor_est = []
    pnt_est = []
    for i in range(1, r + 1):
        gap = log_n - i
        scale = n * math.exp(-i)
        floor_est.append(scale / gap if gap != 0.0 else math.inf)
        pnt_est.append((math.e - 1.0) * scale / gap if gap != 0.0 else math.inf)

    spec = BinningSpec(n=float(n), r=r, case_tag=case, bins=bins,
                       weights_upper=weights_upper, weights_lower=tuple(lower),
                       prime_counts=tuple(counts),
                       count_floor_estimates=tuple(floor_est),
                       count_pnt_estimates=tuple(pnt_est))
    assert sum(counts) == smoothness_index(table, n)
    return spec


def bin_index(spec: BinningSpec, p: float) -> int:
    """1-based bin index of a prime p with 1 < p < n."""
    if not spec.bins[-1][0] < p < spec.n:
        raise InvalidArgumentError(f"p={p} is not inside the binned range")
    for i, (lo, hi) in enumerate(spec.bins, start=1):
        if lo < p <= hi:
            return i
    raise InvalidArgumentError(f"p={p} fell between bins")  # unreachable: bins tile the range


def aggregate_exponents(spec: BinningSpec, primes, exponents) -> tuple:
    """Per-bin sums of an exponent vector indexed by the given primes.

    The coordinate total is preserved: sum(z) == sum(exponents).
    """
    if len(primes) != len(exponents):
        raise InvalidArgumentError("primes and exponents differ in length")
    z = [0] * spec.r
    for p, x in zip(primes, exponents):
        if x < 0:
            raise InvalidArgumentError("exponents must be nonnegative")
        if x:
            z[bin_index(spec, p) - 1] += x
    return tuple(z)


def assignment_count(z, spec: BinningSpec) -> int:
    """Number of per-prime exponent assignments aggregating to z: the
    product over bins of compositions_count(z_i, m_i). Zero as soon as a
    bin with no primes is asked to carry a positive total."""
    if len(z) != spec.r:
        raise InvalidArgumentError(
            f"z has length {len(z)}, expected r={spec.r}")
    result = 1
    for z_i, m_i in zip(z, spec.prime_counts):
        if z_i < 0:
            raise InvalidArgumentError("z entries must be nonnegative")
        result *= compositions_count(z_i, m_i)
        if result == 0:
            return 0
    return result


def _active_bins(spec: BinningSpec, weights, check_unbounded: bool):
    """(weight, count, index) for bins that can carry a positive total."""
    active = []
    for i, (w, m) in enumerate(zip(weights, spec.prime_counts), start=1):
        if m == 0:
            continue  # empty bin: only z_i = 0 contributes, factor 1
        if w <= 0.0:
            if check_unbounded:
                raise DegenerateWeightError(
                    f"bin {i} has weight {w} with {m} primes: enumeration "
                    f"would be unbounded", index=i)
        active.append((w, m, i))
    return active


def count_upper_bound(spec: BinningSpec, N: float, *, guard: int | None = None) -> int:
    """Exact integer upper bound for the smooth count: the number of
    per-prime assignment vectors whose aggregate satisfies
    sum(lower_i * z_i) < ln N."""
    if N <= 1:
        raise InvalidArgumentError(f"need N > 1, got N={N}")
    guard = effective_guard(guard, DEFAULT_ENUM_GUARD)
    budget0 = math.log(N)
    active = _active_bins(spec, spec.weights_lower, check_unbounded=True)
    states = 0
    total = 0

    def recurse(idx: int, budget: float, partial: int) -> None:
        nonlocal states, total
        if idx == len(active):
            total += partial
            return
        w, m, _ = active[idx]
        cap = strict_cap(w, budget)
        for z in range(cap + 1):
            states += 1
            if states > guard:
                raise ResourceLimitError(
                    f"enumeration guard {guard} exceeded", partial=total)
            recurse(idx + 1, budget - w * z,
                    partial * compositions_count(z, m))

    recurse(0, budget0, 1)
    return total


@dataclass(frozen=True)
class LowerBoundResult:
    value: float
    log_value: float
    points: int                 # aggregated vectors enumerated
    product_bound_ok: bool      # assignment overshoot stayed under e^(z^2/2m)
    product_bound_max_gap: float  # max of ln(overshoot) - z^2/(2m); < 0 when ok


def count_lower_bound(spec: BinningSpec, N: float, *,
                      guard: int | None = None) -> LowerBoundResult:
    """Real lower bound for the smooth count: sum of prod(m_i^z_i / z_i!)
    over aggregates with sum(upper_i * z_i) < ln N, accumulated in
    log space.

    Along the same enumeration the per-bin assignment overshoot
    prod_{k<z}(1 + k/m) is checked against its closed bound e^(z^2/2m);
    the worst log gap is reported.
    """
    if N <= 1:
        raise InvalidArgumentError(f"need N > 1, got N={N}")
    guard = effective_guard(guard, DEFAULT_ENUM_GUARD)
    budget0 = math.log(N)
    active = _active_bins(spec, spec.weights_upper, check_unbounded=True)
    acc = LogSumExp()
    states = 0
    max_gap = -math.inf

    def recurse(idx: int, budget: float, partial_log: float) -> None:
        nonlocal states, max_gap
        if idx == len(active):
            acc.add(partial_log)
            return
        w, m, _ = active[idx]
        cap = strict_cap(w, budget)
        log_m = math.log(m)
        overshoot_log = 0.0  # ln prod_{k<z}(1 + k/m), built incrementally
        for z in range(cap + 1):
            states += 1
            if states > guard:
                raise ResourceLimitError(
                    f"enumeration guard {guard} exceeded", partial=acc.total())
            if z >= 1:
                if z >= 2:
                    overshoot_log += math.log1p((z - 1) / m)
                gap = overshoot_log - z * z / (2.0 * m)
                if gap > max_gap:
                    max_gap = gap
            recurse(idx + 1, budget - w * z,
                    partial_log + z * log_m - math.lgamma(z + 1))

    recurse(0, budget0, 0.0)
    log_value = acc.total_log()
    return LowerBoundResult(value=acc.total(), log_value=log_value,
                            points=acc.count,
                            product_bound_ok=(max_gap < 0.0 or max_gap == -math.inf),
                            product_bound_max_gap=max_gap)

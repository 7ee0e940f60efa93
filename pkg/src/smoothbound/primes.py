"""Prime tables plus the prime-sum and prime-product quantities used by the
desk-scale verification suite."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np

from . import _kernels
from .errors import InvalidArgumentError, ResourceLimitError, TableTooSmallError
from .numutil import adaptive_simpson

# Memory guard: a table of all primes up to 10^8 is ~46 MB of int64.
DEFAULT_LIMIT_GUARD = 100_000_000


@dataclass(frozen=True, eq=False)
class PrimeTable:
    """Immutable sieve result: exactly the primes <= limit, ascending.

    All queries are pure reads; a table may be shared freely between
    threads after construction.
    """

    limit: int
    primes: np.ndarray

    def __len__(self) -> int:
        return int(self.primes.size)

    def count(self, x) -> int:
        """Number of primes <= x."""
        return int(np.searchsorted(self.primes, x, side="right"))

    def count_below(self, x) -> int:
        """Number of primes strictly below x."""
        return int(np.searchsorted(self.primes, x, side="left"))

    def prime(self, j: int) -> int:
        """The j-th prime, 1-based (prime(1) == 2)."""
        if not 1 <= j <= len(self):
            raise InvalidArgumentError(f"prime index {j} outside 1..{len(self)}")
        return int(self.primes[j - 1])


def build_prime_table(limit: int, *, limit_guard: int = DEFAULT_LIMIT_GUARD) -> PrimeTable:
    """Sieve all primes up to ``limit`` (inclusive)."""
    limit = int(limit)
    if limit < 2:
        raise InvalidArgumentError(f"sieve limit must be >= 2, got {limit}")
    if limit > limit_guard:
        raise ResourceLimitError(
            f"sieve limit {limit} exceeds the memory guard {limit_guard}")
    return PrimeTable(limit=limit, primes=_kernels.primes_up_to(limit))


def smoothness_index(table: PrimeTable, n: float) -> int:
    """Size of the factor base {p prime : p < n}, i.e. the largest m with
    the m-th prime below n."""
    if n <= 2:
        raise InvalidArgumentError(f"no prime lies below n={n}")
    if n > table.limit:
        raise TableTooSmallError(
            f"n={n} exceeds the table limit {table.limit}")
    return table.count_below(n)


class PrimeReciprocalSum(NamedTuple):
    value: float
    # ln ln b - ln ln a; None when a <= e (the comparison point is only
    # meaningful for larger a).
    mertens_estimate: Optional[float]


def prime_reciprocal_sum(table: PrimeTable, a: float, b: float) -> PrimeReciprocalSum:
    """Exact sum of 1/p over primes a <= p <= b, with the double-log
    difference reported alongside for comparison."""
    if not 2 <= a <= b:
        raise InvalidArgumentError(f"need 2 <= a <= b, got a={a}, b={b}")
    if b > table.limit:
        raise TableTooSmallError(f"b={b} exceeds the table limit {table.limit}")
    lo = table.count_below(a)
    hi = table.count(b)
    value = math.fsum(1.0 / p for p in table.primes[lo:hi])
    estimate = None
    if a > math.e:
        estimate = math.log(math.log(b)) - math.log(math.log(a))
    return PrimeReciprocalSum(value, estimate)


class SqrtReciprocalStats(NamedTuple):
    sqrt_sum: float
    product: float
    integral_bound: float


def sqrt_reciprocal_stats(table: PrimeTable, k: int) -> SqrtReciprocalStats:
    """Over the first k primes: sum of 1/sqrt(p), product of (1 - 1/sqrt(p)),
    and the quadrature value of integral_3^{p_k} dx/(sqrt(x) ln x)."""
    if not 1 <= k <= len(table):
        raise InvalidArgumentError(f"k={k} outside 1..{len(table)}")
    roots = np.sqrt(table.primes[:k].astype(np.float64)).tolist()
    sqrt_sum = math.fsum(1.0 / r for r in roots)
    product = 1.0
    for r in roots:
        product *= 1.0 - 1.0 / r
    p_k = table.prime(k)
    if p_k <= 3:
        integral = 0.0
    else:
        integral = adaptive_simpson(
            lambda x: 1.0 / (math.sqrt(x) * math.log(x)), 3.0, float(p_k))
    return SqrtReciprocalStats(sqrt_sum, product, integral)

"""Shared fixtures and independent brute-force oracles.

Every oracle here recomputes its quantity from first principles (trial
division, nested loops, plain float sums) without touching the package's
counting paths, so test expectations stay independent of the code they
check.
"""

import math

import pytest

from smoothbound import build_prime_table
from smoothbound.numutil import TIE_SLACK


@pytest.fixture(scope="session")
def table_100():
    return build_prime_table(100)


@pytest.fixture(scope="session")
def table_1e6():
    return build_prime_table(10**6)


def trial_division_primes(limit):
    out = []
    for k in range(2, limit + 1):
        d = 2
        prime = True
        while d * d <= k:
            if k % d == 0:
                prime = False
                break
            d += 1
        if prime:
            out.append(k)
    return out


def largest_prime_factor(x):
    p, best = 2, 1
    while p * p <= x:
        while x % p == 0:
            best = p
            x //= p
        p += 1
    return x if x > 1 else best


def brute_smooth_count(n, N, inclusive=False):
    """nu by per-integer factorization."""
    total = 0
    for k in range(2, int(N) + 1):
        lpf = largest_prime_factor(k)
        if (lpf <= n) if inclusive else (lpf < n):
            total += 1
    return total


def brute_simplex_count(bounds, strict=False):
    """Nested-loop lattice count with the same documented tie slack."""
    caps = [math.floor(float(a) + 1.0) for a in bounds]
    inv = [1.0 / float(a) for a in bounds]
    total = 0

    def rec(i, acc):
        nonlocal total
        if i == len(bounds):
            if (acc < 1.0 - TIE_SLACK) if strict else (acc <= 1.0 + TIE_SLACK):
                total += 1
            return
        for v in range(caps[i] + 1):
            rec(i + 1, acc + v * inv[i])

    rec(0, 0.0)
    return total


def brute_weighted_sum(weights, bases, budget, corrected=False):
    """Box enumeration of the weighted exponential sums, plain floats."""
    caps = [int(budget / w) + 1 for w in weights]
    terms = []

    def rec(i, used, prod):
        if used >= budget:
            return
        if i == len(weights):
            terms.append(prod)
            return
        for z in range(caps[i] + 1):
            factor = bases[i] ** z / math.factorial(z)
            if corrected:
                factor *= math.exp(z * z / bases[i])
            rec(i + 1, used + z * weights[i], prod * factor)

    rec(0, 0.0, 1.0)
    return math.fsum(terms)

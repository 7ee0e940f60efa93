"""Numeric helpers: boundary-tolerant integer parts, stable log-sum-exp
accumulation, and adaptive Simpson quadrature."""

from __future__ import annotations

import math
import os

# Absolute slack for comparisons that may land exactly on a lattice/bound
# boundary after floating-point rounding (e.g. ln(10^3)/ln(10) = 2.999...96).
# Pulls toward inclusion in non-strict comparisons, toward exclusion in
# strict ones.
TIE_SLACK = 1e-12


def effective_guard(guard, default):
    """Resolve an enumeration guard: explicit value, else SMOOTHBOUND_GUARD
    from the environment, else the caller's default."""
    if guard is not None:
        return int(guard)
    env = os.environ.get("SMOOTHBOUND_GUARD")
    if env:
        return int(float(env))
    return int(default)


def slack_floor(x: float, slack: float = TIE_SLACK) -> int:
    """Integer part of x, treating values within ``slack`` below an integer
    as that integer."""
    return math.floor(x + slack)


def strict_cap(weight: float, budget: float) -> int:
    """Largest integer z >= 0 with weight*z < budget, or -1 when even z=0
    fails (budget <= 0). ``weight`` must be positive."""
    if weight <= 0.0:
        raise ValueError("strict_cap needs a positive weight")
    if budget <= 0.0:
        return -1
    z = int(budget / weight)
    while z > 0 and z * weight >= budget:
        z -= 1
    while (z + 1) * weight < budget:
        z += 1
    return z


def xlogx(x: float) -> float:
    """x*ln(x) extended continuously by 0 at x = 0."""
    if x < 0.0:
        raise ValueError("xlogx domain is x >= 0")
    if x == 0.0:
        return 0.0
    return x * math.log(x)


def log1pexp(x: float) -> float:
    """ln(1 + e^x) without overflow for large |x|."""
    if x > 0.0:
        return x + math.log1p(math.exp(-x))
    return math.log1p(math.exp(x))


def sigmoid(x: float) -> float:
    """1/(1 + e^(-x)) without overflow for large |x|."""
    if x >= 0.0:
        return 1.0 / (1.0 + math.exp(-x))
    ex = math.exp(x)
    return ex / (1.0 + ex)


class LogSumExp:
    """Streaming log-sum-exp of terms given by their natural logs.

    Keeps a running maximum and a Kahan-compensated sum of rescaled
    exponentials, so sums spanning hundreds of orders of magnitude stay
    accurate to ~1e-15 relative.
    """

    __slots__ = ("_max", "_sum", "_comp", "count")

    def __init__(self):
        self._max = -math.inf
        self._sum = 0.0
        self._comp = 0.0
        self.count = 0

    def _accumulate(self, value: float) -> None:
        y = value - self._comp
        t = self._sum + y
        self._comp = (t - self._sum) - y
        self._sum = t

    def add(self, log_term: float) -> None:
        self.count += 1
        if log_term == -math.inf:
            return
        if log_term > self._max:
            if self._max > -math.inf:
                scale = math.exp(self._max - log_term)
                self._sum *= scale
                self._comp *= scale
            self._max = log_term
            self._accumulate(1.0)
        else:
            self._accumulate(math.exp(log_term - self._max))

    def total_log(self) -> float:
        """ln of the accumulated sum; -inf when nothing was added."""
        if self._sum <= 0.0:
            return -math.inf
        return self._max + math.log(self._sum)

    def total(self) -> float:
        """The accumulated sum itself (inf if it overflows a float)."""
        lt = self.total_log()
        if lt == -math.inf:
            return 0.0
        if lt > 709.0:
            return math.inf
        return math.exp(lt)


def adaptive_simpson(f, a: float, b: float, tol: float = 1e-9,
                     max_depth: int = 50) -> float:
    """Adaptive Simpson quadrature of f on [a, b] to absolute tolerance
    ``tol``, with Richardson correction."""
    if a == b:
        return 0.0

    def simpson(lo, hi, flo, fmid, fhi):
        return (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi)

    def recurse(lo, hi, flo, fmid, fhi, whole, eps, depth):
        mid = 0.5 * (lo + hi)
        lm = 0.5 * (lo + mid)
        rm = 0.5 * (mid + hi)
        flm = f(lm)
        frm = f(rm)
        left = simpson(lo, mid, flo, flm, fmid)
        right = simpson(mid, hi, fmid, frm, fhi)
        delta = left + right - whole
        if depth <= 0 or abs(delta) <= 15.0 * eps:
            return left + right + delta / 15.0
        return (recurse(lo, mid, flo, flm, fmid, left, eps / 2.0, depth - 1)
                + recurse(mid, hi, fmid, frm, fhi, right, eps / 2.0, depth - 1))

    fa, fm, fb = f(a), f(0.5 * (a + b)), f(b)
    return recurse(a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), tol, max_depth)

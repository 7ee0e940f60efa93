"""Exact smooth-integer counts by two independent methods, plus the coarse
equal-weight lower-bound report.

``nu`` counts integers 2 <= k <= N whose largest prime factor lies below
the smoothness bound; ``psi`` is the same count with 1 included, so
psi = nu + 1 always. The recursive method is indexed by the size k of the
prime factor base {p_1, ..., p_k} and needs psi internally (the integer 1
closes its recursion). The default factor base of the direct method is
strict (primes < n); a toggle admits primes <= n, which differs exactly
when n is prime.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import _kernels
from .bounds import BoundReport
from .errors import InvalidArgumentError, ResourceLimitError
from .lattice import compositions_count
from .numutil import effective_guard, slack_floor
from .primes import PrimeTable, smoothness_index

DEFAULT_DIRECT_GUARD = 100_000_000
DEFAULT_MEMO_GUARD = 5_000_000


@dataclass(frozen=True)
class SmoothCountResult:
    n: float
    N: float
    nu: int
    psi: int
    method: str

    def __post_init__(self):
        if self.psi != self.nu + 1:
            raise InvalidArgumentError("psi must equal nu + 1")


def smooth_count_direct(n: float, N: float, *, inclusive: bool = False,
                        guard: int | None = None) -> SmoothCountResult:
    """Count smooth integers in [2, N] with a largest-prime-factor sieve.

    The factor base is {p < n} by default, {p <= n} with ``inclusive``.
    """
    if n <= 2:
        raise InvalidArgumentError(f"need n > 2, got n={n}")
    if N < 2:
        raise InvalidArgumentError(f"need N >= 2, got N={N}")
    floor_n_cap = int(N)
    guard = effective_guard(guard, DEFAULT_DIRECT_GUARD)
    if floor_n_cap > guard:
        raise ResourceLimitError(
            f"direct sieve range {floor_n_cap} exceeds the guard {guard}")
    lpf = _kernels.largest_factor_table(floor_n_cap)
    body = lpf[2:]
    nu = int((body <= n).sum()) if inclusive else int((body < n).sum())
    return SmoothCountResult(n=float(n), N=float(N), nu=nu, psi=nu + 1,
                             method="direct")


def smooth_count_recursive(k: int, N: float, table: PrimeTable, *,
                           memo_guard: int | None = None) -> SmoothCountResult:
    """Count integers in [1, N] built only from the first k primes, via the
    memoized prime-power recursion

        psi(k, N) = sum over j >= 0 with p_k^j <= N of psi(k-1, N // p_k^j),

    including the top power with N // p_k^j = 1. psi depends on N only
    through floor(N), which keys the memo table.
    """
    if k < 1:
        raise InvalidArgumentError(f"need k >= 1, got k={k}")
    if N < 1:
        raise InvalidArgumentError(f"need N >= 1, got N={N}")
    p_k = table.prime(k)  # validates k against the table
    memo_guard = effective_guard(memo_guard, DEFAULT_MEMO_GUARD)
    floor_n = int(N)
    memo: dict = {}

    def psi(j: int, nbar: int) -> int:
        if nbar <= 0:
            return 0
        if nbar == 1:
            return 1
        if j == 1:
            return nbar.bit_length()  # powers of 2 up to nbar, plus 1
        key = (j, nbar)
        cached = memo.get(key)
        if cached is not None:
            return cached
        if len(memo) >= memo_guard:
            raise ResourceLimitError(
                f"recursion memo guard {memo_guard} exceeded")
        p = table.prime(j)
        total = 0
        q = 1
        while q <= nbar:
            total += psi(j - 1, nbar // q)
            q *= p
        memo[key] = total
        return total

    value = psi(k, floor_n)
    return SmoothCountResult(n=float(p_k), N=float(N), nu=value - 1,
                             psi=value, method="recursive")


def preliminary_lower_bound(n: float, N: float, table: PrimeTable) -> BoundReport:
    """Report the equal-weight simplex lower bound for the smooth count.

    With m the factor-base size and l = [ln N / ln n], the composition
    count C(l+m-1, l) undercounts the smooth integers; the report carries
    its log next to the weaker closed forms

        ln(m^l / l!),
        -ln(2*pi*l)/2 + l*ln(e*m/l),
        -ln(ln N)/2 + (ln N / ln n)*ln(e*n / ln N).

    All entries are reported, not asserted; l = 0 flags a degenerate range
    where every form collapses to the trivial bound 1.
    """
    if n <= 2:
        raise InvalidArgumentError(f"need n > 2, got n={n}")
    if N <= n:
        raise InvalidArgumentError(f"need N > n, got N={N}, n={n}")
    m = smoothness_index(table, n)
    ratio = math.log(N) / math.log(n)
    l = slack_floor(ratio)
    f_exact = compositions_count(l, m)
    inputs = {"n": float(n), "N": float(N), "m": float(m), "l": float(l)}
    if l == 0:
        return BoundReport(inputs=inputs,
                           bound_logs={"compositions": 0.0},
                           flags={"range": "degenerate",
                                  "compositions": "reported"})
    bound_logs = {
        "compositions": math.log(f_exact),
        "poisson_term": l * math.log(m) - math.lgamma(l + 1),
        "stirling_form": (-0.5 * math.log(2.0 * math.pi * l)
                          + l * math.log(math.e * m / l)),
        "log_range_form": (-0.5 * math.log(math.log(N))
                           + ratio * math.log(math.e * n / math.log(N))),
    }
    flags = {name: "reported" for name in bound_logs}
    flags["range"] = "ok"
    return BoundReport(inputs=inputs, bound_logs=bound_logs, flags=flags)

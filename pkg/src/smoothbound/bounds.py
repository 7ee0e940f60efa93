"""Closed-form bound machinery: the per-step maximisation objective and its
closed form, offset schedules, the shrinking-parameter iteration trace, and
the asymptotic right-hand sides in (n, N) coordinates.

Notation used throughout: a pair (c, M) parameterises a weighted-simplex
sum (c plays the role of ln n, M of ln N); ``a`` is an additive offset whose
sharp value is 1 + ln(e-1); gamma is the schedule offset entering the
objective. Every displayed constant is computed, never hard-coded as a
decimal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from .errors import InvalidArgumentError
from .numutil import log1pexp, sigmoid, xlogx

_E = math.e


def sharp_offset() -> float:
    """The sharp additive constant 1 + ln(e - 1) of the lower bound."""
    return 1.0 + math.log(_E - 1.0)


@dataclass
class BoundReport:
    """Pairs an exact quantity (when available) with named bound values.

    * ``bound_logs``  - natural log of each bound formula's value,
    * ``margins``     - signed gaps, one per bound entry,
    * ``flags``       - per-entry status: "asserted", "reported", or
      "premise-failed".
    """

    inputs: dict = field(default_factory=dict)
    exact_log: Optional[float] = None
    bound_logs: dict = field(default_factory=dict)
    margins: dict = field(default_factory=dict)
    flags: dict = field(default_factory=dict)

    def __post_init__(self):
        for name in self.margins:
            if name not in self.bound_logs:
                raise InvalidArgumentError(
                    f"margin {name!r} has no matching bound entry")

    def as_dict(self) -> dict:
        return {
            "inputs": dict(self.inputs),
            "exact_log": self.exact_log,
            "bound_logs": dict(self.bound_logs),
            "margins": dict(self.margins),
            "flags": dict(self.flags),
        }


@dataclass(frozen=True)
class TraceStep:
    c: float
    M: float
    gamma: float
    t: float
    in_domain: bool          # M <= e^(beta*c)
    contraction_held: bool   # ln M' < ln M * (1 - e^(alpha/2)/c)


@dataclass
class IterationTrace:
    steps: list
    alpha: float
    beta: float
    stop_reason: str


def iteration_objective(z: float, c: float, M: float, gamma: float, a: float) -> float:
    """The concave single-step objective

        M*(1 + gamma/c) + (a - gamma)*z - (M/c)*ln c
          - z*ln z - (M/c - z)*ln(M/c - z)

    on 0 <= z <= M/c, with the x*ln(x) -> 0 extension at both endpoints."""
    if c <= 1.0:
        raise InvalidArgumentError(f"need c > 1, got c={c}")
    if M <= c:
        raise InvalidArgumentError(f"need M > c, got M={M}, c={c}")
    cap = M / c
    if z < -1e-9 or z > cap * (1.0 + 1e-9) + 1e-9:
        raise InvalidArgumentError(f"z={z} outside [0, M/c={cap}]")
    z = min(max(z, 0.0), cap)
    return (M * (1.0 + gamma / c) + (a - gamma) * z - cap * math.log(c)
            - xlogx(z) - xlogx(cap - z))


class ObjectiveMax(NamedTuple):
    max_value: float
    t0: float      # maximizer location as a fraction of M/c
    gain: float    # ln(1 + e^(a-gamma)), the max-value increment


def iteration_objective_max(c: float, M: float, gamma: float, a: float) -> ObjectiveMax:
    """Closed form of the objective's maximum over [0, M/c]:

        max = M*(1 - ln M / c + (gamma + gain)/c),
        gain = ln(1 + e^(a-gamma)),   t0 = 1/(1 + e^(gamma-a)).
    """
    if c <= 1.0:
        raise InvalidArgumentError(f"need c > 1, got c={c}")
    if M <= c:
        raise InvalidArgumentError(f"need M > c, got M={M}, c={c}")
    gain = log1pexp(a - gamma)
    t0 = sigmoid(a - gamma)
    max_value = M * (1.0 - math.log(M) / c + (gamma + gain) / c)
    return ObjectiveMax(max_value, t0, gain)


def objective_grid_max(c: float, M: float, gamma: float, a: float,
                       num: int = 100_000) -> tuple[float, float]:
    """Dense-grid maximum of the objective (vectorized): the independent
    check against the closed form. Returns (best value, argmax z)."""
    cap = M / c
    z = np.linspace(0.0, cap, num)
    with np.errstate(divide="ignore", invalid="ignore"):
        zlz = np.where(z > 0.0, z * np.log(np.where(z > 0.0, z, 1.0)), 0.0)
        w = cap - z
        wlw = np.where(w > 0.0, w * np.log(np.where(w > 0.0, w, 1.0)), 0.0)
    h = (M * (1.0 + gamma / c) + (a - gamma) * z - cap * math.log(c) - zlz - wlw)
    i = int(np.argmax(h))
    return float(h[i]), float(z[i])


def fform_log(c: float, M: float, gamma: float, denominator: str = "c+1") -> float:
    """The recurring exponent M*(1 - ln M / d + gamma / d); ``denominator``
    selects d = c or d = c + 1, both of which appear in displayed bounds."""
    if denominator == "c":
        d = c
    elif denominator == "c+1":
        d = c + 1.0
    else:
        raise InvalidArgumentError(f"denominator must be 'c' or 'c+1', got {denominator!r}")
    if d <= 0 or M <= 0:
        raise InvalidArgumentError(f"need positive M and denominator, got M={M}, d={d}")
    return M * (1.0 - math.log(M) / d + gamma / d)


def gamma_schedule(c: float, M: float, mode: str, offset: float) -> float:
    """Offset schedules driving the iterations.

    * lower: offset + ln c - ln ln M
    * upper: offset + ln c + ln ln c - ln ln M
    """
    if M <= _E:
        raise InvalidArgumentError(f"schedule needs M > e, got M={M}")
    if mode == "lower":
        if c <= 0:
            raise InvalidArgumentError(f"need c > 0, got c={c}")
        return offset + math.log(c) - math.log(math.log(M))
    if mode == "upper":
        if c <= _E:
            raise InvalidArgumentError(f"upper schedule needs c > e, got c={c}")
        return offset + math.log(c) + math.log(math.log(c)) - math.log(math.log(M))
    raise InvalidArgumentError(f"mode must be 'lower' or 'upper', got {mode!r}")


def lower_iteration_trace(c: float, M: float, alpha: float, beta: float,
                          max_steps: int = 200) -> IterationTrace:
    """Trace of the lower-bound iteration (c, M) -> (c-1, M*(1-t)).

    Per step, with a = sharp_offset():
      gamma   = a - alpha + ln c - ln ln M        (recorded schedule value)
      gamma0  = a - alpha + ln(c-1) - ln ln M     (drives the maximizer)
      t       = 1/(1 + e^(gamma0 - a))
    The step also records membership in {M <= e^(beta*c)} and whether the
    contraction ln M' < ln M * (1 - e^(alpha/2)/c) held; the equivalent
    ratio form ln M'/(c-1) < (ln M / c)*((c - e^(alpha/2))/(c-1)) holds on
    exactly the same steps.
    """
    if alpha <= 0 or beta <= 0:
        raise InvalidArgumentError("alpha and beta must be positive")
    if c <= 2.0 or M <= _E:
        raise InvalidArgumentError(f"need c > 2 and M > e to start, got c={c}, M={M}")
    if max_steps < 1:
        raise InvalidArgumentError("max_steps must be >= 1")
    a = sharp_offset()
    steps = []
    stop_reason = "max_steps"
    while len(steps) < max_steps:
        if c <= 2.0:
            stop_reason = "c<=2"
            break
        if M <= _E:
            stop_reason = "M<=e"
            break
        log_m = math.log(M)
        gamma = a - alpha + math.log(c) - math.log(log_m)
        gamma0 = a - alpha + math.log(c - 1.0) - math.log(log_m)
        t = sigmoid(a - gamma0)
        m_next = M * (1.0 - t)
        in_domain = log_m <= beta * c
        contraction = math.log(m_next) < log_m * (1.0 - math.exp(alpha / 2.0) / c)
        steps.append(TraceStep(c, M, gamma, t, in_domain, contraction))
        c -= 1.0
        M = m_next
    return IterationTrace(steps=steps, alpha=alpha, beta=beta, stop_reason=stop_reason)


def _log2(x: float, what: str) -> float:
    if x <= 1.0:
        raise InvalidArgumentError(f"{what} needs its double log defined")
    return math.log(math.log(x))


def lower_bound_rhs(n: float, N: float, a: Optional[float] = None,
                    delta: float = 0.0) -> float:
    """Asymptotic lower-bound right-hand side for ln(count)/ln N:

        1 - (ln ln N + ln ln ln N)/ln n + (a + ln ln n + delta)/ln n

    with a defaulting to the sharp offset 1 + ln(e-1)."""
    if a is None:
        a = sharp_offset()
    if n <= _E:
        raise InvalidArgumentError(f"need n > e, got n={n}")
    if N <= math.exp(_E):
        raise InvalidArgumentError(f"need N > e^e, got N={N}")
    lln_n = _log2(n, "n")
    lln_N = _log2(N, "N")
    return (1.0 - (lln_N + math.log(lln_N)) / math.log(n)
            + (a + lln_n + delta) / math.log(n))


def upper_bound_rhs(n: float, N: float, a_bar: float = 0.0,
                    with_tail: bool = False) -> float:
    """Asymptotic upper-bound right-hand side:

        1 - (ln ln N + ln ln ln N)/ln n + (a_bar + ln ln n + ln ln ln n)/ln n

    plus, when with_tail is set, the finite-range term
    ln n * ln(2 ln N) / ln N."""
    if n <= math.exp(_E):
        raise InvalidArgumentError(f"need n > e^e, got n={n}")
    if N <= math.exp(_E):
        raise InvalidArgumentError(f"need N > e^e, got N={N}")
    lln_n = _log2(n, "n")
    lln_N = _log2(N, "N")
    rhs = (1.0 - (lln_N + math.log(lln_N)) / math.log(n)
           + (a_bar + lln_n + math.log(lln_n)) / math.log(n))
    if with_tail:
        rhs += math.log(n) * math.log(2.0 * math.log(N)) / math.log(N)
    return rhs


def upper_domain_gap(n: float, N: float) -> float:
    """sqrt(n) - ln N: positive inside the upper bound's stated range
    N < e^sqrt(n), zero exactly on its boundary."""
    return math.sqrt(n) - math.log(N)


class PolylogRhs(NamedTuple):
    rhs: float              # 1 - ln ln N / ln n + C / ln n
    n: float                # the induced n = alpha * (ln N)^2
    log_count_bound: float  # ln N / 2 + C*sqrt(n)/ln n


def polylog_regime_rhs(N: float, alpha: float, C: float) -> PolylogRhs:
    """Bound evaluators for the regime n = alpha*(ln N)^2."""
    if N <= _E:
        raise InvalidArgumentError(f"need N > e, got N={N}")
    if alpha <= 0:
        raise InvalidArgumentError(f"need alpha > 0, got {alpha}")
    if C <= 1:
        raise InvalidArgumentError(f"need C > 1, got {C}")
    n = alpha * math.log(N) ** 2
    if n <= 1.0:
        raise InvalidArgumentError(f"induced n={n} is too small for ln n > 0")
    rhs = 1.0 - _log2(N, "N") / math.log(n) + C / math.log(n)
    log_count_bound = 0.5 * math.log(N) + C * math.sqrt(n) / math.log(n)
    return PolylogRhs(rhs, n, log_count_bound)


class LadderValue(NamedTuple):
    depth_value: float   # the k-fold iterated log of x
    partial_sum: float   # sum of the iterated logs from depth 2 through k


def iterated_log_ladder(x: float, k: int) -> LadderValue:
    """k-fold iterated logarithm of x plus the partial sum from depth 2.

    Fails with the offending depth named when an intermediate value drops
    to <= 0 before depth k. For k=2 the partial sum is ln ln x."""
    if k < 1:
        raise InvalidArgumentError(f"need k >= 1, got {k}")
    value = x
    levels = []
    for depth in range(1, k + 1):
        if value <= 0.0:
            raise InvalidArgumentError(
                f"iterated log hit {value} at depth {depth} before reaching k={k}")
        value = math.log(value)
        levels.append(value)
    return LadderValue(levels[-1], math.fsum(levels[1:]))


def upper_step_flags(c: float, M: float, a_bar: float = 0.0, q: float = 1.1,
                     budget_scale: Optional[float] = None) -> dict:
    """Reported diagnostics for one upper-bound iteration step.

    The proof-internal constants have no fixed values; ``q`` and
    ``budget_scale`` (default e^2 * (sharp_offset() + 1)) are configurable.
    Returns reported booleans only; nothing here is asserted.
    """
    k_const = sharp_offset() + 1.0
    if budget_scale is None:
        budget_scale = math.exp(2.0) * k_const
    out = {"step_ok": None, "scale_ok": None, "budget_ok": None}
    out["budget_ok"] = M > budget_scale * c
    if c > _E and M > _E:
        log_m = math.log(M)
        out["scale_ok"] = math.log(k_const * c) < (1.0 - q / math.log(c)) * log_m
        if c - 1.0 > _E:
            gamma_here = gamma_schedule(c, M, "upper", a_bar)
            gamma0 = gamma_schedule(c - 1.0, M, "upper", a_bar)
            t0 = sigmoid(sharp_offset() - gamma0)
            m0 = M * (1.0 - t0)
            if m0 > _E:
                gamma0 = gamma_schedule(c - 1.0, m0, "upper", a_bar)
                gain = log1pexp(sharp_offset() - gamma0)
                out["step_ok"] = ((gamma0 + gain) / c
                                  < log_m / (c * (c + 1.0)) + gamma_here / (c + 1.0))
    return out

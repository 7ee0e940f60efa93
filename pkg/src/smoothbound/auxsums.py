"""Parametric weighted exponential sums over integer simplices.

An instance is built from a pair (c, M) with c > 1, M > 1. With r = [c],
variable i carries weight c - i and base m_i = (e-1) * e^(c-i) / (c-i):

* the *plain* kind sums prod(m_i^z_i / z_i!) over the r variables
  i = 0..r-1 subject to sum((c-i) * z_i) < M (used for lower bounds),
* the *corrected* kind adds the variable i = r and an e^(z_i^2 / m_i)
  factor per term (used for upper bounds); it needs c non-integral, since
  weight c - r = 0 would unbound the last variable.

Fixing z_0 reduces an instance to the (c-1, M - c*z_0) instance over the
remaining variables; ``*_by_reduction`` evaluate through that recursion,
independently of the direct enumerations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .bounds import BoundReport
from .errors import DegenerateWeightError, InvalidArgumentError, ResourceLimitError
from .numutil import LogSumExp, effective_guard, strict_cap

KIND_PLAIN = "plain"
KIND_CORRECTED = "corrected"

DEFAULT_ENUM_GUARD = 100_000_000
# Hard per-variable cap: small last weights (c close to an integer) make a
# single variable range enormous; fail loudly instead of truncating.
PER_VARIABLE_CAP = 1_000_000


def _base(c: float, i: int) -> float:
    return (math.e - 1.0) * math.exp(c - i) / (c - i)


@dataclass(frozen=True)
class AuxInstance:
    c: float
    M: float
    kind: str
    r: int
    weights: tuple
    bases: tuple


def make_aux_instance(c: float, M: float, kind: str) -> AuxInstance:
    if kind not in (KIND_PLAIN, KIND_CORRECTED):
        raise InvalidArgumentError(f"kind must be 'plain' or 'corrected', got {kind!r}")
    if c <= 1:
        raise InvalidArgumentError(f"need c > 1, got c={c}")
    if M <= 1:
        raise InvalidArgumentError(f"need M > 1, got M={M}")
    r = math.floor(c)
    top = r - 1 if kind == KIND_PLAIN else r
    if kind == KIND_CORRECTED and float(c).is_integer():
        raise DegenerateWeightError(
            f"integral c={c} gives the last corrected variable weight 0",
            index=r)
    weights = tuple(c - i for i in range(top + 1))
    bases = tuple(_base(c, i) for i in range(top + 1))
    return AuxInstance(c=float(c), M=float(M), kind=kind, r=r,
                       weights=weights, bases=bases)


@dataclass(frozen=True)
class AuxSumResult:
    value: float
    log_value: float
    points: int
    # Corrected sums track the worst z^2/m over the enumeration; the
    # comparison against 2^c * plain is only provable while it stays
    # below ln 2.
    max_square_over_base: Optional[float] = None
    premise_ok: Optional[bool] = None


def _enumerate(inst: AuxInstance, corrected: bool, guard: int) -> AuxSumResult:
    acc = LogSumExp()
    states = 0
    max_ratio = 0.0

    def recurse(idx: int, budget: float, partial_log: float) -> None:
        nonlocal states, max_ratio
        if idx == len(inst.weights):
            acc.add(partial_log)
            return
        w = inst.weights[idx]
        m = inst.bases[idx]
        cap = strict_cap(w, budget)
        if cap > PER_VARIABLE_CAP:
            raise ResourceLimitError(
                f"variable {idx} would range over {cap + 1} values "
                f"(weight {w}); cap is {PER_VARIABLE_CAP}")
        log_m = math.log(m)
        for z in range(cap + 1):
            states += 1
            if states > guard:
                raise ResourceLimitError(
                    f"enumeration guard {guard} exceeded", partial=acc.total())
            term = z * log_m - math.lgamma(z + 1)
            if corrected:
                ratio = z * z / m
                if ratio > max_ratio:
                    max_ratio = ratio
                term += ratio
            recurse(idx + 1, budget - w * z, partial_log + term)

    recurse(0, inst.M, 0.0)
    if corrected:
        return AuxSumResult(value=acc.total(), log_value=acc.total_log(),
                            points=acc.count, max_square_over_base=max_ratio,
                            premise_ok=max_ratio < math.log(2.0))
    return AuxSumResult(value=acc.total(), log_value=acc.total_log(),
                        points=acc.count)


def plain_sum(inst: AuxInstance, *, guard: int | None = None) -> AuxSumResult:
    """Direct log-space enumeration of the plain sum; at least 1 (the zero
    vector always satisfies the constraint)."""
    if inst.kind != KIND_PLAIN:
        raise InvalidArgumentError("plain_sum needs a plain instance")
    return _enumerate(inst, corrected=False,
                      guard=effective_guard(guard, DEFAULT_ENUM_GUARD))


def corrected_sum(inst: AuxInstance, *, guard: int | None = None) -> AuxSumResult:
    """Direct log-space enumeration of the corrected sum."""
    if inst.kind != KIND_CORRECTED:
        raise InvalidArgumentError("corrected_sum needs a corrected instance")
    return _enumerate(inst, corrected=True,
                      guard=effective_guard(guard, DEFAULT_ENUM_GUARD))


def plain_sum_by_reduction(c: float, M: float) -> float:
    """Plain sum through the fix-z0-and-reduce recursion, in plain float
    arithmetic: the independent route against plain_sum."""
    if M <= 0.0:
        return 0.0
    m0 = _base(c, 0)
    cap = strict_cap(c, M)
    if math.floor(c) <= 1:
        return math.fsum(m0 ** z / math.factorial(z) for z in range(cap + 1))
    return math.fsum(
        plain_sum_by_reduction(c - 1.0, M - c * z) * m0 ** z / math.factorial(z)
        for z in range(cap + 1))


def corrected_sum_by_reduction(c: float, M: float) -> float:
    """Corrected sum through the same reduction; the last variable is the
    one with 0 < c < 1."""
    if M <= 0.0:
        return 0.0
    m0 = _base(c, 0)
    cap = strict_cap(c, M)
    if math.floor(c) <= 0:
        return math.fsum(m0 ** z * math.exp(z * z / m0) / math.factorial(z)
                         for z in range(cap + 1))
    return math.fsum(
        corrected_sum_by_reduction(c - 1.0, M - c * z)
        * m0 ** z * math.exp(z * z / m0) / math.factorial(z)
        for z in range(cap + 1))


def corrected_vs_plain_report(c: float, M: float, *,
                              guard: int | None = None) -> BoundReport:
    """Compare ln(corrected) against ln(plain) + c*ln 2.

    The comparison is asserted only when every enumerated term satisfied
    z^2/m < ln 2 (that premise also needs c > e/ln 2); the report flags
    whether the pair lies in the stated domain M <= e^(c/2). Outside those
    conditions the margin is recorded as reported.
    """
    plain = plain_sum(make_aux_instance(c, M, KIND_PLAIN), guard=guard)
    corrected = corrected_sum(make_aux_instance(c, M, KIND_CORRECTED), guard=guard)
    scale = c * math.log(2.0)
    margin = plain.log_value + scale - corrected.log_value
    premise = bool(corrected.premise_ok) and c > math.e / math.log(2.0)
    flags = {
        "plain_plus_scale": "asserted" if premise else "premise-failed",
        "domain": "inside" if M <= math.exp(c / 2.0) else "outside",
        "scale_threshold": "ok" if c > math.e / math.log(2.0) else "below",
    }
    return BoundReport(
        inputs={"c": float(c), "M": float(M),
                "max_square_over_base": corrected.max_square_over_base},
        exact_log=corrected.log_value,
        bound_logs={"plain_plus_scale": plain.log_value + scale},
        margins={"plain_plus_scale": margin},
        flags=flags)


def seed_coefficient(kappa: float, gamma: float) -> float:
    """The seed constant e^(-e^(kappa+gamma)) that starts the lower-bound
    induction; satisfies B * e^(e^(kappa+gamma)/(kappa+1)) < 1 for
    kappa > 0."""
    t = kappa + gamma
    if t > 709.0:
        return 0.0
    return math.exp(-math.exp(t))

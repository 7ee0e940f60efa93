import math

import numpy as np
import pytest

from smoothbound import (InvalidArgumentError, iterated_log_ladder,
                         iteration_objective, iteration_objective_max,
                         fform_log, gamma_schedule, lower_bound_rhs,
                         lower_iteration_trace, objective_grid_max,
                         polylog_regime_rhs, sharp_offset, upper_bound_rhs,
                         upper_domain_gap, upper_step_flags)
from smoothbound.bounds import BoundReport


def test_sharp_offset_is_computed():
    assert sharp_offset() == pytest.approx(1.0 + math.log(math.e - 1.0), rel=1e-16)


def test_objective_spot_values():
    a = sharp_offset()
    c, M, gamma = 10.0, 30.0, 1.0
    # value at z=1 against an independent recomposition of its two parts
    m0 = (math.e - 1.0) * math.exp(c) / c
    part_a = (M - c) - (M - c) * math.log(M - c) / c + (M - c) * gamma / c
    part_e = math.log(m0) - math.log(1.0) + 1.0
    assert iteration_objective(1.0, c, M, gamma, a) == pytest.approx(
        part_a + part_e, rel=1e-12)
    # continuous extension at z -> 0
    cap = M / c
    limit = M * (1 + gamma / c) - cap * math.log(c) - cap * math.log(cap)
    assert iteration_objective(0.0, c, M, gamma, a) == pytest.approx(limit,
                                                                     rel=1e-12)
    with pytest.raises(InvalidArgumentError):
        iteration_objective(cap + 0.5, c, M, gamma, a)
    with pytest.raises(InvalidArgumentError):
        iteration_objective(1.0, c, c - 1.0, gamma, a)


def test_objective_symmetric_maximizer():
    res = iteration_objective_max(10.0, 30.0, 1.7, 1.7)
    assert abs(res.gain - math.log(2.0)) < 1e-12
    assert abs(res.t0 - 0.5) < 1e-12
    mid = iteration_objective(0.5 * 30.0 / 10.0, 10.0, 30.0, 1.7, 1.7)
    assert res.max_value == pytest.approx(mid, rel=1e-12)


def test_objective_max_against_grid_samples():
    rng = np.random.default_rng(42)
    for _ in range(25):
        c = rng.uniform(5.0, 50.0)
        M = rng.uniform(2.0 * c, math.exp(c / 2.0))
        gamma = rng.uniform(0.0, 5.0)
        a = rng.uniform(0.0, 2.0)
        closed = iteration_objective_max(c, M, gamma, a)
        best, argmax = objective_grid_max(c, M, gamma, a, num=20_000)
        scale = max(1.0, abs(closed.max_value))
        assert best <= closed.max_value + 1e-9 * scale
        assert closed.max_value - best <= 1e-4 * scale
        step = (M / c) / (20_000 - 1)
        assert abs(argmax - closed.t0 * M / c) <= step * (1 + 1e-9)
        # closed-form maximum equals the objective at its own maximizer
        at_t0 = iteration_objective(closed.t0 * M / c, c, M, gamma, a)
        assert closed.max_value == pytest.approx(at_t0, rel=1e-9)


def test_objective_max_large_offset_limit():
    got = iteration_objective_max(10.0, 30.0, 40.0, 1.0)
    plain = 30.0 * (1.0 - math.log(30.0) / 10.0 + 40.0 / 10.0)
    assert got.max_value == pytest.approx(plain, rel=1e-12)
    assert got.t0 < 1e-16


def test_fform_denominator_modes():
    base = fform_log(10.0, 30.0, 1.0, denominator="c")
    shifted = fform_log(10.0, 30.0, 1.0, denominator="c+1")
    assert base == pytest.approx(30.0 * (1 - math.log(30.0) / 10 + 0.1))
    assert shifted == pytest.approx(30.0 * (1 - math.log(30.0) / 11 + 1.0 / 11))
    with pytest.raises(InvalidArgumentError):
        fform_log(10.0, 30.0, 1.0, denominator="c+2")


def test_gamma_schedule_spots():
    assert gamma_schedule(math.e ** 2, math.exp(math.e), "lower", 0.0) == \
        pytest.approx(1.0, rel=1e-12)
    assert gamma_schedule(math.exp(math.e), math.exp(math.e), "upper", 0.0) == \
        pytest.approx(math.e, rel=1e-12)
    a = sharp_offset()
    got = gamma_schedule(20.0, 100.0, "lower", a)
    assert got == pytest.approx(a + math.log(20.0) - math.log(math.log(100.0)),
                                rel=1e-14)
    with pytest.raises(InvalidArgumentError):
        gamma_schedule(20.0, 2.0, "lower", 0.0)
    with pytest.raises(InvalidArgumentError):
        gamma_schedule(2.0, 100.0, "upper", 0.0)


def test_trace_structure():
    trace = lower_iteration_trace(50.0, math.exp(10.0), alpha=0.1, beta=0.5)
    assert trace.stop_reason in ("c<=2", "M<=e", "max_steps")
    assert all(step.in_domain for step in trace.steps)
    first = trace.steps[0]
    assert first.c == 50.0 and first.M == math.exp(10.0)
    for prev, cur in zip(trace.steps, trace.steps[1:]):
        assert cur.c == prev.c - 1.0
        assert cur.M == pytest.approx(prev.M * (1.0 - prev.t), rel=1e-15)
        assert 0.0 < prev.t < 1.0
    # one-step update definition
    single = lower_iteration_trace(10.0, math.exp(4.0), alpha=0.1, beta=0.5,
                                   max_steps=1)
    gamma0 = sharp_offset() - 0.1 + math.log(9.0) - math.log(4.0)
    t0 = 1.0 / (1.0 + math.exp(gamma0 - sharp_offset()))
    assert single.steps[0].t == pytest.approx(t0, rel=1e-14)


def test_trace_contraction_on_small_start():
    trace = lower_iteration_trace(50.0, math.exp(2.0), alpha=0.1, beta=0.4)
    assert len(trace.steps) > 5
    for step in trace.steps:
        if step.in_domain:
            assert step.contraction_held
            # equivalent ratio form of the same contraction
            m_next = step.M * (1.0 - step.t)
            lhs = math.log(m_next) / (step.c - 1.0)
            rhs = (math.log(step.M) / step.c) * \
                ((step.c - math.exp(0.05)) / (step.c - 1.0))
            assert lhs < rhs


def test_trace_near_boundary_flags_exit():
    # starting right at the boundary, the second step falls outside:
    # the step shrinks ln M by less than the beta*c threshold drops
    trace = lower_iteration_trace(10.0, math.exp(4.99), alpha=0.1, beta=0.5)
    assert trace.steps[0].in_domain
    assert any(not step.in_domain for step in trace.steps)
    trace2 = lower_iteration_trace(10.0, math.exp(4.9), alpha=0.1, beta=0.48)
    assert not trace2.steps[0].in_domain


def test_trace_validation():
    with pytest.raises(InvalidArgumentError):
        lower_iteration_trace(2.0, 100.0, alpha=0.1, beta=0.5)
    with pytest.raises(InvalidArgumentError):
        lower_iteration_trace(10.0, 2.0, alpha=0.1, beta=0.5)
    with pytest.raises(InvalidArgumentError):
        lower_iteration_trace(10.0, 100.0, alpha=-1.0, beta=0.5)


def test_lower_rhs_values():
    a = sharp_offset()
    n, N = math.exp(math.e) * (1 + 1e-12), math.exp(math.exp(math.e))
    want = 1.0 - (math.e + 1.0) / math.e + (a + 1.0) / math.e
    assert lower_bound_rhs(n, N) == pytest.approx(want, abs=1e-9)
    # delta enters linearly with slope 1/ln n
    d0 = lower_bound_rhs(100.0, 1e6, delta=0.0)
    d2 = lower_bound_rhs(100.0, 1e6, delta=2.0)
    assert d2 - d0 == pytest.approx(2.0 / math.log(100.0), rel=1e-12)
    got = lower_bound_rhs(100.0, 1e6, a=a, delta=0.0)
    lln_N = math.log(math.log(1e6))
    manual = (1.0 - (lln_N + math.log(lln_N)) / math.log(100.0)
              + (a + math.log(math.log(100.0))) / math.log(100.0))
    assert got == pytest.approx(manual, rel=1e-14)
    with pytest.raises(InvalidArgumentError):
        lower_bound_rhs(2.0, 1e6)
    with pytest.raises(InvalidArgumentError):
        lower_bound_rhs(100.0, 10.0)


def test_upper_rhs_values():
    n = math.exp(math.exp(math.e))  # ln n = e^e, ln ln n = e, ln ln ln n = 1
    got = upper_bound_rhs(n, 1e10, a_bar=0.5)
    lln_N = math.log(math.log(1e10))
    manual = (1.0 - (lln_N + math.log(lln_N)) / math.exp(math.e)
              + (0.5 + math.e + 1.0) / math.exp(math.e))
    assert got == pytest.approx(manual, rel=1e-12)
    plain = upper_bound_rhs(200.0, 1e8)
    tailed = upper_bound_rhs(200.0, 1e8, with_tail=True)
    tail = math.log(200.0) * math.log(2.0 * math.log(1e8)) / math.log(1e8)
    assert tailed - plain == pytest.approx(tail, rel=1e-12)
    with pytest.raises(InvalidArgumentError):
        upper_bound_rhs(10.0, 1e8)  # needs n > e^e


def test_formula_ordering_lower_below_upper():
    a = sharp_offset()
    for n in (20.0, 50.0, 100.0, 1000.0):
        for N in (1e4, 1e6, 1e12):
            lo = lower_bound_rhs(n, N, delta=0.0)
            hi = upper_bound_rhs(n, N, a_bar=a)
            assert lo <= hi


def test_upper_domain_gap():
    assert upper_domain_gap(1000.0, math.exp(math.sqrt(1000.0))) == \
        pytest.approx(0.0, abs=1e-12)
    assert upper_domain_gap(1000.0, 1e6) > 0
    assert upper_domain_gap(16.0, 1e6) < 0


def test_polylog_regime():
    got = polylog_regime_rhs(math.exp(10.0), 1.0, 2.0)
    assert got.n == pytest.approx(100.0, rel=1e-12)
    assert got.rhs == pytest.approx(1.0 - math.log(10.0) / math.log(100.0)
                                    + 2.0 / math.log(100.0), rel=1e-12)
    spot = polylog_regime_rhs(1e6, 191.0 / math.log(1e6) ** 2, 2.0)
    assert spot.n == pytest.approx(191.0, rel=1e-12)
    assert spot.log_count_bound == pytest.approx(
        0.5 * math.log(1e6) + 2.0 * math.sqrt(191.0) / math.log(191.0), rel=1e-12)
    # continuity in the scale parameter
    lo = polylog_regime_rhs(1e6, 1.0, 1.5)
    hi = polylog_regime_rhs(1e6, 1.0 + 1e-9, 1.5)
    assert hi.rhs == pytest.approx(lo.rhs, abs=1e-8)
    with pytest.raises(InvalidArgumentError):
        polylog_regime_rhs(1e6, 1.0, 0.5)


def test_iterated_log_ladder():
    lad = iterated_log_ladder(math.exp(math.exp(math.e)), 3)
    assert lad.depth_value == pytest.approx(1.0, abs=1e-12)
    assert lad.partial_sum == pytest.approx(math.e + 1.0, abs=1e-12)
    assert iterated_log_ladder(1e10, 2).partial_sum == \
        pytest.approx(math.log(math.log(1e10)), rel=1e-15)
    assert iterated_log_ladder(1e10, 3).depth_value == \
        pytest.approx(math.log(math.log(math.log(1e10))), rel=1e-15)
    with pytest.raises(InvalidArgumentError) as err:
        iterated_log_ladder(2.0, 3)  # ln ln 2 < 0, depth 3 impossible
    assert "depth 3" in str(err.value)


def test_ladder_reduces_to_displayed_formulas():
    # depth-3 ladder values rebuild the displayed lower/upper right sides
    a = sharp_offset()
    for n, N in ((50.0, 1e6), (100.0, 1e8)):
        ln_n = math.log(n)
        lad_N = iterated_log_ladder(N, 3)
        lad_n_2 = iterated_log_ladder(n, 2)
        lad_n_3 = iterated_log_ladder(n, 3)
        rebuilt_lower = 1.0 - lad_N.partial_sum / ln_n + \
            (a + lad_n_2.partial_sum) / ln_n
        assert rebuilt_lower == pytest.approx(lower_bound_rhs(n, N), rel=1e-12)
        rebuilt_upper = 1.0 - lad_N.partial_sum / ln_n + \
            (0.0 + lad_n_3.partial_sum) / ln_n
        assert rebuilt_upper == pytest.approx(upper_bound_rhs(n, N), rel=1e-12)


def test_upper_step_flags_reported():
    flags = upper_step_flags(30.0, math.exp(10.0))
    assert set(flags) == {"step_ok", "scale_ok", "budget_ok"}
    small = upper_step_flags(2.0, 10.0)
    assert small["step_ok"] is None  # schedule undefined below c = e + 1


def test_bound_report_schema():
    report = BoundReport(inputs={"x": 1.0}, bound_logs={"b": 2.0},
                         margins={"b": 0.5}, flags={"b": "reported"})
    assert report.as_dict()["margins"] == {"b": 0.5}
    with pytest.raises(InvalidArgumentError):
        BoundReport(bound_logs={}, margins={"missing": 1.0})

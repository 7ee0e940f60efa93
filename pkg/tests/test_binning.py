import math

import numpy as np
import pytest

from smoothbound import (DegenerateWeightError, InvalidArgumentError,
                         ResourceLimitError, aggregate_exponents,
                         assignment_count, bin_index, build_binning,
                         compositions_count, count_lower_bound,
                         count_upper_bound, smooth_count_direct,
                         smoothness_index)

from conftest import largest_prime_factor

SANDWICH_N = (10.0, 20.0, 35.0, 50.0)
SANDWICH_BIG_N = (1e3, 1e4, 1e5)


def test_depth_rule(table_1e6):
    # ln 100 = 4.605 sits below 4 + ln 2: narrow case with 4 bins.
    spec = build_binning(100.0, table_1e6)
    assert (spec.case_tag, spec.r) == ("r1", 4)
    # ln 122 = 4.804 exceeds 4 + ln 2: wide case with 5 bins.
    spec = build_binning(122.0, table_1e6)
    assert (spec.case_tag, spec.r) == ("r2", 5)


def test_bin_structure(table_1e6):
    spec = build_binning(100.0, table_1e6)
    assert sum(spec.prime_counts) == smoothness_index(table_1e6, 100.0)
    lo, hi = spec.bins[0]
    assert hi == 100.0 and lo == pytest.approx(100.0 / math.e)
    # first bin: primes strictly inside (n/e, n)
    assert spec.prime_counts[0] == sum(
        1 for p in range(37, 100) if largest_prime_factor(p) == p)
    for n in (7.5, 10.0, 20.0, 35.0, 50.0, 99.0, 122.0, 1000.0):
        spec = build_binning(n, table_1e6)
        assert sum(spec.prime_counts) == smoothness_index(table_1e6, n)
        assert spec.bins[-1][0] < 2.0  # every prime >= 2 is covered
        assert all(w > 0 for w in spec.weights_upper)
        assert all(spec.weights_lower[i] > 0 or spec.prime_counts[i] == 0
                   for i in range(spec.r))
        for i in range(spec.r - 1):
            assert spec.weights_lower[i] == pytest.approx(math.log(n) - (i + 1))
            assert spec.bins[i + 1][1] == spec.bins[i][0]  # shared edges
        assert spec.weights_upper[0] == pytest.approx(math.log(n))


def test_wide_case_last_bin_holds_only_two(table_1e6):
    for n in (20.0, 50.0, 122.0):
        spec = build_binning(n, table_1e6)
        assert spec.case_tag == "r2"
        assert spec.prime_counts[-1] == 1
        assert spec.bins[-1][0] < 2.0 <= spec.bins[-1][1]
        assert spec.weights_lower[-1] == pytest.approx(math.log(2.0))


def test_build_binning_validation(table_100):
    with pytest.raises(InvalidArgumentError):
        build_binning(2.5, table_100)
    with pytest.raises(InvalidArgumentError):
        build_binning(500.0, table_100)


def test_bin_index_and_aggregation(table_1e6):
    spec = build_binning(50.0, table_1e6)
    primes = [p for p in range(2, 50) if largest_prime_factor(p) == p]
    for p in primes:
        i = bin_index(spec, p)
        lo, hi = spec.bins[i - 1]
        assert lo < p <= hi or (i == 1 and lo < p < 50.0)
    rng = np.random.default_rng(7)
    for _ in range(100):
        x = rng.integers(0, 6, size=len(primes)).tolist()
        z = aggregate_exponents(spec, primes, x)
        assert sum(z) == sum(x)
        assert len(z) == spec.r


def test_assignment_count(table_1e6):
    spec = build_binning(100.0, table_1e6)
    assert assignment_count([0] * spec.r, spec) == 1
    z = [2] + [0] * (spec.r - 1)
    assert assignment_count(z, spec) == compositions_count(2, spec.prime_counts[0])
    # an empty bin cannot carry weight
    padded = build_binning(10.0, table_1e6)
    assert padded.prime_counts == (2, 2)
    assert assignment_count((1, 1), padded) == 4
    with pytest.raises(InvalidArgumentError):
        assignment_count([0], spec)


def test_upper_count_equals_zspace_oracle(table_1e6):
    # independent z-space enumeration: iterate boxes, filter, sum products
    for n, N in ((10.0, 1e3), (20.0, 1e3), (35.0, 1e3)):
        spec = build_binning(n, table_1e6)
        budget = math.log(N)
        caps = [int(budget / w) + 1 for w in spec.weights_lower]
        total = 0

        def rec(i, used, prod):
            nonlocal total
            if used >= budget:
                return
            if i == spec.r:
                total += prod
                return
            for z in range(caps[i] + 1):
                rec(i + 1, used + z * spec.weights_lower[i],
                    prod * compositions_count(z, spec.prime_counts[i]))

        rec(0, 0.0, 1)
        assert count_upper_bound(spec, N) == total


def test_upper_count_equals_xspace_bruteforce(table_1e6):
    n, N = 10.0, 100.0
    spec = build_binning(n, table_1e6)
    budget = math.log(N)
    primes = [2, 3, 5, 7]
    weights = [spec.weights_lower[bin_index(spec, p) - 1] for p in primes]
    caps = [int(budget / w) + 1 for w in weights]
    count = 0

    def rec(i, acc):
        nonlocal count
        if acc >= budget:
            return
        if i == len(primes):
            count += 1
            return
        for v in range(caps[i] + 1):
            rec(i + 1, acc + v * weights[i])

    rec(0, 0.0)
    assert count_upper_bound(spec, N) == count


def test_sandwich_grid(table_1e6):
    for n in SANDWICH_N:
        spec = build_binning(n, table_1e6)
        for N in SANDWICH_BIG_N:
            nu = smooth_count_direct(n, N).nu
            lower = count_lower_bound(spec, N)
            upper = count_upper_bound(spec, N)
            assert lower.value <= nu <= upper, (n, N)
            assert lower.product_bound_ok
            assert lower.log_value == pytest.approx(math.log(lower.value), rel=1e-12)


def test_trivial_feasibility_cells(table_1e6):
    spec = build_binning(10.0, table_1e6)
    lower = count_lower_bound(spec, 1.5)
    assert lower.value == 1.0  # only the zero vector fits
    assert count_upper_bound(spec, 2.5) >= smooth_count_direct(10, 2.5).nu == 1


def test_lower_bound_empty_bin_terms(table_1e6):
    # a wide-case last bin with its single prime removed cannot contribute
    spec = build_binning(20.0, table_1e6)
    crippled = type(spec)(n=spec.n, r=spec.r, case_tag=spec.case_tag,
                          bins=spec.bins, weights_upper=spec.weights_upper,
                          weights_lower=spec.weights_lower,
                          prime_counts=spec.prime_counts[:-1] + (0,),
                          count_floor_estimates=spec.count_floor_estimates,
                          count_pnt_estimates=spec.count_pnt_estimates)
    full = count_lower_bound(spec, 1e3)
    reduced = count_lower_bound(crippled, 1e3)
    assert reduced.value < full.value


def test_degenerate_weight_raises(table_1e6):
    spec = build_binning(20.0, table_1e6)
    broken = type(spec)(n=spec.n, r=spec.r, case_tag=spec.case_tag,
                        bins=spec.bins, weights_upper=spec.weights_upper,
                        weights_lower=spec.weights_lower[:-1] + (0.0,),
                        prime_counts=spec.prime_counts,
                        count_floor_estimates=spec.count_floor_estimates,
                        count_pnt_estimates=spec.count_pnt_estimates)
    with pytest.raises(DegenerateWeightError) as err:
        count_upper_bound(broken, 1e3)
    assert err.value.index == broken.r


def test_enumeration_guard(table_1e6):
    spec = build_binning(50.0, table_1e6)
    with pytest.raises(ResourceLimitError):
        count_upper_bound(spec, 1e5, guard=10)
    with pytest.raises(ResourceLimitError):
        count_lower_bound(spec, 1e5, guard=10)


def test_count_estimates_reported(table_1e6):
    # approximations are stored for comparison; exact counts do the math
    spec = build_binning(1000.0, table_1e6)
    for i in range(spec.r - 1):
        est = spec.count_floor_estimates[i]
        assert est == pytest.approx(
            1000.0 / (math.e ** (i + 1) * (math.log(1000.0) - (i + 1))))
        assert spec.count_pnt_estimates[i] == pytest.approx(est * (math.e - 1.0))

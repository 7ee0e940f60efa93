"""The built-in verification suite behind ``smoothbound verify``.

Every check here asserts an exact identity, an oracle equivalence, or a
directed inequality at desk scale; purely asymptotic statements live in the
scan commands as trend columns and are deliberately absent. Exit status is
zero iff no asserted check fails (skips from tightened guards are allowed).
"""

from __future__ import annotations

import math

import numpy as np

from . import auxsums, binning, bounds, lattice, smooth
from .errors import ResourceLimitError
from .numutil import TIE_SLACK
from .primes import (build_prime_table, prime_reciprocal_sum, smoothness_index,
                     sqrt_reciprocal_stats)

PASS, FAIL, SKIP = "PASS", "FAIL", "SKIP"

SANDWICH_N = (10.0, 20.0, 35.0, 50.0)
SANDWICH_BIG_N = (1e3, 1e4, 1e5)


def _trial_division_primes(limit):
    out = []
    for k in range(2, limit + 1):
        d = 2
        is_prime = True
        while d * d <= k:
            if k % d == 0:
                is_prime = False
                break
            d += 1
        if is_prime:
            out.append(k)
    return out


def _brute_simplex_count(bs, strict):
    caps = [math.floor(float(a) + 1.0) for a in bs]
    total = 0
    point = [0] * len(bs)

    def rec(i):
        nonlocal total
        if i == len(bs):
            s = sum(point[j] / float(bs[j]) for j in range(len(bs)))
            if (s < 1.0 - TIE_SLACK) if strict else (s <= 1.0 + TIE_SLACK):
                total += 1
            return
        for v in range(caps[i] + 1):
            point[i] = v
            rec(i + 1)

    rec(0)
    return total


def _check_prime_table(guard):
    table = build_prime_table(100_000)
    expected = _trial_division_primes(2_000)
    got = [int(p) for p in table.primes[:len(expected)]]
    if got != expected:
        return FAIL, "sieve disagrees with trial division below 2000"
    sample = _trial_division_primes(100_000)
    if table.count(100_000) != len(sample):
        return FAIL, f"count(1e5)={table.count(100_000)} vs trial {len(sample)}"
    big = build_prime_table(1_000_000)
    if big.count(1_000_000) != 78498:
        return FAIL, f"count(1e6)={big.count(1_000_000)} != 78498"
    for n, m in ((11.0, 4), (3.0, 1), (100.0, 25)):
        if smoothness_index(big, n) != m:
            return FAIL, f"smoothness_index({n}) != {m}"
    return PASS, "trial-division match to 1e5; count(1e6)=78498"


def _check_prime_sums(guard):
    table = build_prime_table(1_000_000)
    direct = prime_reciprocal_sum(table, 2, 10).value
    if abs(direct - (1 / 2 + 1 / 3 + 1 / 5 + 1 / 7)) > 1e-15:
        return FAIL, "interval sum (2,10) wrong"
    if abs(prime_reciprocal_sum(table, 7, 7).value - 1 / 7) > 1e-17:
        return FAIL, "single-prime interval wrong"
    left = prime_reciprocal_sum(table, 2, 97).value
    right = prime_reciprocal_sum(table, 101, 1000).value
    both = prime_reciprocal_sum(table, 2, 1000).value
    if abs(left + right - both) > 1e-14:
        return FAIL, "adjacent intervals do not add up"
    mert = prime_reciprocal_sum(table, 1e3, 1e6)
    gap = abs(mert.value - (mert.mertens_estimate or 0.0))
    if gap > 0.05:
        return FAIL, f"interval sum vs double-log estimate gap {gap:.4f} > 0.05"
    return PASS, f"double-log estimate gap {gap:.4f} < 0.05"


def _check_sqrt_stats(guard):
    table = build_prime_table(100_000)
    one = sqrt_reciprocal_stats(table, 1)
    if abs(one.sqrt_sum - 1 / math.sqrt(2)) > 1e-15:
        return FAIL, "k=1 sum wrong"
    if abs(one.product - (1 - 1 / math.sqrt(2))) > 1e-15:
        return FAIL, "k=1 product wrong"
    prev = sqrt_reciprocal_stats(table, 1)
    for k in range(2, 60):
        cur = sqrt_reciprocal_stats(table, k)
        if not (cur.sqrt_sum > prev.sqrt_sum and cur.product < prev.product):
            return FAIL, f"monotonicity broken at k={k}"
        prev = cur
    k25 = sqrt_reciprocal_stats(table, 25)
    crude = k25.sqrt_sum / (1 - 1 / math.sqrt(2))
    if not (k25.product > 0 and math.log(1 / k25.product) < crude):
        return FAIL, "crude log bound fails at k=25"
    base = sqrt_reciprocal_stats(table, 2)
    for k in (5, 25, 100, 1000, len(table)):
        cur = sqrt_reciprocal_stats(table, k)
        if table.prime(k) >= 10 and cur.sqrt_sum - base.sqrt_sum > 4 * cur.integral_bound:
            return FAIL, f"integral comparison fails at k={k}"
    return PASS, "spots, monotonicity, and integral comparison hold to k=pi(1e5)"


def _check_lattice_oracle(guard):
    grid = (0.5, 1.0, 1.7, 2.0, 3.3, 6.0)
    checked = 0
    for m in (1, 2, 3):
        for bs in _cartesian(grid, m):
            spec = lattice.SimplexSpec(bounds=bs)
            count = lattice.count_lattice_points(spec, guard=guard)
            if count != _brute_simplex_count(bs, strict=False):
                return FAIL, f"count mismatch at {bs}"
            fb = lattice.factorial_volume_bound(spec)
            if not count > fb.value:
                return FAIL, f"volume bound not strict at {bs}"
            checked += 1
    a = lattice.count_lattice_points(lattice.SimplexSpec((6.0, 3.3, 1.7)), guard=guard)
    b = lattice.count_lattice_points(lattice.SimplexSpec((1.7, 6.0, 3.3)), guard=guard)
    if a != b:
        return FAIL, "permutation symmetry broken"
    return PASS, f"{checked} simplices match brute force; volume bound strict"


def _cartesian(grid, m):
    if m == 1:
        return [(g,) for g in grid]
    return [prev + (g,) for prev in _cartesian(grid, m - 1) for g in grid]


def _check_compositions(guard):
    for l in range(31):
        for m in range(1, 31):
            total = lattice.cumulative_compositions(l, m, include_zero=True)
            if total != math.comb(l + m, m):
                return FAIL, f"cumulative identity fails at l={l}, m={m}"
    if lattice.compositions_count(2, 3) != 6 or lattice.compositions_count(5, 4) != 56:
        return FAIL, "spot composition counts wrong"
    for z in range(1, 171):
        st = lattice.stirling_value(z)
        fz = float(math.factorial(z))
        if not st < fz < 2.0 * st:
            return FAIL, f"factorial bracket fails at z={z}"
    return PASS, "cumulative identity to l,m<=30; factorial bracket to z=170"


def _check_smooth_agreement(guard):
    table = build_prime_table(100)
    for n in range(3, 31):
        for N in (100.0, 1000.0, 10_000.0):
            direct = smooth.smooth_count_direct(n, N, guard=guard)
            k = smoothness_index(table, n)
            recursive = smooth.smooth_count_recursive(k, N, table)
            if direct.nu != recursive.nu:
                return FAIL, f"methods disagree at n={n}, N={N}"
    spots = [
        (smooth.smooth_count_direct(3, 10, inclusive=True).nu, 6),
        (smooth.smooth_count_direct(3, 10).nu, 3),
        (smooth.smooth_count_direct(2.5, 100).nu, 6),
        (smooth.smooth_count_direct(4, 100).psi, 20),
        (smooth.smooth_count_recursive(3, 1000, table).psi, 86),
        (smooth.smooth_count_recursive(4, 1000, table).psi, 141),
        (smooth.smooth_count_recursive(5, 1.0, table).psi, 1),
    ]
    for got, want in spots:
        if got != want:
            return FAIL, f"spot value {got} != {want}"
    if smooth.smooth_count_direct(1000, 800).nu != 799:
        return FAIL, "n > N should count every integer in [2, N]"
    return PASS, "direct == recursive for n<=30; spot values hold"


def _check_partition(guard):
    # The prime-power recursion mirrors an exact set partition: scaling the
    # k-prime sets by powers of the next prime tiles the (k+1)-prime set.
    N, k = 10_000, 3
    table = build_prime_table(100)
    p_next = table.prime(k + 1)

    def factor_set(j, bound):
        allowed = [table.prime(i) for i in range(1, j + 1)]
        out = {1}
        for z in range(2, bound + 1):
            x = z
            for p in allowed:
                while x % p == 0:
                    x //= p
            if x == 1:
                out.add(z)
        return out

    target = factor_set(k + 1, N)
    union = set()
    q = 1
    while q <= N:
        piece = {q * z for z in factor_set(k, N // q)}
        if union & piece:
            return FAIL, "pieces are not disjoint"
        union |= piece
        q *= p_next
    if union != target:
        return FAIL, "union does not reconstruct the larger set"
    if len(target) != smooth.smooth_count_recursive(k + 1, N, table).psi:
        return FAIL, "set size disagrees with recursion"
    return PASS, f"partition reconstructs all {len(target)} elements at N={N}"


def _check_sandwich(guard):
    table = build_prime_table(64)
    cells = 0
    for n in SANDWICH_N:
        for N in SANDWICH_BIG_N:
            try:
                spec = binning.build_binning(n, table)
                nu = smooth.smooth_count_direct(n, N, guard=guard).nu
                lower = binning.count_lower_bound(spec, N, guard=guard)
                upper = binning.count_upper_bound(spec, N, guard=guard)
            except ResourceLimitError as exc:
                return SKIP, f"resource limit at (n={n}, N={N}): {exc}"
            if not lower.value <= nu <= upper:
                return FAIL, (f"sandwich broken at (n={n}, N={N}): "
                              f"{lower.value} / {nu} / {upper}")
            if not lower.product_bound_ok:
                return FAIL, f"assignment overshoot bound broken at (n={n}, N={N})"
            cells += 1
    return PASS, f"lower <= exact <= upper on all {cells} cells"


def _check_upper_exactness(guard):
    n, N = 10.0, 100.0
    table = build_prime_table(16)
    spec = binning.build_binning(n, table)
    budget = math.log(N)
    primes = [int(p) for p in table.primes[:smoothness_index(table, n)]]
    weights = [spec.weights_lower[binning.bin_index(spec, p) - 1] for p in primes]
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
    module = binning.count_upper_bound(spec, N, guard=guard)
    if module != count:
        return FAIL, f"upper count {module} != x-space brute force {count}"
    return PASS, f"upper count and x-space brute force agree ({count})"


def _check_aggregation(guard):
    table = build_prime_table(64)
    rng = np.random.default_rng(20240801)
    spec = binning.build_binning(50.0, table)
    primes = [int(p) for p in table.primes[:smoothness_index(table, 50.0)]]
    for _ in range(200):
        x = rng.integers(0, 5, size=len(primes))
        z = binning.aggregate_exponents(spec, primes, list(x))
        if sum(z) != int(x.sum()):
            return FAIL, "aggregation changes the coordinate total"
        if len(z) != spec.r:
            return FAIL, "aggregate has the wrong length"
    return PASS, "aggregate preserves totals on 200 random exponent vectors"


def _check_aux_recursion(guard):
    for c in (1.5, 2.5, 3.3, 4.8):
        for M in (2.0, 5.0, 10.0, 20.0):
            inst = auxsums.make_aux_instance(c, M, auxsums.KIND_PLAIN)
            direct = auxsums.plain_sum(inst, guard=guard).value
            reduced = auxsums.plain_sum_by_reduction(c, M)
            if abs(direct - reduced) > 1e-9 * max(1.0, abs(direct)):
                return FAIL, f"plain routes disagree at (c={c}, M={M})"
            qinst = auxsums.make_aux_instance(c, M, auxsums.KIND_CORRECTED)
            qdir = auxsums.corrected_sum(qinst, guard=guard).value
            qred = auxsums.corrected_sum_by_reduction(c, M)
            if abs(qdir - qred) > 1e-9 * max(1.0, abs(qdir)):
                return FAIL, f"corrected routes disagree at (c={c}, M={M})"
            if qdir < direct:
                return FAIL, f"corrected sum below plain sum at (c={c}, M={M})"
    hand = 1.0 + (math.e - 1.0) * math.exp(1.5) / 1.5
    inst = auxsums.make_aux_instance(1.5, 3.0, auxsums.KIND_PLAIN)
    got = auxsums.plain_sum(inst, guard=guard).value
    if abs(got - hand) > 1e-12 * hand:
        return FAIL, f"hand value at (1.5, 3): {got} != {hand}"
    for c in (2.5, 3.3, 4.8):
        big = auxsums.make_aux_instance(c, 20.0, auxsums.KIND_PLAIN)
        small = auxsums.make_aux_instance(c, 5.0, auxsums.KIND_PLAIN)
        if auxsums.plain_sum(big).value < auxsums.plain_sum(small).value:
            return FAIL, f"plain sum not monotone in M at c={c}"
        nested = auxsums.make_aux_instance(c - 1.0, 5.0, auxsums.KIND_PLAIN)
        for left, right in zip(nested.bases, big.bases[1:]):
            if abs(left - right) > 1e-12 * right:
                return FAIL, f"nested bases do not line up at c={c}"
    return PASS, "two routes agree to 1e-9; hand value to 1e-12; nesting holds"


def _check_seed_coefficient(guard):
    if abs(auxsums.seed_coefficient(0, 0) - math.exp(-1)) > 1e-16:
        return FAIL, "seed value at (0,0) wrong"
    if abs(auxsums.seed_coefficient(1, 0) - math.exp(-math.e)) > 1e-16:
        return FAIL, "seed value at (1,0) wrong"
    for kappa in (0.5, 1.0, 2.0, 5.0):
        for gamma in (0.0, 1.0, 3.0):
            b = auxsums.seed_coefficient(kappa, gamma)
            if not b * math.exp(math.exp(kappa + gamma) / (kappa + 1.0)) < 1.0:
                return FAIL, f"seed property fails at ({kappa}, {gamma})"
    return PASS, "seed values and the start-of-induction property hold"


def _check_objective_max(guard, seed=0, samples=100, grid_points=100_000):
    rng = np.random.default_rng(seed)
    worst_rel = 0.0
    for _ in range(samples):
        c = rng.uniform(5.0, 50.0)
        M = rng.uniform(2.0 * c, math.exp(c / 2.0))
        gamma = rng.uniform(0.0, 5.0)
        a = rng.uniform(0.0, 2.0)
        closed = bounds.iteration_objective_max(c, M, gamma, a)
        grid_best, argmax = bounds.objective_grid_max(c, M, gamma, a, num=grid_points)
        scale = max(1.0, abs(closed.max_value))
        if grid_best > closed.max_value + 1e-9 * scale:
            return FAIL, f"grid sample beats the closed form at c={c}, M={M}"
        rel = (closed.max_value - grid_best) / scale
        worst_rel = max(worst_rel, rel)
        if rel > 1e-5:
            return FAIL, f"closed form too far above best sample: rel={rel}"
        step = (M / c) / (grid_points - 1)
        if abs(argmax - closed.t0 * M / c) > step * (1.0 + 1e-9):
            return FAIL, f"maximizer location off by more than one grid step"
    sym = bounds.iteration_objective_max(10.0, 30.0, 1.3, 1.3)
    if abs(sym.gain - math.log(2.0)) > 1e-12 or abs(sym.t0 - 0.5) > 1e-12:
        return FAIL, "symmetric-point identities broken"
    far = bounds.iteration_objective_max(10.0, 30.0, 40.0, 1.0)
    plain = 30.0 * (1.0 - math.log(30.0) / 10.0 + 40.0 / 10.0)
    if abs(far.max_value - plain) > 1e-12 * abs(plain):
        return FAIL, "large-offset limit broken"
    return PASS, f"{samples} seeded tuples; worst closed-vs-grid rel gap {worst_rel:.2e}"


def _check_trace(guard):
    trace = bounds.lower_iteration_trace(50.0, math.exp(10.0), alpha=0.1, beta=0.5)
    if not all(s.in_domain for s in trace.steps):
        return FAIL, "iteration left the stated domain"
    for i in range(1, len(trace.steps)):
        prev, cur = trace.steps[i - 1], trace.steps[i]
        if cur.c != prev.c - 1.0:
            return FAIL, "c does not decrement"
        if abs(cur.M - prev.M * (1.0 - prev.t)) > 1e-12 * prev.M:
            return FAIL, "M update does not match 1 - t"
        if not 0.0 < prev.t < 1.0:
            return FAIL, "step fraction outside (0, 1)"
    tight = bounds.lower_iteration_trace(50.0, math.exp(2.0), alpha=0.1, beta=0.4)
    for s in tight.steps:
        if s.in_domain and not s.contraction_held:
            return FAIL, f"contraction fails inside the domain at c={s.c}"
    return PASS, (f"domain invariance over {len(trace.steps)} steps; "
                  f"contraction holds on the small-start trace")


def _check_rhs_formulas(guard):
    a_sharp = bounds.sharp_offset()
    n0 = math.exp(math.e)
    big = math.exp(math.exp(math.e))
    want = 1.0 - (math.e + 1.0) / math.e + (a_sharp + 1.0) / math.e
    got = bounds.lower_bound_rhs(n0 * (1 + 1e-12), big)
    if abs(got - want) > 1e-9:
        return FAIL, "nested-log collapse of the lower formula wrong"
    for n in (50.0, 100.0, 1000.0):
        for N in (1e4, 1e6, 1e10):
            lo = bounds.lower_bound_rhs(n, N, delta=0.0)
            hi = bounds.upper_bound_rhs(n, N, a_bar=a_sharp)
            if lo > hi:
                return FAIL, f"formula ordering broken at (n={n}, N={N})"
    d0 = bounds.lower_bound_rhs(100.0, 1e6, delta=0.0)
    d1 = bounds.lower_bound_rhs(100.0, 1e6, delta=1.0)
    if abs((d1 - d0) - 1.0 / math.log(100.0)) > 1e-12:
        return FAIL, "delta slope is not 1/ln n"
    lad = bounds.iterated_log_ladder(math.exp(math.exp(math.e)), 3)
    if abs(lad.depth_value - 1.0) > 1e-9 or abs(lad.partial_sum - (math.e + 1.0)) > 1e-9:
        return FAIL, "ladder tower collapse wrong"
    if abs(bounds.iterated_log_ladder(1e10, 2).partial_sum
           - math.log(math.log(1e10))) > 1e-15:
        return FAIL, "depth-2 ladder is not ln ln x"
    p = bounds.polylog_regime_rhs(math.exp(10.0), 1.0, 2.0)
    if abs(p.n - 100.0) > 1e-9:
        return FAIL, "induced n wrong in the polylog regime"
    return PASS, "collapses, ordering, slopes, ladder, and polylog spots hold"


def _check_preliminary(guard):
    table = build_prime_table(64)
    for n in SANDWICH_N:
        for N in SANDWICH_BIG_N:
            report = smooth.preliminary_lower_bound(n, N, table)
            l = int(report.inputs["l"])
            m = int(report.inputs["m"])
            if l < 1:
                continue
            nu = smooth.smooth_count_direct(n, N, guard=guard).nu
            if lattice.compositions_count(l, m) > nu:
                return FAIL, f"composition bound exceeds the count at (n={n}, N={N})"
    # The two closed forms track each other only where the bound is useful,
    # i.e. well inside n^2 < N.
    for n in (7.0, 10.0, 20.0, 35.0, 50.0):
        for N in (1e2, 1e3, 1e4, 1e5, 1e6):
            if n * n >= N:
                continue
            report = smooth.preliminary_lower_bound(n, N, table)
            l = int(report.inputs["l"])
            nu = smooth.smooth_count_direct(n, N, guard=guard).nu
            if lattice.compositions_count(l, int(report.inputs["m"])) > nu:
                return FAIL, f"composition bound exceeds the count at (n={n}, N={N})"
            envelope = math.log(2.0) + 0.5 * math.log(2.0 * math.pi * l)
            gap = abs(report.bound_logs["stirling_form"]
                      - report.bound_logs["log_range_form"])
            if gap > envelope:
                return FAIL, f"closed forms drift past the envelope at (n={n}, N={N})"
    report = smooth.preliminary_lower_bound(11.0, 1000.0, table)
    if (report.inputs["m"], report.inputs["l"]) != (4.0, 2.0):
        return FAIL, "spot (11, 1000) indices wrong"
    if abs(math.exp(report.bound_logs["poisson_term"]) - 8.0) > 1e-9:
        return FAIL, "spot (11, 1000) weak term is not 8"
    return PASS, "composition bound below counts; closed forms inside envelope"


CHECKS = [
    ("prime-table", "sieve vs trial division; million-mark count", _check_prime_table),
    ("prime-reciprocal-sums", "interval sums, additivity, double-log gap", _check_prime_sums),
    ("sqrt-prime-stats", "root-reciprocal sums/products vs quadrature", _check_sqrt_stats),
    ("lattice-count", "simplex counts vs brute force; volume bound strict", _check_lattice_oracle),
    ("compositions", "cumulative identity and factorial bracket", _check_compositions),
    ("smooth-methods", "sieve count == prime-power recursion; spots", _check_smooth_agreement),
    ("smooth-partition", "prime-power pieces tile the smooth set", _check_partition),
    ("count-sandwich", "binned lower <= exact <= binned upper", _check_sandwich),
    ("upper-exactness", "binned upper equals x-space brute force", _check_upper_exactness),
    ("bin-aggregation", "per-bin aggregation preserves totals", _check_aggregation),
    ("aux-sum-routes", "enumeration vs reduction; hand value; nesting", _check_aux_recursion),
    ("seed-coefficient", "seed values and induction-start property", _check_seed_coefficient),
    ("objective-max", "closed-form max vs dense grid; maximizer", _check_objective_max),
    ("iteration-trace", "domain invariance and contraction flags", _check_trace),
    ("rhs-formulas", "collapses, ordering, ladder, polylog spots", _check_rhs_formulas),
    ("preliminary-bound", "weak composition bound below exact counts", _check_preliminary),
]


def run_verify(options=None, stream=None):
    """Run every asserted check; print one status line each plus a coverage
    table. Returns (results, exit_code)."""
    import sys

    options = options or {}
    stream = stream or sys.stdout
    guard = options.get("guard")
    seed = int(options.get("seed", 0))
    results = []
    for check_id, description, func in CHECKS:
        try:
            if func is _check_objective_max:
                status, detail = func(guard, seed=seed,
                                      samples=int(options.get("samples", 100)))
            else:
                status, detail = func(guard)
        except ResourceLimitError as exc:
            status, detail = SKIP, f"resource limit: {exc}"
        except Exception as exc:  # noqa: BLE001 - a crash is a failed check
            status, detail = FAIL, f"{type(exc).__name__}: {exc}"
        results.append((check_id, description, status, detail))
        stream.write(f"[{status}] {check_id}: {detail}\n")
    stream.write("\ncoverage\n")
    width = max(len(r[0]) for r in results)
    for check_id, description, status, _ in results:
        stream.write(f"  {check_id:<{width}}  {status:<4}  {description}\n")
    failed = sum(1 for r in results if r[2] == FAIL)
    stream.write(f"\n{len(results)} checks: "
                 f"{sum(1 for r in results if r[2] == PASS)} passed, "
                 f"{failed} failed, "
                 f"{sum(1 for r in results if r[2] == SKIP)} skipped\n")
    return results, (1 if failed else 0)

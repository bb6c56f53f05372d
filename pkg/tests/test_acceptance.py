"""Acceptance criteria 1-8, each printing one PASS/FAIL line.

Run on its own with ``pytest tests/test_acceptance.py -s``; the verdict
lines are also written when output capture is on.
"""

import math
import time

import numpy as np
import pytest

from sievekit.arithmetic import build_sieve, singular_series, twin_constant, w_asymptotic_ratio
from sievekit.counting import CountQuery, TrialDivisionOracle, scan_grid, sift_weighted
from sievekit.delta import DeltaParams, delta_pair, find_threshold
from sievekit.sieve_functions import EULER_GAMMA, dde_residual, eval_f, eval_F

pytestmark = pytest.mark.slow


@pytest.fixture
def verdict(capsys):
    def say(k, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {k}: {detail}")
        assert ok, detail
    return say


def test_criterion_1_margins(verdict):
    t0 = time.perf_counter()
    a = delta_pair(DeltaParams("small_primes", 0.838))
    b = delta_pair(DeltaParams("short_interval", 0.919))
    dt = time.perf_counter() - t0
    ok = (a.margin >= 0.0009 and b.margin >= 0.0009
          and a.error_bound < 1e-7 and b.error_bound < 1e-7 and dt < 10)
    verdict(1, ok, f"margin(θ=0.838)={a.margin:.10f} ±{a.error_bound:.1e}, "
                   f"margin(κ=0.919)={b.margin:.10f} ±{b.error_bound:.1e}, {dt:.2f}s")


def test_criterion_2_positive_on_grid(verdict):
    thetas = [0.838] + [round(0.85 + 0.01 * k, 2) for k in range(16)]
    kappas = [0.919] + [round(0.93 + 0.01 * k, 2) for k in range(8)]
    mt = [delta_pair(DeltaParams("small_primes", x)).margin for x in thetas]
    mk = [delta_pair(DeltaParams("short_interval", x)).margin for x in kappas]
    ok = all(m > 0 for m in mt + mk) and thetas[-1] == 1.0 and kappas[-1] == 1.0
    verdict(2, ok, f"{len(thetas)} θ points min margin {min(mt):.3e}, "
                   f"{len(kappas)} κ points min margin {min(mk):.3e}")


def test_criterion_3_thresholds(verdict):
    t = find_threshold("small_primes")
    k = find_threshold("short_interval")
    ok = (t.threshold <= 0.838 and k.threshold <= 0.919
          and abs(t.margin_at_threshold) <= 1e-6 and abs(k.margin_at_threshold) <= 1e-6
          and t.bracket_width <= 1e-7 and k.bracket_width <= 1e-7)
    verdict(3, ok, f"θ*={t.threshold:.8f} (margin {t.margin_at_threshold:.1e}, "
                   f"width {t.bracket_width:.1e}), κ*={k.threshold:.8f} "
                   f"(margin {k.margin_at_threshold:.1e}, width {k.bracket_width:.1e})")


def test_criterion_4_sieve_function_integrity(verdict):
    gaps = []
    for fn, pts in ((eval_F, ((3.0, 1), (5.0, 2))), (eval_f, ((4.0, 1), (6.0, 2)))):
        for s, b in pts:
            gaps.append(abs(fn(s, branch=b).value - fn(s, branch=b + 1).value))
    res = [dde_residual(s, 1e-4) for s in (2.5, 3.5, 4.5, 5.5, 6.5)]
    exact = eval_F(2.0).value == math.exp(EULER_GAMMA) and eval_f(2.0).value == 0.0
    ok = max(gaps) <= 1e-8 and max(res) < 1e-5 and exact
    verdict(4, ok, f"max continuity gap {max(gaps):.1e}, max DDE residual {max(res):.1e}, "
                   f"F(2)=e^γ and f(2)=0 exact: {exact}")


def test_criterion_5_oracle_equivalence(verdict):
    t0 = time.perf_counter()
    Ns = list(range(6, 20001, 2))
    sieve = build_sieve(20000)
    fast = {r: [rep.count for rep in scan_grid(Ns, CountQuery(6, r), sieve)] for r in (1, 2, 3)}
    oracle = TrialDivisionOracle(20000)
    bad = sum(fast[r][i] != oracle.count(N, r) for r in (1, 2, 3) for i, N in enumerate(Ns))
    dt = time.perf_counter() - t0
    verdict(5, bad == 0 and dt < 60,
            f"{3 * len(Ns)} (N, r) pairs, {bad} mismatches, {dt:.1f}s")


@pytest.fixture(scope="module")
def big_sieve():
    return build_sieve(10**8)


def test_criterion_6_weighted_inequality(verdict, big_sieve):
    # z = N^(1/11.99) >= 3 needs N >= 3^11.99, so samples start there
    lo = max(10**4, math.ceil(3 ** 11.99))
    rng = np.random.default_rng(20240601)
    Ns = sorted({int(2 * round(10 ** x / 2)) for x in rng.uniform(math.log10(lo), 8, 100)})
    assert len(Ns) == 100
    params = DeltaParams("small_primes", 1.0)
    worst, failures = 0.0, 0
    for N in Ns:
        rep = sift_weighted(N, params, big_sieve)
        failures += not rep.holds
        worst = max(worst, rep.exceptions / max(rep.s1, 1))
    verdict(6, failures == 0 and worst <= 0.05,
            f"{len(Ns)} N in [{lo}, 1e8]: {failures} inequality failures, "
            f"max exceptions/s1 = {worst:.4f}")


def test_criterion_7_asymptotic_sanity(verdict, big_sieve):
    Ns = [2 * round(10 ** (6 + 2 * k / 19) / 2) for k in range(20)]
    reps = scan_grid(Ns, CountQuery(6, 3), big_sieve)
    d_ratio, w_ratio = [], []
    for N, rep in zip(Ns, reps):
        C = singular_series(N, 10**6).value
        d_ratio.append(rep.count * math.log(N) ** 2 / (C * N))
        w_ratio.append(w_asymptotic_ratio(N, 11.99, big_sieve))
    ok = all(0.5 <= r <= 50 for r in d_ratio) and all(0.5 <= r <= 2 for r in w_ratio)
    verdict(7, ok, f"D ratio in [{min(d_ratio):.3f}, {max(d_ratio):.3f}], "
                   f"W ratio in [{min(w_ratio):.3f}, {max(w_ratio):.3f}]; "
                   f"W ratio at 1e6 -> 1e8: {w_ratio[0]:.3f} -> {w_ratio[-1]:.3f} (trend, not asserted)")


def test_criterion_8_twin_constant(verdict):
    v7, tail7 = twin_constant(10**7)
    v8, tail8 = twin_constant(10**8)
    change = abs(v7 - v8)
    verdict(8, change < tail7 and tail7 < 1e-7,
            f"C2(1e7)={v7:.15f}, C2(1e8)={v8:.15f}, change {change:.2e} < tail {tail7:.2e}; "
            f"tail at 1e8 {tail8:.2e}")

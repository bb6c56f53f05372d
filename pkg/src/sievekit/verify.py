"""One-shot reproduction of the numerical claims, as a list of named checks."""

import math
from dataclasses import dataclass, field

from sievekit.arithmetic import build_sieve, twin_constant
from sievekit.counting import TrialDivisionOracle, omega_histogram, p_range
from sievekit.delta import MARGIN_CLAIM, THEOREM_KAPPA, THEOREM_THETA, DeltaParams, delta_pair
from sievekit.quadrature import DEFAULT_CONFIG
from sievekit.sieve_functions import EULER_GAMMA, dde_residual, eval_f, eval_F

__all__ = ["Check", "VerifyReport", "run_verification"]

CONTINUITY_TOL = 1e-8
DDE_TOL = 1e-5
DDE_POINTS = (2.5, 3.5, 4.5, 5.5, 6.5)
MARGIN_ERROR_TOL = 1e-7
TWIN_TRUNCATION = 10**7


@dataclass(frozen=True)
class Check:
    name: str
    claimed: str
    computed: float
    passed: bool


@dataclass
class VerifyReport:
    checks: list = field(default_factory=list)

    @property
    def overall(self):
        return all(c.passed for c in self.checks)

    def add(self, name, claimed, computed, passed):
        self.checks.append(Check(name, claimed, float(computed), bool(passed)))


def _margins(report, cfg):
    for mode, x, label in (("small_primes", THEOREM_THETA, "theta"),
                           ("short_interval", THEOREM_KAPPA, "kappa")):
        d = delta_pair(DeltaParams(mode, x), cfg)
        report.add(f"margin {label}={x}", f">= {MARGIN_CLAIM}", d.margin,
                   d.margin >= MARGIN_CLAIM and d.error_bound < MARGIN_ERROR_TOL)


def _continuity(report, cfg, gamma_fault):
    shifted = EULER_GAMMA + gamma_fault
    for fn, name, points in ((eval_F, "F", ((3.0, 1), (5.0, 2))),
                             (eval_f, "f", ((4.0, 1), (6.0, 2)))):
        for b, k in points:
            lower = fn(b, cfg, branch=k)
            upper = fn(b, cfg, branch=k + 1, gamma=shifted)
            gap = abs(lower.value - upper.value)
            report.add(f"{name} continuity at s={b:g}", f"<= {CONTINUITY_TOL:g}", gap,
                       gap <= CONTINUITY_TOL)


def _dde(report, cfg):
    for s in DDE_POINTS:
        res = dde_residual(s, 1e-4, cfg)
        report.add(f"delay-equation residual at s={s}", f"< {DDE_TOL:g}", res, res < DDE_TOL)


def _closed_forms(report, cfg):
    v = eval_F(2.0, cfg).value
    report.add("F(2) = e^gamma", f"{math.exp(EULER_GAMMA)!r}", v, v == math.exp(EULER_GAMMA))
    v = eval_f(2.0, cfg).value
    report.add("f(2) = 0", "0", v, v == 0.0)


def _twin(report):
    T = TWIN_TRUNCATION
    v1, tail = twin_constant(T)
    v2, _ = twin_constant(2 * T)
    change = abs(v1 - v2)
    report.add(f"twin constant tail bound at T={T:.0e}", "< 1e-07", tail, tail < 1e-7)
    report.add("twin constant change T -> 2T", f"<= {tail:.3e}", change, change <= tail)


def _counting(report, n_max):
    sieve = build_sieve(n_max)
    oracle = TrialDivisionOracle(n_max)
    mismatches = 0
    for N in range(6, n_max + 1, 2):
        lo, hi = p_range(N, "full")
        hist = omega_histogram(N, lo, hi, sieve)
        for r in (1, 2, 3):
            if int(hist[:r + 1].sum()) != oracle.count(N, r):
                mismatches += 1
    report.add(f"segmented counts = trial division, even N in [6, {n_max}]", "0 mismatches",
               mismatches, mismatches == 0)


def run_verification(quick=False, cfg=DEFAULT_CONFIG, gamma_fault=0.0):
    """Run every check and return the report.

    `quick` shrinks the counting range from [6, 5000] to [6, 500].
    `gamma_fault` perturbs Euler's constant in the upper branch of each
    continuity comparison; it exists to show the checks can fail.
    """
    report = VerifyReport()
    _margins(report, cfg)
    _continuity(report, cfg, gamma_fault)
    _dde(report, cfg)
    _closed_forms(report, cfg)
    _twin(report)
    _counting(report, 500 if quick else 5000)
    return report

"""
Exact counts of primes p with N - p an almost-prime, and the weighted
sifting sums behind the P₃ lower bound.

All counts come from segmented factor-profile sieving of the values N - p
(see :mod:`sievekit.kernels`). Queries are pure functions of their inputs and
of a read-only :class:`~sievekit.arithmetic.PrimeSieve`, so batches may run
concurrently.
"""

import bisect
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from sievekit import kernels
from sievekit.arithmetic import FACTOR_SEGMENT, singular_series
from sievekit.delta import (
    THEOREM_KAPPA, THEOREM_THETA, DeltaParams, Mode, main_term_bound,
)
from sievekit.errors import DomainError, ResourceError, SievekitError
from sievekit.quadrature import DEFAULT_CONFIG

__all__ = [
    "DESK_LIMIT",
    "CountQuery",
    "CountReport",
    "SiftReport",
    "p_range",
    "count_representations",
    "sift_weighted",
    "scan_grid",
    "brute_force_count",
    "TrialDivisionOracle",
    "omega_histogram",
]

DESK_LIMIT = 10**9
PREDICTION_TRUNCATION = 10**6


@dataclass(frozen=True)
class CountQuery:
    """Which primes p to count, and the almost-prime order r of N - p."""

    N: int
    r: int = 3
    mode: Mode = Mode.FULL
    param: float | None = None
    include_unit: bool = False

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode.parse(self.mode))
        N = self.N
        if int(N) != N or N < 6 or N % 2:
            raise DomainError(f"N must be an even integer >= 6, got {N}")
        object.__setattr__(self, "N", int(N))
        if not (1 <= self.r <= 4):
            raise DomainError(f"r must lie in 1..4, got {self.r}")
        if self.mode is Mode.FULL:
            object.__setattr__(self, "param", None)
        elif self.param is None or not (0.0 < float(self.param) <= 1.0):
            raise DomainError(f"{self.mode.value} needs an exponent in (0, 1], got {self.param}")
        else:
            object.__setattr__(self, "param", float(self.param))

    def with_N(self, N):
        return CountQuery(N, self.r, self.mode, self.param, self.include_unit)


@dataclass(frozen=True)
class CountReport:
    query: CountQuery
    count: int
    predicted_main_term: float
    ratio: float | None


@dataclass(frozen=True)
class SiftReport:
    """Exact sifted sums for one N.

    `s1` counts admissible p whose N - p has no prime factor below z other
    than those dividing N. `s2` adds, over those survivors, the number of
    primes q in [z, N**(1/3)) with q not dividing N and q | N - p.
    `exceptions` counts survivors of positive weight whose N - p is not a
    P₃. Each has a repeated prime factor in [z, N**(1/3)) or has p | N.
    """

    N: int
    z: float
    s1: int
    s2: int
    weighted: float
    d13: int
    exceptions: int
    holds: bool


def p_range(N, mode, param=None, include_unit=False):
    """Inclusive range [lo, hi] of candidate p for the given mode.

    ``hi < lo`` means the range is empty. N - p >= 2 unless `include_unit`.
    """
    mode = Mode.parse(mode)
    lo, hi = 2, N - (1 if include_unit else 2)
    if mode is Mode.SMALL_PRIMES:
        hi = min(hi, math.floor(N ** param))
    elif mode is Mode.SHORT_INTERVAL:
        # p and N - p both in [N/2 - N^κ, N/2 + N^κ]; symmetric, so one window
        h = math.floor(N ** param)
        lo = max(lo, N // 2 - h)
        hi = min(hi, N // 2 + h)
    return lo, hi


def _check_desk(N, sieve, p_hi):
    if N > DESK_LIMIT:
        raise ResourceError(f"N={N} exceeds the desk limit {DESK_LIMIT}")
    need = max(p_hi, math.isqrt(N))
    if need > sieve.limit:
        raise DomainError(f"sieve must reach {need}, it stops at {sieve.limit}")


def _profiles(N, lo, hi, sieve, primes, klass=None):
    """Factor profiles of N - p for every prime p in [lo, hi].

    Yields ``(omega, n1, n2, rep2, p)`` per segment of N - p values, every
    array aligned with the primes p of that segment.
    """
    m_lo, m_hi = N - hi, N - lo
    for start in range(m_lo, m_hi + 1, FACTOR_SEGMENT):
        stop = min(start + FACTOR_SEGMENT - 1, m_hi)
        ps = sieve.primes(N - stop, N - start)
        if ps.size == 0:
            continue
        prof = kernels.factor_segment(start, stop - start + 1, primes, klass)
        idx = N - ps - start
        yield (*(a[idx] for a in prof), ps)


def omega_histogram(N, lo, hi, sieve):
    """Counts of primes p in [lo, hi] by Ω(N - p), capped at index 5."""
    hist = np.zeros(6, dtype=np.int64)
    if hi < lo:
        return hist
    primes = sieve.primes(2, math.isqrt(N))
    for om, *_ in _profiles(N, lo, hi, sieve, primes):
        hist += np.bincount(np.minimum(om, 5), minlength=6)
    return hist


def _prediction(q, cfg):
    if q.r != 3:
        return 0.0
    if q.mode is Mode.FULL:
        params = DeltaParams(Mode.SMALL_PRIMES, 1.0)
    elif q.mode is Mode.SMALL_PRIMES and THEOREM_THETA <= q.param <= 1.0:
        params = DeltaParams(q.mode, q.param)
    elif q.mode is Mode.SHORT_INTERVAL and THEOREM_KAPPA <= q.param <= 1.0:
        params = DeltaParams(q.mode, q.param)
    else:
        return 0.0
    C_N = singular_series(q.N, PREDICTION_TRUNCATION).value
    return main_term_bound(q.N, params, C_N, cfg)


def count_representations(q, sieve, cfg=DEFAULT_CONFIG):
    """Exact number of primes p in the query's range with Ω(N - p) <= r.

    `predicted_main_term` is the main term of the lower bound when r = 3 and
    the exponent lies in the range where that bound is positive (full mode
    counts as theta = 1), else 0.
    """
    lo, hi = p_range(q.N, q.mode, q.param, q.include_unit)
    _check_desk(q.N, sieve, hi)
    hist = omega_histogram(q.N, lo, hi, sieve)
    count = int(hist[:q.r + 1].sum())
    predicted = _prediction(q, cfg)
    ratio = count / predicted if predicted > 0 else None
    return CountReport(q, count, predicted, ratio)


def sift_weighted(N, params, sieve):
    """Weighted sifting check S1 - S2/2 against the exact P₃ count.

    `params` fixes the p-range (theta or kappa) and the sieving limit
    ``z = N**(1/lam)``. A survivor's weight is ``1 - k/2`` where k is the
    number of its mid-range prime divisors. Survivors of weight zero or
    below cannot raise S1 - S2/2, so only positive-weight survivors that are
    not P₃ count as exceptions, and ``d13 >= s1 - s2/2 - exceptions`` holds
    exactly.
    """
    N = int(N)
    if N < 6 or N % 2:
        raise DomainError(f"N must be an even integer >= 6, got {N}")
    z = N ** (1.0 / params.lam)
    if z < 3.0:
        raise DomainError(f"sieving limit z = N^(1/{params.lam}) = {z:.4f} is below 3")
    lo, hi = p_range(N, params.mode, params.param)
    _check_desk(N, sieve, hi)

    cube = math.floor(round(N ** (1.0 / 3.0)))
    while cube**3 >= N:
        cube -= 1
    while (cube + 1) ** 3 < N:
        cube += 1
    # primes q with q^3 < N are exactly q <= cube
    primes = sieve.primes(2, max(math.isqrt(N), cube))
    coprime = (N % primes) != 0
    klass = np.zeros(primes.size, dtype=np.int8)
    klass[(primes < z) & coprime] = 1
    klass[(primes >= z) & (primes <= cube) & coprime] = 2

    s1 = s2 = d13 = exceptions = 0
    if hi >= lo:
        for om, n1, n2, _, _ in _profiles(N, lo, hi, sieve, primes, klass):
            surv = n1 == 0
            s1 += int(surv.sum())
            s2 += int(n2[surv].sum(dtype=np.int64))
            d13 += int((om <= 3).sum())
            exceptions += int((surv & (n2 <= 1) & (om > 3)).sum())
    weighted = s1 - s2 / 2
    return SiftReport(N, z, s1, s2, weighted, d13, exceptions,
                      d13 >= weighted - exceptions)


def scan_grid(N_list, template, sieve, cfg=DEFAULT_CONFIG, workers=1):
    """Run `template` for every N, keeping input order.

    Entries that fail hold the :class:`SievekitError` instead of a report;
    the rest of the batch is unaffected.
    """

    def one(N):
        try:
            return count_representations(template.with_N(N), sieve, cfg)
        except SievekitError as exc:
            return exc

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            return list(pool.map(one, N_list))
    return [one(N) for N in N_list]


def _trial_omega(n):
    count = 0
    d = 2
    while d * d <= n:
        while n % d == 0:
            n //= d
            count += 1
        d += 1
    return count + (n > 1)


class TrialDivisionOracle:
    """Reference counts from trial division alone, for N up to `nmax`.

    Shares nothing with the sieve tables or kernels, so agreement with
    :func:`count_representations` is an independent check.
    """

    def __init__(self, nmax):
        self.nmax = int(nmax)
        self.omega = [0] + [_trial_omega(n) for n in range(1, self.nmax + 1)]
        self.primes = [n for n in range(2, self.nmax + 1) if self.omega[n] == 1]

    def omegas(self, N, mode=Mode.FULL, param=None, include_unit=False):
        """Ω(N - p) for every prime p in the query's range."""
        if N > self.nmax:
            raise DomainError(f"oracle covers N <= {self.nmax}, got {N}")
        lo, hi = p_range(N, mode, param, include_unit)
        i0 = bisect.bisect_left(self.primes, lo)
        i1 = bisect.bisect_right(self.primes, hi)
        om = self.omega
        return [om[N - p] for p in self.primes[i0:i1]]

    def count(self, N, r, mode=Mode.FULL, param=None, include_unit=False):
        return sum(1 for w in self.omegas(N, mode, param, include_unit) if w <= r)


def brute_force_count(N, r, mode=Mode.FULL, param=None, include_unit=False):
    """One-off reference count; see :class:`TrialDivisionOracle`."""
    return TrialDivisionOracle(N).count(N, r, mode, param, include_unit)

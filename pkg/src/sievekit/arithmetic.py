"""
Prime tables, prime-factor counts, the singular series C(N) and the sieve
density product W(z).
"""

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from sievekit import kernels
from sievekit.errors import DomainError, ResourceError
from sievekit.sieve_functions import EULER_GAMMA

__all__ = [
    "PrimeSieve",
    "FactorTable",
    "SingularSeriesResult",
    "build_sieve",
    "build_factor_table",
    "omega",
    "odd_prime_divisors",
    "singular_series",
    "sieve_product_W",
    "w_asymptotic_ratio",
    "twin_constant",
    "DEFAULT_TRUNCATION",
]

MAX_LIMIT = 1 << 40
SEGMENT_ODDS = 1 << 18  # 256 KiB of flags per segment; a multiple of 8
FACTOR_SEGMENT = 1 << 16
DEFAULT_TRUNCATION = 10**8
DEFAULT_MEM_MB = 4096
ROSSER_SCHOENFELD = 1.25506  # pi(x) < 1.25506 x / log x for x > 1

_POPCOUNT = np.array([bin(i).count("1") for i in range(256)], dtype=np.int64)


def memory_budget_bytes():
    """Sieve memory cap from ``SIEVEKIT_MEM_MB`` (default 4096 MiB)."""
    raw = os.environ.get("SIEVEKIT_MEM_MB", "")
    try:
        mb = float(raw) if raw else DEFAULT_MEM_MB
    except ValueError:
        raise DomainError(f"SIEVEKIT_MEM_MB must be a number, got {raw!r}") from None
    return int(mb * 2**20)


class PrimeSieve:
    """Odd-only primality bitmap up to `limit`; bit i stands for 2*i + 1.

    Immutable after construction and safe to share across threads.
    """

    def __init__(self, limit, bits):
        self.limit = int(limit)
        self.bits = bits
        self.bits.setflags(write=False)

    def __repr__(self):
        return f"PrimeSieve(limit={self.limit})"

    def is_prime(self, n):
        n = int(n)
        if n > self.limit:
            raise DomainError(f"{n} exceeds sieve limit {self.limit}")
        if n == 2:
            return True
        if n < 2 or n % 2 == 0:
            return False
        i = n >> 1
        return bool((self.bits[i >> 3] >> (i & 7)) & 1)

    def primes(self, lo=2, hi=None):
        """All primes in [lo, hi] as an int64 array."""
        hi = self.limit if hi is None else int(hi)
        lo = max(int(lo), 2)
        if hi > self.limit:
            raise DomainError(f"{hi} exceeds sieve limit {self.limit}")
        if hi < lo:
            return np.empty(0, dtype=np.int64)
        i0 = lo >> 1
        i1 = (hi - 1) >> 1
        if i1 < i0:
            odd = np.empty(0, dtype=np.int64)
        else:
            b0, b1 = i0 >> 3, i1 >> 3
            flags = np.unpackbits(self.bits[b0:b1 + 1], bitorder="little")
            sel = flags[i0 - 8 * b0:i1 - 8 * b0 + 1]
            odd = (np.flatnonzero(sel).astype(np.int64) + i0) * 2 + 1
        if lo <= 2 <= hi:
            return np.concatenate(([2], odd)).astype(np.int64)
        return odd

    def count(self, hi=None):
        """pi(hi), the number of primes up to `hi`."""
        hi = self.limit if hi is None else int(hi)
        if hi > self.limit:
            raise DomainError(f"{hi} exceeds sieve limit {self.limit}")
        if hi < 2:
            return 0
        i1 = (hi - 1) >> 1
        full, rest = divmod(i1 + 1, 8)
        total = int(_POPCOUNT[self.bits[:full]].sum())
        if rest:
            total += int(_POPCOUNT[self.bits[full] & ((1 << rest) - 1)])
        return total + 1


def _small_primes(n):
    """Plain Eratosthenes up to n; seeds the segmented sieve."""
    if n < 2:
        return np.empty(0, dtype=np.int64)
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    for i in range(2, math.isqrt(n) + 1):
        if flags[i]:
            flags[i * i::i] = False
    return np.flatnonzero(flags).astype(np.int64)


def build_sieve(limit, workers=1):
    """Segmented odd-only sieve of Eratosthenes up to `limit`.

    Segments are independent once the base primes are known, so they can be
    filled by `workers` threads (the compiled kernel releases the GIL).
    """
    limit = int(limit)
    if not (2 <= limit <= MAX_LIMIT):
        raise DomainError(f"sieve limit must lie in [2, 2**40], got {limit}")
    n_odds = (limit + 1) // 2
    need = (n_odds + 7) // 8 + SEGMENT_ODDS
    if need > memory_budget_bytes():
        raise ResourceError(
            f"sieve up to {limit} needs ~{need / 2**20:.0f} MiB, "
            f"budget is {memory_budget_bytes() / 2**20:.0f} MiB (SIEVEKIT_MEM_MB)"
        )
    base = _small_primes(math.isqrt(limit))
    starts = range(0, n_odds, SEGMENT_ODDS)

    def segment(i0):
        count = min(SEGMENT_ODDS, n_odds - i0)
        flags = kernels.sieve_segment(2 * i0 + 1, count, base)
        return np.packbits(flags, bitorder="little")

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(segment, starts))
    else:
        parts = [segment(i0) for i0 in starts]
    return PrimeSieve(limit, np.concatenate(parts))


def omega(n, sieve):
    """Ω(n): prime factors of n counted with multiplicity."""
    n = int(n)
    if n < 1:
        raise DomainError(f"omega needs n >= 1, got {n}")
    root = math.isqrt(n)
    if root > sieve.limit:
        raise DomainError(f"primes up to {root} are needed, sieve stops at {sieve.limit}")
    count = 0
    for p in sieve.primes(2, root).tolist():
        if p * p > n:
            break
        while n % p == 0:
            n //= p
            count += 1
    return count + (n > 1)


@dataclass(frozen=True)
class FactorTable:
    """Ω(n) for every n in [lo, hi]."""

    lo: int
    hi: int
    omega_big: np.ndarray

    def omega(self, n):
        if not (self.lo <= n <= self.hi):
            raise DomainError(f"{n} outside table range [{self.lo}, {self.hi}]")
        return int(self.omega_big[n - self.lo])

    def is_almost_prime(self, n, r):
        """True when n is a P_r, i.e. Ω(n) <= r."""
        return self.omega(n) <= r


def _root_primes(hi, sieve):
    root = math.isqrt(hi)
    if root > sieve.limit:
        raise DomainError(f"primes up to {root} are needed, sieve stops at {sieve.limit}")
    return sieve.primes(2, root)


def build_factor_table(lo, hi, sieve):
    """Segmented Ω table over [lo, hi] (1 <= lo <= hi)."""
    lo, hi = int(lo), int(hi)
    if not (1 <= lo <= hi):
        raise DomainError(f"need 1 <= lo <= hi, got [{lo}, {hi}]")
    primes = _root_primes(hi, sieve)
    parts = []
    for start in range(lo, hi + 1, FACTOR_SEGMENT):
        count = min(FACTOR_SEGMENT, hi + 1 - start)
        parts.append(kernels.factor_segment(start, count, primes)[0])
    return FactorTable(lo, hi, np.concatenate(parts))


def odd_prime_divisors(N):
    """Distinct odd primes dividing N, by trial division."""
    N = int(N)
    out = []
    while N % 2 == 0 and N > 0:
        N //= 2
    p = 3
    while p * p <= N:
        if N % p == 0:
            out.append(p)
            while N % p == 0:
                N //= p
        p += 2
    if N > 1:
        out.append(N)
    return out


@dataclass(frozen=True)
class SingularSeriesResult:
    """C(N) from a truncated Euler product.

    `tail_bound` bounds ``twin_constant`` minus the infinite product; the
    same bound scaled by ``value / twin_constant`` applies to `value`.
    """

    N: int
    value: float
    twin_constant: float
    truncation_prime: int
    tail_bound: float


def _tail_sum_bound(T, pi_T):
    """Upper bound for the sum of 1/(p-1)^2 over primes p > T.

    Partial summation against pi(x), with pi(x) < 1.25506 x/log x above T and
    the exact pi(T) at the lower end.
    """
    Tm = T - 1.0
    upper = 2.0 * ROSSER_SCHOENFELD / math.log(T) * (1.0 / Tm + 0.5 / Tm**2)
    return upper - pi_T / Tm**2


@lru_cache(maxsize=8)
def twin_constant(truncation_prime=DEFAULT_TRUNCATION):
    """Product of (1 - 1/(p-1)^2) over 2 < p <= T, and its certified tail bound."""
    T = int(truncation_prime)
    sieve = build_sieve(T)
    log_sum = 0.0
    for start in range(3, T + 1, 1 << 24):
        p = sieve.primes(start, min(T, start + (1 << 24) - 1)).astype(np.float64)
        log_sum += float(np.sum(np.log1p(-1.0 / (p - 1.0) ** 2)))
    value = math.exp(log_sum)
    return value, value * _tail_sum_bound(T, sieve.count(T))


def singular_series(N, truncation_prime=DEFAULT_TRUNCATION):
    """C(N) for even N >= 4, from the product over primes up to `truncation_prime`."""
    N = int(N)
    if N < 4 or N % 2:
        raise DomainError(f"C(N) is defined here for even N >= 4, got {N}")
    T = int(truncation_prime)
    if T < 10**4:
        raise DomainError(f"truncation_prime must be at least 1e4, got {T}")
    twin, tail = twin_constant(T)
    value = twin
    for p in odd_prime_divisors(N):
        value *= (p - 1) / (p - 2)
    return SingularSeriesResult(N, value, twin, T, tail)


def sieve_product_W(N, z, sieve):
    """Product of (1 - 1/(p-1)) over primes 3 <= p < z with p not dividing N."""
    N = int(N)
    z = float(z)
    if N % 2:
        raise DomainError(f"W(z) needs even N (p = 2 would contribute a zero factor), got {N}")
    if not (2.0 < z <= sieve.limit):
        raise DomainError(f"need 2 < z <= {sieve.limit}, got z={z}")
    p = sieve.primes(3, math.ceil(z) - 1)
    p = p[(p < z) & (N % p != 0)].astype(np.float64)
    if p.size == 0:
        return 1.0
    return math.exp(float(np.sum(np.log1p(-1.0 / (p - 1.0)))))


def w_asymptotic_ratio(N, lam, sieve, truncation_prime=10**6):
    """W(N**(1/lam)) divided by its asymptotic form 2 lam e^-γ C(N) / log N."""
    z = N ** (1.0 / lam)
    C = singular_series(N, truncation_prime).value
    return sieve_product_W(N, z, sieve) * math.log(N) / (
        2.0 * lam * math.exp(-EULER_GAMMA) * C)

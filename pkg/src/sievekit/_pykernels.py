"""NumPy implementations of the segment kernels.

These are the fallback for :mod:`sievekit._ckernels` and define the reference
semantics; the compiled versions must agree with them element for element.
"""

import numpy as np


def sieve_segment(lo, count, primes):
    """Primality flags for the odd integers lo, lo+2, ..., lo+2*(count-1).

    `lo` must be odd and `primes` must hold every odd prime up to the square
    root of the last entry (2 may be present; it is skipped).
    """
    flags = np.ones(count, dtype=np.uint8)
    if count == 0:
        return flags
    last = lo + 2 * (count - 1)
    if lo == 1:
        flags[0] = 0
    for p in primes:
        p = int(p)
        if p == 2:
            continue
        sq = p * p
        if sq > last:
            break
        start = max(sq, ((lo + p - 1) // p) * p)
        if start % 2 == 0:
            start += p
        flags[(start - lo) // 2::p] = 0
    return flags


def factor_segment(lo, count, primes, klass=None):
    """Prime-factor profile of every integer in [lo, lo + count).

    `primes` must contain all primes up to the square root of the last
    integer, in increasing order. It may extend further (class-2 primes can
    exceed that root); entries above the last integer are ignored.

    Returns
    -------
    omega : uint8 array
        Number of prime factors with multiplicity.
    n1, n2 : uint8 arrays
        Number of distinct prime divisors with ``klass == 1`` (resp. 2).
        All zero when `klass` is None.
    rep2 : uint8 array
        1 where some class-2 prime divides with multiplicity at least 2.
    """
    hi = lo + count - 1
    smooth = np.ones(count, dtype=np.int64)
    omega = np.zeros(count, dtype=np.uint8)
    n1 = np.zeros(count, dtype=np.uint8)
    n2 = np.zeros(count, dtype=np.uint8)
    rep2 = np.zeros(count, dtype=np.uint8)
    for i, p in enumerate(primes):
        p = int(p)
        if p > hi:
            break
        k = 0 if klass is None else int(klass[i])
        if k == 1:
            n1[(-lo) % p::p] += 1
        elif k == 2:
            n2[(-lo) % p::p] += 1
            if p * p <= hi:
                rep2[(-lo) % (p * p)::p * p] = 1
        pk = p
        while pk <= hi:
            s = (-lo) % pk
            omega[s::pk] += 1
            smooth[s::pk] *= p
            pk *= p
    # what is left after the listed primes is a single prime > sqrt(hi)
    omega += (smooth != np.arange(lo, lo + count, dtype=np.int64)).astype(np.uint8)
    return omega, n1, n2, rep2

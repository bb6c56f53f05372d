import math

import numpy as np
import pytest

from sievekit.arithmetic import (
    build_factor_table, build_sieve, odd_prime_divisors, omega, sieve_product_W,
    singular_series, twin_constant, w_asymptotic_ratio,
)
from sievekit.errors import DomainError, ResourceError

# Hardy–Littlewood twin prime constant, published to 17 digits
TWIN_KNOWN = 0.66016181584686957


def naive_omega(n):
    c, d = 0, 2
    while d * d <= n:
        while n % d == 0:
            n //= d
            c += 1
        d += 1
    return c + (n > 1)


@pytest.mark.parametrize("limit,count", [(2, 1), (30, 10), (100, 25), (10**6, 78498)])
def test_prime_counts(limit, count):
    assert build_sieve(limit).count() == count


def test_known_pi_1e8(sieve_big):
    assert sieve_big.count() == 5761455
    assert sieve_big.count(10**7) == 664579


def test_primes_listing():
    s = build_sieve(50)
    assert s.primes().tolist() == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]
    assert s.primes(20, 30).tolist() == [23, 29]
    assert s.primes(24, 28).size == 0
    assert [n for n in range(51) if s.is_prime(n)] == s.primes().tolist()


def test_sieve_matches_trial_division(sieve_small):
    flags = np.array([naive_omega(n) == 1 for n in range(2, 20001)])
    assert np.array_equal(np.flatnonzero(flags) + 2, sieve_small.primes(2, 20000))


def test_sieve_limits():
    with pytest.raises(DomainError):
        build_sieve(1)
    with pytest.raises(DomainError):
        build_sieve(2**41)


def test_sieve_memory_budget(monkeypatch):
    monkeypatch.setenv("SIEVEKIT_MEM_MB", "1")
    with pytest.raises(ResourceError):
        build_sieve(10**8)


@pytest.mark.parametrize("n,k", [(1, 0), (2, 1), (12, 3), (64, 6), (97, 1), (30, 3),
                                 (2 * 3 * 5 * 7 * 11, 5), (999983 * 2, 2)])
def test_omega_examples(n, k, sieve_small):
    assert omega(n, sieve_small) == k


def test_omega_domain(sieve_small):
    with pytest.raises(DomainError):
        omega(0, sieve_small)
    with pytest.raises(DomainError):
        omega(10**14, build_sieve(100))


def test_factor_table_against_trial_division(sieve_small):
    t = build_factor_table(1, 10**5, sieve_small)
    expected = [naive_omega(n) for n in range(1, 10**5 + 1)]
    assert t.omega_big.tolist() == expected


def test_factor_table_high_window(sieve_small):
    lo = 10**11 - 2000
    t = build_factor_table(lo, lo + 2000, sieve_small)
    for n in range(lo, lo + 2001, 97):
        assert t.omega(n) == omega(n, sieve_small)


@pytest.mark.parametrize("a,b", [(6, 35), (8, 9), (1024, 243), (77, 91)])
def test_omega_additive(a, b, sieve_small):
    assert omega(a * b, sieve_small) == omega(a, sieve_small) + omega(b, sieve_small)


def test_almost_prime(sieve_small):
    t = build_factor_table(1, 100, sieve_small)
    assert t.is_almost_prime(30, 3) and not t.is_almost_prime(30, 2)
    with pytest.raises(DomainError):
        t.omega(101)


def test_odd_prime_divisors():
    assert odd_prime_divisors(2**10) == []
    assert odd_prime_divisors(2 * 3**4 * 5 * 101) == [3, 5, 101]


def test_twin_constant_known_value():
    v, tail = twin_constant(10**7)
    # truncating drops factors below 1, so the truncated value sits above
    assert 0 < v - TWIN_KNOWN <= tail
    assert tail < 1e-7


def test_twin_constant_tail_at_1e8():
    v, tail = twin_constant(10**8)
    assert tail < 1e-9
    assert 0 < v - TWIN_KNOWN <= tail


@pytest.mark.parametrize("N,factor", [(4, 1.0), (6, 2.0), (30, 2.0 * 4 / 3),
                                      (2 * 7 * 7, 6 / 5), (1024, 1.0)])
def test_singular_series_examples(N, factor):
    r = singular_series(N, 10**7)
    assert r.value == pytest.approx(r.twin_constant * factor, rel=1e-15)
    assert abs(r.value - TWIN_KNOWN * factor) <= r.tail_bound * factor


@pytest.mark.parametrize("N,T", [(7, 10**6), (2, 10**6), (10, 1000)])
def test_singular_series_domain(N, T):
    with pytest.raises(DomainError):
        singular_series(N, T)


def test_W_examples(sieve_small):
    # W(z) for N = 2^k keeps every odd prime below z
    assert sieve_product_W(64, 6.0, sieve_small) == pytest.approx(0.5 * 0.75)
    # 3 | 30 and 5 | 30 drop out, 7 remains
    assert sieve_product_W(30, 8.0, sieve_small) == pytest.approx(5 / 6)
    assert sieve_product_W(30, 3.0, sieve_small) == 1.0


def test_W_monotone_in_z(sieve_small):
    zs = [3.5, 10.0, 50.0, 300.0, 5000.0]
    ws = [sieve_product_W(10**6, z, sieve_small) for z in zs]
    assert all(b <= a for a, b in zip(ws, ws[1:]))


def test_W_domain(sieve_small):
    with pytest.raises(DomainError):
        sieve_product_W(31, 10.0, sieve_small)
    with pytest.raises(DomainError):
        sieve_product_W(30, 2.0, sieve_small)


def test_w_ratio_near_one(sieve_small):
    assert 0.5 <= w_asymptotic_ratio(10**8, 11.99, sieve_small) <= 2.0

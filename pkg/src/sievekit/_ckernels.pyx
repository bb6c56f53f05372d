# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled segment kernels; semantics match :mod:`sievekit._pykernels`."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint8_t, int8_t

cnp.import_array()


def sieve_segment(int64_t lo, Py_ssize_t count, primes):
    cdef cnp.ndarray[uint8_t, ndim=1] out = np.ones(count, dtype=np.uint8)
    cdef int64_t[::1] pr = np.ascontiguousarray(primes, dtype=np.int64)
    cdef uint8_t[::1] flags = out
    cdef Py_ssize_t i, j, n = pr.shape[0]
    cdef int64_t p, start, last
    if count == 0:
        return out
    last = lo + 2 * (count - 1)
    with nogil:
        if lo == 1:
            flags[0] = 0
        for i in range(n):
            p = pr[i]
            if p == 2:
                continue
            if p * p > last:
                break
            start = ((lo + p - 1) // p) * p
            if start < p * p:
                start = p * p
            if start % 2 == 0:
                start += p
            j = (start - lo) // 2
            while j < count:
                flags[j] = 0
                j += p
    return out


def factor_segment(int64_t lo, Py_ssize_t count, primes, klass=None):
    cdef cnp.ndarray[uint8_t, ndim=1] omega_a = np.zeros(count, dtype=np.uint8)
    cdef cnp.ndarray[uint8_t, ndim=1] n1_a = np.zeros(count, dtype=np.uint8)
    cdef cnp.ndarray[uint8_t, ndim=1] n2_a = np.zeros(count, dtype=np.uint8)
    cdef cnp.ndarray[uint8_t, ndim=1] rep2_a = np.zeros(count, dtype=np.uint8)
    cdef cnp.ndarray[int64_t, ndim=1] smooth_a = np.ones(count, dtype=np.int64)
    cdef uint8_t[::1] omega = omega_a
    cdef uint8_t[::1] n1 = n1_a
    cdef uint8_t[::1] n2 = n2_a
    cdef uint8_t[::1] rep2 = rep2_a
    cdef int64_t[::1] smooth = smooth_a
    cdef int64_t[::1] pr = np.ascontiguousarray(primes, dtype=np.int64)
    cdef int8_t[::1] kl
    cdef bint has_class = klass is not None
    cdef Py_ssize_t i, j, n = pr.shape[0]
    cdef int64_t p, pk, hi = lo + count - 1
    cdef int k
    if has_class:
        kl = np.ascontiguousarray(klass, dtype=np.int8)
    else:
        kl = np.zeros(1, dtype=np.int8)
    with nogil:
        for i in range(n):
            p = pr[i]
            if p > hi:
                break
            k = kl[i] if has_class else 0
            if k == 1:
                j = (p - lo % p) % p
                while j < count:
                    n1[j] += 1
                    j += p
            elif k == 2:
                j = (p - lo % p) % p
                while j < count:
                    n2[j] += 1
                    j += p
            pk = p
            while pk <= hi:
                j = (pk - lo % pk) % pk
                if k == 2 and pk == p * p:
                    while j < count:
                        rep2[j] = 1
                        omega[j] += 1
                        smooth[j] *= p
                        j += pk
                else:
                    while j < count:
                        omega[j] += 1
                        smooth[j] *= p
                        j += pk
                if pk > hi // p:
                    break
                pk *= p
        # the part not covered by listed primes is one prime > sqrt(hi)
        for j in range(count):
            if smooth[j] != lo + j:
                omega[j] += 1
    return omega_a, n1_a, n2_a, rep2_a

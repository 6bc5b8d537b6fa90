# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels: Pfaffian elimination and the sparse wedge merge.

Mirrors the call surface of ``_kernels_py``.
"""

from libc.math cimport fabs

cdef extern from "complex.h":
    double cabs(double complex) nogil

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


def pfaffian_r(double[:, ::1] a):
    """Pfaffian of an even-dimensional skew matrix; clobbers ``a``."""
    cdef Py_ssize_t m = a.shape[0]
    cdef Py_ssize_t k, i, j, pivot
    cdef double value = 1.0
    cdef double best, mag, tmp, akk1, ti, ci
    for k in range(0, m - 1, 2):
        pivot = k + 1
        best = fabs(a[k + 1, k])
        for i in range(k + 2, m):
            mag = fabs(a[i, k])
            if mag > best:
                best = mag
                pivot = i
        if pivot != k + 1:
            for j in range(m):
                tmp = a[k + 1, j]
                a[k + 1, j] = a[pivot, j]
                a[pivot, j] = tmp
            for i in range(m):
                tmp = a[i, k + 1]
                a[i, k + 1] = a[i, pivot]
                a[i, pivot] = tmp
            value = -value
        if a[k + 1, k] == 0.0:
            return 0.0
        akk1 = a[k, k + 1]
        value *= akk1
        for i in range(k + 2, m):
            ti = a[k, i] / akk1
            ci = a[i, k + 1]
            for j in range(k + 2, m):
                a[i, j] += ti * a[j, k + 1] - ci * a[k, j] / akk1
    return value


def pfaffian_c(double complex[:, ::1] a):
    """Complex-coefficient variant of ``pfaffian_r``."""
    cdef Py_ssize_t m = a.shape[0]
    cdef Py_ssize_t k, i, j, pivot
    cdef double complex value = 1.0
    cdef double complex tmp, akk1, ti, ci
    cdef double best, mag
    for k in range(0, m - 1, 2):
        pivot = k + 1
        best = cabs(a[k + 1, k])
        for i in range(k + 2, m):
            mag = cabs(a[i, k])
            if mag > best:
                best = mag
                pivot = i
        if pivot != k + 1:
            for j in range(m):
                tmp = a[k + 1, j]
                a[k + 1, j] = a[pivot, j]
                a[pivot, j] = tmp
            for i in range(m):
                tmp = a[i, k + 1]
                a[i, k + 1] = a[i, pivot]
                a[i, pivot] = tmp
            value = -value
        if a[k + 1, k] == 0.0:
            return 0.0 + 0.0j
        akk1 = a[k, k + 1]
        value = value * akk1
        for i in range(k + 2, m):
            ti = a[k, i] / akk1
            ci = a[i, k + 1]
            for j in range(k + 2, m):
                a[i, j] = a[i, j] + ti * a[j, k + 1] - ci * a[k, j] / akk1
    return value


def wedge_rr(unsigned long long[::1] keys_a, double[::1] vals_a,
             unsigned long long[::1] keys_b, double[::1] vals_b):
    """Bilinear merge of two sparse blade tables (bitmask keys)."""
    cdef Py_ssize_t na = keys_a.shape[0]
    cdef Py_ssize_t nb = keys_b.shape[0]
    cdef Py_ssize_t p, q
    cdef unsigned long long ka, kb, rest, low
    cdef double va, term
    cdef int parity, j
    out = {}
    for p in range(na):
        ka = keys_a[p]
        va = vals_a[p]
        for q in range(nb):
            kb = keys_b[q]
            if ka & kb:
                continue
            parity = 0
            rest = kb
            while rest:
                low = rest & (~rest + 1)
                j = __builtin_ctzll(low)
                parity ^= __builtin_popcountll(ka >> (j + 1)) & 1
                rest ^= low
            term = -va * vals_b[q] if parity else va * vals_b[q]
            key = ka | kb
            prev = out.get(key)
            out[key] = term if prev is None else prev + term
    return {k: v for k, v in out.items() if v != 0.0}


def wedge_cc(unsigned long long[::1] keys_a, double complex[::1] vals_a,
             unsigned long long[::1] keys_b, double complex[::1] vals_b):
    """Complex-coefficient variant of ``wedge_rr``."""
    cdef Py_ssize_t na = keys_a.shape[0]
    cdef Py_ssize_t nb = keys_b.shape[0]
    cdef Py_ssize_t p, q
    cdef unsigned long long ka, kb, rest, low
    cdef double complex va, term
    cdef int parity, j
    out = {}
    for p in range(na):
        ka = keys_a[p]
        va = vals_a[p]
        for q in range(nb):
            kb = keys_b[q]
            if ka & kb:
                continue
            parity = 0
            rest = kb
            while rest:
                low = rest & (~rest + 1)
                j = __builtin_ctzll(low)
                parity ^= __builtin_popcountll(ka >> (j + 1)) & 1
                rest ^= low
            term = -va * vals_b[q] if parity else va * vals_b[q]
            key = ka | kb
            prev = out.get(key)
            out[key] = term if prev is None else prev + term
    return {k: v for k, v in out.items() if v != 0.0}

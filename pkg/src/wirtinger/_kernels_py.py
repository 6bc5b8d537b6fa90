"""Pure-Python kernels.

Same call surface as the compiled module ``_kernels_cy``; ``_kernels``
binds whichever is importable.  These are the reference implementations
the extension is benchmarked against.
"""

import numpy as np


def _pfaffian_eliminate(a):
    """Pfaffian by elimination to skew tridiagonal form.

    Partial pivoting on each odd column; every row/column interchange
    flips the sign of the result.  ``a`` is clobbered.  Works for float64
    and complex128 input.
    """
    m = a.shape[0]
    value = a.dtype.type(1)
    for k in range(0, m - 1, 2):
        pivot = k + 1 + int(np.argmax(np.abs(a[k + 1:, k])))
        if pivot != k + 1:
            a[[k + 1, pivot], :] = a[[pivot, k + 1], :]
            a[:, [k + 1, pivot]] = a[:, [pivot, k + 1]]
            value = -value
        if a[k + 1, k] == 0:
            return a.dtype.type(0)
        value = value * a[k, k + 1]
        if k + 2 < m:
            tau = a[k, k + 2:] / a[k, k + 1]
            col = a[k + 2:, k + 1]
            a[k + 2:, k + 2:] += np.outer(tau, col)
            a[k + 2:, k + 2:] -= np.outer(col, tau)
    return value


def pfaffian_r(a):
    return float(_pfaffian_eliminate(a))


def pfaffian_c(a):
    return complex(_pfaffian_eliminate(a))


def _merge_sign(ka, kb):
    # Parity of inversions between two disjoint increasing blades given as
    # bitmasks: for each index j of kb, count the indices of ka above j.
    sign = 1
    rest = kb
    while rest:
        low = rest & -rest
        if (ka >> low.bit_length()).bit_count() & 1:
            sign = -sign
        rest ^= low
    return sign


def _wedge_merge(keys_a, vals_a, keys_b, vals_b):
    ka_list = [int(k) for k in keys_a]
    kb_list = [int(k) for k in keys_b]
    va_list = np.asarray(vals_a).tolist()
    vb_list = np.asarray(vals_b).tolist()
    out = {}
    for ka, va in zip(ka_list, va_list):
        for kb, vb in zip(kb_list, vb_list):
            if ka & kb:
                continue
            term = va * vb
            if _merge_sign(ka, kb) < 0:
                term = -term
            key = ka | kb
            out[key] = out.get(key, 0) + term
    return {k: v for k, v in out.items() if v != 0}


def wedge_rr(keys_a, vals_a, keys_b, vals_b):
    return _wedge_merge(keys_a, vals_a, keys_b, vals_b)


def wedge_cc(keys_a, vals_a, keys_b, vals_b):
    return _wedge_merge(keys_a, vals_a, keys_b, vals_b)

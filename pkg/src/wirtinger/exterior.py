"""Constant-coefficient exterior algebra on R^m.

Every degree computation in this package reduces to the Pfaffian of a
restricted 2-form.  Two independent routes are kept side by side: the
combinatorial ones (``pfaffian_oracle``, ``form_power``) expand everything
blade by blade and serve as ground truth on small dimensions, while
``pfaffian`` runs tridiagonal elimination and scales to the ambient sizes
the rest of the package needs.
"""

from __future__ import annotations

import math

import numpy as np

from . import _kernels

#: recursive expansion refuses above this dimension (factorial blowup)
PFAFFIAN_ORACLE_MAX_DIM = 12
#: full wedge expansions used as cross-checks stay at or below this dimension
WEDGE_ORACLE_MAX_DIM = 10
#: blade keys are stored as 64-bit masks
MAX_BLADE_DIM = 64
#: inputs further than this (relative, max norm) from skew are rejected
SKEW_REJECTION_RTOL = 1e-8


class SkewMatrix:
    """Coordinate matrix of a constant 2-form, eta(x, y) = x^T A y.

    Entries are symmetrized on construction, A <- (A - A^T)/2, so user
    files with rounded values are accepted; anything beyond
    ``SKEW_REJECTION_RTOL`` from skew is rejected instead of silently
    projected.
    """

    __slots__ = ("entries",)

    def __init__(self, entries):
        a = np.array(entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
            raise ValueError("SkewMatrix needs a nonempty square matrix")
        scale = float(np.max(np.abs(a)))
        if scale > 0.0:
            defect = float(np.max(np.abs(a + a.T)))
            if defect > SKEW_REJECTION_RTOL * scale:
                raise ValueError(
                    "matrix is not antisymmetric: max|A + A^T| = "
                    f"{defect:.3e} exceeds {SKEW_REJECTION_RTOL:.0e} * max|A|"
                )
        a = (a - a.T) / 2.0
        a.setflags(write=False)
        self.entries = a

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    def __repr__(self):
        return f"SkewMatrix(dim={self.dim})"


def _as_skew(form) -> SkewMatrix:
    if isinstance(form, SkewMatrix):
        return form
    return SkewMatrix(form)


def _normalize_key(indices, dim):
    """Sort a blade key; returns (bitmask, sign), sign 0 on a repeated index."""
    idx = [int(i) for i in indices]
    sign = 1
    for p in range(1, len(idx)):  # insertion sort, counting swaps
        q = p
        while q > 0 and idx[q - 1] > idx[q]:
            idx[q - 1], idx[q] = idx[q], idx[q - 1]
            sign = -sign
            q -= 1
    mask = 0
    for i in idx:
        if not 0 <= i < dim:
            raise ValueError(f"index {i} out of range for dimension {dim}")
        bit = 1 << i
        if mask & bit:
            return 0, 0
        mask |= bit
    return mask, sign


def _mask_to_key(mask):
    key = []
    while mask:
        low = mask & -mask
        key.append(low.bit_length() - 1)
        mask ^= low
    return tuple(key)


class Multivector:
    """Sparse element of the exterior algebra of R^dim.

    The coefficient table is keyed by strictly increasing index tuples;
    keys handed to the constructor are sign-normalized, and zero
    coefficients are never stored.  Blades are bitmasks internally, which
    is what the wedge kernels consume.
    """

    __slots__ = ("dim", "_table")

    def __init__(self, dim, terms=None):
        dim = int(dim)
        if not 1 <= dim <= MAX_BLADE_DIM:
            raise ValueError(f"dimension must be in [1, {MAX_BLADE_DIM}]")
        self.dim = dim
        table = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for key, coeff in items:
                mask, sign = _normalize_key(key, dim)
                if sign == 0 or coeff == 0:
                    continue
                value = table.get(mask, 0) + sign * coeff
                table[mask] = value
            table = {k: v for k, v in table.items() if v != 0}
        self._table = table

    @classmethod
    def _from_mask_table(cls, dim, table):
        mv = cls.__new__(cls)
        mv.dim = dim
        mv._table = table
        return mv

    @classmethod
    def scalar(cls, dim, value=1.0):
        return cls(dim, {(): value})

    def terms(self):
        """Coefficient table keyed by strictly increasing index tuples."""
        masks = sorted(self._table, key=lambda m: (m.bit_count(), m))
        return {_mask_to_key(m): self._table[m] for m in masks}

    def coefficient(self, indices):
        mask, sign = _normalize_key(indices, self.dim)
        if sign == 0:
            return 0.0
        return sign * self._table.get(mask, 0.0)

    def grades(self):
        return sorted({m.bit_count() for m in self._table})

    def grade_part(self, k):
        table = {m: v for m, v in self._table.items() if m.bit_count() == k}
        return Multivector._from_mask_table(self.dim, table)

    def is_zero(self):
        return not self._table

    def is_complex(self):
        return any(isinstance(v, complex) for v in self._table.values())

    def conjugate(self):
        table = {
            m: (v.conjugate() if isinstance(v, complex) else v)
            for m, v in self._table.items()
        }
        return Multivector._from_mask_table(self.dim, table)

    def max_abs(self):
        if not self._table:
            return 0.0
        return max(abs(v) for v in self._table.values())

    def allclose(self, other, tol=1e-12):
        """Coefficientwise comparison, absolute tolerance scaled by size."""
        if self.dim != other.dim:
            return False
        scale = max(self.max_abs(), other.max_abs(), 1.0)
        keys = set(self._table) | set(other._table)
        return all(
            abs(self._table.get(k, 0.0) - other._table.get(k, 0.0)) <= tol * scale
            for k in keys
        )

    def __eq__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        return self.dim == other.dim and self._table == other._table

    __hash__ = None

    def __add__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        table = dict(self._table)
        for m, v in other._table.items():
            value = table.get(m, 0) + v
            if value == 0:
                table.pop(m, None)
            else:
                table[m] = value
        return Multivector._from_mask_table(self.dim, table)

    def __sub__(self, other):
        return self + (-1.0) * other

    def __neg__(self):
        return (-1.0) * self

    def __mul__(self, scalar):
        if isinstance(scalar, Multivector):
            return NotImplemented
        if scalar == 0:
            return Multivector._from_mask_table(self.dim, {})
        table = {m: scalar * v for m, v in self._table.items()}
        return Multivector._from_mask_table(self.dim, table)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (1.0 / scalar)

    def __xor__(self, other):
        return wedge(self, other)

    def __repr__(self):
        n = len(self._table)
        return f"Multivector(dim={self.dim}, terms={n}, grades={self.grades()})"


def wedge(a: Multivector, b: Multivector) -> Multivector:
    """Exterior product: bilinear, associative, graded-anticommutative."""
    if not isinstance(a, Multivector) or not isinstance(b, Multivector):
        raise TypeError("wedge expects Multivector operands")
    if a.dim != b.dim:
        raise ValueError(f"wedge on mismatched dimensions {a.dim} != {b.dim}")
    if not a._table or not b._table:
        return Multivector._from_mask_table(a.dim, {})
    dtype = np.complex128 if (a.is_complex() or b.is_complex()) else np.float64
    keys_a = np.fromiter(a._table.keys(), dtype=np.uint64, count=len(a._table))
    vals_a = np.fromiter(a._table.values(), dtype=dtype, count=len(a._table))
    keys_b = np.fromiter(b._table.keys(), dtype=np.uint64, count=len(b._table))
    vals_b = np.fromiter(b._table.values(), dtype=dtype, count=len(b._table))
    table = _kernels.wedge_merge(keys_a, vals_a, keys_b, vals_b)
    return Multivector._from_mask_table(a.dim, table)


def two_form_multivector(form) -> Multivector:
    """The 2-form sum_{i<j} A[i,j] e_i ^ e_j as a multivector."""
    a = _as_skew(form)
    m = a.dim
    entries = a.entries
    table = {}
    for i in range(m):
        for j in range(i + 1, m):
            if entries[i, j] != 0.0:
                table[(1 << i) | (1 << j)] = float(entries[i, j])
    return Multivector._from_mask_table(m, table)


def form_power(form, k: int) -> Multivector:
    """k-th wedge power of the 2-form with coordinate matrix ``form``.

    Computed by repeated wedge; k = 0 gives the scalar 1.
    """
    a = _as_skew(form)
    k = int(k)
    if k < 0:
        raise ValueError("negative power")
    result = Multivector.scalar(a.dim, 1.0)
    if k == 0:
        return result
    eta = two_form_multivector(a)
    for _ in range(k):
        result = wedge(result, eta)
    return result


def pfaffian_oracle(form) -> float:
    """Pfaffian by recursive first-row expansion (ground truth, small dims).

    Memoized over index subsets; refuses beyond
    ``PFAFFIAN_ORACLE_MAX_DIM``.
    """
    a = _as_skew(form).entries
    m = a.shape[0]
    if m % 2:
        raise ValueError("Pfaffian requires even dimension")
    if m > PFAFFIAN_ORACLE_MAX_DIM:
        raise ValueError(
            f"oracle limited to dimension {PFAFFIAN_ORACLE_MAX_DIM}, got {m}"
        )
    memo = {0: 1.0}

    def expand(mask):
        known = memo.get(mask)
        if known is not None:
            return known
        low = mask & -mask
        i = low.bit_length() - 1
        rest = mask ^ low
        total = 0.0
        sign = 1.0
        r = rest
        while r:
            lj = r & -r
            j = lj.bit_length() - 1
            aij = a[i, j]
            if aij != 0.0:
                total += sign * aij * expand(rest ^ lj)
            sign = -sign
            r ^= lj
        memo[mask] = total
        return total

    return expand((1 << m) - 1)


def pfaffian(form) -> float:
    """Pfaffian via skew elimination to tridiagonal form.

    Partial pivoting with row/column swaps, each swap flipping the tracked
    sign; agrees with ``pfaffian_oracle`` wherever the oracle applies.
    """
    a = _as_skew(form).entries
    if a.shape[0] % 2:
        raise ValueError("Pfaffian requires even dimension")
    work = np.array(a, dtype=np.float64, order="C")
    return float(_kernels.pfaffian(work))


def complex_pfaffian(matrix) -> complex:
    """Pfaffian of a complex skew matrix (same elimination, complex scalars)."""
    a = np.array(matrix, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("need a square matrix")
    m = a.shape[0]
    if m % 2:
        raise ValueError("Pfaffian requires even dimension")
    scale = float(np.max(np.abs(a))) if m else 0.0
    if scale > 0.0:
        defect = float(np.max(np.abs(a + a.T)))
        if defect > SKEW_REJECTION_RTOL * scale:
            raise ValueError("matrix is not antisymmetric")
    work = np.ascontiguousarray((a - a.T) / 2.0)
    return complex(_kernels.pfaffian(work))


def top_coefficient(form, d: int) -> float:
    """Coefficient c with eta^d = c * e_1^...^e_{2d} on R^{2d}.

    Equals d! * Pf(A); ``form_power`` reads the same number off the full
    expansion, which is what the cross-check tests do.
    """
    a = _as_skew(form)
    d = int(d)
    if d <= 0:
        raise ValueError("d must be positive")
    if a.dim != 2 * d:
        raise ValueError(f"top power needs dim = 2d, got dim={a.dim}, d={d}")
    return math.factorial(d) * pfaffian(a)

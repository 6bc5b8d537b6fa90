"""Kernel backend selection.

The compiled extension is used when it was built; otherwise the numpy
implementation takes over with identical semantics.
"""

import numpy as np

try:
    from . import _kernels_cy as _impl

    _BACKEND = "compiled"
except ImportError:  # extension not built
    from . import _kernels_py as _impl

    _BACKEND = "python"


def backend() -> str:
    """Active kernel backend, ``"compiled"`` or ``"python"``."""
    return _BACKEND


def pfaffian(a: np.ndarray):
    """Pfaffian of a C-contiguous writable skew array (clobbered)."""
    if a.dtype == np.complex128:
        return _impl.pfaffian_c(a)
    return _impl.pfaffian_r(a)


def wedge_merge(keys_a, vals_a, keys_b, vals_b):
    """Merge two sparse blade tables; dispatches on coefficient dtype."""
    if vals_a.dtype == np.complex128 or vals_b.dtype == np.complex128:
        return _impl.wedge_cc(
            keys_a,
            np.ascontiguousarray(vals_a, dtype=np.complex128),
            keys_b,
            np.ascontiguousarray(vals_b, dtype=np.complex128),
        )
    return _impl.wedge_rr(keys_a, vals_a, keys_b, vals_b)

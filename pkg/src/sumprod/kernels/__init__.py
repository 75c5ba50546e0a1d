"""Bulk kernels with a numba fast path and a pure-numpy fallback.

The backend is chosen once, at import time, from ``SUMPROD_KERNELS``
(``numba`` by default, ``numpy`` to force the fallback).  If numba cannot be
imported the numpy backend is used silently.
"""

import os

_requested = os.environ.get("SUMPROD_KERNELS", "numba").strip().lower() or "numba"
if _requested not in ("numba", "numpy"):
    raise ImportError(f"SUMPROD_KERNELS must be 'numba' or 'numpy', got {_requested!r}")

if _requested == "numba":
    try:
        from . import _numba as _impl
    except ImportError:  # pragma: no cover - numba is a declared dependency
        from . import _numpy as _impl
else:
    from . import _numpy as _impl

BACKEND = _impl.NAME

pair_add_rows = _impl.pair_add_rows
pair_mul_rows = _impl.pair_mul_rows
rows_add = _impl.rows_add
rows_mul = _impl.rows_mul
rows_top = _impl.rows_top
dist_matrix_rows = _impl.dist_matrix_rows
int_valuations = _impl.int_valuations
valuation_matrix = _impl.valuation_matrix
pack_rows = _impl.pack_rows


def backend_module(name):
    """Return the kernel module for ``name`` regardless of the env flag."""
    if name == "numpy":
        from . import _numpy

        return _numpy
    if name == "numba":
        from . import _numba

        return _numba
    raise ValueError(f"unknown kernel backend {name!r}")

"""Vectorised numpy implementations of the bulk kernels.

Row encoding: a Laurent element over a fixed exponent window is a row of
int64 field codes, column ``j`` holding the coefficient of ``t^(lo + j)``.
"""

import numpy as np

NAME = "numpy"


def pair_add_rows(a, b, add_table):
    """All sums a[i] + b[j], flattened row-major to shape (na * nb, w)."""
    out = add_table[a[:, None, :], b[None, :, :]]
    return out.reshape(-1, a.shape[1])


def pair_mul_rows(a, b, add_table, mul_table):
    """All products a[i] * b[j] as rows of width wa + wb - 1."""
    na, wa = a.shape
    nb, wb = b.shape
    out = np.zeros((na, nb, wa + wb - 1), dtype=np.int64)
    for i in range(wa):
        prod = mul_table[a[:, None, i : i + 1], b[None, :, :]]
        seg = out[:, :, i : i + wb]
        out[:, :, i : i + wb] = add_table[seg, prod]
    return out.reshape(na * nb, wa + wb - 1)


def rows_add(a, b, add_table):
    return add_table[a, b]


def rows_mul(a, b, add_table, mul_table):
    n, wa = a.shape
    wb = b.shape[1]
    out = np.zeros((n, wa + wb - 1), dtype=np.int64)
    for i in range(wa):
        prod = mul_table[a[:, i : i + 1], b]
        out[:, i : i + wb] = add_table[out[:, i : i + wb], prod]
    return out


def rows_top(rows):
    """Index of the highest nonzero column per row, -1 for all-zero rows."""
    nz = rows != 0
    w = rows.shape[1]
    top = w - 1 - np.argmax(nz[:, ::-1], axis=1)
    return np.where(nz.any(axis=1), top, -1).astype(np.int64)


def dist_matrix_rows(codes):
    """Highest column where rows i and j differ; -1 when identical."""
    n, w = codes.shape
    out = np.empty((n, n), dtype=np.int64)
    for i in range(n):
        out[i] = rows_top((codes != codes[i]).astype(np.int8))
    return out


def int_valuations(values, p):
    """p-adic valuation of each int64 entry, -1 for zero."""
    v = np.zeros(values.shape, dtype=np.int64)
    d = values.copy()
    live = d != 0
    while True:
        step = live & (d % p == 0)
        if not step.any():
            break
        v[step] += 1
        d[step] //= p
    v[~live] = -1
    return v


def valuation_matrix(values, p):
    """v_p(values[i] - values[j]); -1 where the entries coincide."""
    return int_valuations(values[:, None] - values[None, :], p)


def pack_rows(rows, q):
    """Base-q integer key per row; caller guarantees q**w < 2**63."""
    w = rows.shape[1]
    weights = np.ones(w, dtype=np.int64)
    for j in range(1, w):
        weights[j] = weights[j - 1] * q
    return rows @ weights

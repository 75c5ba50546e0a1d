"""numba-compiled kernels; same signatures and results as ``_numpy``."""

import numpy as np
from numba import njit

NAME = "numba"


@njit(cache=True)
def pair_add_rows(a, b, add_table):
    na, w = a.shape
    nb = b.shape[0]
    out = np.empty((na * nb, w), dtype=np.int64)
    for i in range(na):
        for j in range(nb):
            r = i * nb + j
            for k in range(w):
                out[r, k] = add_table[a[i, k], b[j, k]]
    return out


@njit(cache=True)
def pair_mul_rows(a, b, add_table, mul_table):
    na, wa = a.shape
    nb, wb = b.shape
    out = np.zeros((na * nb, wa + wb - 1), dtype=np.int64)
    for i in range(na):
        for j in range(nb):
            r = i * nb + j
            for x in range(wa):
                ca = a[i, x]
                if ca == 0:
                    continue
                for y in range(wb):
                    cb = b[j, y]
                    if cb != 0:
                        out[r, x + y] = add_table[out[r, x + y], mul_table[ca, cb]]
    return out


@njit(cache=True)
def rows_add(a, b, add_table):
    n, w = a.shape
    out = np.empty((n, w), dtype=np.int64)
    for i in range(n):
        for k in range(w):
            out[i, k] = add_table[a[i, k], b[i, k]]
    return out


@njit(cache=True)
def rows_mul(a, b, add_table, mul_table):
    n, wa = a.shape
    wb = b.shape[1]
    out = np.zeros((n, wa + wb - 1), dtype=np.int64)
    for i in range(n):
        for x in range(wa):
            ca = a[i, x]
            if ca == 0:
                continue
            for y in range(wb):
                cb = b[i, y]
                if cb != 0:
                    out[i, x + y] = add_table[out[i, x + y], mul_table[ca, cb]]
    return out


@njit(cache=True)
def rows_top(rows):
    n, w = rows.shape
    out = np.full(n, -1, dtype=np.int64)
    for i in range(n):
        for k in range(w - 1, -1, -1):
            if rows[i, k] != 0:
                out[i] = k
                break
    return out


@njit(cache=True)
def dist_matrix_rows(codes):
    n, w = codes.shape
    out = np.full((n, n), -1, dtype=np.int64)
    for i in range(n):
        for j in range(i + 1, n):
            d = -1
            for k in range(w - 1, -1, -1):
                if codes[i, k] != codes[j, k]:
                    d = k
                    break
            out[i, j] = d
            out[j, i] = d
    return out


@njit(cache=True)
def _vp(x, p):
    if x == 0:
        return -1
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


@njit(cache=True)
def int_valuations(values, p):
    flat = values.ravel()
    out = np.empty(flat.size, dtype=np.int64)
    for i in range(flat.size):
        out[i] = _vp(flat[i], p)
    return out.reshape(values.shape)


@njit(cache=True)
def valuation_matrix(values, p):
    n = values.shape[0]
    out = np.full((n, n), -1, dtype=np.int64)
    for i in range(n):
        for j in range(i + 1, n):
            v = _vp(values[i] - values[j], p)
            out[i, j] = v
            out[j, i] = v
    return out


@njit(cache=True)
def pack_rows(rows, q):
    n, w = rows.shape
    out = np.zeros(n, dtype=np.int64)
    for i in range(n):
        acc = 0
        for k in range(w - 1, -1, -1):
            acc = acc * q + rows[i, k]
        out[i] = acc
    return out

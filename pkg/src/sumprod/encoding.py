"""Dense encodings of finite sets and kernel-backed bulk operations.

Laurent sets are encoded as int64 code rows over a common exponent window;
p-adic sets as int64 integers ``x * p^S`` for a set-wide scale ``S`` (the
largest denominator exponent).  Whenever an encoding would not fit (field
too large for dense tables, integers past 2^62) the operations fall back to
plain Python dictionaries over element objects; results are identical.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from . import kernels
from .errors import ResourceError
from .field import TABLE_LIMIT, FieldSpec
from .valued import LaurentNumber, PadicNumber

INT64_SAFE = 1 << 62
# entries of an intermediate pair block before it is aggregated
BLOCK_ENTRIES = 1 << 22
DIST_NONE = np.iinfo(np.int64).min  # distance exponent of x to itself


@lru_cache(maxsize=64)
def kernel_tables(spec: FieldSpec):
    if spec.q > TABLE_LIMIT:
        return None
    return spec.tables()


# -- Laurent rows --

def laurent_window(elements):
    exps = [e for x in elements for e, _ in x.code_terms]
    if not exps:
        return 0, 0
    return min(exps), max(exps)


def encode_laurent(elements, lo: int, width: int) -> np.ndarray:
    rows = np.zeros((len(elements), width), dtype=np.int64)
    for i, x in enumerate(elements):
        for e, c in x.code_terms:
            rows[i, e - lo] = c
    return rows


def decode_laurent(rows: np.ndarray, lo: int, spec: FieldSpec) -> list[LaurentNumber]:
    out = []
    raw = LaurentNumber._raw
    for row in rows:
        nz = np.flatnonzero(row)[::-1]
        out.append(raw(spec, tuple((lo + int(j), int(row[j])) for j in nz)))
    return out


def _aggregate_rows(rows, counts, q):
    if len(rows) == 0:
        return rows, counts
    w = rows.shape[1]
    if w * (q - 1).bit_length() <= 62:
        keys = kernels.pack_rows(rows, q)
        order = np.argsort(keys, kind="stable")
        sk = keys[order]
        starts = np.flatnonzero(np.r_[True, sk[1:] != sk[:-1]])
        return rows[order[starts]], np.add.reduceat(counts[order], starts)
    uniq, inverse = np.unique(rows, axis=0, return_inverse=True)
    summed = np.zeros(len(uniq), dtype=np.int64)
    np.add.at(summed, inverse.ravel(), counts)
    return uniq, summed


def _aggregate_ints(values, counts):
    if len(values) == 0:
        return values, counts
    order = np.argsort(values, kind="stable")
    sv = values[order]
    starts = np.flatnonzero(np.r_[True, sv[1:] != sv[:-1]])
    return sv[starts], np.add.reduceat(counts[order], starts)


class Bag:
    """A finite multiset of field elements: support plus int multiplicities."""

    ambient = None

    def __len__(self):
        raise NotImplementedError

    def elements(self) -> list:
        raise NotImplementedError

    def counts(self) -> list[int]:
        raise NotImplementedError

    def items(self):
        return zip(self.elements(), self.counts())

    def total(self) -> int:
        return sum(self.counts())

    def energy(self) -> int:
        return sum(c * c for c in self.counts())

    def as_dict(self) -> dict:
        return dict(self.items())


class LaurentBag(Bag):
    def __init__(self, spec, lo, rows, counts):
        self.ambient = spec
        self.lo = lo
        self.rows = rows
        self._counts = counts

    def __len__(self):
        return len(self.rows)

    def elements(self):
        return decode_laurent(self.rows, self.lo, self.ambient)

    def counts(self):
        return [int(c) for c in self._counts]

    def energy(self):
        return sum(c * c for c in self.counts())


class PadicBag(Bag):
    def __init__(self, p, scale, values, counts):
        self.ambient = PadicNumber(p, 0).ambient
        self.p = p
        self.scale = scale
        self.values = values
        self._counts = counts

    def __len__(self):
        return len(self.values)

    def elements(self):
        p, s = self.p, self.scale
        return [PadicNumber(p, int(v), s) for v in self.values]

    def counts(self):
        return [int(c) for c in self._counts]


class DictBag(Bag):
    def __init__(self, ambient, mapping):
        self.ambient = ambient
        self.mapping = mapping

    def __len__(self):
        return len(self.mapping)

    def elements(self):
        return list(self.mapping)

    def counts(self):
        return list(self.mapping.values())


def _pair_blocks(na, nb, width):
    per_row = max(1, nb * max(width, 1))
    step = max(1, BLOCK_ENTRIES // per_row)
    for start in range(0, na, step):
        yield start, min(na, start + step)


def _laurent_pairs(a_rows, a_counts, b_rows, kernel, out_width, q):
    parts_rows, parts_counts = [], []
    nb = len(b_rows)
    for s, e in _pair_blocks(len(a_rows), nb, out_width):
        rows = kernel(a_rows[s:e], b_rows)
        counts = np.repeat(a_counts[s:e], nb)
        r, c = _aggregate_rows(rows, counts, q)
        parts_rows.append(r)
        parts_counts.append(c)
    if len(parts_rows) == 1:
        return parts_rows[0], parts_counts[0]
    return _aggregate_rows(np.concatenate(parts_rows), np.concatenate(parts_counts), q)


def _padic_scale(elements):
    return max((x.sexp for x in elements), default=0)


def _padic_values(elements, scale):
    vals = [x.num * x.p ** (scale - x.sexp) for x in elements]
    if any(abs(v) >= INT64_SAFE for v in vals):
        return None
    return np.array(vals, dtype=np.int64)


def _dict_pairs(bag_items, b_elements, op):
    acc = {}
    for x, c in bag_items:
        for y in b_elements:
            z = op(x, y)
            acc[z] = acc.get(z, 0) + c
    return acc


def _check_total(size_a, size_b):
    if size_a * size_b >= INT64_SAFE:
        raise ResourceError("multiplicity total exceeds the int64 budget")


def sum_bag(a_elems, b_elems, ambient) -> Bag:
    """Representation counts of every a + b (ordered pairs)."""
    a_elems, b_elems = list(a_elems), list(b_elems)
    return _sum_into(bag_of(a_elems, ambient, extra=b_elems), b_elems)


def bag_of(elements, ambient, extra=()) -> Bag:
    """Multiplicity-one bag of ``elements`` encoded to also hold ``extra`` sums."""
    elements = list(elements)
    ones = np.ones(len(elements), dtype=np.int64)
    if isinstance(ambient, FieldSpec):
        tables = kernel_tables(ambient)
        if tables is not None:
            lo, hi = laurent_window(elements + list(extra))
            return LaurentBag(ambient, lo, encode_laurent(elements, lo, hi - lo + 1), ones)
    else:
        scale = _padic_scale(elements + list(extra))
        vals = _padic_values(elements, scale)
        if vals is not None:
            return PadicBag(ambient.p, scale, vals, ones)
    return DictBag(ambient, {x: 1 for x in elements})


def _sum_into(bag: Bag, b_elems) -> Bag:
    """Convolve a bag with a multiplicity-one set under addition."""
    if isinstance(bag, LaurentBag):
        spec = bag.ambient
        lo_b, hi_b = laurent_window(b_elems)
        w = bag.rows.shape[1]
        if b_elems and (lo_b < bag.lo or hi_b > bag.lo + w - 1):
            return _sum_into(_to_dict(bag), b_elems)
        add_t, _ = kernel_tables(spec)
        b_rows = encode_laurent(b_elems, bag.lo, w)
        rows, counts = _laurent_pairs(
            bag.rows, bag._counts, b_rows, lambda x, y: kernels.pair_add_rows(x, y, add_t), w, spec.q
        )
        return LaurentBag(spec, bag.lo, rows, counts)
    if isinstance(bag, PadicBag):
        if all(x.sexp <= bag.scale for x in b_elems):
            b_vals = _padic_values(b_elems, bag.scale)
            if b_vals is not None and len(bag.values) and len(b_vals):
                bound = int(np.abs(bag.values).max()) + int(np.abs(b_vals).max())
                if bound < INT64_SAFE:
                    vals = (bag.values[:, None] + b_vals[None, :]).ravel()
                    counts = np.repeat(bag._counts, len(b_vals))
                    v, c = _aggregate_ints(vals, counts)
                    return PadicBag(bag.p, bag.scale, v, c)
        return _sum_into(_to_dict(bag), b_elems)
    return DictBag(bag.ambient, _dict_pairs(bag.mapping.items(), b_elems, lambda x, y: x + y))


def _to_dict(bag: Bag) -> DictBag:
    return DictBag(bag.ambient, dict(bag.items()))


def kfold_bag(elements, ambient, k: int) -> Bag:
    """Representation counts over kA: the k-fold additive convolution."""
    elements = list(elements)
    if len(elements) ** k >= INT64_SAFE:
        raise ResourceError(f"|A|^k = {len(elements)}^{k} exceeds the int64 budget")
    # k-fold sums stay inside the window of A; p-adic scale stays max sexp
    bag = bag_of(elements, ambient)
    if isinstance(bag, PadicBag) and len(elements):
        bound = int(np.abs(bag.values).max()) * k
        if bound >= INT64_SAFE:
            bag = _to_dict(bag)
    for _ in range(k - 1):
        bag = _sum_into(bag, elements)
    return bag


def prod_bag(a_elems, b_elems, ambient) -> Bag:
    """Representation counts of every product a * b."""
    a_elems, b_elems = list(a_elems), list(b_elems)
    if isinstance(ambient, FieldSpec):
        tables = kernel_tables(ambient)
        if tables is not None and a_elems and b_elems:
            add_t, mul_t = tables
            lo_a, hi_a = laurent_window(a_elems)
            lo_b, hi_b = laurent_window(b_elems)
            a_rows = encode_laurent(a_elems, lo_a, hi_a - lo_a + 1)
            b_rows = encode_laurent(b_elems, lo_b, hi_b - lo_b + 1)
            w = a_rows.shape[1] + b_rows.shape[1] - 1
            ones = np.ones(len(a_elems), dtype=np.int64)
            rows, counts = _laurent_pairs(
                a_rows, ones, b_rows, lambda x, y: kernels.pair_mul_rows(x, y, add_t, mul_t), w, ambient.q
            )
            return LaurentBag(ambient, lo_a + lo_b, rows, counts)
    elif a_elems and b_elems:
        sa, sb = _padic_scale(a_elems), _padic_scale(b_elems)
        va, vb = _padic_values(a_elems, sa), _padic_values(b_elems, sb)
        if va is not None and vb is not None:
            if int(np.abs(va).max()) * int(np.abs(vb).max()) < INT64_SAFE:
                vals = (va[:, None] * vb[None, :]).ravel()
                v, c = _aggregate_ints(vals, np.ones(len(vals), dtype=np.int64))
                return PadicBag(ambient.p, sa + sb, v, c)
    items = [(x, 1) for x in a_elems]
    return DictBag(ambient, _dict_pairs(items, b_elems, lambda x, y: x * y))


def distance_matrix(elements, ambient) -> np.ndarray:
    """Pairwise distance exponents; ``DIST_NONE`` on the diagonal (x - x = 0)."""
    elements = list(elements)
    n = len(elements)
    if isinstance(ambient, FieldSpec):
        lo, hi = laurent_window(elements)
        rows = encode_laurent(elements, lo, hi - lo + 1)
        raw = kernels.dist_matrix_rows(rows)
        return np.where(raw >= 0, raw + lo, DIST_NONE)
    scale = _padic_scale(elements)
    vals = _padic_values(elements, scale)
    if vals is not None and n and int(np.abs(vals).max()) < INT64_SAFE // 2:
        raw = kernels.valuation_matrix(vals, ambient.p)
        return np.where(raw >= 0, scale - raw, DIST_NONE)
    out = np.full((n, n), DIST_NONE, dtype=np.int64)
    for i in range(n):
        for j in range(i + 1, n):
            d = (elements[i] - elements[j]).norm_exp
            out[i, j] = out[j, i] = d
    return out

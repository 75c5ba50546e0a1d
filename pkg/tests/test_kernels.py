"""The numba and numpy backends must agree bit for bit."""
import numpy as np
import pytest

from sumprod import kernels
from sumprod.field import FieldSpec

NP = kernels.backend_module("numpy")
NB = kernels.backend_module("numba")


@pytest.fixture(params=[FieldSpec(2), FieldSpec(3), FieldSpec(2, 2, (1, 1, 1)), FieldSpec(7)], ids=lambda s: s.text())
def tables(request):
    return request.param.q, *request.param.tables()


def _rows(rng, n, w, q):
    return rng.integers(0, q, size=(n, w), dtype=np.int64)


def test_backend_flag():
    assert kernels.BACKEND in ("numba", "numpy")
    with pytest.raises(ValueError):
        kernels.backend_module("cuda")


def test_pair_kernels_agree(tables):
    q, add, mul = tables
    rng = np.random.default_rng(q)
    a, b = _rows(rng, 13, 6, q), _rows(rng, 9, 6, q)
    np.testing.assert_array_equal(NP.pair_add_rows(a, b, add), NB.pair_add_rows(a, b, add))
    np.testing.assert_array_equal(NP.pair_mul_rows(a, b, add, mul), NB.pair_mul_rows(a, b, add, mul))
    np.testing.assert_array_equal(NP.rows_add(a[:9], b, add), NB.rows_add(a[:9], b, add))
    np.testing.assert_array_equal(NP.rows_mul(a[:9], b, add, mul), NB.rows_mul(a[:9], b, add, mul))


def test_pair_add_layout(tables):
    q, add, _ = tables
    rng = np.random.default_rng(1)
    a, b = _rows(rng, 3, 4, q), _rows(rng, 5, 4, q)
    out = NB.pair_add_rows(a, b, add)
    np.testing.assert_array_equal(out[1 * 5 + 2], add[a[1], b[2]])


def test_row_tops_and_distances():
    rng = np.random.default_rng(3)
    rows = _rows(rng, 20, 8, 2)
    rows[4] = 0
    np.testing.assert_array_equal(NP.rows_top(rows), NB.rows_top(rows))
    assert NB.rows_top(rows)[4] == -1
    d_np, d_nb = NP.dist_matrix_rows(rows), NB.dist_matrix_rows(rows)
    np.testing.assert_array_equal(d_np, d_nb)
    assert (np.diag(d_nb) == -1).all()


@pytest.mark.parametrize("p", [2, 3, 5])
def test_valuations_agree(p):
    rng = np.random.default_rng(p)
    vals = rng.integers(-(1 << 40), 1 << 40, size=50, dtype=np.int64) * p ** rng.integers(0, 5, size=50)
    vals[0] = 0
    np.testing.assert_array_equal(NP.int_valuations(vals, p), NB.int_valuations(vals, p))
    np.testing.assert_array_equal(NP.valuation_matrix(vals, p), NB.valuation_matrix(vals, p))
    assert NB.int_valuations(np.array([p**7 * 11], dtype=np.int64), p)[0] == 7


def test_pack_rows_agree():
    rng = np.random.default_rng(5)
    rows = _rows(rng, 40, 10, 3)
    np.testing.assert_array_equal(NP.pack_rows(rows, 3), NB.pack_rows(rows, 3))
    assert len(set(NB.pack_rows(rows, 3).tolist())) == len({tuple(r) for r in rows.tolist()})


def test_numpy_backend_end_to_end():
    """Force the fallback through the env flag in a fresh interpreter."""
    import os
    import subprocess
    import sys

    code = (
        "from sumprod import kernels; from sumprod.families import FamilySpec, generate; "
        "from sumprod.field import FieldSpec; from sumprod.combinatorics import sumset_size, productset_size; "
        "A = generate(FamilySpec('monomials', FieldSpec(2), n=10)); "
        "print(kernels.BACKEND, sumset_size(A), productset_size(A))"
    )
    env = dict(os.environ, SUMPROD_KERNELS="numpy")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["numpy", "56", "21"]
    env["SUMPROD_KERNELS"] = "fortran"
    bad = subprocess.run([sys.executable, "-c", "import sumprod.kernels"], env=env, capture_output=True, text=True)
    assert bad.returncode != 0

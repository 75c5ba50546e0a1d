from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import F2, F3, F4, laurents, padics
from sumprod.errors import AmbientMismatchError, DomainError
from sumprod.oracles import rational_valuation
from sumprod.valued import NEG_INF, POS_INF, LaurentNumber, PadicNumber, vn_add, vn_dist_exp, vn_norm_exp


def test_infinity_sentinels():
    assert NEG_INF < -10**9 and POS_INF > 10**9
    assert NEG_INF == NEG_INF and NEG_INF != POS_INF
    assert max(NEG_INF, 3) == 3


def test_zero_norms():
    assert LaurentNumber(F2).norm_exp is NEG_INF
    assert PadicNumber(3, 0).valuation is POS_INF
    assert PadicNumber(3, 0, 4) == PadicNumber(3, 0)


def test_padic_canonical_form():
    x = PadicNumber(2, 12, 3)  # 12/8 = 3/2
    assert (x.num, x.sexp) == (3, 1)
    assert PadicNumber(2, 3, -2) == PadicNumber(2, 12)
    assert x.valuation == -1 and x.norm_exp == 1
    assert PadicNumber(3, 18).valuation == 2


def test_from_fraction():
    assert PadicNumber.from_fraction(2, Fraction(7, 2)) == PadicNumber(2, 7, 1)
    with pytest.raises(DomainError):
        PadicNumber.from_fraction(2, Fraction(1, 3))


def test_laurent_basics():
    x = LaurentNumber(F3, {2: 1, -1: 2})
    assert x.deg == 2 and x.valuation == -2
    assert x + (-x) == LaurentNumber(F3)
    assert LaurentNumber(F3, {1: 1, 0: 1}) * LaurentNumber(F3, {1: 1, 0: 2}) == LaurentNumber(F3, {2: 1, 0: 2})
    # repeated exponent terms are summed in the constructor
    assert LaurentNumber(F2, [(1, 1), (1, 1)]).is_zero()


def test_mixed_ambients_rejected():
    with pytest.raises(AmbientMismatchError):
        LaurentNumber(F2, {0: 1}) + LaurentNumber(F3, {0: 1})
    with pytest.raises(AmbientMismatchError):
        PadicNumber(2, 1) * PadicNumber(3, 1)
    with pytest.raises(AmbientMismatchError):
        vn_add(PadicNumber(2, 1), LaurentNumber(F2, {0: 1}))


@pytest.mark.parametrize("spec", [F2, F3, F4], ids=["F2", "F3", "F4"])
@settings(max_examples=200, deadline=None)
@given(data=st.data())
def test_laurent_ultrametric(spec, data):
    x, y = data.draw(laurents(spec)), data.draw(laurents(spec))
    s = x + y
    if not s.is_zero():
        assert s.norm_exp <= max(x.norm_exp, y.norm_exp)
    if x.norm_exp != y.norm_exp:
        assert s.norm_exp == max(x.norm_exp, y.norm_exp)
    if not (x.is_zero() or y.is_zero()):
        assert (x * y).norm_exp == x.norm_exp + y.norm_exp
    assert (-x).norm_exp == x.norm_exp


@pytest.mark.parametrize("spec", [F2, F3, F4], ids=["F2", "F3", "F4"])
@settings(max_examples=100, deadline=None)
@given(data=st.data())
def test_laurent_ring_laws(spec, data):
    x, y, z = (data.draw(laurents(spec, -2, 3)) for _ in range(3))
    assert x * (y + z) == x * y + x * z
    assert (x * y) * z == x * (y * z)
    assert x - y == -(y - x)


@pytest.mark.parametrize("p", [2, 3, 5])
@settings(max_examples=300, deadline=None)
@given(data=st.data())
def test_padic_against_fractions(p, data):
    x, y = data.draw(padics(p)), data.draw(padics(p))
    fx, fy = x.to_fraction(), y.to_fraction()
    assert (x + y).to_fraction() == fx + fy
    assert (x - y).to_fraction() == fx - fy
    assert (x * y).to_fraction() == fx * fy
    v = rational_valuation(fx, p)
    assert (x.valuation is POS_INF) if v is None else x.valuation == v
    if not (x + y).is_zero():
        assert vn_norm_exp(x + y) <= max(vn_norm_exp(x), vn_norm_exp(y))


def test_distance_symmetric():
    a, b = PadicNumber(3, 5, 1), PadicNumber(3, 14)
    assert vn_dist_exp(a, b) == vn_dist_exp(b, a)
    assert vn_dist_exp(a, a) is NEG_INF

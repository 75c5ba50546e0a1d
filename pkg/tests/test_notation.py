import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import F2, F3, F4, F9, laurents, padics
from sumprod.errors import ParseError
from sumprod.field import FieldSpec
from sumprod.notation import ambient_header, format_element, parse_ambient, parse_element, sort_canonical
from sumprod.valued import LaurentNumber, PadicField, PadicNumber

Q2 = PadicField(2)


def test_documented_examples():
    assert parse_element("t^3 + t", F2).code_terms == ((3, 1), (1, 1))
    assert parse_element("2*t^-1 + 1", F3).code_terms == ((0, 1), (-1, 2))
    x = parse_element("7/2^1", Q2)
    assert (x.num, x.sexp, x.valuation) == (7, 1, -1)
    assert format_element(LaurentNumber(F2)) == "0"
    assert format_element(LaurentNumber(F2, {3: 1, 1: 1})) == "t^3 + t"
    assert format_element(PadicNumber(2, 7, 1)) == "7/2^1"


def test_whitespace_and_repeats():
    assert parse_element("  t ^ 2+t^2 + 1 ", F3) == LaurentNumber(F3, {2: 2, 0: 1})
    assert parse_element("t + t", F2).is_zero()


def test_extension_coefficients():
    x = parse_element("(0,1)*t^2 + 1", F4)
    assert format_element(x) == "(0,1)*t^2 + 1"
    assert parse_element(format_element(x), F4) == x


@pytest.mark.parametrize("text,amb,category", [
    ("t^", F2, "syntax"),
    ("t^3 +", F2, "syntax"),
    ("t^3 t", F2, "syntax"),
    ("x", F2, "syntax"),
    ("2*t", F2, "range"),
    ("3", F3, "range"),
    ("(2,0)*t", F4, "range"),
    ("(1,0,1)*t", F4, "range"),
    ("t^1000001", F2, "overflow"),
    ("t^-1000001", F3, "overflow"),
    ("1/3^1", Q2, "range"),
    ("7/2^", Q2, "syntax"),
    ("7 8", Q2, "syntax"),
    ("", F2, "syntax"),
])
def test_negative_corpus(text, amb, category):
    with pytest.raises(ParseError) as info:
        parse_element(text, amb, line=4)
    assert info.value.category == category
    assert info.value.line == 4


def test_error_column():
    with pytest.raises(ParseError) as info:
        parse_element("t^3 + ?", F2)
    assert info.value.column is not None and info.value.column >= 6


@pytest.mark.parametrize("spec", [F2, F3, F4, F9], ids=lambda s: s.text())
@settings(max_examples=300, deadline=None)
@given(data=st.data())
def test_roundtrip_laurent(spec, data):
    x = data.draw(laurents(spec, -20, 20))
    assert parse_element(format_element(x), spec) == x


@pytest.mark.parametrize("p", [2, 3, 7])
@settings(max_examples=300, deadline=None)
@given(data=st.data())
def test_roundtrip_padic(p, data):
    x = data.draw(padics(p, 10**30, 12))
    assert parse_element(format_element(x), PadicField(p)) == x


def test_ambient_headers():
    for text in ("field: p=2", "field: p=2,e=2,modulus=1,1,1", "padic: p=3"):
        assert ambient_header(parse_ambient(text)) == text
    assert parse_ambient("p=5") == FieldSpec(5)
    with pytest.raises(ParseError):
        parse_ambient("padic: p=4")


def test_canonical_order_is_text_order():
    els = [parse_element(s, F2) for s in ("t^2", "1", "t", "t^10")]
    assert [format_element(x) for x in sort_canonical(els)] == ["1", "t", "t^10", "t^2"]

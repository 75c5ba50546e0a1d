import json

import pytest

from conftest import F2, F3, F4
from sumprod.combinatorics import growth_report, naive_productset, naive_sumset, productset, sumset
from sumprod.errors import DomainError, ParseError
from sumprod.families import KINDS, RNG_ALGORITHM, FamilySpec, default_corpus, generate
from sumprod.field import FieldSpec
from sumprod.io import (
    REPORT_COLUMNS,
    format_set_text,
    parse_set_text,
    read_set_file,
    report_json,
    write_report,
    write_set_file,
)
from sumprod.notation import parse_element
from sumprod.sets import FiniteSet
from sumprod.valued import PadicField, PadicNumber


def test_family_examples():
    assert len(generate(FamilySpec("monomials", F2, n=10))) == 11
    interval = generate(FamilySpec("interval", F2, degree=3))
    assert len(interval) == 8 and max(x.deg for x in interval if not x.is_zero()) == 2
    assert len(generate(FamilySpec("constants", F4))) == 4


@pytest.mark.parametrize("kind", [k for k in KINDS if k != "custom_file"])
@pytest.mark.parametrize("amb", [F3, PadicField(3)], ids=str)
def test_generation_is_deterministic(kind, amb):
    a = generate(FamilySpec(kind, amb, n=12, seed=1))
    b = generate(FamilySpec(kind, amb, n=12, seed=1))
    assert format_set_text(a) == format_set_text(b)


def test_family_errors():
    with pytest.raises(DomainError):
        generate(FamilySpec("random_poly", F2, n=10, degree=2))
    with pytest.raises(DomainError):
        generate(FamilySpec("arith_prog", F2, n=3, step="0"))
    with pytest.raises(DomainError):
        generate(FamilySpec("wavelets", F2))


def test_corpus_shape():
    corpus = default_corpus(include_large=False)
    assert len(corpus) >= 200
    assert len({name for name, _ in corpus}) == len(corpus)


def test_set_file_roundtrip(tmp_path):
    A = generate(FamilySpec("random_poly", F4, n=9, seed=3))
    meta = FamilySpec("random_poly", F4, n=9, seed=3).describe()
    path = tmp_path / "a.txt"
    write_set_file(path, A, meta)
    B, meta2 = read_set_file(path)
    assert A == B and meta2["rng"] == RNG_ALGORITHM
    assert path.read_bytes().count(b"\r") == 0


def test_set_file_example():
    A, _ = parse_set_text("field: p=2\n1\nt\nt^2\n")
    assert len(A) == 3


@pytest.mark.parametrize("text,category,line", [
    ("field: p=2\n1\nt\n1\n", "duplicate", 4),
    ("field: p=2\n# nothing here\n", "empty", None),
    ("p=2\n1\n", "header", 1),
    ("field: p=4\n1\n", "header", 1),
    ("1\nt\n", "header", 1),
    ("padic: p=3\n1\n5/2^1\n", "range", 3),
])
def test_set_file_errors(text, category, line):
    with pytest.raises(ParseError) as info:
        parse_set_text(text)
    assert info.value.category == category
    if line is not None:
        assert info.value.line == line


def test_report_csv_and_json():
    A = generate(FamilySpec("monomials", F2, n=10))
    rep = growth_report(A, "monomials")
    text = write_report([rep])
    header, row = text.strip().split("\n")
    assert tuple(header.split(",")) == REPORT_COLUMNS
    assert row.startswith("monomials,field: p=2,11,56,21,")
    doc = json.loads(json.dumps(report_json(rep)))
    assert doc["chain_len"] == 11 and doc["separable_certificate"].startswith("separable: ")
    with pytest.raises(ValueError):
        write_report([])


def test_large_field_uses_dict_path():
    spec = FieldSpec(257)
    A = FiniteSet(spec, [parse_element(s, spec) for s in ("1", "200*t + 3", "t^2 + 256", "5*t^-1")])
    assert sumset(A, A) == naive_sumset(A, A)
    assert productset(A, A) == naive_productset(A, A)


def test_huge_padic_values():
    A = FiniteSet(PadicField(3), [PadicNumber(3, 3**50 + i, i) for i in range(6)])
    assert sumset(A, A) == naive_sumset(A, A)
    assert productset(A, A) == naive_productset(A, A)

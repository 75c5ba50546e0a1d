import itertools
from fractions import Fraction

import pytest

from conftest import F2, F3, F4
from sumprod.combinatorics import (
    MAX_K,
    delta_hat,
    energy,
    energy_rigid,
    growth_report,
    k_fold_sum,
    naive_productset,
    naive_sumset,
    productset,
    productset_size,
    sumset,
    sumset_size,
    trivial_count,
)
from sumprod.errors import AmbientMismatchError, DomainError, ResourceError
from sumprod.families import FamilySpec, generate
from sumprod.geometry import is_separable
from sumprod.notation import parse_element
from sumprod.sets import FiniteSet
from sumprod.valued import PadicField, PadicNumber
from sumprod.verify import trivial_census


def _brute_energy(A, k):
    els = A.elements
    count = 0
    sums = {}
    for tup in itertools.product(els, repeat=k):
        s = tup[0]
        for x in tup[1:]:
            s = s + x
        sums[s] = sums.get(s, 0) + 1
    for v in sums.values():
        count += v * v
    return count


def test_monomial_golden_sizes():
    A = generate(FamilySpec("monomials", F2, n=10))
    assert sumset_size(A) == 56 and productset_size(A) == 21
    assert sumset(A, A) == naive_sumset(A, A)
    assert productset(A, A) == naive_productset(A, A)


def test_energy_small():
    A = FiniteSet(F2, [parse_element("1", F2), parse_element("t", F2)])
    ev = energy(A, 2)
    assert ev.value == 8 and ev.trivial == 8


@pytest.mark.parametrize("amb", [F2, F3, F4, PadicField(3)], ids=str)
def test_energy_matches_brute(amb):
    A = generate(FamilySpec("random_poly", amb, n=6, seed=2))
    for k in (1, 2, 3):
        assert energy(A, k).value == _brute_energy(A, k)


def test_kfold_multiplicities_total():
    A = generate(FamilySpec("random_poly", F3, n=7, seed=4))
    mu = k_fold_sum(A, 3)
    assert mu.total() == len(A) ** 3
    assert sum(c for _, c in mu.items()) == mu.total()
    assert mu.energy() == sum(c * c for _, c in mu.items())


def test_k_cap():
    A = generate(FamilySpec("monomials", F2, n=3))
    with pytest.raises(DomainError):
        k_fold_sum(A, MAX_K + 1)
    with pytest.raises(DomainError):
        k_fold_sum(A, 0)


def test_trivial_budget():
    A = generate(FamilySpec("monomials", F2, n=10))
    with pytest.raises(ResourceError):
        trivial_count(A, 3)
    assert energy(A, 3).trivial is None


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8])
def test_census_closed_form(n):
    for amb, char in ((F2, 2), (F3, 3), (PadicField(5), 0)):
        A = generate(FamilySpec("random_poly", amb, n=n, seed=n))
        assert trivial_count(A, 2) == trivial_census(n, char) <= 3 * n * n


def test_rigidity_predicate():
    assert energy_rigid(F2, 3) and energy_rigid(F4, 6)
    assert energy_rigid(PadicField(5), 3) and energy_rigid(PadicField(3), 2)
    assert not energy_rigid(PadicField(3), 3) and not energy_rigid(PadicField(2), 2)


def test_q2_separable_set_with_extra_energy():
    S = FiniteSet(PadicField(2), [PadicNumber(2, 0), PadicNumber(2, 1), PadicNumber(2, 1, 1)])
    assert is_separable(S) is not None
    ev = energy(S, 2)
    assert (ev.value, ev.trivial) == (19, 15)


def test_ambient_mismatch():
    A = generate(FamilySpec("monomials", F2, n=2))
    B = generate(FamilySpec("monomials", F3, n=2))
    with pytest.raises(AmbientMismatchError):
        sumset(A, B)


def test_growth_report_fields():
    A = generate(FamilySpec("constants", F4))
    rep = growth_report(A, "constants")
    assert rep.sumset_size <= 4 and rep.productset_size <= 4
    assert rep.delta_hat == "0.000000"
    assert rep.chain_len >= rep.chain_bound
    assert rep.energy2 == _brute_energy(A, 2)
    assert delta_hat(11, 56, 21) == "0.678702"


def test_growth_report_singleton():
    with pytest.raises(DomainError):
        growth_report(FiniteSet(F2, [parse_element("1", F2)]))


def test_large_sumset_differential():
    A = generate(FamilySpec("random_poly", F3, n=200, seed=9))
    assert sumset(A, A) == naive_sumset(A, A)
    assert productset(A, A) == naive_productset(A, A)
    assert Fraction(sumset_size(A)) >= len(A)

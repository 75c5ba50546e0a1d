import itertools
from fractions import Fraction

import pytest

from conftest import F2, F3
from sumprod.errors import DomainError
from sumprod.families import FamilySpec, generate
from sumprod.geometry import (
    Ball,
    BallRelation,
    ball_compare,
    ball_contains,
    build_forest,
    ceil_log2,
    chain_bound,
    critical_balls,
    equivalence_classes,
    extract_separable,
    is_separable,
    longest_chain,
    verify_chain,
    verify_separable,
)
from sumprod.notation import parse_ambient, parse_element
from sumprod.oracles import brute_is_separable, brute_longest_chain, f2_ball_points, point_set_relation
from sumprod.sets import FiniteSet
from sumprod.valued import LaurentNumber, PadicField, PadicNumber


def _set(spec, *texts):
    return FiniteSet(spec, [parse_element(s, spec) for s in texts])


def test_ball_relation_against_point_sets():
    lo, hi = -2, 4
    centers = range(8)
    for c1, c2 in itertools.product(centers, repeat=2):
        for r1, r2 in itertools.product(range(-2, 4), repeat=2):
            b1 = Ball(LaurentNumber(F2, {j: 1 for j in range(3) if c1 >> j & 1}), r1)
            b2 = Ball(LaurentNumber(F2, {j: 1 for j in range(3) if c2 >> j & 1}), r2)
            pts1 = f2_ball_points(c1 << -lo, r1, lo, hi)
            pts2 = f2_ball_points(c2 << -lo, r2, lo, hi)
            assert ball_compare(b1, b2).value == point_set_relation(pts1, pts2)


def test_any_point_is_a_center():
    b = Ball(parse_element("t^3 + t", F2), 1)
    other = parse_element("t^3 + 1", F2)
    assert ball_contains(b, other)
    assert ball_compare(b, Ball(other, 1)) is BallRelation.EQUAL


def test_padic_balls():
    Q3 = PadicField(3)
    b = Ball(PadicNumber(3, 1), -1)  # 1 + 3Z_3
    assert ball_contains(b, PadicNumber(3, 4))
    assert not ball_contains(b, PadicNumber(3, 2))
    assert ball_compare(Ball(PadicNumber(3, 4), -2), b) is BallRelation.SUBSET
    assert Ball(PadicNumber(3, 1, 1), 1).key == Ball(PadicNumber(3, 4, 1), 1).key
    assert Q3.residue_size == 3


def test_monomial_example():
    A = generate(FamilySpec("monomials", F2, n=10))
    cb = critical_balls(A)
    zero = LaurentNumber(F2)
    assert all(ball_contains(cb.ball_of(x), zero) for x in A)
    forest = build_forest(cb)
    chain = longest_chain(forest)
    assert len(chain) == 11 and verify_chain(chain, cb)
    sep = extract_separable(chain, cb)
    assert len(sep) == 10 and verify_separable(sep)
    assert brute_longest_chain(A.elements) == 11


def test_critical_balls_need_two():
    with pytest.raises(DomainError):
        critical_balls(_set(F2, "t"))


def test_two_element_set():
    A = _set(F3, "1", "t")
    cb = critical_balls(A)
    chain = longest_chain(build_forest(cb))
    assert len(chain) == 2
    assert len(extract_separable(chain, cb)) >= 1


def test_classes_bounded_by_q():
    A = generate(FamilySpec("interval", F3, degree=2))
    cb = critical_balls(A)
    assert all(len(c) <= 3 for c in equivalence_classes(cb))


def test_chain_bound_exact():
    assert ceil_log2(11) == 4 and ceil_log2(8) == 3 and ceil_log2(2) == 1
    assert chain_bound(11, 56, 21) == Fraction(11**5, 2**7 * 56**2 * 21**2 * 4**3)


@pytest.mark.parametrize("seed", range(6))
def test_longest_chain_matches_brute_force(seed):
    A = generate(FamilySpec("random_poly", F3, n=9, degree=3, seed=seed))
    assert len(longest_chain(build_forest(critical_balls(A)))) == brute_longest_chain(A.elements)


def test_separability_decision():
    assert is_separable(_set(F2, "1", "t", "t^2")) is not None
    # 0, 1, 2 are equidistant: no ball holds two of them without the third
    tri = _set(F3, "0", "1", "2", "t")
    assert is_separable(tri) is None and not brute_is_separable(tri.elements)
    bad = _set(F2, "0", "1", "t", "t + 1")
    assert is_separable(bad) is None and not brute_is_separable(bad.elements)


def test_separable_certificate_tampering():
    cert = is_separable(_set(F2, "1", "t", "t^2"))
    assert verify_separable(cert)
    broken = type(cert)(cert.elements, (cert.witnesses[0],) * len(cert.witnesses))
    assert not verify_separable(broken)


def test_separable_family_is_separable():
    for text in ("field: p=2", "field: p=3", "padic: p=2", "padic: p=5"):
        S = generate(FamilySpec("separable", parse_ambient(text), n=12, seed=3))
        cert = is_separable(S)
        assert cert is not None and verify_separable(cert, S)

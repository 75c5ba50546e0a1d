"""Invariant batteries behind ``sumprod verify``.

Each battery returns a list of :class:`~sumprod.certify.Check` results and
uses fixed seeds, so a given build always produces the same summary.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np

from . import kernels
from .certify import Check
from .combinatorics import (
    energy,
    energy_rigid,
    k_fold_sum,
    naive_productset,
    naive_sumset,
    productset,
    sumset,
    trivial_count,
)
from .encoding import INT64_SAFE, kernel_tables
from .families import FamilySpec, default_corpus, generate, make_rng
from .field import FieldSpec
from .geometry import (
    Ball,
    ball_compare,
    build_forest,
    chain_bound,
    critical_balls,
    equivalence_classes,
    extract_separable,
    is_separable,
    longest_chain,
    verify_chain,
    verify_separable,
)
from .notation import parse_ambient
from .oracles import (
    brute_is_separable,
    brute_longest_chain,
    f2_ball_points,
    plunnecke_holds,
    point_set_relation,
    rational_valuation,
)
from .sets import FiniteSet
from .valued import LaurentNumber, PadicNumber

SUITES = ("balls", "arithmetic", "energy", "lemmas", "all")
RIGID_PADIC = ("padic: p=5", "padic: p=7")
ARITH_AMBIENTS = ("field: p=2", "field: p=3", "field: p=2,e=2,modulus=1,1,1", "padic: p=2", "padic: p=3")


def _mask_to_laurent(spec, mask, lo):
    return LaurentNumber(spec, {lo + j: 1 for j in range(mask.bit_length()) if mask >> j & 1})


def ball_trichotomy_exhaustive(rexp_range=range(-2, 4), degree=3) -> Check:
    """All ball pairs, centres = F_2 polynomials of degree < 3, against point sets.

    The point family is every F_2 element supported on [-3, 4]: it refines
    every radius in range, so restricted point-set relations are faithful.
    """
    spec = FieldSpec(2)
    lo, hi = min(rexp_range) - 1, max(rexp_range) + 1
    centers = list(range(1 << degree))
    balls = [(c, r) for c in centers for r in rexp_range]
    points = {(c, r): f2_ball_points(c << -lo, r, lo, hi) for c, r in balls}
    objs = {(c, r): Ball(_mask_to_laurent(spec, c, 0), r) for c, r in balls}
    mismatches = 0
    dichotomy = 0
    for b1, b2 in itertools.product(balls, repeat=2):
        expected = point_set_relation(points[b1], points[b2])
        got = ball_compare(objs[b1], objs[b2]).value
        if expected != got:
            mismatches += 1
        if b1[1] == b2[1] and got not in ("disjoint", "equal"):
            dichotomy += 1
    total = len(balls) ** 2
    return Check("ball_trichotomy", mismatches == 0 and dichotomy == 0,
                 f"{total} pairs, {mismatches} mismatches, {dichotomy} equal-radius violations")


def _random_rows(rng, n, w, q):
    rows = rng.integers(0, q, size=(n, w)).astype(np.int64)
    # vary the effective degree so that norms differ often
    cut = rng.integers(0, w + 1, size=n)
    rows[np.arange(w)[None, :] >= cut[:, None]] = 0
    return rows


def laurent_ultrametric_bulk(spec: FieldSpec, count: int, seed: int, width: int = 12) -> Check:
    """Norm laws on ``count`` random triples through the bulk kernels.

    x and y share an exponent window starting at ``lo``; z is only used for
    associativity of the sum.
    """
    rng = make_rng(seed)
    add_t, mul_t = kernel_tables(spec)
    neg_t = np.argmax(add_t == 0, axis=1).astype(np.int64)
    x, y, z = (_random_rows(rng, count, width, spec.q) for _ in range(3))
    lo = -(width // 2)
    deg = lambda rows, base: np.where(kernels.rows_top(rows) >= 0, kernels.rows_top(rows) + base, np.iinfo(np.int64).min)  # noqa: E731
    dx, dy = deg(x, lo), deg(y, lo)
    s = kernels.rows_add(x, y, add_t)
    ds = deg(s, lo)
    bad_ultra = int(np.sum(ds > np.maximum(dx, dy)))
    differ = dx != dy
    bad_sharp = int(np.sum(differ & (ds != np.maximum(dx, dy))))
    prod = kernels.rows_mul(x, y, add_t, mul_t)
    dp = deg(prod, 2 * lo)
    nz = (dx != np.iinfo(np.int64).min) & (dy != np.iinfo(np.int64).min)
    bad_mult = int(np.sum(nz & (dp != dx + dy)))
    bad_zero = int(np.sum(~nz & (dp != np.iinfo(np.int64).min)))
    dneg = deg(neg_t[x], lo)
    bad_neg = int(np.sum(dneg != dx))
    assoc_l = kernels.rows_add(kernels.rows_add(x, y, add_t), z, add_t)
    assoc_r = kernels.rows_add(x, kernels.rows_add(y, z, add_t), add_t)
    bad_assoc = int(np.sum(np.any(assoc_l != assoc_r, axis=1)))
    bad = bad_ultra + bad_sharp + bad_mult + bad_zero + bad_neg + bad_assoc
    return Check(f"ultrametric[{spec.text()}]", bad == 0,
                 f"{count} triples: ultra={bad_ultra} sharp={bad_sharp} mult={bad_mult + bad_zero} "
                 f"neg={bad_neg} assoc={bad_assoc}")


def _random_padic(rng, p, bound=10**6, max_sexp=4):
    return PadicNumber(p, int(rng.integers(-bound, bound + 1)), int(rng.integers(0, max_sexp + 1)))


def padic_ultrametric(p: int, count: int, seed: int) -> Check:
    rng = make_rng(seed)
    nums = rng.integers(-(10**6), 10**6 + 1, size=(count, 3))
    sexps = rng.integers(0, 5, size=(count, 3))
    bad = 0
    for (a, b, c), (sa, sb, sc) in zip(nums.tolist(), sexps.tolist()):
        x, y, z = PadicNumber(p, a, sa), PadicNumber(p, b, sb), PadicNumber(p, c, sc)
        nx, ny = x.norm_exp, y.norm_exp
        ns = (x + y).norm_exp
        if ns > max(nx, ny) or (nx != ny and ns != max(nx, ny)):
            bad += 1
        if not x.is_zero() and not y.is_zero() and (x * y).norm_exp != nx + ny:
            bad += 1
        if (-x).norm_exp != nx or (x + y) + z != x + (y + z):
            bad += 1
    return Check(f"ultrametric_objects[padic p={p}]", bad == 0, f"{count} triples, {bad} violations")


def padic_ultrametric_bulk(p: int, count: int, seed: int, bound=10**6, max_sexp=4) -> Check:
    """Norm laws on ``count`` random triples of num/p^s as int64 at a common scale.

    x * p^S is an integer for s <= S, so norms are S - v_p on the scaled
    values; products live at scale 2S.  Magnitudes stay below 2^62.
    """
    scale = p**max_sexp
    if (bound * scale) ** 2 >= INT64_SAFE:
        raise ValueError("operands too large for the int64 route")
    rng = make_rng(seed)
    nums = rng.integers(-bound, bound + 1, size=(3, count)).astype(np.int64)
    sexps = rng.integers(0, max_sexp + 1, size=(3, count))
    x, y, z = nums * (p ** (max_sexp - sexps)).astype(np.int64)
    neg = np.iinfo(np.int64).min

    def norm(values, s):
        v = kernels.int_valuations(values, p)
        return np.where(v >= 0, s - v, neg)

    nx, ny, ns = norm(x, max_sexp), norm(y, max_sexp), norm(x + y, max_sexp)
    big = np.maximum(nx, ny)
    bad_ultra = int(np.sum(ns > big))
    bad_sharp = int(np.sum((nx != ny) & (ns != big)))
    nz = (nx != neg) & (ny != neg)
    bad_mult = int(np.sum(nz & (norm(x * y, 2 * max_sexp) != nx + ny)))
    bad_neg = int(np.sum(norm(-x, max_sexp) != nx))
    bad_assoc = int(np.sum((x + y) + z != x + (y + z)))
    bad = bad_ultra + bad_sharp + bad_mult + bad_neg + bad_assoc
    return Check(f"ultrametric[padic p={p}]", bad == 0,
                 f"{count} triples: ultra={bad_ultra} sharp={bad_sharp} mult={bad_mult} neg={bad_neg} assoc={bad_assoc}")


def padic_oracle_parity(p: int, count: int, seed: int) -> Check:
    rng = make_rng(seed)
    bad = 0
    for _ in range(count):
        x, y = _random_padic(rng, p, 10**9, 6), _random_padic(rng, p, 10**9, 6)
        fx, fy = Fraction(x.num, p**x.sexp), Fraction(y.num, p**y.sexp)
        if (x + y).to_fraction() != fx + fy or (x * y).to_fraction() != fx * fy:
            bad += 1
        v = rational_valuation(fx, p)
        if (v is None and not x.is_zero()) or (v is not None and x.valuation != v):
            bad += 1
    return Check(f"padic_oracle[p={p}]", bad == 0, f"{count} operand pairs, {bad} mismatches")


def field_axioms(spec: FieldSpec, count: int, seed: int) -> Check:
    rng = make_rng(seed)
    codes = rng.integers(0, spec.q, size=(count, 3)).tolist()
    bad = 0
    for a, b, c in codes:
        x, y, z = spec.element(a), spec.element(b), spec.element(c)
        if (x + y) + z != x + (y + z) or (x * y) * z != x * (y * z):
            bad += 1
        if x + y != y + x or x * y != y * x or x * (y + z) != x * y + x * z:
            bad += 1
        if x + (-x) != spec.zero() or (x and x * (spec.one() / x) != spec.one()):
            bad += 1
    group_ok = True
    if spec.q <= 64:
        # every nonzero order divides q - 1 and some element attains it
        one = spec.one()
        orders = []
        for x in spec.elements():
            if x:
                acc, order = x, 1
                while acc != one:
                    acc, order = acc * x, order + 1
                orders.append(order)
        group_ok = len(orders) == spec.q - 1 and max(orders) == spec.q - 1
        group_ok = group_ok and all((spec.q - 1) % o == 0 for o in orders)
    return Check(f"field_axioms[{spec.text()}]", bad == 0 and group_ok,
                 f"{count} triples, {bad} violations, group order ok={group_ok}")


def separable_fixtures(count=50, seed=7, max_size=8, ambients=ARITH_AMBIENTS):
    rng = make_rng(seed)
    out = []
    for i in range(count):
        amb = parse_ambient(ambients[i % len(ambients)])
        n = int(rng.integers(1, max_size + 1))
        out.append(generate(FamilySpec("separable", amb, n=n, seed=int(rng.integers(0, 2**31)))))
    return out


def trivial_census(n: int, characteristic: int) -> int:
    """Closed form of the trivial-solution count for k = 2 on n elements."""
    return 3 * n * n - 2 * n if characteristic == 2 else 2 * n * n - n


def battery_balls() -> list[Check]:
    return [ball_trichotomy_exhaustive()]


def battery_arithmetic(count=10**4) -> list[Check]:
    out = []
    for i, text in enumerate(ARITH_AMBIENTS):
        amb = parse_ambient(text)
        if isinstance(amb, FieldSpec):
            out.append(field_axioms(amb, count, 100 + i))
            out.append(laurent_ultrametric_bulk(amb, count, 200 + i))
        else:
            out.append(padic_ultrametric(amb.p, count, 300 + i))
            out.append(padic_ultrametric_bulk(amb.p, count, 350 + i))
            out.append(padic_oracle_parity(amb.p, count, 400 + i))
    return out


def padic_energy_counterexample() -> Check:
    """Q_2, S = {0, 1, 1/2}: separable, yet 1/2 + 1/2 = 0 + 1 is non-trivial."""
    amb = parse_ambient("padic: p=2")
    S = FiniteSet(amb, [PadicNumber(2, 0), PadicNumber(2, 1), PadicNumber(2, 1, 1)])
    ev = energy(S, 2)
    ok = is_separable(S) is not None and ev.value > ev.trivial and not energy_rigid(amb, 2)
    return Check("padic_small_prime_excess", ok, f"Q_2 {{0, 1, 1/2}}: E_2 = {ev.value} > trivial {ev.trivial}")


def energy_fixture_mismatches(fixtures, ks=(2, 3)):
    """Split (S, k) pairs into rigid / non-rigid and count E_k != trivial in each."""
    tally = {True: [0, 0], False: [0, 0]}
    for S in fixtures:
        for k in ks:
            ev = energy(S, k)
            slot = tally[energy_rigid(S.ambient, k)]
            slot[0] += 1
            slot[1] += ev.value != ev.trivial
    return tally


def battery_energy() -> list[Check]:
    fixtures = separable_fixtures() + separable_fixtures(20, seed=8, ambients=RIGID_PADIC)
    not_sep = sum(is_separable(S) is None for S in fixtures)
    tally = energy_fixture_mismatches(fixtures)
    cs_bad = 0
    for S in fixtures:
        for k in (2, 3):
            if len(S) ** (2 * k) > len(k_fold_sum(S, k)) * energy(S, k).value:
                cs_bad += 1
    census_bad = 0
    rng = make_rng(11)
    for text in ARITH_AMBIENTS:
        amb = parse_ambient(text)
        for n in (2, 3, 5, 8):
            A = generate(FamilySpec("random_poly", amb, n=n, seed=int(rng.integers(0, 2**31))))
            # a generic set may have extra non-trivial solutions; the census
            # counts only trivial ones and must match the closed form
            if trivial_count(A, 2) != trivial_census(n, amb.characteristic):
                census_bad += 1
    pairs, bad = tally[True]
    loose_pairs, loose_bad = tally[False]
    return [
        Check("separable_fixtures", not_sep == 0, f"{len(fixtures)} fixtures, {not_sep} not separable"),
        Check("energy_equals_trivial", bad == 0,
              f"{pairs} (S, k) pairs where the unit argument applies, {bad} mismatches "
              f"(Q_p with p <= k: {loose_bad} of {loose_pairs} exceed, not asserted)"),
        padic_energy_counterexample(),
        Check("cauchy_schwarz", cs_bad == 0, f"|A|^(2k) <= |kA| E_k, {cs_bad} violations"),
        Check("trivial_census_constant", census_bad == 0,
              f"trivial_count(A, 2) = 3n^2-2n (char 2) / 2n^2-n, <= 3n^2; {census_bad} mismatches"),
    ]


def battery_lemmas(corpus=None) -> list[Check]:
    corpus = default_corpus() if corpus is None else corpus
    stats = dict(chain=0, small=0, extract=0, classes=0, plunnecke=0, diff=0, invalid=0)
    counted = dict(chain=0, small=0, plunnecke=0, diff=0)
    for name, A in corpus:
        if len(A) < 2:
            continue
        q = A.residue_size
        S, P = sumset(A, A), productset(A, A)
        cb = critical_balls(A)
        chain = longest_chain(build_forest(cb))
        counted["chain"] += 1
        if len(chain) < chain_bound(len(A), len(S), len(P)):
            stats["chain"] += 1
        if not verify_chain(chain, cb):
            stats["invalid"] += 1
        if len(A) <= 10:
            counted["small"] += 1
            if brute_longest_chain(A.elements) != len(chain):
                stats["small"] += 1
        sep = extract_separable(chain, cb)
        if len(sep) < -(-len(chain) // q) or not verify_separable(sep) or is_separable(sep.elements) is None:
            stats["extract"] += 1
        if any(len(c) > q for c in equivalence_classes(cb)):
            stats["classes"] += 1
        if len(A) <= 64:
            counted["plunnecke"] += 1
            two = len(k_fold_sum(A, 2))
            three = len(k_fold_sum(A, 3))
            if not (plunnecke_holds(len(A), len(S), two, 2) and plunnecke_holds(len(A), len(S), three, 3)):
                stats["plunnecke"] += 1
        if len(A) <= 256:
            counted["diff"] += 1
            if S != naive_sumset(A, A) or P != naive_productset(A, A):
                stats["diff"] += 1
    return [
        Check("chain_length_bound", stats["chain"] == 0 and stats["invalid"] == 0,
              f"{counted['chain']} sets, {stats['chain']} below bound, {stats['invalid']} invalid chains"),
        Check("chain_optimality_small", stats["small"] == 0, f"{counted['small']} sets with |A| <= 10"),
        Check("separable_extraction", stats["extract"] == 0 and stats["classes"] == 0,
              f"{stats['extract']} extraction failures, {stats['classes']} classes larger than q"),
        Check("plunnecke_consequence", stats["plunnecke"] == 0, f"{counted['plunnecke']} sets, k in (2, 3)"),
        Check("sumset_differential", stats["diff"] == 0, f"{counted['diff']} sets against the naive double loop"),
        Check("separable_decision", _separable_decision_check(), "dendrogram vs exhaustive orderings, |S| <= 6"),
    ]


def _separable_decision_check(limit=400) -> bool:
    for S in small_low_degree_sets(limit):
        if (is_separable(S) is not None) != brute_is_separable(S.elements):
            return False
    return True


def small_low_degree_sets(limit=400, seed=5):
    """Subsets of size <= 6 of low-degree F_2 / F_3 elements."""
    rng = make_rng(seed)
    out = []
    for spec, d in ((FieldSpec(2), 3), (FieldSpec(3), 2)):
        pool = [LaurentNumber(spec, {j: c for j, c in enumerate(_digits(i, spec.q, d)) if c}) for i in range(spec.q**d)]
        for _ in range(limit // 2):
            n = int(rng.integers(1, 7))
            idx = rng.choice(len(pool), size=n, replace=False)
            out.append(FiniteSet(spec, [pool[i] for i in idx]))
    return out


def _digits(i, base, width):
    out = []
    for _ in range(width):
        i, r = divmod(i, base)
        out.append(r)
    return out


def run_suite(name: str) -> list[Check]:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    runners = {
        "balls": battery_balls,
        "arithmetic": battery_arithmetic,
        "energy": battery_energy,
        "lemmas": battery_lemmas,
    }
    if name == "all":
        out = []
        for key in ("balls", "arithmetic", "energy", "lemmas"):
            out.extend(runners[key]())
        return out
    return runners[name]()


"""Sumsets, product sets, k-fold representation counts and additive energy."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .encoding import kfold_bag, prod_bag, sum_bag
from .errors import DomainError, ResourceError
from .geometry import (
    ChainCertificate,
    SeparableCertificate,
    build_forest,
    ceil_log2,
    chain_bound,
    critical_balls,
    extract_separable,
    longest_chain,
)
from .sets import FiniteSet

MAX_K = 6
TRIVIAL_BUDGET = 8**6  # |A| <= 8 at k = 3


def sumset(A: FiniteSet, B: FiniteSet) -> FiniteSet:
    A.check_compatible(B)
    return FiniteSet(A.ambient, sum_bag(A.elements, B.elements, A.ambient).elements())


def productset(A: FiniteSet, B: FiniteSet) -> FiniteSet:
    A.check_compatible(B)
    return FiniteSet(A.ambient, prod_bag(A.elements, B.elements, A.ambient).elements())


def sumset_size(A: FiniteSet, B: FiniteSet | None = None) -> int:
    B = A if B is None else B
    A.check_compatible(B)
    return len(sum_bag(A.elements, B.elements, A.ambient))


def productset_size(A: FiniteSet, B: FiniteSet | None = None) -> int:
    B = A if B is None else B
    A.check_compatible(B)
    return len(prod_bag(A.elements, B.elements, A.ambient))


def naive_sumset(A: FiniteSet, B: FiniteSet) -> FiniteSet:
    """Reference double loop over element objects."""
    A.check_compatible(B)
    return FiniteSet(A.ambient, {a + b for a in A for b in B})


def naive_productset(A: FiniteSet, B: FiniteSet) -> FiniteSet:
    A.check_compatible(B)
    return FiniteSet(A.ambient, {a * b for a in A for b in B})


class MultiplicityMap:
    """mu(x) = number of ordered k-tuples from A summing to x, over x in kA."""

    def __init__(self, k, bag):
        self.k = k
        self._bag = bag
        self._dict = None

    def __len__(self):
        return len(self._bag)

    def as_dict(self) -> dict:
        if self._dict is None:
            self._dict = self._bag.as_dict()
        return self._dict

    def __getitem__(self, x):
        return self.as_dict().get(x, 0)

    def items(self):
        return self.as_dict().items()

    def support(self) -> FiniteSet:
        return FiniteSet(self._bag.ambient, self._bag.elements())

    def total(self) -> int:
        return self._bag.total()

    def energy(self) -> int:
        return self._bag.energy()


def _check_k(k):
    if not isinstance(k, int) or k < 1:
        raise DomainError(f"k must be a positive integer, got {k!r}")
    if k > MAX_K:
        raise DomainError(f"k is capped at {MAX_K}")


def k_fold_sum(A: FiniteSet, k: int) -> MultiplicityMap:
    _check_k(k)
    return MultiplicityMap(k, kfold_bag(A.elements, A.ambient, k))


@dataclass(frozen=True)
class EnergyValue:
    k: int
    value: int
    trivial: int | None = None


def energy(A: FiniteSet, k: int, budget: int = TRIVIAL_BUDGET) -> EnergyValue:
    """E_k(A) = sum of mu(x)^2; the trivial census is attached when in budget."""
    mu = k_fold_sum(A, k)
    value = mu.energy()
    trivial = None
    if len(A) ** (2 * k) <= budget:
        trivial = trivial_count(A, k, budget)
    return EnergyValue(k, value, trivial)


def trivial_count(A: FiniteSet, k: int, budget: int = TRIVIAL_BUDGET) -> int:
    """Solutions of a_1+..+a_k = b_1+..+b_k using at most k distinct elements.

    Brute force over element arithmetic: k-tuples are bucketed by their sum
    and every pair inside a bucket is inspected, so the work is E_k(A)
    rather than |A|^(2k).  The budget still refers to |A|^(2k).
    """
    _check_k(k)
    n = len(A)
    if n ** (2 * k) > budget:
        raise ResourceError(f"|A|^(2k) = {n}^{2 * k} exceeds the oracle budget {budget}")
    elems = A.elements
    buckets: dict = {}
    for idx in itertools.product(range(n), repeat=k):
        total = elems[idx[0]]
        for i in idx[1:]:
            total = total + elems[i]
        support = frozenset(idx)
        bucket = buckets.setdefault(total, {})
        bucket[support] = bucket.get(support, 0) + 1
    count = 0
    for bucket in buckets.values():
        for s1, c1 in bucket.items():
            for s2, c2 in bucket.items():
                if len(s1 | s2) <= k:
                    count += c1 * c2
    return count


def energy_rigid(ambient, k: int) -> bool:
    """Whether separable sets are guaranteed E_k = trivial_count in ``ambient``.

    Gathering a non-trivial solution gives sum n_i c_i = 0 with |n_i| <= k,
    and the separating-ball argument needs the coefficient of the outermost
    element to be a unit.  In F_q((1/t)) an integer coefficient is either 0
    (the term drops out) or a unit.  In Q_p it is a unit only when p does not
    divide it, which is guaranteed for p > k.  Q_2 already fails at k = 2:
    {0, 1, 1/2} is separable and 1/2 + 1/2 = 0 + 1.
    """
    p = getattr(ambient, "characteristic", None)
    if p:  # positive characteristic: a Laurent field
        return True
    return ambient.p > k


@dataclass
class GrowthReport:
    family: str
    ambient: object
    size: int
    sumset_size: int
    productset_size: int
    energy2: int | None
    trivial2: int | None
    chain: ChainCertificate
    chain_bound: Fraction
    separable: SeparableCertificate
    sep_bound: int
    K: Fraction
    delta_hat: str

    @property
    def chain_len(self) -> int:
        return len(self.chain)

    @property
    def sep_len(self) -> int:
        return len(self.separable)


def k_quantity(size_a: int, size_sum: int, size_prod: int, q: int) -> Fraction:
    """|A|^5 / (q |A+A|^2 |AA|^2 ceil(log2 |A|)^3)."""
    return Fraction(size_a**5, q * size_sum**2 * size_prod**2 * ceil_log2(size_a) ** 3)


def delta_hat(size_a: int, size_sum: int, size_prod: int) -> str:
    return f"{math.log(max(size_sum, size_prod)) / math.log(size_a) - 1:.6f}"


def growth_report(A: FiniteSet, family: str = "", energy_k: int | None = 2,
                  budget: int = TRIVIAL_BUDGET) -> GrowthReport:
    n = len(A)
    if n < 2:
        raise DomainError("growth report needs |A| >= 2")
    s = sumset_size(A)
    p = productset_size(A)
    e2 = t2 = None
    if energy_k:
        ev = energy(A, energy_k, budget)
        e2, t2 = ev.value, ev.trivial
    cb = critical_balls(A)
    chain = longest_chain(build_forest(cb))
    sep = extract_separable(chain, cb)
    q = A.residue_size
    return GrowthReport(
        family=family,
        ambient=A.ambient,
        size=n,
        sumset_size=s,
        productset_size=p,
        energy2=e2,
        trivial2=t2,
        chain=chain,
        chain_bound=chain_bound(n, s, p),
        separable=sep,
        sep_bound=-(-len(chain) // q),
        K=k_quantity(n, s, p, q),
        delta_hat=delta_hat(n, s, p),
    )

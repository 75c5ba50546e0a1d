"""Independent brute-force oracles.

Nothing here uses the dense encodings, the kernels, the laminar forest or
the dendrogram decision procedure; each oracle works from definitions.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .valued import vn_dist_exp


# -- F_2 balls as bitmask point sets --

def f2_ball_points(center_mask: int, rexp: int, lo: int, hi: int) -> frozenset[int]:
    """Points of the F_2 family with support in [lo, hi] lying in B(center, 2^rexp).

    Elements are bitmasks, bit ``j`` standing for ``t^(lo + j)``.  A point
    ``y`` is in the ball iff ``y xor center`` has no bit above ``rexp``.
    """
    width = hi - lo + 1
    cut = rexp - lo + 1  # bits [0, cut) may differ
    out = []
    for y in range(1 << width):
        diff = y ^ center_mask
        if cut <= 0:
            inside = diff == 0
        else:
            inside = diff >> cut == 0
        if inside:
            out.append(y)
    return frozenset(out)


def point_set_relation(s1: frozenset, s2: frozenset) -> str:
    if not s1 & s2:
        return "disjoint"
    if s1 == s2:
        return "equal"
    if s1 < s2:
        return "subset"
    if s2 < s1:
        return "superset"
    return "overlap"  # impossible in an ultrametric


# -- critical radii and chains from raw pairwise distances --

def brute_critical_radii(elements) -> list[int]:
    return [min(vn_dist_exp(a, b) for b in elements if b is not a and b != a) for a in elements]


def brute_longest_chain(elements) -> int:
    """Largest subset whose critical balls are pairwise nested (exhaustive)."""
    elements = list(elements)
    radii = brute_critical_radii(elements)
    n = len(elements)

    def comparable(i, j):
        # closed balls B(a, r), B(b, s) meet iff d(a, b) <= max(r, s), and
        # meeting balls are nested
        return vn_dist_exp(elements[i], elements[j]) <= max(radii[i], radii[j])

    comp = [[comparable(i, j) for j in range(n)] for i in range(n)]
    best = 0
    for mask in range(1, 1 << n):
        idx = [i for i in range(n) if mask >> i & 1]
        if len(idx) <= best:
            continue
        if all(comp[i][j] for i, j in itertools.combinations(idx, 2)):
            best = len(idx)
    return best


# -- separability by exhaustive ordering search --

def achievable_intersections(elements) -> set[frozenset]:
    """Every nonempty S ∩ B over all balls B.

    A ball meeting S can be recentred at a member c of S, and only the
    distances d(c, s) matter for which members it captures.
    """
    elements = list(elements)
    out = set()
    for c in elements:
        dists = [vn_dist_exp(c, s) for s in elements if s != c]
        radii = set(dists)
        if dists:
            radii.add(min(dists) - 1)
        else:
            radii.add(0)
        for r in radii:
            out.add(frozenset(s for s in elements if s == c or vn_dist_exp(c, s) <= r))
    return out


def brute_is_separable(elements) -> bool:
    """Search over all orderings (pruned DFS on prefixes) for ball witnesses."""
    elements = list(elements)
    full = frozenset(elements)
    ok = achievable_intersections(elements)

    def extend(prefix):
        if prefix == full:
            return True
        for x in elements:
            if x not in prefix:
                nxt = prefix | {x}
                if nxt in ok and extend(nxt):
                    return True
        return False

    return extend(frozenset())


# -- p-adic rational oracle --

def rational_valuation(value: Fraction, p: int):
    """v_p by repeated division of numerator and denominator; None for zero."""
    if value == 0:
        return None
    num, den = value.numerator, value.denominator
    v = 0
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


# -- Plünnecke consequence --

def plunnecke_holds(size_a: int, size_sum: int, size_kfold: int, k: int) -> bool:
    """|kA| <= (|A+A|/|A|)^k |A|, compared exactly."""
    return Fraction(size_kfold) <= Fraction(size_sum, size_a) ** k * size_a

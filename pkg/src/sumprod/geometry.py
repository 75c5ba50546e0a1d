"""Ultrametric balls, critical balls, their laminar forest, chains and
separable sets.

Radii are integer exponents: ``Ball(center, rexp)`` is the closed ball
``{y : ||center - y|| <= base^rexp}``.  Every ball has a canonical key
``(rexp, residue)`` where the residue depends only on the point set, so two
balls are equal exactly when their keys are.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .encoding import DIST_NONE, distance_matrix
from .errors import AmbientMismatchError, DomainError
from .field import FieldSpec
from .notation import format_element
from .sets import FiniteSet
from .valued import LaurentNumber, PadicNumber, same_ambient, vn_dist_exp


class BallRelation(enum.Enum):
    DISJOINT = "disjoint"
    EQUAL = "equal"
    SUBSET = "subset"
    SUPERSET = "superset"


def residue(x, rexp: int):
    """Canonical representative of the class of ``x`` modulo the ball radius.

    Laurent: the terms of ``x`` with exponent above ``rexp``.  p-adic: the
    unique ``r`` in Z[1/p] with ``0 <= r < p^(-rexp)`` and
    ``v_p(x - r) >= -rexp``.
    """
    if isinstance(x, LaurentNumber):
        return tuple((e, c) for e, c in x.code_terms if e > rexp)
    m = -rexp
    p = x.p
    s = max(x.sexp, -m)
    scaled = x.num * p ** (s - x.sexp)
    r = PadicNumber(p, scaled % p ** (m + s), s)
    return (r.num, r.sexp)


@dataclass(frozen=True)
class Ball:
    center: LaurentNumber | PadicNumber
    rexp: int

    def __post_init__(self):
        if not isinstance(self.rexp, (int, np.integer)):
            raise DomainError(f"ball radius exponent must be an integer, got {self.rexp!r}")
        object.__setattr__(self, "rexp", int(self.rexp))

    @property
    def key(self):
        return (self.rexp, residue(self.center, self.rexp))

    def __eq__(self, other):
        if not isinstance(other, Ball):
            return NotImplemented
        return self.center.ambient == other.center.ambient and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __contains__(self, x):
        return ball_contains(self, x)

    def __repr__(self):
        return f"Ball({format_element(self.center)!r}, {self.rexp})"


def ball_contains(b: Ball, x) -> bool:
    return vn_dist_exp(b.center, x) <= b.rexp


def ball_compare(b1: Ball, b2: Ball) -> BallRelation:
    """Relation of b1 to b2: one rexp comparison plus one centre distance."""
    same_ambient(b1.center, b2.center)
    d = vn_dist_exp(b1.center, b2.center)
    if d > max(b1.rexp, b2.rexp):
        return BallRelation.DISJOINT
    if b1.rexp == b2.rexp:
        return BallRelation.EQUAL
    return BallRelation.SUBSET if b1.rexp < b2.rexp else BallRelation.SUPERSET


def nested(b1: Ball, b2: Ball) -> bool:
    """True when b1 is contained in b2 (equality allowed)."""
    return ball_compare(b1, b2) in (BallRelation.SUBSET, BallRelation.EQUAL)


@dataclass(frozen=True)
class CriticalBallAssignment:
    elements: tuple
    rexps: tuple[int, ...]
    balls: tuple[Ball, ...]

    def ball_of(self, x) -> Ball:
        return self.balls[self.index[x]]

    def rexp_of(self, x) -> int:
        return self.rexps[self.index[x]]

    @property
    def index(self):
        idx = self.__dict__.get("_index")
        if idx is None:
            idx = {x: i for i, x in enumerate(self.elements)}
            object.__setattr__(self, "_index", idx)
        return idx


def critical_balls(A) -> CriticalBallAssignment:
    """r_A(a) and B_A(a) for every element, from the exact distance matrix."""
    elements = tuple(A.elements if isinstance(A, FiniteSet) else A)
    if len(elements) < 2:
        raise DomainError("r_A is undefined on singletons (need |A| >= 2)")
    if len(set(elements)) != len(elements):
        raise DomainError("elements must be distinct")
    ambient = elements[0].ambient
    for x in elements:
        if x.ambient != ambient:
            raise AmbientMismatchError("mixed ambients in one set")
    dist = distance_matrix(elements, ambient)
    masked = np.where(dist == DIST_NONE, np.iinfo(np.int64).max, dist)
    rexps = tuple(int(r) for r in masked.min(axis=1))
    balls = tuple(Ball(x, r) for x, r in zip(elements, rexps))
    return CriticalBallAssignment(elements, rexps, balls)


@dataclass
class ForestNode:
    ball: Ball
    members: tuple  # elements a with B_A(a) == ball, canonical order
    parent: int | None = None
    children: list[int] = field(default_factory=list)
    depthweight: int = 0

    @property
    def weight(self) -> int:
        return len(self.members)

    @property
    def key(self):
        return self.ball.key


@dataclass
class LaminarForest:
    """Nesting forest of the distinct critical balls.

    ``nodes`` are ordered by (rexp, canonical text of the first member).
    ``roots`` lists the nodes without a parent.
    """

    nodes: list[ForestNode]
    roots: list[int]
    assignment: CriticalBallAssignment

    def node_of(self, x) -> int:
        return self._node_index[self.assignment.ball_of(x).key]

    def path_to_root(self, i: int) -> list[int]:
        path = [i]
        while self.nodes[path[-1]].parent is not None:
            path.append(self.nodes[path[-1]].parent)
        return path

    @property
    def _node_index(self):
        return {n.key: i for i, n in enumerate(self.nodes)}


def build_forest(cb: CriticalBallAssignment) -> LaminarForest:
    groups: dict = {}
    for x, b in zip(cb.elements, cb.balls):
        groups.setdefault(b.key, []).append(x)
    nodes = []
    for members in groups.values():
        members = sorted(members, key=format_element)
        nodes.append(ForestNode(Ball(members[0], cb.rexp_of(members[0])), tuple(members)))
    nodes.sort(key=lambda n: (n.ball.rexp, format_element(n.members[0])))
    index = {n.key: i for i, n in enumerate(nodes)}
    radii = sorted({n.ball.rexp for n in nodes})
    # parent = smallest strictly larger node ball containing the centre;
    # by laminarity it is found by probing each larger radius in turn
    for i, node in enumerate(nodes):
        for r in radii:
            if r <= node.ball.rexp:
                continue
            j = index.get((r, residue(node.ball.center, r)))
            if j is not None:
                node.parent = j
                nodes[j].children.append(i)
                break
    roots = [i for i, n in enumerate(nodes) if n.parent is None]
    # depthweights, parents have larger rexp so process in reverse order
    for i in reversed(range(len(nodes))):
        n = nodes[i]
        n.depthweight = n.weight + (nodes[n.parent].depthweight if n.parent is not None else 0)
    return LaminarForest(nodes, roots, cb)


@dataclass(frozen=True)
class ChainCertificate:
    elements: tuple
    balls: tuple[Ball, ...]

    def __len__(self):
        return len(self.elements)


@dataclass(frozen=True)
class SeparableCertificate:
    elements: tuple
    witnesses: tuple[Ball, ...]

    def __len__(self):
        return len(self.elements)


def longest_chain(f: LaminarForest) -> ChainCertificate:
    """Heaviest root path of the forest, listed from the smallest ball up."""
    if not f.nodes:
        return ChainCertificate((), ())
    best = min(
        range(len(f.nodes)),
        key=lambda i: (-f.nodes[i].depthweight, f.nodes[i].ball.rexp, format_element(f.nodes[i].members[0])),
    )
    elements, balls = [], []
    for i in f.path_to_root(best):
        node = f.nodes[i]
        for x in node.members:
            elements.append(x)
            balls.append(node.ball)
    return ChainCertificate(tuple(elements), tuple(balls))


def ceil_log2(n: int) -> int:
    return (n - 1).bit_length()


def chain_bound(size_a: int, size_sum: int, size_prod: int) -> Fraction:
    """|A|^5 / (2^7 |A+A|^2 |AA|^2 ceil(log2 |A|)^3), exactly."""
    if size_a < 2:
        raise DomainError("chain bound needs |A| >= 2")
    return Fraction(size_a**5, 2**7 * size_sum**2 * size_prod**2 * ceil_log2(size_a) ** 3)


def verify_chain(cert: ChainCertificate, cb: CriticalBallAssignment) -> bool:
    """Distinct members of A whose critical balls nest in the listed order."""
    if len(set(cert.elements)) != len(cert.elements):
        return False
    if any(x not in cb.index for x in cert.elements):
        return False
    balls = [cb.ball_of(x) for x in cert.elements]
    if any(b != c for b, c in zip(balls, cert.balls)):
        return False
    return all(nested(b1, b2) for b1, b2 in zip(balls, balls[1:]))


def _diameter(dist, idx):
    sub = dist[np.ix_(idx, idx)]
    return int(sub.max()) if len(idx) > 1 else int(DIST_NONE)


def is_separable(S) -> SeparableCertificate | None:
    """Decide separability through the ultrametric dendrogram.

    Working top-down: the current cluster's top split (by distance strictly
    below its diameter) must have exactly two parts, one a singleton; that
    singleton comes last and the rest is processed recursively.  Witnesses
    are minimal enclosing balls of the prefixes.
    """
    elements = list(S.elements if isinstance(S, FiniteSet) else S)
    if not elements:
        raise DomainError("separability is defined for nonempty sets")
    if len(set(elements)) != len(elements):
        raise DomainError("elements must be distinct")
    n = len(elements)
    if n == 1:
        return SeparableCertificate((elements[0],), (Ball(elements[0], 0),))
    dist = distance_matrix(elements, elements[0].ambient)
    keys = [format_element(x) for x in elements]
    alive = list(range(n))
    tail = []
    while len(alive) > 1:
        diam = _diameter(dist, alive)
        # classes of "distance < diam" inside the cluster
        classes = []
        for i in alive:
            for cls in classes:
                if dist[i, cls[0]] < diam:
                    cls.append(i)
                    break
            else:
                classes.append([i])
        if len(classes) != 2:
            return None
        small = [c for c in classes if len(c) == 1]
        if not small:
            return None
        last = max((c[0] for c in small), key=lambda i: keys[i])
        tail.append(last)
        alive = [i for i in alive if i != last]
    order = alive + tail[::-1]
    witnesses = []
    first = order[0]
    nearest = min(int(dist[first, j]) for j in range(n) if j != first)
    witnesses.append(Ball(elements[first], nearest - 1))
    for j in range(2, n + 1):
        witnesses.append(Ball(elements[first], _diameter(dist, order[:j])))
    return SeparableCertificate(tuple(elements[i] for i in order), tuple(witnesses))


def verify_separable(cert: SeparableCertificate, S=None) -> bool:
    """Membership check of each witness against the definition.

    ``S`` defaults to the certificate's own element set.
    """
    elements = list(cert.elements)
    if len(set(elements)) != len(elements) or len(cert.witnesses) != len(elements):
        return False
    pool = list(S.elements if isinstance(S, FiniteSet) else S) if S is not None else elements
    if set(elements) != set(pool):
        return False
    for j, ball in enumerate(cert.witnesses, start=1):
        inside = {x for x in pool if ball_contains(ball, x)}
        if inside != set(elements[:j]):
            return False
    return True


def extract_separable(c: ChainCertificate, cb: CriticalBallAssignment | None = None) -> SeparableCertificate:
    """One representative per distinct critical ball along a chain.

    The chain's balls increase strictly after merging equal ones, and each
    critical ball isolates its representative from the larger ones, so the
    critical balls themselves serve as witnesses.
    """
    reps, witnesses = [], []
    seen = {}
    for x, b in zip(c.elements, c.balls):
        k = b.key
        if k in seen:
            i = seen[k]
            if format_element(x) < format_element(reps[i]):
                reps[i] = x
            continue
        seen[k] = len(reps)
        reps.append(x)
        witnesses.append(b)
    return SeparableCertificate(tuple(reps), tuple(witnesses))


def equivalence_classes(cb: CriticalBallAssignment) -> list[tuple]:
    """Classes of a ~ b iff B_A(a) = B_A(b)."""
    groups: dict = {}
    for x, b in zip(cb.elements, cb.balls):
        groups.setdefault(b.key, []).append(x)
    return [tuple(sorted(g, key=format_element)) for g in groups.values()]


def residue_size(ambient) -> int:
    return ambient.q if isinstance(ambient, FieldSpec) else ambient.p

"""Exact elements of F_q((1/t)) and Q_p behind one valuation interface.

Laurent elements are finitely supported, i.e. they live in F_q[t, 1/t].
p-adic elements are exact rationals ``num / p^sexp`` in Z[1/p].  Norms are
never materialised as reals: ``norm_exp`` returns the integer exponent
``m`` with ``||x|| = base^m`` (``base = q`` resp. ``p``), or ``NEG_INF`` for
zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering

from .errors import AmbientMismatchError, DomainError
from .field import MAX_PRIME, FieldElement, FieldSpec, is_prime


@total_ordering
class _Infinity:
    __slots__ = ("sign",)

    def __init__(self, sign):
        self.sign = sign

    def __eq__(self, other):
        return isinstance(other, _Infinity) and other.sign == self.sign

    def __lt__(self, other):
        if isinstance(other, _Infinity):
            return self.sign < other.sign
        return self.sign < 0

    def __hash__(self):
        return hash(("inf", self.sign))

    def __neg__(self):
        return POS_INF if self.sign < 0 else NEG_INF

    def __add__(self, other):
        if isinstance(other, _Infinity) and other.sign != self.sign:
            raise DomainError("inf - inf is undefined")
        return self

    __radd__ = __add__

    def __repr__(self):
        return "-inf" if self.sign < 0 else "inf"


NEG_INF = _Infinity(-1)  # norm exponent of 0
POS_INF = _Infinity(1)  # valuation of 0


@dataclass(frozen=True)
class PadicField:
    """Ambient descriptor for Q_p."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or not 2 <= self.p <= MAX_PRIME or not is_prime(self.p):
            raise DomainError(f"p must be a prime in [2, {MAX_PRIME}], got {self.p!r}")

    @property
    def residue_size(self) -> int:
        return self.p

    @property
    def characteristic(self) -> int:
        return 0

    def text(self) -> str:
        return f"p={self.p}"

    def __str__(self):
        return f"Q_{self.p}"

    def zero(self) -> PadicNumber:
        return PadicNumber(self.p, 0)

    def one(self) -> PadicNumber:
        return PadicNumber(self.p, 1)


def _vp(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


class LaurentNumber:
    """A finitely supported element sum a_i t^i of F_q((1/t)).

    ``_terms`` holds ``(exponent, code)`` pairs in strictly decreasing exponent
    order with nonzero codes; the zero element has no terms.
    """

    __slots__ = ("spec", "_terms", "_hash")

    def __init__(self, spec: FieldSpec, terms=None):
        acc = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for exp, coeff in items:
                if not isinstance(exp, int):
                    raise DomainError(f"exponent must be an int, got {exp!r}")
                code = spec.element(coeff).code
                acc[exp] = spec.add(acc.get(exp, 0), code)
        self.spec = spec
        self._terms = tuple(sorted(((e, c) for e, c in acc.items() if c), reverse=True))
        self._hash = None

    @classmethod
    def _raw(cls, spec, terms):
        obj = object.__new__(cls)
        obj.spec = spec
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, spec: FieldSpec, exp: int, coeff=1) -> LaurentNumber:
        return cls(spec, {exp: coeff})

    @classmethod
    def constant(cls, spec: FieldSpec, coeff) -> LaurentNumber:
        return cls(spec, {0: coeff})

    @property
    def ambient(self) -> FieldSpec:
        return self.spec

    @property
    def terms(self) -> dict[int, FieldElement]:
        return {e: FieldElement._from_code(self.spec, c) for e, c in self._terms}

    @property
    def code_terms(self) -> tuple[tuple[int, int], ...]:
        return self._terms

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def deg(self):
        return self._terms[0][0] if self._terms else NEG_INF

    @property
    def norm_exp(self):
        return self.deg

    @property
    def valuation(self):
        return -self.deg

    def _check(self, other):
        if not isinstance(other, LaurentNumber):
            raise AmbientMismatchError(f"cannot combine Laurent element with {type(other).__name__}")
        if other.spec != self.spec:
            raise AmbientMismatchError(f"cannot combine elements over {self.spec} and {other.spec}")

    def __add__(self, other):
        self._check(other)
        spec = self.spec
        acc = dict(self._terms)
        for e, c in other._terms:
            if e in acc:
                s = spec.add(acc[e], c)
                if s:
                    acc[e] = s
                else:
                    del acc[e]
            else:
                acc[e] = c
        return LaurentNumber._raw(spec, tuple(sorted(acc.items(), reverse=True)))

    def __neg__(self):
        spec = self.spec
        return LaurentNumber._raw(spec, tuple((e, spec.neg(c)) for e, c in self._terms))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        spec = self.spec
        acc = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                e = e1 + e2
                acc[e] = spec.add(acc.get(e, 0), spec.mul(c1, c2))
        return LaurentNumber._raw(spec, tuple(sorted(((e, c) for e, c in acc.items() if c), reverse=True)))

    def __eq__(self, other):
        if not isinstance(other, LaurentNumber):
            return NotImplemented
        return self.spec == other.spec and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self._terms)
        return self._hash

    def __repr__(self):
        from .notation import format_element

        return f"LaurentNumber({format_element(self)!r} over {self.spec})"


class PadicNumber:
    """An exact element num / p^sexp of Z[1/p] viewed inside Q_p.

    Canonical form: ``sexp == 0`` or ``p`` does not divide ``num``.
    """

    __slots__ = ("p", "num", "sexp")

    def __init__(self, p: int, num: int, sexp: int = 0):
        if sexp < 0:
            num *= p ** (-sexp)
            sexp = 0
        if num == 0:
            sexp = 0
        while sexp > 0 and num % p == 0:
            num //= p
            sexp -= 1
        self.p = p
        self.num = num
        self.sexp = sexp

    @classmethod
    def from_fraction(cls, p: int, value) -> PadicNumber:
        value = Fraction(value)
        den = value.denominator
        sexp = 0
        while den % p == 0:
            den //= p
            sexp += 1
        if den != 1:
            raise DomainError(f"{value} is not in Z[1/{p}]")
        return cls(p, value.numerator, sexp)

    def to_fraction(self) -> Fraction:
        return Fraction(self.num, self.p**self.sexp)

    @property
    def ambient(self) -> PadicField:
        return PadicField(self.p)

    def is_zero(self) -> bool:
        return self.num == 0

    @property
    def valuation(self):
        if self.num == 0:
            return POS_INF
        return _vp(self.num, self.p) - self.sexp

    @property
    def norm_exp(self):
        if self.num == 0:
            return NEG_INF
        return self.sexp - _vp(self.num, self.p)

    def _check(self, other):
        if not isinstance(other, PadicNumber):
            raise AmbientMismatchError(f"cannot combine p-adic element with {type(other).__name__}")
        if other.p != self.p:
            raise AmbientMismatchError(f"cannot combine elements of Q_{self.p} and Q_{other.p}")

    def __add__(self, other):
        self._check(other)
        p = self.p
        if self.sexp >= other.sexp:
            num = self.num + other.num * p ** (self.sexp - other.sexp)
            return PadicNumber(p, num, self.sexp)
        num = self.num * p ** (other.sexp - self.sexp) + other.num
        return PadicNumber(p, num, other.sexp)

    def __neg__(self):
        return PadicNumber(self.p, -self.num, self.sexp)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        return PadicNumber(self.p, self.num * other.num, self.sexp + other.sexp)

    def __eq__(self, other):
        if not isinstance(other, PadicNumber):
            return NotImplemented
        return (self.p, self.num, self.sexp) == (other.p, other.num, other.sexp)

    def __hash__(self):
        return hash((self.p, self.num, self.sexp))

    def __repr__(self):
        if self.sexp:
            return f"PadicNumber({self.num}/{self.p}^{self.sexp})"
        return f"PadicNumber({self.num}, p={self.p})"


ValuedNumber = LaurentNumber | PadicNumber
Ambient = FieldSpec | PadicField


def same_ambient(x, y):
    if type(x) is not type(y) or x.ambient != y.ambient:
        raise AmbientMismatchError(f"elements live in different fields: {x!r}, {y!r}")


def vn_add(x, y):
    same_ambient(x, y)
    return x + y


def vn_neg(x):
    return -x


def vn_mul(x, y):
    same_ambient(x, y)
    return x * y


def vn_norm_exp(x):
    """Exponent m with ||x|| = base^m; NEG_INF encodes ||0|| = 0."""
    return x.norm_exp


def vn_dist_exp(x, y):
    same_ambient(x, y)
    return (x - y).norm_exp

"""Finite fields F_q, q = p^e, with exact arithmetic.

Elements are stored as coefficient tuples in the extension generator ``u``
(little-endian), and are also addressable by an integer *code*
``c_0 + c_1 p + ... + c_{e-1} p^{e-1}``.  The code form is what the bulk
kernels and the Laurent arithmetic use internally.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import AmbientMismatchError, DomainError, ParseError

MAX_PRIME = 1 << 16
# q^2 table entries are materialised up to this field size.
TABLE_LIMIT = 256


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _prime_factors(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomials over F_p as little-endian int lists (no trailing zeros) --

def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_sub(a, b, p):
    n = max(len(a), len(b))
    out = [((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)]
    return _trim(out)


def _poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _poly_divmod(a, b, p):
    a = list(a)
    inv_lead = pow(b[-1], -1, p)
    db = len(b) - 1
    quot = [0] * max(len(a) - db, 0)
    while len(a) - 1 >= db and a:
        shift = len(a) - 1 - db
        c = a[-1] * inv_lead % p
        quot[shift] = c
        for i, y in enumerate(b):
            a[i + shift] = (a[i + shift] - c * y) % p
        _trim(a)
    return _trim(quot), a


def _poly_mod(a, b, p):
    return _poly_divmod(a, b, p)[1]


def _poly_gcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def _poly_powmod(base, exponent, mod, p):
    result = [1]
    base = _poly_mod(base, mod, p)
    while exponent:
        if exponent & 1:
            result = _poly_mod(_poly_mul(result, base, p), mod, p)
        base = _poly_mod(_poly_mul(base, base, p), mod, p)
        exponent >>= 1
    return result


def is_irreducible(modulus, p: int) -> bool:
    """Irreducibility of a monic polynomial over F_p.

    Degree <= 3 uses the root test; higher degrees use Rabin's test, i.e.
    ``x^(p^e) = x mod f`` and ``gcd(x^(p^(e/r)) - x, f) = 1`` for every
    prime ``r | e``.
    """
    f = _trim([c % p for c in modulus])
    e = len(f) - 1
    if e < 1:
        return False
    if e == 1:
        return True
    if e <= 3:
        for r in range(p):
            acc = 0
            for c in reversed(f):
                acc = (acc * r + c) % p
            if acc == 0:
                return False
        return True
    x = [0, 1]
    if _poly_sub(_poly_powmod(x, p**e, f, p), x, p):
        return False
    for r in _prime_factors(e):
        h = _poly_sub(_poly_powmod(x, p ** (e // r), f, p), x, p)
        if len(_poly_gcd(f, h, p)) != 1:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The finite field F_q, q = p^e, presented as F_p[u]/(modulus)."""

    p: int
    e: int = 1
    modulus: tuple[int, ...] | None = None

    def __post_init__(self):
        if not isinstance(self.p, int) or not 2 <= self.p <= MAX_PRIME or not is_prime(self.p):
            raise DomainError(f"p must be a prime in [2, {MAX_PRIME}], got {self.p!r}")
        if not isinstance(self.e, int) or self.e < 1:
            raise DomainError(f"extension degree must be >= 1, got {self.e!r}")
        if self.e == 1:
            if self.modulus is not None:
                raise DomainError("a modulus is only given for extension fields (e > 1)")
            return
        if self.modulus is None:
            raise DomainError("extension fields need an explicit irreducible modulus")
        mod = tuple(int(c) for c in self.modulus)
        object.__setattr__(self, "modulus", mod)
        if len(mod) != self.e + 1:
            raise DomainError(f"modulus needs {self.e + 1} coefficients, got {len(mod)}")
        if any(not 0 <= c < self.p for c in mod):
            raise DomainError("modulus coefficients must lie in [0, p)")
        if mod[-1] != 1:
            raise DomainError("modulus must be monic")
        if not is_irreducible(mod, self.p):
            raise DomainError(f"modulus {mod} is reducible over F_{self.p}")

    @property
    def q(self) -> int:
        return self.p**self.e

    residue_size = q

    @property
    def characteristic(self) -> int:
        return self.p

    def text(self) -> str:
        if self.e == 1:
            return f"p={self.p}"
        return f"p={self.p},e={self.e},modulus={','.join(map(str, self.modulus))}"

    def __str__(self):
        return f"F_{self.q}" if self.e == 1 else f"F_{self.q}[{self.text()}]"

    @classmethod
    def parse(cls, text: str) -> FieldSpec:
        """Parse ``p=3`` or ``p=2,e=2,modulus=1,1,1``."""
        raw = text.strip().replace(" ", "")
        if not raw.startswith("p="):
            raise ParseError(f"field spec must start with 'p=': {text!r}", "header")
        fields = {}
        mod_part = None
        if ",modulus=" in raw:
            raw, mod_part = raw.split(",modulus=", 1)
        for item in raw.split(","):
            key, sep, val = item.partition("=")
            if not sep or key not in ("p", "e") or key in fields:
                raise ParseError(f"bad field spec item {item!r}", "header")
            try:
                fields[key] = int(val)
            except ValueError:
                raise ParseError(f"non-integer value in {item!r}", "header") from None
        modulus = None
        if mod_part is not None:
            try:
                modulus = tuple(int(c) for c in mod_part.split(","))
            except ValueError:
                raise ParseError(f"bad modulus {mod_part!r}", "header") from None
        try:
            return cls(fields["p"], fields.get("e", 1), modulus)
        except DomainError as exc:
            raise ParseError(str(exc), "header") from None

    # -- code <-> coefficient conversion --

    def to_coeffs(self, code: int) -> tuple[int, ...]:
        out = []
        for _ in range(self.e):
            code, r = divmod(code, self.p)
            out.append(r)
        return tuple(out)

    def to_code(self, coeffs) -> int:
        code = 0
        for c in reversed(coeffs):
            code = code * self.p + c
        return code

    # -- arithmetic on codes --

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        if self._tables is not None:
            return int(self._tables[0][a, b])
        return self.to_code([(x + y) % self.p for x, y in zip(self.to_coeffs(a), self.to_coeffs(b))])

    def neg(self, a: int) -> int:
        if self.e == 1:
            return -a % self.p
        return self.to_code([-x % self.p for x in self.to_coeffs(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return a * b % self.p
        if self._tables is not None:
            return int(self._tables[1][a, b])
        return self._mul_slow(a, b)

    def _mul_slow(self, a, b):
        prod = _poly_mul(_trim(list(self.to_coeffs(a))), _trim(list(self.to_coeffs(b))), self.p)
        return self.to_code(_poly_mod(prod, list(self.modulus), self.p))

    def inv(self, a: int) -> int:
        if a == 0:
            raise DomainError("zero has no multiplicative inverse")
        if self.e == 1:
            return pow(a, -1, self.p)
        # extended Euclid in F_p[u] against the modulus
        p = self.p
        r0, r1 = list(self.modulus), _trim(list(self.to_coeffs(a)))
        s0, s1 = [], [1]
        while r1:
            quot, rem = _poly_divmod(r0, r1, p)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_sub(s0, _poly_mul(quot, s1, p), p)
        # r0 is a nonzero constant since the modulus is irreducible
        scale = pow(r0[0], -1, p)
        inv = [c * scale % p for c in s0]
        return self.to_code(_poly_mod(inv, list(self.modulus), p))

    @cached_property
    def _tables(self):
        if self.e == 1 or self.q > TABLE_LIMIT:
            return None
        return self.tables()

    def tables(self) -> tuple[np.ndarray, np.ndarray]:
        """Dense (add, mul) tables of shape (q, q) over codes, as int64."""
        q, p, e = self.q, self.p, self.e
        codes = np.arange(q, dtype=np.int64)
        digits = np.stack([(codes // p**i) % p for i in range(e)], axis=1)  # (q, e)
        weights = p ** np.arange(e, dtype=np.int64)
        add = (((digits[:, None, :] + digits[None, :, :]) % p) @ weights).astype(np.int64)
        if e == 1:
            mul = np.outer(codes, codes) % p
            return add, mul.astype(np.int64)
        prod = np.zeros((q, q, 2 * e - 1), dtype=np.int64)
        for i in range(e):
            for j in range(e):
                prod[:, :, i + j] += np.outer(digits[:, i], digits[:, j])
        prod %= p
        mod = np.asarray(self.modulus, dtype=np.int64)
        for top in range(2 * e - 2, e - 1, -1):
            c = prod[:, :, top].copy()
            prod[:, :, top - e : top + 1] -= c[:, :, None] * mod[None, None, :]
            prod %= p
        mul = prod[:, :, :e] @ weights
        return add, mul.astype(np.int64)

    # -- element constructors --

    def element(self, value) -> FieldElement:
        """Build an element from an int (in [0, p) or a code) or a coefficient sequence."""
        if isinstance(value, FieldElement):
            if value.spec != self:
                raise AmbientMismatchError(f"element of {value.spec} used in {self}")
            return value
        if isinstance(value, int):
            if not 0 <= value < self.q:
                raise DomainError(f"code {value} out of range for {self}")
            return FieldElement(self, self.to_coeffs(value))
        coeffs = tuple(int(c) for c in value)
        if len(coeffs) > self.e:
            raise DomainError(f"too many coefficients for {self}")
        return FieldElement(self, coeffs + (0,) * (self.e - len(coeffs)))

    def zero(self) -> FieldElement:
        return FieldElement(self, (0,) * self.e)

    def one(self) -> FieldElement:
        return FieldElement(self, (1,) + (0,) * (self.e - 1))

    def elements(self):
        for code in range(self.q):
            yield FieldElement(self, self.to_coeffs(code))


class FieldElement:
    """An immutable element of F_q."""

    __slots__ = ("spec", "coeffs", "code")

    def __init__(self, spec: FieldSpec, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != spec.e or any(not 0 <= c < spec.p for c in coeffs):
            raise DomainError(f"coefficients {coeffs} invalid for {spec}")
        object.__setattr__(self, "spec", spec)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "code", spec.to_code(coeffs))

    @classmethod
    def _from_code(cls, spec, code):
        obj = object.__new__(cls)
        object.__setattr__(obj, "spec", spec)
        object.__setattr__(obj, "coeffs", spec.to_coeffs(code))
        object.__setattr__(obj, "code", code)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    def __eq__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.spec == other.spec and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return self.code != 0

    def __repr__(self):
        if self.spec.e == 1:
            return f"FieldElement({self.coeffs[0]} mod {self.spec.p})"
        return f"FieldElement({self.coeffs} in {self.spec})"

    def __add__(self, other):
        return ff_add(self, other)

    def __sub__(self, other):
        return ff_add(self, ff_neg(other))

    def __mul__(self, other):
        return ff_mul(self, other)

    def __truediv__(self, other):
        return ff_mul(self, ff_inv(other))

    def __neg__(self):
        return ff_neg(self)


def _check_same(x, y):
    if x.spec != y.spec:
        raise AmbientMismatchError(f"cannot combine elements of {x.spec} and {y.spec}")


def ff_add(x: FieldElement, y: FieldElement) -> FieldElement:
    _check_same(x, y)
    return FieldElement._from_code(x.spec, x.spec.add(x.code, y.code))


def ff_mul(x: FieldElement, y: FieldElement) -> FieldElement:
    _check_same(x, y)
    return FieldElement._from_code(x.spec, x.spec.mul(x.code, y.code))


def ff_neg(x: FieldElement) -> FieldElement:
    return FieldElement._from_code(x.spec, x.spec.neg(x.code))


def ff_inv(x: FieldElement) -> FieldElement:
    """Multiplicative inverse; raises DomainError for zero."""
    return FieldElement._from_code(x.spec, x.spec.inv(x.code))

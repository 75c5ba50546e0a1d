"""Element literal grammar, ambient descriptors and the canonical text order.

Laurent literals::

    element := term ("+" term)*
    term    := coeff | coeff "*" "t" ["^" int] | "t" ["^" int]
    coeff   := int | "(" int ("," int)* ")"

p-adic literals are ``int`` or ``int "/" p "^" uint``.  Whitespace is
ignored everywhere.  Repeated exponents in one literal are summed in F_q.

The canonical text produced by :func:`format_element` is the single source
of truth for element ordering (see :func:`canonical_key`).
"""

from __future__ import annotations

from .errors import DomainError, ParseError
from .field import FieldSpec
from .valued import LaurentNumber, PadicField, PadicNumber

MAX_EXPONENT = 10**6


class _Scanner:
    def __init__(self, text, line=None):
        self.text = text
        self.pos = 0
        self.line = line

    def error(self, message, category="syntax", pos=None):
        col = (self.pos if pos is None else pos) + 1
        return ParseError(message, category, self.line, col)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def accept(self, ch):
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def expect(self, ch):
        if not self.accept(ch):
            found = self.peek() or "end of input"
            raise self.error(f"expected {ch!r}, found {found!r}")

    def integer(self, signed=True):
        self.skip_ws()
        start = self.pos
        if signed and self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
            self.skip_ws()
        digits_start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits_start:
            found = self.text[self.pos] if self.pos < len(self.text) else "end of input"
            raise self.error(f"expected an integer, found {found!r}", pos=start)
        return int(self.text[start : self.pos].replace(" ", "")), start

    def at_end(self):
        self.skip_ws()
        return self.pos >= len(self.text)


def _parse_coeff(sc: _Scanner, spec: FieldSpec):
    if sc.accept("("):
        values = []
        while True:
            val, pos = sc.integer()
            if not 0 <= val < spec.p:
                raise sc.error(f"coefficient {val} not in [0, {spec.p})", "range", pos)
            values.append(val)
            if sc.accept(")"):
                break
            sc.expect(",")
        if len(values) > spec.e:
            raise sc.error(f"{len(values)} coordinates given for a degree-{spec.e} extension", "range")
        return spec.to_code(values + [0] * (spec.e - len(values)))
    val, pos = sc.integer()
    if not 0 <= val < spec.p:
        raise sc.error(f"coefficient {val} not in [0, {spec.p})", "range", pos)
    return val


def _parse_exponent(sc: _Scanner):
    if not sc.accept("^"):
        return 1
    val, pos = sc.integer()
    if abs(val) > MAX_EXPONENT:
        raise sc.error(f"exponent {val} exceeds {MAX_EXPONENT} in magnitude", "overflow", pos)
    return val


def _parse_laurent(sc: _Scanner, spec: FieldSpec) -> LaurentNumber:
    terms = []
    while True:
        ch = sc.peek()
        if ch == "t":
            sc.pos += 1
            terms.append((_parse_exponent(sc), 1))
        elif ch == "(" or ch.isdigit() or ch == "-":
            code = _parse_coeff(sc, spec)
            if sc.accept("*"):
                sc.expect("t")
                terms.append((_parse_exponent(sc), code))
            else:
                terms.append((0, code))
        else:
            raise sc.error(f"expected a term, found {ch or 'end of input'!r}")
        if not sc.accept("+"):
            break
    if not sc.at_end():
        raise sc.error(f"unexpected {sc.peek()!r}")
    return LaurentNumber(spec, terms)


def _parse_padic(sc: _Scanner, p: int) -> PadicNumber:
    num, _ = sc.integer()
    sexp = 0
    if sc.accept("/"):
        base, pos = sc.integer(signed=False)
        if base != p:
            raise sc.error(f"denominator base {base} does not match p={p}", "range", pos)
        sc.expect("^")
        sexp, pos = sc.integer(signed=False)
        if sexp > MAX_EXPONENT:
            raise sc.error(f"exponent {sexp} exceeds {MAX_EXPONENT}", "overflow", pos)
    if not sc.at_end():
        raise sc.error(f"unexpected {sc.peek()!r}")
    return PadicNumber(p, num, sexp)


def parse_element(text: str, ambient, line: int | None = None):
    """Parse one element literal in the given ambient field."""
    sc = _Scanner(text, line)
    if sc.at_end():
        raise sc.error("empty element literal")
    if isinstance(ambient, FieldSpec):
        return _parse_laurent(sc, ambient)
    if isinstance(ambient, PadicField):
        return _parse_padic(sc, ambient.p)
    raise TypeError(f"unknown ambient {ambient!r}")


def _format_coeff(spec: FieldSpec, code: int) -> str:
    if spec.e == 1:
        return str(code)
    coeffs = spec.to_coeffs(code)
    if not any(coeffs[1:]):
        return str(coeffs[0])
    return "(" + ",".join(map(str, coeffs)) + ")"


def format_element(x) -> str:
    if isinstance(x, PadicNumber):
        return f"{x.num}/{x.p}^{x.sexp}" if x.sexp else str(x.num)
    if not x.code_terms:
        return "0"
    parts = []
    for exp, code in x.code_terms:
        if exp == 0:
            parts.append(_format_coeff(x.spec, code))
            continue
        mono = "t" if exp == 1 else f"t^{exp}"
        parts.append(mono if code == 1 else f"{_format_coeff(x.spec, code)}*{mono}")
    return " + ".join(parts)


def canonical_key(x) -> str:
    """Total order used for every tie-break: lexicographic canonical text."""
    return format_element(x)


def sort_canonical(elements):
    return sorted(elements, key=format_element)


# -- ambient descriptors --

def parse_ambient(text: str):
    """Parse ``field: p=..``, ``padic: p=..`` or a bare FieldSpec ``p=..``."""
    raw = text.strip()
    kind, sep, rest = raw.partition(":")
    if not sep:
        return FieldSpec.parse(raw)
    kind = kind.strip().lower()
    if kind == "field":
        return FieldSpec.parse(rest)
    if kind == "padic":
        rest = rest.strip().replace(" ", "")
        if not rest.startswith("p="):
            raise ParseError(f"bad p-adic descriptor {text!r}", "header")
        try:
            return PadicField(int(rest[2:]))
        except (ValueError, DomainError) as exc:
            raise ParseError(f"bad p-adic descriptor {text!r}: {exc}", "header") from None
    raise ParseError(f"unknown ambient kind {kind!r}", "header")


def ambient_header(ambient) -> str:
    if isinstance(ambient, PadicField):
        return f"padic: {ambient.text()}"
    return f"field: {ambient.text()}"

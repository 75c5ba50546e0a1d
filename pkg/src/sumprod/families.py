"""Deterministic test-set families.

Every family is a pure function of ``(kind, parameters, seed)``.  Random
draws use numpy's PCG64 bit generator; its identifier is recorded in every
generated set file so runs replay exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .field import FieldSpec
from .notation import ambient_header, parse_ambient, parse_element
from .sets import FiniteSet
from .valued import LaurentNumber, PadicField, PadicNumber

RNG_ALGORITHM = "numpy.PCG64"
KINDS = ("monomials", "arith_prog", "geom_prog", "random_poly", "interval", "constants", "separable", "custom_file")


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    ambient: FieldSpec | PadicField
    n: int = 10
    degree: int | None = None
    seed: int = 0
    start: str | None = None
    step: str | None = None
    path: str | None = None

    def describe(self) -> dict:
        out = {"family": self.kind, "n": str(self.n), "seed": str(self.seed), "rng": RNG_ALGORITHM}
        if self.degree is not None:
            out["degree"] = str(self.degree)
        if self.start is not None:
            out["start"] = self.start
        if self.step is not None:
            out["step"] = self.step
        return out


def _poly_from_index(spec: FieldSpec, i: int) -> LaurentNumber:
    """The i-th polynomial of F_q[t] in base-q digit order."""
    terms = {}
    e = 0
    while i:
        i, c = divmod(i, spec.q)
        if c:
            terms[e] = c
        e += 1
    return LaurentNumber(spec, terms)


def _random_laurent(rng, spec: FieldSpec, lo: int, hi: int) -> LaurentNumber:
    codes = rng.integers(0, spec.q, size=hi - lo + 1)
    return LaurentNumber(spec, {lo + j: int(c) for j, c in enumerate(codes) if c})


def _distinct(gen, n, what):
    seen = {}
    attempts = 0
    while len(seen) < n:
        seen.setdefault(gen(), None)
        attempts += 1
        if attempts > 50 * n + 1000:
            raise DomainError(f"could not draw {n} distinct elements for {what}; enlarge the degree bound")
    return list(seen)


def _laurent_family(fs: FamilySpec, rng) -> list:
    spec = fs.ambient
    n = fs.n
    if fs.kind == "monomials":
        return [LaurentNumber.monomial(spec, j) for j in range(n + 1)]
    if fs.kind == "arith_prog":
        start = parse_element(fs.start or "0", spec)
        step = parse_element(fs.step or "1", spec)
        if step.is_zero():
            raise DomainError("arith_prog step must be nonzero")
        return [start + step * _poly_from_index(spec, i) for i in range(n)]
    if fs.kind == "geom_prog":
        start = parse_element(fs.start or "1", spec)
        ratio = parse_element(fs.step or "t + 1", spec)
        out, cur = [], start
        for _ in range(n):
            out.append(cur)
            cur = cur * ratio
        return out
    if fs.kind == "random_poly":
        d = fs.degree if fs.degree is not None else _degree_for(spec.q, n)
        if spec.q**d < n:
            raise DomainError(f"only {spec.q ** d} polynomials of degree < {d}, need {n}")
        return _distinct(lambda: _random_laurent(rng, spec, 0, d - 1), n, "random_poly")
    if fs.kind == "interval":
        d = fs.degree if fs.degree is not None else 2
        return [_poly_from_index(spec, i) for i in range(spec.q**d)]
    if fs.kind == "constants":
        return [LaurentNumber.constant(spec, c) for c in range(spec.q)]
    if fs.kind == "separable":
        low = int(rng.integers(-3, 2))
        base = _random_laurent(rng, spec, low, low + 3)
        exps, e = [], low + 4
        for _ in range(n):
            exps.append(e)
            e += int(rng.integers(1, 3))
        out = []
        for ej in exps:
            lead = int(rng.integers(1, spec.q))
            noise = _random_laurent(rng, spec, low, exps[0] - 1)
            out.append(base + LaurentNumber.monomial(spec, ej, lead) + noise)
        return out
    raise DomainError(f"unknown family {fs.kind!r}")


def _degree_for(q: int, n: int) -> int:
    d = 1
    while q**d < 4 * n:
        d += 1
    return d


def _padic_family(fs: FamilySpec, rng) -> list:
    p = fs.ambient.p
    n = fs.n
    if fs.kind == "monomials":
        return [PadicNumber(p, 1, j) for j in range(n + 1)]
    if fs.kind == "arith_prog":
        start = parse_element(fs.start or "0", fs.ambient)
        step = parse_element(fs.step or "1", fs.ambient)
        if step.is_zero():
            raise DomainError("arith_prog step must be nonzero")
        return [start + step * PadicNumber(p, i) for i in range(n)]
    if fs.kind == "geom_prog":
        start = parse_element(fs.start or "1", fs.ambient)
        ratio = parse_element(fs.step or str(p + 1), fs.ambient)
        out, cur = [], start
        for _ in range(n):
            out.append(cur)
            cur = cur * ratio
        return out
    if fs.kind == "random_poly":
        d = fs.degree if fs.degree is not None else _degree_for(p, n)
        bound = p**d
        return _distinct(
            lambda: PadicNumber(p, int(rng.integers(-bound, bound + 1)), int(rng.integers(0, 3))), n, "random_poly"
        )
    if fs.kind == "interval":
        d = fs.degree if fs.degree is not None else 2
        return [PadicNumber(p, i) for i in range(p**d)]
    if fs.kind == "constants":
        return [PadicNumber(p, c) for c in range(p)]
    if fs.kind == "separable":
        top = int(rng.integers(0, 4))
        base = PadicNumber(p, int(rng.integers(0, p**3)), int(rng.integers(0, 2)))
        out = []
        for j in range(1, n + 1):
            unit = int(rng.integers(1, p))
            noise = int(rng.integers(0, p**2))
            val = top - j  # strictly decreasing valuations, all below top
            term = PadicNumber(p, unit, -val)
            out.append(base + term + PadicNumber(p, noise, -top))
        return out
    raise DomainError(f"unknown family {fs.kind!r}")


def generate(fs: FamilySpec) -> FiniteSet:
    """Materialise a family as a FiniteSet; duplicates are an error."""
    if fs.kind not in KINDS:
        raise DomainError(f"unknown family {fs.kind!r}; choose from {', '.join(KINDS)}")
    if fs.n < 1:
        raise DomainError("family size n must be >= 1")
    if fs.kind == "custom_file":
        from .io import read_set_file

        if not fs.path:
            raise DomainError("custom_file needs a path")
        A, _ = read_set_file(fs.path)
        return A
    rng = make_rng(fs.seed)
    if isinstance(fs.ambient, FieldSpec):
        elems = _laurent_family(fs, rng)
    else:
        elems = _padic_family(fs, rng)
    A = FiniteSet(fs.ambient, elems)
    if len(A) != len(elems):
        raise DomainError(f"family {fs.kind} produced {len(elems) - len(A)} duplicate elements")
    return A


# -- standard corpus --

CORPUS_AMBIENTS = (
    "field: p=2",
    "field: p=3",
    "field: p=2,e=2,modulus=1,1,1",
    "field: p=5",
    "field: p=3,e=2,modulus=1,0,1",
    "padic: p=2",
    "padic: p=3",
)


def default_corpus(seed: int = 20240601, include_large: bool = True) -> list[tuple[str, FiniteSet]]:
    """A fixed mixed corpus of 200+ sets across every family and ambient."""
    out = []
    rng = make_rng(seed)

    def add(kind, amb_text, **kw):
        amb = parse_ambient(amb_text)
        fs = FamilySpec(kind, amb, **kw)
        name = f"{kind}[{ambient_header(amb)}|" + ",".join(f"{k}={v}" for k, v in sorted(kw.items())) + "]"
        out.append((name, generate(fs)))

    for amb_text in CORPUS_AMBIENTS:
        amb = parse_ambient(amb_text)
        q = amb.residue_size
        for n in (2, 3, 6, 10):
            add("monomials", amb_text, n=n)
        for n in (4, 9, 16):
            add("arith_prog", amb_text, n=n)
        add("arith_prog", amb_text, n=8, start="t" if isinstance(amb, FieldSpec) else "1",
            step="t^2 + 1" if isinstance(amb, FieldSpec) else str(q))
        for n in (4, 8, 12):
            add("geom_prog", amb_text, n=n)
        for n in (5, 10, 20, 40, 64):
            for _ in range(2):
                add("random_poly", amb_text, n=n, seed=int(rng.integers(0, 2**31)))
        add("random_poly", amb_text, n=7, degree=3, seed=int(rng.integers(0, 2**31)))
        add("interval", amb_text, degree=1)
        if q**2 <= 64:
            add("interval", amb_text, degree=2)
        add("constants", amb_text)
        for n in (4, 6, 8, 16, 32):
            add("separable", amb_text, n=n, seed=int(rng.integers(0, 2**31)))
    if include_large:
        for amb_text in ("field: p=2", "field: p=3", "padic: p=2"):
            add("random_poly", amb_text, n=256, seed=int(rng.integers(0, 2**31)))
        add("interval", "field: p=2", degree=8)
    return out

"""Certificate bundles: chain + separable certificates and the inequality ledger.

A bundle is plain text that embeds the input set, so it re-verifies from
its serialised form alone (:func:`recheck_bundle`).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .combinatorics import growth_report, productset_size, sumset_size
from .errors import ParseError
from .geometry import chain_bound, critical_balls, nested, verify_separable
from .io import format_chain, format_separable, parse_chain, parse_separable
from .notation import ambient_header, format_element, parse_ambient, parse_element
from .sets import FiniteSet

BUNDLE_MAGIC = "# sumprod certificate bundle v1"


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"check {self.name}: {self.detail} {'PASS' if self.passed else 'FAIL'}"


def inequality_checks(size_a, size_sum, size_prod, chain_len, sep_len, sep_sumset, q, bound) -> list[Check]:
    """(i) chain >= chain_bound, (ii) sep >= ceil(chain/q), (iii) |U+U| >= |U|^2/3,
    (iv) the lower bound implied for max(|A+A|, |AA|) does not exceed it."""
    need_sep = -(-chain_len // q)
    implied = Fraction(sep_len**2, 3)
    measured = max(size_sum, size_prod)
    return [
        Check("chain_ge_bound", chain_len >= bound, f"{chain_len} >= {bound}"),
        Check("sep_ge_chain_over_q", sep_len >= need_sep, f"{sep_len} >= ceil({chain_len}/{q}) = {need_sep}"),
        Check("sep_sumset_growth", 3 * sep_sumset >= sep_len**2, f"3*{sep_sumset} >= {sep_len}^2"),
        Check("implied_max_bound", implied <= measured, f"{implied} <= max({size_sum}, {size_prod}) = {measured}"),
    ]


def _chain_valid(chain_elems, cb) -> bool:
    if len(set(chain_elems)) != len(chain_elems):
        return False
    if any(x not in cb.index for x in chain_elems):
        return False
    balls = [cb.ball_of(x) for x in chain_elems]
    return all(nested(b1, b2) for b1, b2 in zip(balls, balls[1:]))


def build_bundle(A: FiniteSet, family: str = "") -> tuple[str, bool]:
    """Return (bundle text, all checks passed)."""
    rep = growth_report(A, family, energy_k=None)
    U = FiniteSet(A.ambient, rep.separable.elements)
    checks = [
        Check("chain_valid", _chain_valid(list(rep.chain.elements), critical_balls(A)), "nested distinct members"),
        Check("separable_valid", verify_separable(rep.separable), "witness membership"),
        Check("separable_in_chain", set(rep.separable.elements) <= set(rep.chain.elements), "U subset of chain"),
    ]
    checks += inequality_checks(
        rep.size, rep.sumset_size, rep.productset_size, rep.chain_len, rep.sep_len,
        sumset_size(U), A.residue_size, rep.chain_bound,
    )
    ok = all(c.passed for c in checks)
    lines = [
        BUNDLE_MAGIC,
        f"ambient: {ambient_header(A.ambient)}",
        f"family: {family}",
        "set: " + "; ".join(format_element(x) for x in A),
        f"size: {rep.size}",
        f"sumset_size: {rep.sumset_size}",
        f"productset_size: {rep.productset_size}",
        f"chain_bound: {rep.chain_bound}",
        format_chain(rep.chain),
        format_separable(rep.separable),
    ]
    lines += [c.line() for c in checks]
    lines.append(f"status: {'PASS' if ok else 'FAIL'}")
    return "\n".join(lines) + "\n", ok


def _fields(text):
    out = {}
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if not line or line.startswith("#") or line.startswith("check "):
            continue
        key, sep, val = line.partition(":")
        if not sep:
            raise ParseError(f"unexpected line {line!r}", "syntax", lineno)
        out[key.strip()] = (val.strip(), lineno, line)
    return out


def recheck_bundle(text: str) -> list[Check]:
    """Re-verify a bundle from its text, recomputing everything it claims."""
    if not text.startswith(BUNDLE_MAGIC):
        raise ParseError("not a certificate bundle", "header", 1)
    f = _fields(text)
    for key in ("ambient", "set", "chain", "separable", "size", "sumset_size", "productset_size"):
        if key not in f:
            raise ParseError(f"bundle lacks '{key}:'", "syntax")
    ambient = parse_ambient(f["ambient"][0])
    A = FiniteSet(ambient, [parse_element(s, ambient, f["set"][1]) for s in f["set"][0].split(";")])
    chain = parse_chain(f["chain"][2], ambient, f["chain"][1])
    sep = parse_separable(f["separable"][2], ambient, f["separable"][1])
    cb = critical_balls(A)
    size_sum = sumset_size(A)
    size_prod = productset_size(A)
    bound = chain_bound(len(A), size_sum, size_prod)
    U = FiniteSet(ambient, sep.elements)
    claimed = (int(f["size"][0]), int(f["sumset_size"][0]), int(f["productset_size"][0]))
    checks = [
        Check("recorded_sizes", claimed == (len(A), size_sum, size_prod), f"{claimed} == {(len(A), size_sum, size_prod)}"),
        Check("chain_valid", _chain_valid(chain, cb), "nested distinct members"),
        Check("separable_valid", verify_separable(sep), "witness membership"),
        Check("separable_in_chain", set(sep.elements) <= set(chain), "U subset of chain"),
    ]
    checks += inequality_checks(
        len(A), size_sum, size_prod, len(chain), len(sep), sumset_size(U) if len(U) else 0,
        ambient.residue_size, bound,
    )
    return checks

"""Set files, report rows (CSV/JSON) and certificate lines.

Set file layout (UTF-8, LF)::

    field: p=2,e=2,modulus=1,1,1      <- or ``padic: p=3``
    # family: monomials               <- optional ``# key: value`` metadata
    1
    t
    (0,1)*t^2 + 1

Certificate lines::

    chain: e1; e2; ...
    separable: e1; e2; ... | witness: (center, rexp); ...
"""

from __future__ import annotations

import csv
import io as _io
from pathlib import Path

from .combinatorics import GrowthReport
from .errors import ParseError
from .geometry import Ball, ChainCertificate, SeparableCertificate
from .notation import ambient_header, format_element, parse_ambient, parse_element
from .sets import FiniteSet

REPORT_COLUMNS = (
    "family",
    "ambient",
    "size",
    "sumset_size",
    "productset_size",
    "E_2",
    "chain_len",
    "chain_bound",
    "sep_len",
    "sep_bound",
    "K",
    "delta_hat",
)


def parse_set_text(text: str) -> tuple[FiniteSet, dict]:
    """Parse set-file text; returns the set and its ``# key: value`` metadata."""
    ambient = None
    meta = {}
    elements = []
    seen = {}
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, sep, val = line[1:].partition(":")
            if sep and key.strip() and " " not in key.strip():
                meta.setdefault(key.strip(), val.strip())
            continue
        if ambient is None:
            try:
                ambient = parse_ambient(line)
            except ParseError as exc:
                raise ParseError(f"bad header: {exc}", "header", lineno) from None
            if ":" not in line:
                raise ParseError("header must read 'field: ...' or 'padic: ...'", "header", lineno)
            continue
        x = parse_element(line, ambient, line=lineno)
        if x in seen:
            raise ParseError(f"duplicate element {line!r} (first on line {seen[x]})", "duplicate", lineno)
        seen[x] = lineno
        elements.append(x)
    if ambient is None:
        raise ParseError("missing ambient header", "header", 1)
    if not elements:
        raise ParseError("a set file must describe a non-empty finite subset", "empty")
    return FiniteSet(ambient, elements), meta


def read_set_file(path) -> tuple[FiniteSet, dict]:
    return parse_set_text(Path(path).read_text(encoding="utf-8"))


def format_set_text(A: FiniteSet, meta: dict | None = None) -> str:
    lines = [ambient_header(A.ambient)]
    for key, val in (meta or {}).items():
        lines.append(f"# {key}: {val}")
    lines.extend(format_element(x) for x in A)
    return "\n".join(lines) + "\n"


def write_set_file(path, A: FiniteSet, meta: dict | None = None) -> None:
    Path(path).write_text(format_set_text(A, meta), encoding="utf-8", newline="\n")


# -- certificates --

def format_chain(cert: ChainCertificate) -> str:
    return "chain: " + "; ".join(format_element(x) for x in cert.elements)


def format_separable(cert: SeparableCertificate) -> str:
    elems = "; ".join(format_element(x) for x in cert.elements)
    wits = "; ".join(f"({format_element(b.center)}, {b.rexp})" for b in cert.witnesses)
    return f"separable: {elems} | witness: {wits}"


def _split_elements(body: str, ambient, line):
    body = body.strip()
    if not body:
        return []
    return [parse_element(part, ambient, line) for part in body.split(";")]


def parse_chain(text: str, ambient, line=None) -> list:
    """Elements of a ``chain:`` line (balls are recomputed by the verifier)."""
    head, sep, body = text.partition(":")
    if not sep or head.strip() != "chain":
        raise ParseError("expected 'chain: ...'", "syntax", line)
    return _split_elements(body, ambient, line)


def parse_separable(text: str, ambient, line=None) -> SeparableCertificate:
    head, sep, body = text.partition(":")
    if not sep or head.strip() != "separable":
        raise ParseError("expected 'separable: ...'", "syntax", line)
    elems_part, bar, wit_part = body.partition("| witness:")
    if not bar:
        raise ParseError("separable line lacks '| witness:'", "syntax", line)
    elements = _split_elements(elems_part, ambient, line)
    witnesses = []
    for chunk in wit_part.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        if not (chunk.startswith("(") and chunk.endswith(")")):
            raise ParseError(f"bad witness {chunk!r}", "syntax", line)
        center, comma, rexp = chunk[1:-1].rpartition(",")
        if not comma:
            raise ParseError(f"bad witness {chunk!r}", "syntax", line)
        try:
            r = int(rexp)
        except ValueError:
            raise ParseError(f"bad witness radius {rexp!r}", "syntax", line) from None
        witnesses.append(Ball(parse_element(center, ambient, line), r))
    return SeparableCertificate(tuple(elements), tuple(witnesses))


# -- reports --

def report_row(r: GrowthReport) -> dict:
    return {
        "family": r.family,
        "ambient": ambient_header(r.ambient),
        "size": r.size,
        "sumset_size": r.sumset_size,
        "productset_size": r.productset_size,
        "E_2": "" if r.energy2 is None else r.energy2,
        "chain_len": r.chain_len,
        "chain_bound": str(r.chain_bound),
        "sep_len": r.sep_len,
        "sep_bound": r.sep_bound,
        "K": str(r.K),
        "delta_hat": r.delta_hat,
    }


def write_report(rows) -> str:
    """CSV text with the frozen column order; ``rows`` are reports or dicts."""
    rows = list(rows)
    if not rows:
        raise ValueError("no report rows")
    buf = _io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=REPORT_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow(report_row(r) if isinstance(r, GrowthReport) else r)
    return buf.getvalue()


def report_json(r: GrowthReport) -> dict:
    """Self-describing JSON object, certificates embedded in their text form."""
    out = report_row(r)
    out["trivial_2"] = r.trivial2
    out["E_2"] = r.energy2
    out["chain_certificate"] = format_chain(r.chain)
    out["separable_certificate"] = format_separable(r.separable)
    out["columns"] = list(REPORT_COLUMNS)
    return out

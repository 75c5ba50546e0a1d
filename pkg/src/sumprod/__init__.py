"""Exact sum-product laboratory over F_q((1/t)) and Q_p."""

from .errors import AmbientMismatchError, DomainError, ParseError, ResourceError, SumprodError
from .field import FieldElement, FieldSpec, ff_add, ff_inv, ff_mul, ff_neg
from .notation import format_element, parse_ambient, parse_element
from .sets import FiniteSet
from .valued import (
    NEG_INF,
    POS_INF,
    LaurentNumber,
    PadicField,
    PadicNumber,
    vn_add,
    vn_dist_exp,
    vn_mul,
    vn_neg,
    vn_norm_exp,
)

__version__ = "0.1.0"

__all__ = [
    "AmbientMismatchError",
    "DomainError",
    "FieldElement",
    "FieldSpec",
    "FiniteSet",
    "LaurentNumber",
    "NEG_INF",
    "POS_INF",
    "PadicField",
    "PadicNumber",
    "ParseError",
    "ResourceError",
    "SumprodError",
    "ff_add",
    "ff_inv",
    "ff_mul",
    "ff_neg",
    "format_element",
    "parse_ambient",
    "parse_element",
    "vn_add",
    "vn_dist_exp",
    "vn_mul",
    "vn_neg",
    "vn_norm_exp",
]

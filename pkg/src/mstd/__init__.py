"""Sumsets, difference sets and explicit families of MSTD sets."""

from .analysis import Classification, FringeReport, Kind, classify, is_mstd, is_pn, is_pnj
from .core import (
    IntSet,
    LinearForm,
    SetOverflowError,
    affine,
    contains_interval,
    diffset,
    eval_form,
    format_set,
    make_set,
    parse_set,
    sumset,
)

__all__ = [
    "Classification",
    "FringeReport",
    "IntSet",
    "Kind",
    "LinearForm",
    "SetOverflowError",
    "affine",
    "classify",
    "contains_interval",
    "diffset",
    "eval_form",
    "format_set",
    "is_mstd",
    "is_pn",
    "is_pnj",
    "make_set",
    "parse_set",
    "sumset",
]

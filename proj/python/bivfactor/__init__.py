"""Factorization of bivariate polynomials over prime fields via Newton polygons."""

from ._bivfactor import (
    DegenerateInput,
    Error,
    MinimallyDegenerate,
    ModulusNotPrime,
    NotSeparable,
    ParseError,
    PrecisionTooLow,
    factor,
    hensel,
    multiply,
    polygon,
)

__all__ = [
    "DegenerateInput",
    "Error",
    "MinimallyDegenerate",
    "ModulusNotPrime",
    "NotSeparable",
    "ParseError",
    "PrecisionTooLow",
    "factor",
    "hensel",
    "multiply",
    "polygon",
]

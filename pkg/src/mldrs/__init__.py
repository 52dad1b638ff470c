"""Finite-field and Reed-Solomon toolkit for the matching-to-ML-decoding reductions."""

from .gf2m import FieldContext, build_field
from .reduction import MldRsInstance, ReductionTrace, ThreeDmInstance, convert, convert_prep, convert_std
from .rs_code import RsCode

__all__ = [
    "FieldContext",
    "MldRsInstance",
    "ReductionTrace",
    "RsCode",
    "ThreeDmInstance",
    "build_field",
    "convert",
    "convert_prep",
    "convert_std",
]

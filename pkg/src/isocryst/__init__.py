"""Exact computations for quasi-polarized Dieudonne modules with quaternionic action.

Truncated p-adic rings, quaternion algebras, local form classification, slope
enumeration, explicit Dieudonne module constructions and local-model points.
"""

__version__ = "0.1.0"

from .padic_core import FieldParams, hilbert_symbol, square_class  # noqa: E402
from .quaternion import Kind, QuaternionAlgebra  # noqa: E402
from .slopes import AdmissibleSpec, SlopeSeq, count_isogeny_classes, enumerate_slopeseqs  # noqa: E402

__all__ = [
    "AdmissibleSpec",
    "FieldParams",
    "Kind",
    "QuaternionAlgebra",
    "SlopeSeq",
    "count_isogeny_classes",
    "enumerate_slopeseqs",
    "hilbert_symbol",
    "square_class",
]

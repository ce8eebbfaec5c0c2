"""Limiting measure: validation, Cauchy transform and support structure."""

from .cauchy import Segment, SegmentSum
from .io import dumps_measure, loads_measure, read_measure, write_measure, write_text_atomic
from .models import DensityPiece, Interval, MeasureSpec, Span
from .support import (
    DENSITY_TOLERANCE,
    ClassifiedPiece,
    ExtendedExp,
    MeasureGeometry,
    PieceKind,
    RComponent,
    RTag,
    SupportDecomposition,
    cauchy,
    cauchy_deriv,
    classify_pieces,
    extended_cauchy_derivative,
    extended_exp_c,
    geometry,
    r_decomposition,
    support_sets,
)
from .validation import mean, total_mass, validate

__all__ = [
    "ClassifiedPiece",
    "DENSITY_TOLERANCE",
    "DensityPiece",
    "ExtendedExp",
    "Interval",
    "MeasureGeometry",
    "MeasureSpec",
    "PieceKind",
    "RComponent",
    "RTag",
    "Segment",
    "SegmentSum",
    "Span",
    "SupportDecomposition",
    "cauchy",
    "cauchy_deriv",
    "classify_pieces",
    "dumps_measure",
    "extended_cauchy_derivative",
    "extended_exp_c",
    "geometry",
    "loads_measure",
    "mean",
    "r_decomposition",
    "read_measure",
    "support_sets",
    "total_mass",
    "validate",
    "write_measure",
    "write_text_atomic",
]

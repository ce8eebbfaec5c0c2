"""Semantic validation of a measure candidate."""
from __future__ import annotations

import logging
from typing import Any, Mapping, Sequence

import numpy as np
from numpy.polynomial import polynomial as P
from pydantic import ValidationError

from ..errors import (
    DensityOutOfRange,
    MassNotOne,
    MeasureValidationError,
    OverlappingPieces,
    SupportTooNarrow,
    Violation,
)
from .models import DensityPiece, MeasureSpec

logger = logging.getLogger(__name__)

MASS_TOLERANCE = 1e-12
RANGE_TOLERANCE = 1e-12
OVERLAP_TOLERANCE = 1e-12

_ERROR_BY_CODE: dict[str, type[MeasureValidationError]] = {
    "MassNotOne": MassNotOne,
    "DensityOutOfRange": DensityOutOfRange,
    "SupportTooNarrow": SupportTooNarrow,
    "OverlappingPieces": OverlappingPieces,
}


def piece_extrema(piece: DensityPiece) -> tuple[float, float]:
    """Minimum and maximum of the density polynomial over its interval."""

    coeffs = np.asarray(piece.coeffs, dtype=float)
    points = [piece.lo, piece.hi]
    if coeffs.size > 2:
        for root in P.polyroots(P.polyder(coeffs)):
            if abs(root.imag) < 1e-12 and piece.lo < root.real < piece.hi:
                points.append(root.real)
    values = P.polyval(np.asarray(points), coeffs)
    return float(values.min()), float(values.max())


def piece_mass(piece: DensityPiece, weight: Sequence[float] = (1.0,)) -> float:
    integrand = P.polymul(np.asarray(piece.coeffs, dtype=float), np.asarray(weight, dtype=float))
    antiderivative = P.polyint(integrand)
    return float(P.polyval(piece.hi, antiderivative) - P.polyval(piece.lo, antiderivative))


def total_mass(spec: MeasureSpec) -> float:
    return float(sum(piece_mass(piece) for piece in spec.pieces))


def mean(spec: MeasureSpec) -> float:
    """First moment ∫ x dμ."""

    return float(sum(piece_mass(piece, (0.0, 1.0)) for piece in spec.pieces))


def violations(spec: MeasureSpec) -> list[Violation]:
    found: list[Violation] = []
    previous: DensityPiece | None = None
    for piece in spec.pieces:
        if previous is not None and piece.lo < previous.hi - OVERLAP_TOLERANCE:
            found.append(
                Violation(
                    "OverlappingPieces",
                    f"[{previous.lo}, {previous.hi}] y [{piece.lo}, {piece.hi}] se solapan",
                )
            )
        previous = piece
        low, high = piece_extrema(piece)
        if low < -RANGE_TOLERANCE or high > 1.0 + RANGE_TOLERANCE:
            found.append(
                Violation(
                    "DensityOutOfRange",
                    f"densidad en [{piece.lo}, {piece.hi}] toma valores en [{low:.6g}, {high:.6g}]",
                )
            )
    mass = total_mass(spec)
    if abs(mass - 1.0) > MASS_TOLERANCE * max(1.0, spec.width):
        found.append(Violation("MassNotOne", f"masa total {mass!r} distinta de 1"))
    if spec.width <= 1.0:
        found.append(
            Violation("SupportTooNarrow", f"b - a = {spec.width!r} no supera 1")
        )
    return found


def validate(raw: MeasureSpec | Mapping[str, Any] | Sequence[Any]) -> MeasureSpec:
    """Parse and check a measure candidate.

    Accepts a :class:`MeasureSpec`, a mapping with a ``pieces`` key or a bare
    list of pieces. Raises the error class of the first broken invariant; the
    exception carries every violation found.
    """

    if isinstance(raw, MeasureSpec):
        spec = raw
    else:
        payload = {"pieces": raw} if isinstance(raw, (list, tuple)) else raw
        try:
            spec = MeasureSpec.model_validate(payload)
        except ValidationError as exc:
            raise MeasureValidationError(
                [Violation("Malformed", err["msg"]) for err in exc.errors(include_url=False)]
            ) from exc
    found = violations(spec)
    if found:
        logger.debug("Medida rechazada: %s", [v.code for v in found])
        raise _ERROR_BY_CODE.get(found[0].code, MeasureValidationError)(found)
    return spec


__all__ = ["mean", "piece_extrema", "piece_mass", "total_mass", "validate", "violations"]

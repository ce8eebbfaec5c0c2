"""Points t ∉ R where (t, 1) is known to lie on ∂L."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np
from numpy.polynomial import Polynomial

from ..measure import DENSITY_TOLERANCE, ClassifiedPiece, MeasureSpec, PieceKind, Span, geometry

logger = logging.getLogger(__name__)

_ROOT_TOLERANCE = 1e-6


class SideState(str, Enum):
    """Behaviour of φ on a one-sided neighbourhood of t."""

    ZERO = "zero"
    ONE = "one"
    STRICT = "strict"
    OTHER = "other"


# (izquierda, derecha) -> caso del borde plano
FLAT_CASES: dict[tuple[SideState, SideState], int] = {
    (SideState.STRICT, SideState.STRICT): 1,
    (SideState.STRICT, SideState.ZERO): 2,
    (SideState.STRICT, SideState.ONE): 3,
    (SideState.ZERO, SideState.STRICT): 4,
    (SideState.ONE, SideState.STRICT): 5,
}


@dataclass(frozen=True)
class FlatPoint:
    """A point or open interval of ℝ∖R with the case it satisfies.

    ``case`` is ``None`` for unclassified points, where ∂L is only reached
    through probes.
    """

    span: Span
    case: Optional[int]

    @property
    def classified(self) -> bool:
        return self.case is not None


def _piece_at(pieces: tuple[ClassifiedPiece, ...], t: float, side: int) -> ClassifiedPiece | None:
    for piece in pieces:
        if side > 0 and piece.lo <= t < piece.hi:
            return piece
        if side < 0 and piece.lo < t <= piece.hi:
            return piece
    return None


def side_state(spec: MeasureSpec, t: float, side: int) -> SideState:
    """State of φ on (t, t + ε) when ``side > 0``, on (t − ε, t) otherwise."""

    geo = geometry(spec)
    piece = _piece_at(geo.pieces, t, side)
    if piece is None:
        return SideState.ZERO
    if piece.kind is PieceKind.ONE:
        return SideState.ONE
    limit = float(Polynomial(piece.coeffs)(t))
    if DENSITY_TOLERANCE < limit < 1.0 - DENSITY_TOLERANCE:
        return SideState.STRICT
    return SideState.OTHER


def _touch_points(piece: ClassifiedPiece, lo: float, hi: float) -> list[float]:
    """Interior points of [lo, hi] where the piece's density reaches 0 or 1."""

    out: list[float] = []
    poly = Polynomial(piece.coeffs)
    margin = _ROOT_TOLERANCE * max(1.0, hi - lo)
    for target in (poly, poly - 1.0):
        if target.degree() < 1:
            continue
        for root in target.roots():
            x = float(root.real)
            # raíces dobles llegan como pares casi reales
            if abs(root.imag) > margin or not (lo + margin < x < hi - margin):
                continue
            if all(abs(x - seen) > margin for seen in out):
                out.append(x)
    return out


def _classify_point(spec: MeasureSpec, t: float) -> Optional[int]:
    return FLAT_CASES.get((side_state(spec, t, -1), side_state(spec, t, +1)))


def flat_boundary_points(spec: MeasureSpec) -> list[FlatPoint]:
    """Split ℝ∖R into points and open intervals tagged with their flat-boundary case."""

    geo = geometry(spec)
    out: list[FlatPoint] = []
    for component in geo.outside_r():
        if component.is_point:
            out.append(FlatPoint(component, _classify_point(spec, component.lo)))
            continue
        marks = {component.lo, component.hi}
        for piece in geo.pieces:
            lo, hi = max(piece.lo, component.lo), min(piece.hi, component.hi)
            if lo >= hi:
                continue
            marks.update({lo, hi})
            marks.update(_touch_points(piece, lo, hi))
        ordered = sorted(marks)
        for left, right in zip(ordered, ordered[1:]):
            out.append(FlatPoint(Span(left, left), _classify_point(spec, left)))
            middle = 0.5 * (left + right)
            out.append(FlatPoint(Span(left, right), _classify_point(spec, middle)))
        out.append(FlatPoint(Span(ordered[-1], ordered[-1]), _classify_point(spec, ordered[-1])))
    unclassified = [p.span.lo for p in out if not p.classified]
    if unclassified:
        logger.info("Puntos de ℝ∖R sin clasificar: %s", np.round(unclassified, 12).tolist())
    return out


def flat_segments(points: list[FlatPoint]) -> list[Span]:
    """Merge consecutive classified entries into the closed pieces of the top side they cover."""

    segments: list[Span] = []
    current: Span | None = None
    for point in points:
        if not point.classified:
            if current is not None:
                segments.append(current)
            current = None
            continue
        if current is not None and point.span.lo <= current.hi:
            current = Span(current.lo, max(current.hi, point.span.hi))
        else:
            if current is not None:
                segments.append(current)
            current = Span(point.span.lo, point.span.hi)
    if current is not None:
        segments.append(current)
    return segments


__all__ = ["FLAT_CASES", "FlatPoint", "SideState", "flat_boundary_points", "flat_segments", "side_state"]

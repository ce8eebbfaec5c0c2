"""The pair (χ, η) and the function f' it defines."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import lru_cache

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..errors import OutOfTrapezoid, PointOnSingularSet
from ..measure import MeasureSpec, Segment, SegmentSum, Span, SupportDecomposition, geometry, support_sets
from ..measure.support import PieceKind

logger = logging.getLogger(__name__)

TRAPEZOID_TOLERANCE = 1e-12


class SaddleContext(BaseModel):
    """Punto (χ, η) del trapecio b ≥ χ ≥ χ + η − 1 ≥ a, 0 ≤ η ≤ 1."""

    model_config = ConfigDict(frozen=True)

    measure: MeasureSpec
    chi: float = Field(..., allow_inf_nan=False)
    eta: float = Field(..., allow_inf_nan=False)

    @model_validator(mode="after")
    def _inside_trapezoid(self) -> "SaddleContext":
        a, b = self.measure.a, self.measure.b
        tol = TRAPEZOID_TOLERANCE * max(1.0, b - a)
        lower = self.chi + self.eta - 1.0
        if not (
            -tol <= self.eta <= 1.0 + tol
            and self.chi <= b + tol
            and a - tol <= lower <= self.chi + tol
        ):
            raise OutOfTrapezoid(
                "(χ, η) fuera del trapecio",
                context={"chi": self.chi, "eta": self.eta, "a": a, "b": b},
            )
        return self

    @property
    def lower(self) -> float:
        """χ + η − 1."""

        return self.chi + self.eta - 1.0


@dataclass(frozen=True)
class Rectangle:
    """Axis-parallel rectangle ``[x0, x1] × [y0, y1]`` in the upper half plane."""

    x0: float
    x1: float
    y0: float
    y1: float

    @property
    def corners(self) -> tuple[complex, complex, complex, complex]:
        return (
            complex(self.x0, self.y0),
            complex(self.x1, self.y0),
            complex(self.x1, self.y1),
            complex(self.x0, self.y1),
        )

    @property
    def width(self) -> float:
        return self.x1 - self.x0

    @property
    def height(self) -> float:
        return self.y1 - self.y0

    def split(self, fraction: float = 0.5) -> tuple["Rectangle", "Rectangle"]:
        if self.width >= self.height:
            cut = self.x0 + fraction * self.width
            return Rectangle(self.x0, cut, self.y0, self.y1), Rectangle(cut, self.x1, self.y0, self.y1)
        cut = self.y0 + fraction * self.height
        return Rectangle(self.x0, self.x1, self.y0, cut), Rectangle(self.x0, self.x1, cut, self.y1)

    @property
    def center(self) -> complex:
        return complex(0.5 * (self.x0 + self.x1), 0.5 * (self.y0 + self.y1))


class SaddleFunction:
    """f' as the Cauchy transform of φ − 1 on [χ+η−1, χ] (φ elsewhere).

    In ℍ this equals C(w) + log(w − χ) − log(w − χ − η + 1); on the real
    line it is finite off S1 ∪ S2 ∪ S3, where it gives the real-line split.
    """

    def __init__(self, ctx: SaddleContext) -> None:
        self.ctx = ctx
        geo = geometry(ctx.measure)
        breakpoints = sorted({p.lo for p in geo.pieces} | {p.hi for p in geo.pieces})
        snap = geo.tol
        self.chi = _snap(min(ctx.chi, ctx.measure.b), breakpoints, snap)
        self.lower = _snap(max(ctx.lower, ctx.measure.a), breakpoints, snap)
        self.lower = min(self.lower, self.chi)
        self.breakpoints: tuple[float, ...] = tuple(breakpoints)
        self.eta = ctx.eta
        self.decomposition: SupportDecomposition = support_sets(ctx.measure, ctx.chi, ctx.eta)
        self.singular: tuple[Span, ...] = self.decomposition.singular
        self.transform = SegmentSum(self._segments(geo))

    def _segments(self, geo) -> list[Segment]:
        lo_cut, hi_cut = self.lower, self.chi
        segments: list[Segment] = []
        for piece in geo.pieces:
            for left, right, inside in (
                (piece.lo, min(piece.hi, lo_cut), False),
                (max(piece.lo, lo_cut), min(piece.hi, hi_cut), True),
                (max(piece.lo, hi_cut), piece.hi, False),
            ):
                if right <= left:
                    continue
                if not inside:
                    segments.append(Segment(left, right, piece.coeffs))
                elif piece.kind is not PieceKind.ONE:
                    shifted = (piece.coeffs[0] - 1.0,) + tuple(piece.coeffs[1:])
                    segments.append(Segment(left, right, shifted))
        if hi_cut > lo_cut:
            covered = [Span(p.lo, p.hi) for p in geo.pieces]
            cursor = lo_cut
            for span in sorted(covered, key=lambda s: s.lo):
                if span.hi <= cursor:
                    continue
                if span.lo >= hi_cut:
                    break
                if span.lo > cursor:
                    segments.append(Segment(cursor, span.lo, (-1.0,)))
                cursor = max(cursor, span.hi)
            if cursor < hi_cut:
                segments.append(Segment(cursor, hi_cut, (-1.0,)))
        return segments

    def distance_to_singularity(self, t: float) -> float:
        """Distance from real t to the nearest point where f' is not analytic."""

        points = [self.chi, self.lower, *self.breakpoints]
        for span in self.singular:
            points.extend(p for p in (span.lo, span.hi) if math.isfinite(p))
        distance = min(abs(t - p) for p in points)
        return distance if distance > 0.0 else self.ctx.measure.width

    def on_singular_set(self, t: float) -> bool:
        return any(span.lo <= t <= span.hi for span in self.singular)

    def _check(self, w: complex) -> None:
        if w.imag == 0.0 and self.on_singular_set(w.real):
            raise PointOnSingularSet(
                "w sobre S1 ∪ S2 ∪ S3",
                context={"w": [w.real, w.imag], "chi": self.ctx.chi, "eta": self.ctx.eta},
            )

    def value(self, w: complex) -> complex:
        w = complex(w)
        self._check(w)
        return self.transform(w)

    def derivative(self, w: complex, order: int) -> complex:
        """``order``-th derivative of f (``order = 1`` is f' itself)."""

        w = complex(w)
        self._check(w)
        return self.transform.derivative(w, order - 1)

    def values(self, w):
        """Vectorised f' without the singular-set check."""

        return self.transform.derivative(w, 0)

    def real_intervals(self) -> dict[str, Span]:
        """Named open components of ℝ ∖ (S1 ∪ S2 ∪ S3): J1..J4 and K1, K2, ..."""

        named = dict(self.decomposition.j_intervals)
        for index, span in enumerate(self.decomposition.k, start=1):
            named[f"K{index}"] = span
        return named


def _snap(x: float, breakpoints: list[float], tol: float) -> float:
    for point in breakpoints:
        if abs(point - x) <= tol:
            return point
    return x


@lru_cache(maxsize=256)
def saddle_function(ctx: SaddleContext) -> SaddleFunction:
    return SaddleFunction(ctx)


def make_context(spec: MeasureSpec, chi: float, eta: float) -> SaddleContext:
    return SaddleContext(measure=spec, chi=chi, eta=eta)


def f_prime(ctx: SaddleContext, w: complex) -> complex:
    """f'(w) = C(w) + log(w − χ) − log(w − χ − η + 1)."""

    return saddle_function(ctx).value(w)


__all__ = [
    "Rectangle",
    "SaddleContext",
    "SaddleFunction",
    "TRAPEZOID_TOLERANCE",
    "f_prime",
    "make_context",
    "saddle_function",
]

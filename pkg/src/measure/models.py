"""Modelos de la medida límite: intervalos, piezas de densidad y la medida."""
from __future__ import annotations

import math
from dataclasses import dataclass

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

MAX_DEGREE = 8


class Interval(BaseModel):
    """Intervalo cerrado ``[lo, hi]`` de la recta real."""

    model_config = ConfigDict(extra="ignore", frozen=True)

    lo: float = Field(..., allow_inf_nan=False, description="Extremo izquierdo")
    hi: float = Field(..., allow_inf_nan=False, description="Extremo derecho")

    @model_validator(mode="before")
    @classmethod
    def _from_pair(cls, value: object) -> object:
        if isinstance(value, (list, tuple)):
            if len(value) != 2:
                raise ValueError("un intervalo necesita exactamente dos extremos")
            return {"lo": value[0], "hi": value[1]}
        return value

    @model_validator(mode="after")
    def _ordered(self) -> "Interval":
        if not self.lo < self.hi:
            raise ValueError(f"intervalo vacío o invertido: [{self.lo}, {self.hi}]")
        return self

    @property
    def length(self) -> float:
        return self.hi - self.lo

    def contains(self, x: float, *, closed: bool = True) -> bool:
        if closed:
            return self.lo <= x <= self.hi
        return self.lo < x < self.hi


class DensityPiece(BaseModel):
    """Polinomio de densidad (coeficientes en grado ascendente) sobre un intervalo."""

    model_config = ConfigDict(extra="ignore", frozen=True, populate_by_name=True)

    interval: Interval = Field(..., description="Soporte cerrado de la pieza")
    coeffs: tuple[float, ...] = Field(
        ...,
        alias="poly",
        min_length=1,
        description="Coeficientes c0, c1, ... del polinomio de densidad",
    )

    @field_validator("coeffs", mode="before")
    @classmethod
    def _strip_trailing_zeros(cls, value: object) -> object:
        if isinstance(value, (int, float)):
            value = [value]
        if isinstance(value, (list, tuple)):
            coeffs = [float(c) for c in value]
            if not all(math.isfinite(c) for c in coeffs):
                raise ValueError("coeficientes no finitos")
            while len(coeffs) > 1 and coeffs[-1] == 0.0:
                coeffs.pop()
            if len(coeffs) - 1 > MAX_DEGREE:
                raise ValueError(f"grado máximo admitido: {MAX_DEGREE}")
            return tuple(coeffs)
        return value

    @property
    def lo(self) -> float:
        return self.interval.lo

    @property
    def hi(self) -> float:
        return self.interval.hi

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1


class MeasureSpec(BaseModel):
    """Densidad por trozos de la medida límite μ.

    The model only checks shape; semantic invariants (mass, range, overlap,
    width) are enforced by :func:`src.measure.validate`.
    """

    model_config = ConfigDict(extra="ignore", frozen=True)

    pieces: tuple[DensityPiece, ...] = Field(..., min_length=1)

    @field_validator("pieces", mode="after")
    @classmethod
    def _sorted(cls, pieces: tuple[DensityPiece, ...]) -> tuple[DensityPiece, ...]:
        return tuple(sorted(pieces, key=lambda p: (p.lo, p.hi)))

    @property
    def a(self) -> float:
        return min(p.lo for p in self.pieces)

    @property
    def b(self) -> float:
        return max(p.hi for p in self.pieces)

    @property
    def width(self) -> float:
        return self.b - self.a


@dataclass(frozen=True)
class Span:
    """Open or closed real interval produced by computations; bounds may be infinite."""

    lo: float
    hi: float

    @property
    def bounded(self) -> bool:
        return math.isfinite(self.lo) and math.isfinite(self.hi)

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    @property
    def midpoint(self) -> float:
        if self.bounded:
            return 0.5 * (self.lo + self.hi)
        if math.isfinite(self.lo):
            return self.lo + 1.0
        if math.isfinite(self.hi):
            return self.hi - 1.0
        return 0.0

    def contains(self, x: float, *, closed: bool = False) -> bool:
        if self.is_point:
            return x == self.lo
        if closed:
            return self.lo <= x <= self.hi
        return self.lo < x < self.hi

    def as_list(self) -> list[float]:
        return [self.lo, self.hi]

    def from_unit(self, s: float) -> float:
        """Map s ∈ (−1, 1) onto the open interval; unbounded ends go through tan."""

        if self.bounded:
            return 0.5 * (self.lo + self.hi) + 0.5 * (self.hi - self.lo) * s
        if math.isfinite(self.lo):
            return self.lo + math.tan(0.25 * math.pi * (s + 1.0))
        if math.isfinite(self.hi):
            return self.hi - math.tan(0.25 * math.pi * (1.0 - s))
        return math.tan(0.5 * math.pi * s)

    def to_unit(self, t: float) -> float:
        """Inverse of :meth:`from_unit`."""

        if self.bounded:
            return (2.0 * t - self.lo - self.hi) / (self.hi - self.lo)
        if math.isfinite(self.lo):
            return 4.0 * math.atan(t - self.lo) / math.pi - 1.0
        if math.isfinite(self.hi):
            return 1.0 - 4.0 * math.atan(self.hi - t) / math.pi
        return 2.0 * math.atan(t) / math.pi


__all__ = ["DensityPiece", "Interval", "MAX_DEGREE", "MeasureSpec", "Span"]

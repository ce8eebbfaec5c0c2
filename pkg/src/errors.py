"""Error hierarchy shared by every module of the package."""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any


def _serialise_for_log(data: Any, limit: int = 2000) -> str:
    """Return a JSON representation of ``data`` truncated for logging."""

    if data is None:
        return "null"
    try:
        rendered = json.dumps(data, ensure_ascii=False, default=str)
    except (TypeError, ValueError):
        rendered = repr(data)
    if len(rendered) > limit:
        return f"{rendered[:limit]}… (truncated)"
    return rendered


class FrontierError(RuntimeError):
    """Base error for every domain failure raised by the package."""

    def __init__(self, detail: str, *, context: dict[str, Any] | None = None) -> None:
        super().__init__(detail)
        self.detail = detail
        self.context = context or {}

    def __str__(self) -> str:
        if not self.context:
            return self.detail
        return f"{self.detail} (contexto={_serialise_for_log(self.context, limit=400)})"

    def as_dict(self) -> dict[str, Any]:
        return {"error": type(self).__name__, "detail": self.detail, "context": self.context}


class ConfigurationError(FrontierError):
    """Raised when settings or environment variables are invalid."""


# -- measure -----------------------------------------------------------------


class MeasureError(FrontierError):
    """Failures related to the limiting measure."""


@dataclass(frozen=True)
class Violation:
    """A single broken invariant reported by measure validation."""

    code: str
    message: str


class MeasureValidationError(MeasureError, ValueError):
    """Raised when a measure candidate breaks one or more invariants."""

    def __init__(self, violations: list[Violation]) -> None:
        codes = ", ".join(v.code for v in violations)
        super().__init__(
            f"Medida inválida: {codes}",
            context={"violations": [v.message for v in violations]},
        )
        self.violations = violations

    @property
    def codes(self) -> list[str]:
        return [v.code for v in self.violations]


class MassNotOne(MeasureValidationError):
    pass


class DensityOutOfRange(MeasureValidationError):
    pass


class SupportTooNarrow(MeasureValidationError):
    pass


class OverlappingPieces(MeasureValidationError):
    pass


class PointOnSupport(MeasureError):
    """The evaluation point lies on the support of the measure."""


class NotInR(MeasureError):
    """The real parameter is outside the curve parameter set R."""


# -- saddle ------------------------------------------------------------------


class SaddleError(FrontierError):
    """Failures while locating or classifying roots of f'."""


class OutOfTrapezoid(SaddleError):
    pass


class PointOnSingularSet(SaddleError):
    pass


class ConvergenceFailure(SaddleError):
    pass


class DegenerateDenominator(SaddleError):
    pass


class BoundaryTooClose(SaddleError):
    pass


class AmbiguousMultiplicity(SaddleError):
    pass


# -- frontier ----------------------------------------------------------------


class FrontierGeometryError(FrontierError):
    """Failures while assembling the edge curve."""


# -- kernel ------------------------------------------------------------------


class KernelError(FrontierError):
    """Failures in the exact or contour kernel."""


class RowOutOfRange(KernelError, ValueError):
    pass


class ContourViolation(KernelError):
    pass


class DuplicateSite(KernelError, ValueError):
    pass


class InadmissibleSite(KernelError, ValueError):
    """The site lies below x_n + n − r, outside the free particle region."""


# -- combinatorics -----------------------------------------------------------


class CombinatoricsError(FrontierError):
    """Failures in pattern enumeration, sampling or tiling."""


class TooLarge(CombinatoricsError):
    pass


class LengthMismatch(CombinatoricsError, ValueError):
    pass


# -- presets -----------------------------------------------------------------


class PresetError(FrontierError):
    pass


class UnknownPreset(PresetError, KeyError):
    def __str__(self) -> str:  # KeyError would quote the message
        return FrontierError.__str__(self)


__all__ = [
    "AmbiguousMultiplicity",
    "BoundaryTooClose",
    "CombinatoricsError",
    "ConfigurationError",
    "ContourViolation",
    "ConvergenceFailure",
    "DegenerateDenominator",
    "DensityOutOfRange",
    "DuplicateSite",
    "FrontierError",
    "FrontierGeometryError",
    "InadmissibleSite",
    "KernelError",
    "LengthMismatch",
    "MassNotOne",
    "MeasureError",
    "MeasureValidationError",
    "NotInR",
    "OutOfTrapezoid",
    "OverlappingPieces",
    "PointOnSingularSet",
    "PointOnSupport",
    "PresetError",
    "RowOutOfRange",
    "SaddleError",
    "SupportTooNarrow",
    "TooLarge",
    "UnknownPreset",
    "Violation",
]

"""The six worked example measures with their closed forms and landmarks."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import UnknownPreset
from .measure import MeasureSpec, dumps_measure, validate

ClosedC = Callable[[complex], complex]
ClosedEdge = Callable[[float], tuple[float, float]]


@dataclass(frozen=True)
class SpecialPoint:
    """Landmark on the boundary.

    ``kind`` is ``tangency`` (bottom contact), ``edge`` (image of the
    parameter ``t``), ``probe`` (limit of a probe sequence at ``t``) or
    ``edge_limit`` (end of an edge branch, known only approximately).
    """

    label: str
    point: tuple[float, float]
    kind: str
    t: Optional[float] = None
    expected_case: Optional[int] = None
    tolerance: float = 1e-9


@dataclass(frozen=True)
class Preset:
    name: str
    description: str
    spec: MeasureSpec
    closed_c: ClosedC
    closed_edge: Optional[ClosedEdge]
    special_points: tuple[SpecialPoint, ...] = field(default_factory=tuple)
    complete: bool = True

    def point(self, label: str) -> SpecialPoint:
        for special in self.special_points:
            if special.label == label:
                return special
        raise KeyError(label)


def _log(w: complex) -> complex:
    return complex(np.log(complex(w)))


def _measure(pieces: list[tuple[float, float, list[float]]]) -> MeasureSpec:
    return validate(
        {"pieces": [{"interval": [lo, hi], "poly": poly} for lo, hi, poly in pieces]}
    )


# -- (a) -----------------------------------------------------------------------


def _edge_a(t: float) -> tuple[float, float]:
    p, m = math.sqrt(abs(t + 1)), math.sqrt(abs(t - 1))
    chi = t - p * abs(t - 1) * (p - m)
    eta = 1 - p * m * (p - m) ** 2
    return chi, eta


def _preset_a() -> Preset:
    return Preset(
        name="a",
        description="φ = 1/2 en [-1, 1]",
        spec=_measure([(-1.0, 1.0, [0.5])]),
        closed_c=lambda w: 0.5 * (_log(w + 1) - _log(w - 1)),
        closed_edge=_edge_a,
        special_points=(SpecialPoint("p_0", (0.5, 0.0), "tangency"),),
    )


# -- (b) -----------------------------------------------------------------------


def _edge_b(t: float) -> tuple[float, float]:
    d0, d1, d2, d3 = abs(t), abs(t - 1), abs(t - 2), abs(t - 3)
    gap = math.sqrt(d0 * d2) - math.sqrt(d1 * d3)
    denom = d2 * d3 + d0 * d1
    chi = t - 2 * math.sqrt(d0) * d1 * math.sqrt(d2) * d3 * gap / denom
    eta = 1 - 2 * math.sqrt(d0 * d1 * d2 * d3) * gap**2 / denom
    return chi, eta


def _preset_b() -> Preset:
    return Preset(
        name="b",
        description="φ = 1/2 en [0, 1] ∪ [2, 3]",
        spec=_measure([(0.0, 1.0, [0.5]), (2.0, 3.0, [0.5])]),
        closed_c=lambda w: 0.5 * (_log(w) - _log(w - 1) + _log(w - 2) - _log(w - 3)),
        closed_edge=_edge_b,
        special_points=(
            SpecialPoint("p_0", (2.0, 0.0), "tangency"),
            SpecialPoint("p_1", (1.5, 1.0), "edge", t=1.5, expected_case=5),
        ),
    )


# -- (c) -----------------------------------------------------------------------


def _edge_c(t: float) -> tuple[float, float]:
    top = t * (t - 1) - (t - 0.5) * (t - 1.5)
    bottom = (t - 1) * (t - 1.5) + t * (t - 0.5)
    chi = t - 2 * (t - 0.5) * (t - 1.5) * top / bottom
    eta = 1 - 2 * top**2 / bottom
    return chi, eta


def _preset_c() -> Preset:
    return Preset(
        name="c",
        description="φ = 1 en [0, 1/2] ∪ [1, 3/2] (hexágono regular)",
        spec=_measure([(0.0, 0.5, [1.0]), (1.0, 1.5, [1.0])]),
        closed_c=lambda w: _log(w) - _log(w - 0.5) + _log(w - 1) - _log(w - 1.5),
        closed_edge=_edge_c,
        special_points=(
            SpecialPoint("p_0", (1.25, 0.0), "tangency"),
            SpecialPoint("p_1", (0.75, 0.25), "edge", t=0.0, expected_case=8),
            SpecialPoint("p_2", (0.5, 0.75), "edge", t=0.5, expected_case=6),
            SpecialPoint("p_3", (0.75, 1.0), "edge", t=0.75, expected_case=5),
            SpecialPoint("p_4", (1.25, 0.75), "edge", t=1.0, expected_case=8),
            SpecialPoint("p_5", (1.5, 0.25), "edge", t=1.5, expected_case=6),
        ),
    )


# -- (d) -----------------------------------------------------------------------

C_D = (23.0 + math.sqrt(217.0)) / 12.0
_K_D = 0.5 + C_D / 3.0
_ROOT_D = math.sqrt(_K_D**2 - 4.0 / 9.0 * (C_D + 1.0 / 3.0))
C1_D = _K_D + _ROOT_D
C2_D = _K_D - _ROOT_D


def _edge_d(t: float) -> tuple[float, float]:
    c = C_D
    a_t = t * (t - 1) * (t - c) - (t - 1 / 3) * (t - 4 / 3) * (t - c - 1 / 3)
    b_t = (
        (t - 1) * (t - 4 / 3) * (t - c) * (t - c - 1 / 3)
        + t * (t - 1 / 3) * (t - c) * (t - c - 1 / 3)
        + t * (t - 1 / 3) * (t - 1) * (t - 4 / 3)
    )
    chi = t - 3 * (t - 1 / 3) * (t - 4 / 3) * (t - c - 1 / 3) * a_t / b_t
    eta = 1 - 3 * a_t**2 / b_t
    return chi, eta


def _closed_c_d(w: complex) -> complex:
    c = C_D
    return (
        _log(w) - _log(w - 1 / 3) + _log(w - 1) - _log(w - 4 / 3)
        + _log(w - c) - _log(w - c - 1 / 3)
    )


def _preset_d() -> Preset:
    c = C_D
    q7 = (c - 1 / 3) * (c - 4 / 3) / (3 * c * (c - 1))
    q8 = (c + 1 / 3) * (c - 2 / 3) / (3 * c * (c - 1))
    return Preset(
        name="d",
        description="φ = 1 en [0, 1/3] ∪ [1, 4/3] ∪ [c, c + 1/3], c = (23 + √217)/12",
        spec=_measure([(0.0, 1 / 3, [1.0]), (1.0, 4 / 3, [1.0]), (c, c + 1 / 3, [1.0])]),
        closed_c=_closed_c_d,
        closed_edge=_edge_d,
        special_points=(
            SpecialPoint("p_0", (1 + c / 3, 0.0), "tangency"),
            SpecialPoint(
                "p_1", (4 / 9 + 4 / (27 * c), 5 / 9 - 4 / (27 * c)), "edge", t=0.0, expected_case=8
            ),
            SpecialPoint("p_2", (1 / 3, 7 / 9 + 2 / (27 * c)), "edge", t=1 / 3, expected_case=6),
            SpecialPoint("p_3", (C2_D, 1.0), "edge", t=C2_D, expected_case=5),
            SpecialPoint(
                "p_4",
                (11 / 9 + 2 / (27 * (c - 1)), 7 / 9 - 2 / (27 * (c - 1))),
                "edge",
                t=1.0,
                expected_case=8,
            ),
            SpecialPoint(
                "p_5", (4 / 3, 5 / 9 + 4 / (27 * (c - 1))), "edge", t=4 / 3, expected_case=7
            ),
            SpecialPoint("p_6", (C1_D, 1.0), "edge", t=C1_D, expected_case=5),
            SpecialPoint("p_7", (c + q7, 1 - q7), "edge", t=c, expected_case=8),
            SpecialPoint("p_8", (c + 1 / 3, 1 - q8), "edge", t=c + 1 / 3, expected_case=6),
        ),
    )


# -- (e) -----------------------------------------------------------------------


def _edge_e(t: float) -> tuple[float, float]:
    log_e = (t + 1) * math.log(abs(t + 1)) - 2 * t * math.log(abs(t)) + (t - 1) * math.log(abs(t - 1))
    derivative = math.log(abs(t + 1)) - 2 * math.log(abs(t)) + math.log(abs(t - 1))
    e = math.exp(log_e)
    chi = t + (e - 1) / (e * derivative)
    eta = 1 + (e - 1) ** 2 / (e * derivative)
    return chi, eta


def _closed_c_e(w: complex) -> complex:
    return (w + 1) * _log(w + 1) - 2 * w * _log(w) + (w - 1) * _log(w - 1)


def _preset_e() -> Preset:
    return Preset(
        name="e",
        description="φ = 1 - |x| en [-1, 1]",
        spec=_measure([(-1.0, 0.0, [1.0, 1.0]), (0.0, 1.0, [1.0, -1.0])]),
        closed_c=_closed_c_e,
        closed_edge=_edge_e,
        special_points=(
            SpecialPoint("p_0", (0.5, 0.0), "tangency"),
            SpecialPoint("probe_-1", (-1.0, 1.0), "probe", t=-1.0, tolerance=2e-2),
            SpecialPoint("probe_0", (0.0, 1.0), "probe", t=0.0, tolerance=2e-2),
            SpecialPoint("probe_1", (1.0, 1.0), "probe", t=1.0, tolerance=2e-2),
        ),
    )


# -- (f) -----------------------------------------------------------------------


def _closed_c_f(w: complex) -> complex:
    return 15 / 16 * (10 / 3 * w - 2 * w**3 + (w**2 - 1) ** 2 * (_log(w + 1) - _log(w - 1)))


def _preset_f() -> Preset:
    return Preset(
        name="f",
        description="φ = 15/16 (x - 1)^2 (x + 1)^2 en [-1, 1]",
        spec=_measure([(-1.0, 1.0, [15 / 16, 0.0, -15 / 8, 0.0, 15 / 16])]),
        closed_c=_closed_c_f,
        closed_edge=None,
        special_points=(
            SpecialPoint("p_0", (0.5, 0.0), "tangency"),
            SpecialPoint("p_1", (-0.004, 0.290), "edge_limit", t=-1.0, tolerance=5e-3),
            SpecialPoint("p_2", (0.714, 0.290), "edge_limit", t=1.0, tolerance=5e-3),
        ),
        complete=False,
    )


PRESETS: dict[str, Callable[[], Preset]] = {
    "a": _preset_a,
    "b": _preset_b,
    "c": _preset_c,
    "d": _preset_d,
    "e": _preset_e,
    "f": _preset_f,
}

_CACHE: dict[str, Preset] = {}


def preset(name: str) -> Preset:
    key = str(name).strip().lower()
    if key not in PRESETS:
        raise UnknownPreset(
            f"Preset desconocido: {name!r}", context={"disponibles": sorted(PRESETS)}
        )
    if key not in _CACHE:
        _CACHE[key] = PRESETS[key]()
    return _CACHE[key]


def export(name: str) -> str:
    """Measure JSON of a preset, as :func:`write_measure` would write it."""

    return dumps_measure(preset(name).spec)


__all__ = ["C1_D", "C2_D", "C_D", "PRESETS", "Preset", "SpecialPoint", "export", "preset"]

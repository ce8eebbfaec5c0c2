"""Local shape of the edge curve: tangent frame, expansion coefficients,
curvature and cusps."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.optimize import brentq

from ..errors import FrontierGeometryError
from ..measure import MeasureSpec, RTag, geometry
from ..saddle import MULTIPLICITY_TOLERANCE
from .edge import (
    CASE_TABLE,
    CUSP_CASES,
    EdgeState,
    edge_state,
    state_derivatives,
    state_multiplicity,
    state_point,
)

logger = logging.getLogger(__name__)

_COMPLEX_STEP = 1e-20
_CUSP_NODES = 129


@dataclass(frozen=True)
class EdgeSample:
    """One point of the edge with its local frame.

    Near the point, E(s) − E(t) = a(s)·x + b(s)·y with
    a(s) = a1 δ + a2 δ² + … and b(s) = b1 δ² + b2 δ³ + …, δ = s − t.
    """

    t: float
    point: tuple[float, float]
    component_tag: RTag
    case: int
    multiplicity: int
    x_vec: tuple[float, float]
    y_vec: tuple[float, float]
    a1: float
    a2: float
    b1: float
    b2: float

    @property
    def is_cusp(self) -> bool:
        return self.case in CUSP_CASES

    def as_row(self) -> dict[str, object]:
        return {
            "t": self.t,
            "chi": self.point[0],
            "eta": self.point[1],
            "component": self.component_tag.value,
            "case": self.case,
            "multiplicity": self.multiplicity,
            "x1": self.x_vec[0],
            "x2": self.x_vec[1],
            "y1": self.y_vec[0],
            "y2": self.y_vec[1],
            "a1": self.a1,
            "a2": self.a2,
            "b1": self.b1,
            "b2": self.b2,
        }


def _complex_step(fn: Callable[[complex], complex], t: float) -> float:
    return fn(complex(t, _COMPLEX_STEP)).imag / _COMPLEX_STEP


def _generic_coefficients(state: EdgeState) -> tuple[float, float, float, float]:
    e, c1, c2, c3 = state.e, state.d1, state.d2, state.d3
    norm = 1.0 + (e - 1.0) ** 2
    chi1 = 1.0 + 1.0 / e - (1.0 - 1.0 / e) * c2 / c1**2
    chi2 = (
        -c1 / e
        - c2 / (e * c1)
        - (1.0 - 1.0 / e) * (c3 * c1 - 2.0 * c2**2) / c1**3
    )
    a1 = chi1
    b1 = -0.5 * e * c1 * chi1 / norm
    a2 = 0.5 * (chi2 + e * (e - 1.0) * c1 * chi1 / norm)
    b2 = -e * (2.0 * c1 * chi2 + (c1**2 + c2) * chi1) / (6.0 * norm)
    return a1, a2, b1, b2


def _run_end_coefficients(spec: MeasureSpec, state: EdgeState) -> tuple[float, float, float, float]:
    removed = geometry(spec).removed(state.run)
    t, anchor = state.t, state.anchor
    ci = float(np.log(state.e))
    ci1, ci2 = state.d1, state.d2

    def c_i(s: complex) -> complex:
        return removed(s)

    def c_i1(s: complex) -> complex:
        return removed.derivative(s, 1)

    if state.tag is RTag.ONE:

        def denominator(s: complex) -> complex:
            e = np.exp(c_i(s))
            return -(t - anchor) * e + (s - t) * (s - anchor) * e * c_i1(s)

        def h1(s: complex) -> complex:
            e = np.exp(c_i(s))
            top = (
                (t - anchor) * (s - anchor) * e**2 * c_i1(s)
                + (s + t - 2 * anchor) * e**2
                - 2 * (s - anchor) * e
                + (s - t)
            )
            return top / denominator(s)

        def h2(s: complex) -> complex:
            e = np.exp(c_i(s))
            return ((s - anchor) * e * c_i1(s) + e - 1) / denominator(s)

        g = (t - anchor) * math.exp(ci)
        a1 = -g * ci1 + h1(t).real
        a2 = 0.5 * (-g * (ci1**2 + ci2) + 2 * _complex_step(h1, t))
        b1 = h2(t).real
        b2 = _complex_step(h2, t)
        return a1, a2, b1, b2

    def denominator(s: complex) -> complex:
        return t - anchor + (s - t) * (s - anchor) * c_i1(s)

    def h3(s: complex) -> complex:
        e = np.exp(c_i(s))
        top = (
            2 * (t - anchor) * (s - anchor) * c_i1(s) / e
            - 2 * (s + t - 2 * anchor) / e
            + 3 * (s - anchor)
            - (s - t) * e
        )
        return 1 + top / denominator(s)

    def h4(s: complex) -> complex:
        e = np.exp(c_i(s))
        return ((s - anchor) * c_i1(s) + e - 1) / denominator(s)

    g = (t - anchor) * math.exp(-ci)
    a1 = 0.5 * (2 * g * ci1 + h3(t).real)
    a2 = 0.5 * (-g * ci1**2 + g * ci2 + _complex_step(h3, t))
    b1 = 0.5 * h4(t).real
    b2 = 0.5 * _complex_step(h4, t)
    return a1, a2, b1, b2


def _frame(state: EdgeState) -> tuple[tuple[float, float], tuple[float, float]]:
    if state.tag is RTag.ONE:
        return (0.0, 1.0), (1.0, 0.0)
    if state.tag is RTag.TWO:
        return (1.0, -1.0), (1.0, 1.0)
    return (1.0, state.e - 1.0), (state.e - 1.0, -1.0)


def local_geometry(
    spec: MeasureSpec, t: float, *, tolerance: float = MULTIPLICITY_TOLERANCE
) -> EdgeSample:
    state = edge_state(spec, t)
    multiplicity = state_multiplicity(state, tolerance)
    case = CASE_TABLE[(state.tag, multiplicity)]
    if state.tag in (RTag.ONE, RTag.TWO):
        a1, a2, b1, b2 = _run_end_coefficients(spec, state)
    else:
        a1, a2, b1, b2 = _generic_coefficients(state)
    x_vec, y_vec = _frame(state)
    return EdgeSample(
        t=state.t,
        point=state_point(state),
        component_tag=state.tag,
        case=case,
        multiplicity=multiplicity,
        x_vec=x_vec,
        y_vec=y_vec,
        a1=a1,
        a2=a2,
        b1=b1,
        b2=b2,
    )


def curvature(sample: EdgeSample) -> float:
    """Signed curvature 2·a1·b1·(x × y) / |a1·x|³ at a parabolic point."""

    if sample.is_cusp:
        raise FrontierGeometryError(
            "la curvatura no está definida en una cúspide",
            context={"t": sample.t, "case": sample.case},
        )
    (x1, x2), (y1, y2) = sample.x_vec, sample.y_vec
    cross = x1 * y2 - x2 * y1
    speed = abs(sample.a1) * math.hypot(x1, x2)
    return 2.0 * sample.a1 * sample.b1 * cross / speed**3


def find_cusps(spec: MeasureSpec, *, nodes: int = _CUSP_NODES) -> list[float]:
    """Cusps of the edge inside Rμ and Rλ−μ (cases 2 and 4): zeros of f_t'''."""

    geo = geometry(spec)
    k = np.arange(1, nodes + 1)
    theta = np.sort(np.cos((2 * k - 1) * math.pi / (2 * nodes)))

    def third(t: float) -> float:
        return state_derivatives(edge_state(spec, t))[1]

    cusps: list[float] = []
    for component in geo.r_components:
        if component.is_point or component.tag not in (RTag.MU, RTag.LAMBDA_MU):
            continue
        span = component.span
        ts = [span.from_unit(s) for s in theta]
        ts = [t for t in ts if math.isfinite(t) and span.contains(t)]
        values = [third(t) for t in ts]
        for left, right, v_left, v_right in zip(ts, ts[1:], values, values[1:]):
            if v_left == 0.0:
                cusps.append(left)
            elif v_left * v_right < 0.0:
                cusps.append(brentq(third, left, right, xtol=1e-15, rtol=4 * np.finfo(float).eps))
    if cusps:
        logger.info("Cúspides del borde en t = %s", cusps)
    return sorted(cusps)


__all__ = ["EdgeSample", "curvature", "find_cusps", "local_geometry"]

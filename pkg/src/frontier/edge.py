"""Edge curve t ↦ (χ_E(t), η_E(t)) over R and the case of each point."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

from ..errors import AmbiguousMultiplicity, DegenerateDenominator
from ..measure import MeasureSpec, RComponent, RTag, Span, extended_cauchy_derivative, geometry, mean
from ..saddle import MULTIPLICITY_TOLERANCE, multiplicity_from_derivatives

logger = logging.getLogger(__name__)

# (componente, multiplicidad) -> caso
CASE_TABLE: dict[tuple[RTag, int], int] = {
    (RTag.MU, 2): 1,
    (RTag.MU, 3): 2,
    (RTag.LAMBDA_MU, 2): 3,
    (RTag.LAMBDA_MU, 3): 4,
    (RTag.ZERO, 1): 5,
    (RTag.ONE, 1): 6,
    (RTag.ONE, 2): 7,
    (RTag.TWO, 1): 8,
    (RTag.TWO, 2): 9,
}

CUSP_CASES = frozenset({2, 4, 7, 9})
PARABOLIC_CASES = frozenset({1, 3, 5, 6, 8})


@dataclass(frozen=True)
class EdgeState:
    """Values of the real-line extension of C needed at one parameter t.

    On Rμ, R0 and Rλ−μ ``e`` is e^{C(t)} and ``d1..d3`` are C', C'', C'''.
    On R1 and R2 they refer to C_I, the transform with the run taken out,
    and ``anchor`` is the far end of that run (t2 for R1, t1 for R2).
    """

    t: float
    component: RComponent
    e: float
    d1: float
    d2: float
    d3: float
    anchor: float | None = None

    @property
    def tag(self) -> RTag:
        return self.component.tag

    @property
    def run(self) -> Span | None:
        return self.component.run


def edge_state(spec: MeasureSpec, t: float) -> EdgeState:
    geo = geometry(spec)
    component = geo.component_at(t)
    if component.tag is RTag.ZERO:
        t = component.lo
    if component.tag in (RTag.ONE, RTag.TWO):
        run = component.run
        t = component.lo
        removed = geo.removed(run)
        c_i = removed(t).real
        d1, d2, d3 = (removed.derivative(t, order).real for order in (1, 2, 3))
        anchor = run.lo if component.tag is RTag.ONE else run.hi
        return EdgeState(t, component, math.exp(c_i), d1, d2, d3, anchor)
    if component.tag is RTag.LAMBDA_MU:
        run = component.run
        c_i = geo.removed(run)(t).real
        e = math.exp(c_i) * (t - run.lo) / (t - run.hi)
    else:
        e = math.exp(geo.transform(t).real)
    d1, d2, d3 = (extended_cauchy_derivative(spec, t, order) for order in (1, 2, 3))
    return EdgeState(t, component, e, d1, d2, d3)


def state_point(state: EdgeState) -> tuple[float, float]:
    t, e = state.t, state.e
    if state.tag is RTag.ONE:
        return t, 1.0 - e * (t - state.anchor)
    if state.tag is RTag.TWO:
        return t - (t - state.anchor) / e, 1.0 + (t - state.anchor) / e
    if state.d1 == 0.0:
        raise DegenerateDenominator("C'(t) = 0 en el borde", context={"t": t})
    chi = t + (1.0 - 1.0 / e) / state.d1
    eta = 1.0 + (e - 1.0) * (chi - t)
    return chi, eta


def edge_point(spec: MeasureSpec, t: float) -> tuple[float, float]:
    """(χ_E(t), η_E(t)) for t ∈ R.

    χ_E = t + (e^C − 1)/(e^C C') and η_E = 1 + (e^C − 1)²/(e^C C') on
    Rμ ∪ Rλ−μ ∪ R0; (t, 1 − e^{C_I}(t − t2)) on R1 and
    (t − e^{−C_I}(t − t1), 1 + e^{−C_I}(t − t1)) on R2.
    """

    return state_point(edge_state(spec, t))


def tangency_point(spec: MeasureSpec) -> tuple[float, float]:
    """Contact of ∂L with the bottom side η = 0."""

    return 0.5 + mean(spec), 0.0


def f_derivatives(spec: MeasureSpec, t: float) -> tuple[float, float, float]:
    """(f_t'', f_t''', f_t'''') of the saddle function of the edge point at t, evaluated at t."""

    return state_derivatives(edge_state(spec, t))


def state_derivatives(state: EdgeState) -> tuple[float, float, float]:
    e, c1, c2, c3 = state.e, state.d1, state.d2, state.d3
    if state.tag is RTag.ONE:
        gap = state.t - state.anchor
        return (
            c1 + 1.0 / gap - 1.0 / (gap * e),
            c2 - 1.0 / gap**2 + 1.0 / (gap * e) ** 2,
            c3 + 2.0 / gap**3 - 2.0 / (gap * e) ** 3,
        )
    if state.tag is RTag.TWO:
        gap = state.t - state.anchor
        return (
            c1 + e / gap - 1.0 / gap,
            c2 - e**2 / gap**2 + 1.0 / gap**2,
            c3 + 2.0 * e**3 / gap**3 - 2.0 / gap**3,
        )
    if state.tag is RTag.ZERO:
        # f' = C + log(w − t) − log(w − t): los logaritmos se cancelan
        return c1, c2, c3
    third = c2 - c1**2 * (e + 1.0) / (e - 1.0)
    fourth = c3 - 2.0 * c1**3 * (e * e + e + 1.0) / (e - 1.0) ** 2
    return 0.0, third, fourth


def state_multiplicity(state: EdgeState, tolerance: float) -> int:
    # derivadas adimensionales: f^(k) · ℓ^(k−1), con ℓ la distancia de t a χ_E
    second, third, fourth = state_derivatives(state)
    if state.tag is RTag.ZERO:
        return 1
    if state.tag in (RTag.MU, RTag.LAMBDA_MU):
        scale = abs(state_point(state)[0] - state.t)
        return multiplicity_from_derivatives(
            0.0, third * scale**2, fourth * scale**3, tolerance=tolerance, t=state.t
        )
    scale = abs(state.t - state.anchor)
    multiplicity = multiplicity_from_derivatives(
        second * scale, third * scale**2, 0.0, tolerance=tolerance, t=state.t
    )
    if multiplicity > 2:
        raise AmbiguousMultiplicity(
            "raíz de multiplicidad > 2 en R1/R2",
            context={"t": state.t, "derivatives": [second, third]},
        )
    return multiplicity


def classify_case(
    spec: MeasureSpec, t: float, *, tolerance: float = MULTIPLICITY_TOLERANCE
) -> tuple[int, int]:
    """Case 1..9 of the edge point at t together with the multiplicity of t as a root of f_t'."""

    state = edge_state(spec, t)
    multiplicity = state_multiplicity(state, tolerance)
    return CASE_TABLE[(state.tag, multiplicity)], multiplicity


__all__ = [
    "CASE_TABLE",
    "CUSP_CASES",
    "EdgeState",
    "PARABOLIC_CASES",
    "classify_case",
    "edge_point",
    "edge_state",
    "f_derivatives",
    "state_derivatives",
    "state_multiplicity",
    "state_point",
    "tangency_point",
]

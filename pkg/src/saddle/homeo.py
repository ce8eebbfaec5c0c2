"""The map w ↦ (χ_L(w), η_L(w)) from ℍ onto the liquid region."""
from __future__ import annotations

import math

from ..errors import DegenerateDenominator
from ..measure import MeasureSpec, geometry

DENOMINATOR_FLOOR = 1e-14


def boundary_limit_form(spec: MeasureSpec, w: complex) -> tuple[float, float]:
    """(χ, η) written through R = Re C(w) and I = −Im C(w).

    With u + iv = w:
        χ = u − v (cos I − e^{−R}) / sin I
        η = 1 − v (e^{R} − 2 cos I + e^{−R}) / sin I
    """

    w = complex(w)
    if not w.imag > 0:
        raise ValueError("w debe estar en el semiplano superior")
    c = geometry(spec).transform(w)
    r, i = c.real, -c.imag
    sin_i = math.sin(i)
    if 2.0 * math.exp(r) * abs(sin_i) < DENOMINATOR_FLOOR:
        raise DegenerateDenominator(
            "e^{C(w)} − e^{C(w̄)} casi nulo", context={"w": [w.real, w.imag], "C": [c.real, c.imag]}
        )
    u, v = w.real, w.imag
    half_versine = 2.0 * math.sin(0.5 * i) ** 2
    # e^R − 2 cos I + e^{−R} y cos I − e^{−R} sin cancelación cuando R, I → 0
    spread = 4.0 * math.sinh(0.5 * r) ** 2 + 2.0 * half_versine
    shift = -math.expm1(-r) - half_versine
    chi = u - v * shift / sin_i
    eta = 1.0 - v * spread / sin_i
    return chi, eta


def chi_eta_from_w(spec: MeasureSpec, w: complex) -> tuple[float, float]:
    """Inverse of the liquid-region homeomorphism: the (χ, η) whose ℍ root is ``w``."""

    return boundary_limit_form(spec, w)


__all__ = ["DENOMINATOR_FLOOR", "boundary_limit_form", "chi_eta_from_w"]

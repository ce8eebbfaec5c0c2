"""Double contour integral form of the kernel, evaluated by the trapezoid rule."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from ..errors import ContourViolation
from .exact import phi
from .models import ContourParams, SiteCoord, TopRow

logger = logging.getLogger(__name__)

DEFAULT_NODES = 1024
# distancia mínima polo-contorno, en unidades de 1/n
_POLE_CLEARANCE = 1e-6


@dataclass(frozen=True)
class ContourPoles:
    """Poles of the integrand, in the scaled variable p/n."""

    required: tuple[float, ...]
    excluded: tuple[float, ...]
    outer: tuple[float, ...]


def contour_poles(top: TopRow, site_ur: SiteCoord, site_vs: SiteCoord) -> ContourPoles:
    n = top.n
    u, r = site_ur.u, site_ur.r
    v, s = site_vs.u, site_vs.r
    return ContourPoles(
        required=tuple(xi / n for xi in top.x if xi >= u),
        excluded=tuple(xi / n for xi in top.x if xi <= u + r - n),
        outer=tuple(j / n for j in range(v + s - n, v + 1)),
    )


def default_contours(
    top: TopRow, site_ur: SiteCoord, site_vs: SiteCoord, nodes: int = DEFAULT_NODES
) -> ContourParams:
    """Γ crosses ℝ at (u − ½)/n and (max(x_1, u) + ½)/n; γ is concentric,
    1.5 times the smallest radius enclosing Γ and the outer poles."""

    top.check_site(site_ur)
    top.check_site(site_vs)
    n = top.n
    left = (site_ur.u - 0.5) / n
    right = (max(top.x[0], site_ur.u) + 0.5) / n
    centre = 0.5 * (left + right)
    inner = 0.5 * (right - left)
    poles = contour_poles(top, site_ur, site_vs)
    enclosing = max([inner, *(abs(p - centre) for p in poles.outer)])
    return ContourParams(
        gamma_center=centre,
        gamma_radius=1.5 * enclosing,
        Gamma_center=centre,
        Gamma_radius=inner,
        nodes=nodes,
    )


def _check_enclosure(top: TopRow, params: ContourParams, poles: ContourPoles) -> None:
    clearance = _POLE_CLEARANCE / top.n
    problems: list[str] = []
    for p in poles.required:
        if abs(p - params.inner_center) >= params.inner_radius - clearance:
            problems.append(f"Γ no encierra el polo {p!r}")
    for p in poles.excluded:
        if abs(p - params.inner_center) <= params.inner_radius + clearance:
            problems.append(f"Γ encierra el polo excluido {p!r}")
    for p in poles.outer:
        if abs(p - params.outer_center) >= params.outer_radius - clearance:
            problems.append(f"γ no encierra el polo {p!r}")
    # polos removibles del integrando en z
    for xi in top.x:
        p = xi / top.n
        if abs(abs(p - params.inner_center) - params.inner_radius) <= clearance:
            problems.append(f"Γ pasa por el polo {p!r}")
    if problems:
        raise ContourViolation(
            "Los contornos no cumplen las condiciones de los polos",
            context={"problemas": problems},
        )


def _circle(centre: float, radius: float, nodes: int) -> tuple[np.ndarray, np.ndarray]:
    theta = np.linspace(0.0, 2.0 * np.pi, nodes, endpoint=False)
    unit = np.exp(1j * theta)
    points = centre + radius * unit
    # dw = i R e^{iθ} dθ con dθ = 2π / N
    weights = 1j * radius * unit * (2.0 * np.pi / nodes)
    return points, weights


def kernel_contour(
    top: TopRow,
    site_ur: SiteCoord,
    site_vs: SiteCoord,
    params: ContourParams | None = None,
) -> complex:
    """K_n((u, r), (v, s)) from the double contour integral.

    The result is complex; its imaginary part measures quadrature error.
    """

    top.check_site(site_ur)
    top.check_site(site_vs)
    if params is None:
        params = default_contours(top, site_ur, site_vs)
    poles = contour_poles(top, site_ur, site_vs)
    _check_enclosure(top, params, poles)

    n = top.n
    u, r = site_ur.u, site_ur.r
    v, s = site_vs.u, site_vs.r
    x = np.asarray(top.x, dtype=float) / n
    heads = np.arange(u + r - n + 1, u, dtype=float) / n
    tails = np.asarray(poles.outer)

    w, dw = _circle(params.outer_center, params.outer_radius, params.nodes)
    z, dz = _circle(params.inner_center, params.inner_radius, params.nodes)

    outer = np.prod(w[:, None] - x[None, :], axis=1) / np.prod(w[:, None] - tails[None, :], axis=1)
    inner = np.prod(z[:, None] - heads[None, :], axis=1) / np.prod(z[:, None] - x[None, :], axis=1)
    cauchy = 1.0 / (w[:, None] - z[None, :])
    integral = (outer * dw) @ cauchy @ (inner * dz) / (2j * np.pi) ** 2

    prefactor = math.factorial(n - s) / math.factorial(n - r - 1) * float(n) ** (s - r - 1)
    value = complex(prefactor * integral) - float(phi(r, s, u, v))
    logger.debug(
        "Núcleo por contorno en ((%d,%d),(%d,%d)) con %d nodos: %r",
        u, r, v, s, params.nodes, value,
    )
    return value


__all__ = ["ContourPoles", "DEFAULT_NODES", "contour_poles", "default_contours", "kernel_contour"]

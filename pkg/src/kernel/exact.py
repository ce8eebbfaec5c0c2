"""Exact correlation kernel of uniformly random patterns with a fixed top row."""
from __future__ import annotations

import logging
import math
from fractions import Fraction
from typing import Sequence

from ..errors import DuplicateSite, _serialise_for_log
from .linalg import bareiss_determinant
from .models import KernelValue, SiteCoord, TopRow

logger = logging.getLogger(__name__)


def phi(r: int, s: int, u: int, v: int) -> Fraction:
    """φ_{r,s}(u, v): number of weakly increasing chains u ≤ z_1 ≤ … ≤ z_{s−r−1} ≤ v."""

    if s <= r or v < u:
        return Fraction(0)
    m = s - r - 1
    return Fraction(math.prod(v - u + m + 1 - j for j in range(1, m + 1)), math.factorial(m))


def _forward_difference(values: Sequence[Fraction], order: int) -> Fraction:
    return sum(
        ((-1) ** (order - i) * math.comb(order, i) * values[i] for i in range(order + 1)),
        Fraction(0),
    )


def phi_finite_difference(n: int, r: int, s: int, u: int, v: int) -> Fraction:
    """φ_{r,s}(u, v) written as Δ_v^{n−s} of a polynomial of degree n − r − 1."""

    if not (1 <= r <= n - 1 and 1 <= s <= n):
        raise ValueError(f"se requiere 1 ≤ r ≤ n−1 y 1 ≤ s ≤ n (r={r}, s={s}, n={n})")
    if v - u + s - r - 1 < 0:
        return Fraction(0)
    degree = n - r - 1
    order = n - s

    def poly(w: int) -> Fraction:
        return Fraction(math.prod(w - u + s - r - j for j in range(1, degree + 1)), math.factorial(degree))

    return _forward_difference([poly(v + i) for i in range(order + 1)], order)


def phi_compose(r: int, m: int, s: int, u: int, v: int) -> Fraction:
    """Σ_z φ_{r,m}(u, z)·φ_{m,s}(z, v) over the window u ≤ z ≤ v."""

    return sum((phi(r, m, u, z) * phi(m, s, z, v) for z in range(u, v + 1)), Fraction(0))


def ktilde(top: TopRow, site_ur: SiteCoord, site_vs: SiteCoord) -> Fraction:
    top.check_site(site_ur)
    top.check_site(site_vs)
    n, x = top.n, top.x
    u, r = site_ur.u, site_ur.r
    v, s = site_vs.u, site_vs.r

    window = range(v + s - n, v + 1)
    weights = {}
    for l in window:
        # ∏_{j≠l} (l − j) sobre la ventana
        weights[l] = (-1) ** (v - l) * math.factorial(l - window.start) * math.factorial(v - l)

    total = Fraction(0)
    for k, xk in enumerate(x):
        if xk < u:
            continue
        head = math.prod(xk - j for j in range(u + r - n + 1, u))
        if head == 0:
            continue
        others = [xi for i, xi in enumerate(x) if i != k]
        spacing = math.prod(xk - xi for xi in others)
        for l in window:
            lagrange = math.prod(l - xi for xi in others)
            if lagrange:
                total += Fraction(head * lagrange, weights[l] * spacing)
    return Fraction(math.factorial(n - s), math.factorial(n - r - 1)) * total


def kernel(top: TopRow, site_ur: SiteCoord, site_vs: SiteCoord) -> KernelValue:
    """K_n((u, r), (v, s)) = K̃_n − φ_{r,s}(u, v), exact."""

    value = ktilde(top, site_ur, site_vs) - phi(site_ur.r, site_vs.r, site_ur.u, site_vs.u)
    return KernelValue(value)


def ensure_distinct(sites: Sequence[SiteCoord]) -> None:
    seen: set[tuple[int, int]] = set()
    for site in sites:
        key = site.as_tuple()
        if key in seen:
            raise DuplicateSite("sitio repetido", context={"u": site.u, "r": site.r})
        seen.add(key)


def kernel_matrix(top: TopRow, sites: Sequence[SiteCoord]) -> list[list[Fraction]]:
    ensure_distinct(sites)
    return [[kernel(top, a, b).value for b in sites] for a in sites]


def correlation(top: TopRow, sites: Sequence[SiteCoord]) -> Fraction:
    """ρ_m(sites) = det[K(site_i, site_j)], exact; the empty product is 1."""

    matrix = kernel_matrix(top, sites)
    value = bareiss_determinant(matrix)
    if logger.isEnabledFor(logging.DEBUG):
        logger.debug(
            "Correlación %s: %s",
            _serialise_for_log([s.as_tuple() for s in sites], limit=200),
            value,
        )
    return value


__all__ = [
    "correlation",
    "ensure_distinct",
    "kernel",
    "kernel_matrix",
    "ktilde",
    "phi",
    "phi_compose",
    "phi_finite_difference",
]

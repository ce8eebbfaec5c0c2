"""Roots of f': argument-principle search in ℍ, real roots on J and K."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
from scipy.optimize import brentq

from ..errors import AmbiguousMultiplicity, BoundaryTooClose, ConvergenceFailure
from ..measure import Span
from .context import Rectangle, SaddleContext, SaddleFunction, saddle_function

logger = logging.getLogger(__name__)

UPPER_HALF = "UpperHalf"
BOTTOM_HEIGHT = 1e-6
MULTIPLICITY_TOLERANCE = 1e-7

_BASE_SAMPLES = 64
_MAX_SAMPLES = 2**14
_PHASE_STEP = 0.5
_CHEBYSHEV_NODES = 65
_MAX_EXPANSIONS = 2
NEWTON_RESIDUAL = 1e-12


@dataclass(frozen=True)
class Root:
    location: complex
    multiplicity: int
    region: str

    @property
    def is_real(self) -> bool:
        return self.region != UPPER_HALF


@dataclass(frozen=True)
class RootReport:
    """Roots of f'; non-real roots are stored once, by their ℍ representative."""

    chi: float
    eta: float
    roots: tuple[Root, ...]

    def count(self, region: str) -> int:
        """Roots in ``region`` counted with multiplicity; ℍ roots count twice."""

        factor = 2 if region == UPPER_HALF else 1
        return factor * sum(r.multiplicity for r in self.roots if r.region == region)

    @property
    def regions(self) -> set[str]:
        return {r.region for r in self.roots}

    @property
    def upper(self) -> Optional[Root]:
        for root in self.roots:
            if root.region == UPPER_HALF:
                return root
        return None


# -- argument principle --------------------------------------------------------


def _side_phase(fn: SaddleFunction, start: complex, end: complex, scale: float) -> float:
    s = np.linspace(0.0, 1.0, _BASE_SAMPLES + 1)
    values = fn.values(start + s * (end - start))
    min_step = 1e-13 * scale / abs(end - start)
    while True:
        if not np.all(np.isfinite(values)) or np.any(values == 0):
            raise BoundaryTooClose(
                "f' se anula o no es finita sobre el contorno",
                context={"start": [start.real, start.imag], "end": [end.real, end.imag]},
            )
        steps = np.angle(values[1:] / values[:-1])
        coarse = np.abs(steps) > _PHASE_STEP
        coarse &= np.diff(s) > min_step
        if not coarse.any():
            break
        if s.size > _MAX_SAMPLES * 4:
            raise BoundaryTooClose(
                "el número de vueltas no se estabiliza",
                context={"start": [start.real, start.imag], "end": [end.real, end.imag]},
            )
        mids = 0.5 * (s[:-1][coarse] + s[1:][coarse])
        new_values = fn.values(start + mids * (end - start))
        order = np.argsort(np.concatenate([s, mids]), kind="stable")
        s = np.concatenate([s, mids])[order]
        values = np.concatenate([values, new_values])[order]
    if np.any(np.abs(steps) > math.pi / 2):
        raise BoundaryTooClose(
            "raíz sobre el contorno",
            context={"start": [start.real, start.imag], "end": [end.real, end.imag]},
        )
    return float(steps.sum())


def winding_number(fn: SaddleFunction, rect: Rectangle) -> int:
    """Number of zeros of f' inside ``rect`` (argument principle)."""

    if rect.y0 < BOTTOM_HEIGHT * (1 - 1e-9):
        raise BoundaryTooClose(
            "el rectángulo se acerca demasiado al eje real", context={"y0": rect.y0}
        )
    corners = rect.corners
    scale = max(rect.width, rect.height)
    total = sum(
        _side_phase(fn, corners[i], corners[(i + 1) % 4], scale) for i in range(4)
    )
    turns = total / (2 * math.pi)
    rounded = round(turns)
    if abs(turns - rounded) > 0.1:
        raise BoundaryTooClose(
            "número de vueltas no entero", context={"turns": turns, "rect": rect.__dict__}
        )
    return int(rounded)


def search_box(ctx: SaddleContext, bottom: float = BOTTOM_HEIGHT) -> Rectangle:
    a, b = ctx.measure.a, ctx.measure.b
    return Rectangle(a - 2.0, b + 2.0, bottom, 2.0 * (b - a))


def _expand(rect: Rectangle, factor: float = 8.0) -> Rectangle:
    mid = 0.5 * (rect.x0 + rect.x1)
    half = 0.5 * rect.width * factor
    return Rectangle(mid - half, mid + half, rect.y0, rect.y1 * factor)


def _isolate(fn: SaddleFunction, rect: Rectangle, count: int, min_size: float) -> list[tuple[Rectangle, int]]:
    """Shrink ``rect`` around its zeros until each piece holds a single root
    or reaches ``min_size``."""

    if count == 0:
        return []
    if max(rect.width, rect.height) <= min_size:
        return [(rect, count)]
    for fraction in (0.5, 0.45, 0.55):
        first, second = rect.split(fraction)
        try:
            n1 = winding_number(fn, first)
            n2 = winding_number(fn, second)
        except BoundaryTooClose:
            continue
        if n1 + n2 != count:
            continue
        if count == 1 and max(rect.width, rect.height) <= min_size * 8:
            return [(first if n1 else second, 1)]
        return _isolate(fn, first, n1, min_size) + _isolate(fn, second, n2, min_size)
    return [(rect, count)]


def _newton(fn: SaddleFunction, w: complex, rect: Rectangle) -> complex:
    value = fn.values(w)
    for _ in range(200):
        slope = fn.transform.derivative(w, 1)
        if abs(value) <= NEWTON_RESIDUAL * (1 + abs(slope)):
            return w
        if slope == 0:
            break
        step = value / slope
        damping = 1.0
        for _ in range(60):
            candidate = w - damping * step
            if candidate.imag > 0:
                new_value = fn.values(candidate)
                if abs(new_value) <= abs(value) or damping < 1e-6:
                    break
            damping *= 0.5
        else:
            break
        delta = abs(candidate - w)
        w, value = candidate, new_value
        if delta < 1e-15 * (1 + abs(w)):
            if abs(value) <= NEWTON_RESIDUAL * (1 + abs(fn.transform.derivative(w, 1))):
                return w
            break
    raise ConvergenceFailure(
        "Newton no converge",
        context={"rect": rect.__dict__, "w": [w.real, w.imag], "residual": abs(value)},
    )


def _inside(rect: Rectangle, w: complex) -> bool:
    return rect.x0 <= w.real <= rect.x1 and rect.y0 <= w.imag <= rect.y1


def upper_roots(ctx: SaddleContext, *, bottom: float = BOTTOM_HEIGHT) -> list[tuple[complex, int]]:
    """Roots of f' in ℍ above ``bottom``, with multiplicities.

    When the search box holds no zero it is enlarged at most
    ``_MAX_EXPANSIONS`` times; a count seen only on an enlarged box is kept
    only for leaves where Newton converges inside that box.
    """

    if ctx.eta <= 0.0 or ctx.eta >= 1.0:
        return []
    fn = saddle_function(ctx)
    rect = search_box(ctx, bottom)
    count = winding_number(fn, rect)
    expansions = 0
    while count == 0 and expansions < _MAX_EXPANSIONS:
        rect = _expand(rect)
        count = winding_number(fn, rect)
        expansions += 1
    if count == 0:
        return []
    min_size = 1e-3 * ctx.measure.width
    found = []
    for leaf, multiplicity in _isolate(fn, rect, count, min_size):
        if not expansions:
            found.append((_newton(fn, leaf.center, leaf), multiplicity))
            continue
        try:
            root = _newton(fn, leaf.center, leaf)
        except ConvergenceFailure:
            logger.debug("Conteo no confirmado en caja ampliada %s para (%s, %s)", leaf, ctx.chi, ctx.eta)
            continue
        if _inside(rect, root):
            found.append((root, multiplicity))
        else:
            logger.debug("Raíz %s fuera de la caja ampliada para (%s, %s)", root, ctx.chi, ctx.eta)
    if logger.isEnabledFor(logging.DEBUG):
        logger.debug("Raíces en ℍ para (%.6g, %.6g): %s", ctx.chi, ctx.eta, found)
    return found


def upper_root(ctx: SaddleContext, *, bottom: float = BOTTOM_HEIGHT) -> Optional[complex]:
    """The root of f' in ℍ when (χ, η) is in the liquid region, else ``None``."""

    found = upper_roots(ctx, bottom=bottom)
    if not found:
        return None
    if len(found) > 1 or found[0][1] > 1:
        logger.warning("f' tiene %d raíces en ℍ en (%s, %s)", len(found), ctx.chi, ctx.eta)
    return found[0][0]


def liquid_membership(ctx: SaddleContext, *, bottom: float = BOTTOM_HEIGHT) -> tuple[bool, Optional[complex]]:
    witness = upper_root(ctx, bottom=bottom)
    return witness is not None, witness


# -- real roots ----------------------------------------------------------------


def real_root_multiplicity(
    ctx: SaddleContext, t: float, *, tolerance: float = MULTIPLICITY_TOLERANCE
) -> int:
    # derivadas adimensionales: f^(k) · ℓ^(k−1), con ℓ la distancia de t al punto singular más cercano
    fn = saddle_function(ctx)
    scale = fn.distance_to_singularity(t)
    second, third, fourth = (abs(fn.derivative(t, order).real) for order in (2, 3, 4))
    return multiplicity_from_derivatives(
        second * scale, third * scale**2, fourth * scale**3, tolerance=tolerance, t=t
    )


def multiplicity_from_derivatives(
    second: float, third: float, fourth: float, *, tolerance: float = MULTIPLICITY_TOLERANCE, t: float | None = None
) -> int:
    """Smallest m with |f^(m+1)| above ``tolerance`` times the largest of the three."""

    scale = max(abs(second), abs(third), abs(fourth))
    if not math.isfinite(scale) or scale <= 1e-300:
        raise AmbiguousMultiplicity(
            "todas las derivadas se anulan",
            context={"t": t, "derivatives": [second, third, fourth]},
        )
    if abs(second) > tolerance * scale:
        return 1
    if abs(third) > tolerance * scale:
        return 2
    return 3


def real_roots_in(ctx: SaddleContext, span: Span, *, nodes: int = _CHEBYSHEV_NODES) -> list[tuple[float, int]]:
    """Roots of f' on the open interval ``span`` with their multiplicities."""

    fn = saddle_function(ctx)
    k = np.arange(1, nodes + 1)
    theta = np.sort(np.cos((2 * k - 1) * math.pi / (2 * nodes)))
    ts = np.array([span.from_unit(s) for s in theta])
    ts = ts[np.isfinite(ts)]
    values = fn.values(ts).real
    slopes = fn.transform.derivative(ts, 1).real

    def f1(x: float) -> float:
        return fn.values(x).real

    def f2(x: float) -> float:
        return fn.transform.derivative(x, 1).real

    scale = float(np.max(np.abs(values))) if values.size else 1.0
    # raíz -> si f' cambia de signo en ella (None cuando cae en un nodo)
    roots: dict[float, Optional[bool]] = {}
    for i in range(ts.size - 1):
        left, right = ts[i], ts[i + 1]
        if values[i] == 0.0:
            roots[float(left)] = None
        elif values[i] * values[i + 1] < 0:
            roots[brentq(f1, left, right, xtol=1e-15, rtol=4 * np.finfo(float).eps)] = True
        elif slopes[i] * slopes[i + 1] < 0:
            turn = brentq(f2, left, right, xtol=1e-15, rtol=4 * np.finfo(float).eps)
            if abs(f1(turn)) <= 1e-10 * max(1.0, scale):
                roots.setdefault(turn, False)
    if values.size and values[-1] == 0.0:
        roots[float(ts[-1])] = None
    out: list[tuple[float, int]] = []
    for root in sorted(roots):
        if out and abs(root - out[-1][0]) <= 1e-9 * max(1.0, abs(root)):
            continue
        try:
            multiplicity = real_root_multiplicity(ctx, root)
        except AmbiguousMultiplicity:
            multiplicity = 3
        crossing = roots[root]
        if crossing is True and multiplicity % 2 == 0:
            multiplicity -= 1
        elif crossing is False and multiplicity % 2 == 1:
            multiplicity = 2
        out.append((root, multiplicity))
    return out


def count_roots(ctx: SaddleContext, region: Union[Rectangle, Span]) -> int:
    """Roots of f' in a rectangle of ℍ or on a real interval, with multiplicity."""

    if isinstance(region, Rectangle):
        return winding_number(saddle_function(ctx), region)
    fn = saddle_function(ctx)
    for span in fn.singular:
        if span.lo < region.hi and region.lo < span.hi:
            raise BoundaryTooClose(
                "el intervalo corta el conjunto singular",
                context={"region": region.as_list(), "singular": span.as_list()},
            )
    return sum(m for _, m in real_roots_in(ctx, region))


def root_report(ctx: SaddleContext, *, bottom: float = BOTTOM_HEIGHT) -> RootReport:
    fn = saddle_function(ctx)
    roots = [Root(w, m, UPPER_HALF) for w, m in upper_roots(ctx, bottom=bottom)]
    for name, span in fn.real_intervals().items():
        roots.extend(Root(complex(t, 0.0), m, name) for t, m in real_roots_in(ctx, span))
    return RootReport(ctx.chi, ctx.eta, tuple(roots))


def root_bound_violations(ctx: SaddleContext, report: RootReport | None = None) -> list[str]:
    """Root-count bounds that ``report`` breaks for the support case of (χ, η)."""

    report = report or root_report(ctx)
    sets = saddle_function(ctx).decomposition
    k_names = [f"K{i}" for i in range(1, len(sets.k) + 1)]
    j_names = list(sets.j_intervals)
    nonreal = report.count(UPPER_HALF)
    j_total = sum(report.count(name) for name in j_names)
    k_counts = {name: report.count(name) for name in k_names}
    eta_zero = ctx.eta <= 1e-12
    problems: list[str] = []

    if sets.s1 and sets.s2 and sets.s3:
        if not eta_zero:
            if nonreal + j_total > 2:
                problems.append(f"{nonreal + j_total} raíces en (C∖R) ∪ J (máximo 2)")
            occupied = [r for r in [UPPER_HALF, *j_names] if report.count(r) > 0]
            if len(occupied) > 1:
                problems.append(f"raíces en más de una región de (C∖R), J: {occupied}")
            for name, n in k_counts.items():
                if n > 3:
                    problems.append(f"{n} raíces en {name} (máximo 3)")
            heavy = [name for name, n in k_counts.items() if n >= 2]
            if len(heavy) > 1:
                problems.append(f"al menos 2 raíces en varias componentes K: {heavy}")
            if heavy and nonreal + j_total > 0:
                problems.append("raíces en (C∖R) ∪ J junto a una componente K con ≥ 2 raíces")
        else:
            head = nonreal + report.count("J1") + report.count("J2")
            if head > 1:
                problems.append(f"{head} raíces en (C∖R) ∪ J1 ∪ J2 (máximo 1)")
            if report.count("J3") + report.count("J4") > 0:
                problems.append("raíces en J3 ∪ J4 con η = 0")
            problems.extend(f"{n} raíces en {name} (máximo 1)" for name, n in k_counts.items() if n > 1)
    elif sets.s2 and not (sets.s1 and sets.s3):
        limit = 0 if eta_zero else 1
        if nonreal + j_total > limit:
            problems.append(f"{nonreal + j_total} raíces en (C∖R) ∪ J (máximo {limit})")
        problems.extend(f"{n} raíces en {name} (máximo 1)" for name, n in k_counts.items() if n > 1)
    elif not sets.s2 and not eta_zero:
        if nonreal + j_total > 0:
            problems.append(f"{nonreal + j_total} raíces en (C∖R) ∪ J con S2 vacío")
        problems.extend(f"{n} raíces en {name} (máximo 1)" for name, n in k_counts.items() if n > 1)
    return problems


__all__ = [
    "BOTTOM_HEIGHT",
    "MULTIPLICITY_TOLERANCE",
    "NEWTON_RESIDUAL",
    "Root",
    "RootReport",
    "UPPER_HALF",
    "count_roots",
    "liquid_membership",
    "multiplicity_from_derivatives",
    "real_root_multiplicity",
    "real_roots_in",
    "root_bound_violations",
    "root_report",
    "search_box",
    "upper_root",
    "upper_roots",
    "winding_number",
]

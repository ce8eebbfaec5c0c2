"""Probe sequences, adaptive sampling of the edge and assembly of ∂L."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import FrontierError, OutOfTrapezoid
from ..measure import MeasureSpec, RComponent, Span, geometry
from ..saddle import BOTTOM_HEIGHT, MULTIPLICITY_TOLERANCE, chi_eta_from_w, liquid_membership, make_context
from .edge import tangency_point
from .flat import FlatPoint, flat_boundary_points, flat_segments
from .geometry import EdgeSample, find_cusps, local_geometry

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 512
PROBE_DEPTH = 20
RESOLUTION_DEPTH = 40
RESOLUTION_TOLERANCE = 2e-2
TURNING_ANGLE = 0.2
MAX_STEP = 0.05
_FIT_WINDOW = 8
_MIN_PARAMETER_STEP = 1e-12
_CUSP_OFFSETS = (1e-2, 1e-3, 1e-4)
# más allá, la cancelación en χ y f_t''' domina la señal
_FAR_FIELD = 1e5


@dataclass(frozen=True)
class ProbeResult:
    """Images (χ_L, η_L)(w_k) of a probe sequence and its limit estimates.

    ``bound`` is |p_last − p_previous|; ``extrapolated`` fits the last probes
    as a quadratic in 1/log(1/v) and evaluates it at 0.
    """

    anchor: complex
    heights: tuple[float, ...]
    points: tuple[tuple[float, float], ...]
    limit: tuple[float, float]
    bound: float
    extrapolated: tuple[float, float]

    def distance(self, target: tuple[float, float], *, extrapolated: bool = True) -> float:
        point = self.extrapolated if extrapolated else self.limit
        return math.hypot(point[0] - target[0], point[1] - target[1])


def _extrapolate(heights: np.ndarray, points: np.ndarray) -> tuple[float, float]:
    window = min(_FIT_WINDOW, len(heights))
    s = 1.0 / np.log(1.0 / heights[-window:])
    degree = min(2, window - 1)
    chi = np.polyfit(s, points[-window:, 0], degree)
    eta = np.polyfit(s, points[-window:, 1], degree)
    return float(chi[-1]), float(eta[-1])


def _probe(
    spec: MeasureSpec, anchor: complex, ws: list[complex], heights: list[float], *, extrapolate: bool
) -> ProbeResult:
    points = [chi_eta_from_w(spec, w) for w in ws]
    array = np.asarray(points)
    last = points[-1]
    bound = math.hypot(*(np.subtract(points[-1], points[-2]))) if len(points) > 1 else math.inf
    extrapolated = _extrapolate(np.asarray(heights), array) if extrapolate else last
    return ProbeResult(
        anchor=anchor,
        heights=tuple(heights),
        points=tuple(points),
        limit=last,
        bound=float(bound),
        extrapolated=extrapolated,
    )


def boundary_probe(spec: MeasureSpec, t: float, depths: int = PROBE_DEPTH) -> ProbeResult:
    """(χ_L, η_L) along w_k = t + i·2^{−k}, k = 1..depths."""

    if depths < 2:
        raise ValueError("depths debe ser ≥ 2")
    heights = [2.0 ** (-k) for k in range(1, depths + 1)]
    return _probe(spec, complex(t, 0.0), [complex(t, v) for v in heights], heights, extrapolate=True)


def tangency_probe(spec: MeasureSpec, depths: int = 12) -> ProbeResult:
    """(χ_L, η_L) along w_k = 2^k·e^{iπ/3}; tends to the tangency point."""

    direction = complex(math.cos(math.pi / 3), math.sin(math.pi / 3))
    ws = [2.0**k * direction for k in range(1, depths + 1)]
    return _probe(spec, complex(math.inf, math.inf), ws, [w.imag for w in ws], extrapolate=False)


def membership_transition(
    spec: MeasureSpec, sample: EdgeSample, offset: float = 1e-3, *, bottom: float = BOTTOM_HEIGHT
) -> tuple[bool, bool]:
    """Liquid membership at point ± offset·ŷ; points outside the trapezoid count as outside."""

    y1, y2 = sample.y_vec
    norm = math.hypot(y1, y2)
    out = []
    for sign in (1.0, -1.0):
        chi = sample.point[0] + sign * offset * y1 / norm
        eta = sample.point[1] + sign * offset * y2 / norm
        try:
            ctx = make_context(spec, chi, eta)
        except OutOfTrapezoid:
            out.append(False)
            continue
        out.append(liquid_membership(ctx, bottom=bottom)[0])
    return out[0], out[1]


def _turning(p0: tuple[float, float], p1: tuple[float, float], p2: tuple[float, float]) -> float:
    ax, ay = p1[0] - p0[0], p1[1] - p0[1]
    bx, by = p2[0] - p1[0], p2[1] - p1[1]
    if (ax == 0.0 and ay == 0.0) or (bx == 0.0 and by == 0.0):
        return 0.0
    return abs(math.atan2(ax * by - ay * bx, ax * bx + ay * by))


def _distance(p: tuple[float, float], q: tuple[float, float]) -> float:
    return math.hypot(p[0] - q[0], p[1] - q[1])


class _ComponentSampler:
    """Adaptive grid over one open component of R in the parameter s ∈ (−1, 1)."""

    def __init__(self, spec: MeasureSpec, component: RComponent, tolerance: float) -> None:
        self.spec = spec
        self.span: Span = component.span
        self.tolerance = tolerance
        self.reach = _FAR_FIELD * max(1.0, spec.b - spec.a) + max(abs(spec.a), abs(spec.b))
        self.samples: dict[float, EdgeSample] = {}

    def _evaluate(self, s: float) -> None:
        if s in self.samples:
            return
        t = self.span.from_unit(s)
        if not (math.isfinite(t) and self.span.contains(t)) or abs(t) > self.reach:
            return
        try:
            self.samples[s] = local_geometry(self.spec, t, tolerance=self.tolerance)
        except (FrontierError, OverflowError, ZeroDivisionError) as exc:
            logger.debug("Muestra descartada en t=%r: %s", t, exc)

    def run(self, count: int, cusps: list[float], limit: int) -> list[EdgeSample]:
        for s in np.linspace(-1.0, 1.0, count + 2)[1:-1]:
            self._evaluate(float(s))
        for t in cusps:
            if self.span.contains(t):
                centre = self.span.to_unit(t)
                self._evaluate(centre)
                for offset in _CUSP_OFFSETS:
                    self._evaluate(centre - offset)
                    self._evaluate(centre + offset)
        while len(self.samples) < limit:
            keys = sorted(self.samples)
            points = [self.samples[k].point for k in keys]
            inserts: set[float] = set()
            for i in range(len(keys) - 1):
                too_far = _distance(points[i], points[i + 1]) > MAX_STEP
                bends = 0 < i and _turning(points[i - 1], points[i], points[i + 1]) > TURNING_ANGLE
                if (too_far or bends) and keys[i + 1] - keys[i] > _MIN_PARAMETER_STEP:
                    inserts.add(0.5 * (keys[i] + keys[i + 1]))
                    if bends:
                        inserts.add(0.5 * (keys[i - 1] + keys[i]))
            before = len(self.samples)
            for s in sorted(inserts):
                self._evaluate(s)
            if len(self.samples) == before:
                break
        return [self.samples[k] for k in sorted(self.samples)]


def sample_edge(
    spec: MeasureSpec,
    budget: int = DEFAULT_BUDGET,
    *,
    tolerance: float = MULTIPLICITY_TOLERANCE,
) -> list[EdgeSample]:
    """Samples of the edge over every component of R, ordered by t.

    The initial grid shares ``budget`` among the open components; refinement
    halves the parameter step where the polyline turns by more than
    0.2 rad or jumps by more than 0.05, up to eight times the budget.
    """

    if budget < 16:
        raise ValueError("budget debe ser ≥ 16")
    geo = geometry(spec)
    cusps = find_cusps(spec)
    open_parts = [c for c in geo.r_components if not c.is_point]
    share = max(8, budget // max(1, len(open_parts)))
    samples: list[EdgeSample] = []
    for component in geo.r_components:
        if component.is_point:
            samples.append(local_geometry(spec, component.lo, tolerance=tolerance))
            continue
        sampler = _ComponentSampler(spec, component, tolerance)
        samples.extend(sampler.run(share, cusps, 8 * share))
    samples.sort(key=lambda sample: sample.t)
    logger.info("Borde muestreado con %d puntos (%d cúspides interiores)", len(samples), len(cusps))
    return samples


def _chains(components: tuple[RComponent, ...], tol: float) -> list[list[RComponent]]:
    """Maximal runs of components that follow each other without a gap."""

    chains: list[list[RComponent]] = []
    for component in sorted(components, key=lambda c: (c.lo, not c.is_point)):
        if chains and abs(component.lo - chains[-1][-1].hi) <= tol:
            chains[-1].append(component)
        else:
            chains.append([component])
    return chains


@dataclass(frozen=True)
class BoundaryAssembly:
    tangency: tuple[float, float]
    edge_segments: tuple[tuple[EdgeSample, ...], ...]
    flat_segments: tuple[Span, ...]
    flat_points: tuple[FlatPoint, ...]
    probes: tuple[ProbeResult, ...]
    complete: bool
    unresolved: tuple[float, ...] = field(default_factory=tuple)

    @property
    def probe_points(self) -> tuple[tuple[float, float], ...]:
        return tuple(probe.extrapolated for probe in self.probes)


def assemble_boundary(
    spec: MeasureSpec,
    budget: int = DEFAULT_BUDGET,
    *,
    probe_depth: int = RESOLUTION_DEPTH,
    resolution_tolerance: float = RESOLUTION_TOLERANCE,
    tolerance: float = MULTIPLICITY_TOLERANCE,
) -> BoundaryAssembly:
    """Tangency point, edge segments in clockwise order, flat top segments and
    probes at the points of ℝ∖R no flat-boundary case covers."""

    geo = geometry(spec)
    samples = sample_edge(spec, budget, tolerance=tolerance)
    segments: list[tuple[EdgeSample, ...]] = []
    for chain in _chains(geo.r_components, geo.tol):
        lo, hi = chain[0].lo, chain[-1].hi
        members = tuple(s for s in samples if lo <= s.t <= hi)
        if members:
            segments.append(members)

    flat_points = flat_boundary_points(spec)
    probes: list[ProbeResult] = []
    unresolved: list[float] = []
    for point in flat_points:
        if point.classified:
            continue
        t = point.span.lo
        probe = boundary_probe(spec, t, probe_depth)
        probes.append(probe)
        if probe.distance((t, 1.0)) > resolution_tolerance:
            unresolved.append(t)
    complete = not unresolved
    if not complete:
        logger.warning("Descripción de ∂L incompleta: puntos sin resolver %s", unresolved)
    return BoundaryAssembly(
        tangency=tangency_point(spec),
        edge_segments=tuple(segments),
        flat_segments=tuple(flat_segments(flat_points)),
        flat_points=tuple(flat_points),
        probes=tuple(probes),
        complete=complete,
        unresolved=tuple(unresolved),
    )


__all__ = [
    "BoundaryAssembly",
    "DEFAULT_BUDGET",
    "PROBE_DEPTH",
    "ProbeResult",
    "RESOLUTION_DEPTH",
    "RESOLUTION_TOLERANCE",
    "assemble_boundary",
    "boundary_probe",
    "membership_transition",
    "sample_edge",
    "tangency_probe",
]

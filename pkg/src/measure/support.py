"""Support structure of μ and λ−μ, the curve parameter set R and the
real-line extension of the Cauchy transform."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np
from scipy.optimize import brentq

from ..errors import NotInR, OutOfTrapezoid, PointOnSupport
from .cauchy import Segment, SegmentSum
from .models import MeasureSpec, Span
from .validation import piece_extrema

logger = logging.getLogger(__name__)

DENSITY_TOLERANCE = 1e-12
_GAP_EPSILON = 1e-10


class PieceKind(str, Enum):
    ONE = "one"
    MIXED = "mixed"


class RTag(str, Enum):
    MU = "R_mu"
    LAMBDA_MU = "R_lambda_mu"
    ZERO = "R0"
    ONE = "R1"
    TWO = "R2"


@dataclass(frozen=True)
class ClassifiedPiece:
    lo: float
    hi: float
    coeffs: tuple[float, ...]
    kind: PieceKind


@dataclass(frozen=True)
class RComponent:
    """A component of R: an open interval or a single point.

    ``run`` is the maximal interval where the density is 1 and that the
    component touches (Rλ−μ, R1, R2); ``None`` elsewhere.
    """

    lo: float
    hi: float
    tag: RTag
    run: Span | None = None

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def contains(self, t: float) -> bool:
        if self.is_point:
            return t == self.lo
        return self.lo < t < self.hi

    @property
    def span(self) -> Span:
        return Span(self.lo, self.hi)


@dataclass(frozen=True)
class ExtendedExp:
    """``e^{C(t)}`` and ``e^{-C(t)}`` on R, with ``inf`` where a factor vanishes."""

    value: float
    reciprocal: float
    tag: RTag


@dataclass(frozen=True)
class SupportDecomposition:
    chi: float
    eta: float
    s1: tuple[Span, ...]
    s2: tuple[Span, ...]
    s3: tuple[Span, ...]
    j1: Span | None
    j2: Span | None
    j3: Span | None
    j4: Span | None
    k: tuple[Span, ...]

    @property
    def singular(self) -> tuple[Span, ...]:
        return _merge(list(self.s1 + self.s2 + self.s3), 0.0)

    @property
    def j_intervals(self) -> dict[str, Span]:
        named = {"J1": self.j1, "J2": self.j2, "J3": self.j3, "J4": self.j4}
        return {name: span for name, span in named.items() if span is not None}


def _merge(spans: list[Span], tol: float) -> tuple[Span, ...]:
    merged: list[Span] = []
    for span in sorted(spans, key=lambda s: s.lo):
        if merged and span.lo <= merged[-1].hi + tol:
            last = merged[-1]
            merged[-1] = Span(last.lo, max(last.hi, span.hi))
        else:
            merged.append(span)
    return tuple(merged)


def _clip(spans: tuple[Span, ...], lo: float, hi: float) -> tuple[Span, ...]:
    out = []
    for span in spans:
        left, right = max(span.lo, lo), min(span.hi, hi)
        if left < right:
            out.append(Span(left, right))
    return tuple(out)


def _complement(spans: tuple[Span, ...], lo: float, hi: float) -> tuple[Span, ...]:
    out = []
    cursor = lo
    for span in spans:
        if span.lo > cursor:
            out.append(Span(cursor, min(span.lo, hi)))
        cursor = max(cursor, span.hi)
        if cursor >= hi:
            break
    if cursor < hi:
        out.append(Span(cursor, hi))
    return tuple(s for s in out if s.lo < s.hi)


class MeasureGeometry:
    """Everything derived once from a validated measure."""

    def __init__(self, spec: MeasureSpec) -> None:
        self.spec = spec
        self.tol = DENSITY_TOLERANCE * max(1.0, spec.width)
        self.pieces = self._classify()
        self.transform = SegmentSum(Segment(p.lo, p.hi, p.coeffs) for p in self.pieces)
        self.support = _merge([Span(p.lo, p.hi) for p in self.pieces], self.tol)
        self.runs = _merge(
            [Span(p.lo, p.hi) for p in self.pieces if p.kind is PieceKind.ONE], self.tol
        )
        self.gaps = _complement(self.support, -math.inf, math.inf)
        self._removed: dict[Span, SegmentSum] = {}
        self.r_components = self._decompose()

    def _classify(self) -> tuple[ClassifiedPiece, ...]:
        out = []
        for piece in self.spec.pieces:
            low, high = piece_extrema(piece)
            if high <= DENSITY_TOLERANCE:
                continue
            kind = PieceKind.ONE if low >= 1.0 - DENSITY_TOLERANCE else PieceKind.MIXED
            out.append(ClassifiedPiece(piece.lo, piece.hi, piece.coeffs, kind))
        return tuple(out)

    def removed(self, run: Span) -> SegmentSum:
        """Transform of μ with the run's pieces taken out (C_I)."""

        if run not in self._removed:
            self._removed[run] = self.transform.without(run.lo, run.hi, self.tol)
        return self._removed[run]

    def _zero_in_gap(self, gap: Span) -> float | None:
        width = gap.hi - gap.lo
        left = gap.lo + _GAP_EPSILON * width
        right = gap.hi - _GAP_EPSILON * width

        def c_real(t: float) -> float:
            return self.transform(t).real

        c_left, c_right = c_real(left), c_real(right)
        if not (c_left > 0.0 > c_right):
            return None
        root = brentq(c_real, left, right, xtol=1e-15, rtol=4 * np.finfo(float).eps)
        derivative = self.transform.derivative(root, 1).real
        if derivative != 0.0:
            polished = root - c_real(root) / derivative
            if left < polished < right:
                root = polished
        return float(root)

    def _decompose(self) -> tuple[RComponent, ...]:
        components: list[RComponent] = []
        support_los = [s.lo for s in self.support]
        support_his = [s.hi for s in self.support]
        for gap in self.gaps:
            zero = self._zero_in_gap(gap) if gap.bounded else None
            if zero is None:
                components.append(RComponent(gap.lo, gap.hi, RTag.MU))
            else:
                components.append(RComponent(gap.lo, zero, RTag.MU))
                components.append(RComponent(zero, zero, RTag.ZERO))
                components.append(RComponent(zero, gap.hi, RTag.MU))
        for run in self.runs:
            components.append(RComponent(run.lo, run.hi, RTag.LAMBDA_MU, run))
            if any(abs(run.hi - h) <= self.tol for h in support_his):
                components.append(RComponent(run.hi, run.hi, RTag.ONE, run))
            if any(abs(run.lo - lo) <= self.tol for lo in support_los):
                components.append(RComponent(run.lo, run.lo, RTag.TWO, run))
        components.sort(key=lambda c: (c.lo, c.hi, c.is_point is False))
        logger.debug("R tiene %d componentes", len(components))
        return tuple(components)

    def component_at(self, t: float) -> RComponent:
        for component in self.r_components:
            if component.is_point:
                if abs(t - component.lo) <= self.tol:
                    return component
            elif component.lo < t < component.hi:
                return component
        raise NotInR("t fuera del conjunto R", context={"t": t})

    def in_r(self, t: float) -> bool:
        try:
            self.component_at(t)
        except NotInR:
            return False
        return True

    def outside_r(self) -> tuple[Span, ...]:
        """Closed components of ℝ∖R (possibly single points)."""

        open_parts = sorted(
            (c for c in self.r_components if not c.is_point), key=lambda c: c.lo
        )
        points = [c.lo for c in self.r_components if c.is_point]
        out: list[Span] = []
        for left, right in zip(open_parts, open_parts[1:]):
            if right.lo - left.hi > self.tol:
                out.append(Span(left.hi, right.lo))
            elif not any(abs(p - left.hi) <= self.tol for p in points):
                out.append(Span(left.hi, left.hi))
        return tuple(out)


@lru_cache(maxsize=64)
def geometry(spec: MeasureSpec) -> MeasureGeometry:
    return MeasureGeometry(spec)


def classify_pieces(spec: MeasureSpec) -> tuple[ClassifiedPiece, ...]:
    """Non-zero pieces tagged ONE (density ≡ 1) or MIXED."""

    return geometry(spec).pieces


def r_decomposition(spec: MeasureSpec) -> tuple[RComponent, ...]:
    return geometry(spec).r_components


def _check_off_support(geo: MeasureGeometry, w: complex) -> None:
    if w.imag == 0.0 and any(s.lo <= w.real <= s.hi for s in geo.support):
        raise PointOnSupport("w sobre el soporte de μ", context={"w": [w.real, w.imag]})


def cauchy(spec: MeasureSpec, w: complex) -> complex:
    """C(w) = ∫ μ[dx] / (w − x)."""

    geo = geometry(spec)
    w = complex(w)
    _check_off_support(geo, w)
    return geo.transform(w)


def cauchy_deriv(spec: MeasureSpec, w: complex, order: int) -> complex:
    """C^(order)(w); at real points of an Rλ−μ run, the derivative of the analytic extension."""

    if order not in (1, 2, 3):
        raise ValueError("order debe ser 1, 2 o 3")
    geo = geometry(spec)
    w = complex(w)
    if w.imag == 0.0 and geo.in_r(w.real) and geo.component_at(w.real).tag is RTag.LAMBDA_MU:
        return complex(extended_cauchy_derivative(spec, w.real, order))
    _check_off_support(geo, w)
    return geo.transform.derivative(w, order)


def extended_cauchy_derivative(spec: MeasureSpec, t: float, order: int) -> float:
    """Derivative of the real-line extension of C at ``t`` in Rμ, R0 or Rλ−μ.

    At R1 and R2 points the derivatives are unbounded; callers use the
    transform with the run removed instead.
    """

    if order < 1:
        raise ValueError("order debe ser ≥ 1")
    geo = geometry(spec)
    component = geo.component_at(t)
    if component.tag in (RTag.MU, RTag.ZERO):
        return float(geo.transform.derivative(t, order).real)
    if component.tag is RTag.LAMBDA_MU:
        run = component.run
        base = geo.removed(run).derivative(t, order).real
        sign = (-1.0) ** (order - 1) * math.factorial(order - 1)
        return float(base + sign * ((t - run.lo) ** (-order) - (t - run.hi) ** (-order)))
    raise NotInR(
        "derivada no acotada en R1/R2", context={"t": t, "tag": component.tag.value}
    )


def extended_exp_c(spec: MeasureSpec, t: float) -> ExtendedExp:
    """``e^{C(t)}`` on R following the branch of the analytic extension."""

    geo = geometry(spec)
    component = geo.component_at(t)
    if component.tag in (RTag.MU, RTag.ZERO):
        c = geo.transform(t).real
        return ExtendedExp(math.exp(c), math.exp(-c), component.tag)
    run = component.run
    c_i = geo.removed(run)(t).real
    if component.tag is RTag.LAMBDA_MU:
        value = math.exp(c_i) * (t - run.lo) / (t - run.hi)
        return ExtendedExp(value, 1.0 / value, component.tag)
    if component.tag is RTag.TWO:
        return ExtendedExp(0.0, math.inf, component.tag)
    return ExtendedExp(math.inf, 0.0, component.tag)


def support_sets(spec: MeasureSpec, chi: float, eta: float) -> SupportDecomposition:
    geo = geometry(spec)
    a, b = spec.a, spec.b
    lower = chi + eta - 1.0
    tol = geo.tol
    if not (
        -tol <= eta <= 1.0 + tol
        and a - tol <= lower <= chi + tol
        and chi <= b + tol
    ):
        raise OutOfTrapezoid(
            "(χ, η) fuera del trapecio", context={"chi": chi, "eta": eta, "a": a, "b": b}
        )
    lower = min(max(lower, a), chi)
    chi = min(chi, b)
    if abs(lower - chi) <= tol:
        lower = chi
    s1 = _clip(geo.support, chi, b)
    s3 = _clip(geo.support, a, lower)
    s2 = _complement(_clip(geo.runs, lower, chi), lower, chi) if lower < chi else ()
    singular = _merge(list(s1 + s2 + s3), 0.0)
    j1 = Span(singular[-1].hi, math.inf) if singular else None
    j2 = Span(-math.inf, singular[0].lo) if singular else None
    j3 = Span(s2[-1].hi, s1[0].lo) if s1 and s2 and s2[-1].hi < s1[0].lo else None
    j4 = Span(s3[-1].hi, s2[0].lo) if s3 and s2 and s3[-1].hi < s2[0].lo else None
    k = tuple(
        gap
        for gap in _complement(singular, singular[0].lo, singular[-1].hi)
        if gap not in (j3, j4)
    ) if singular else ()
    return SupportDecomposition(chi, eta, s1, s2, s3, j1, j2, j3, j4, k)


__all__ = [
    "ClassifiedPiece",
    "DENSITY_TOLERANCE",
    "ExtendedExp",
    "MeasureGeometry",
    "PieceKind",
    "RComponent",
    "RTag",
    "SupportDecomposition",
    "cauchy",
    "cauchy_deriv",
    "classify_pieces",
    "extended_cauchy_derivative",
    "extended_exp_c",
    "geometry",
    "r_decomposition",
    "support_sets",
]

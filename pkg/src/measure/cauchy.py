"""Cauchy transform of piecewise polynomial densities.

Each segment ``[p, q]`` carrying a polynomial ``g`` contributes

    C(w) = ∫_p^q g(x) / (w - x) dx

evaluated in closed form near the segment (Taylor shift of ``g`` at ``w``)
and through a Laurent expansion in moments far from it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
from numpy.polynomial import Polynomial
from scipy.special import comb, poch

_FAR_RATIO = 4.0
_LAURENT_TERMS = 60
MIN_SEGMENT = 1e-13


@dataclass(frozen=True)
class Segment:
    lo: float
    hi: float
    coeffs: tuple[float, ...]
    _centered: np.ndarray = field(init=False, repr=False, compare=False)
    _moments: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        center = 0.5 * (self.lo + self.hi)
        half = 0.5 * (self.hi - self.lo)
        shifted = Polynomial(self.coeffs)(Polynomial([center, 1.0])).coef
        # normalised moments: M_k / h^(k+1) = Σ_j e_j h^j (1 - (-1)^(j+k+1)) / (j+k+1)
        scaled = shifted * half ** np.arange(shifted.size)
        moments = np.zeros(_LAURENT_TERMS)
        for k in range(_LAURENT_TERMS):
            for j, e in enumerate(scaled):
                n = j + k
                if n % 2 == 0:
                    moments[k] += 2.0 * e / (n + 1)
        object.__setattr__(self, "_centered", shifted)
        object.__setattr__(self, "_moments", moments)

    @property
    def center(self) -> float:
        return 0.5 * (self.lo + self.hi)

    @property
    def half(self) -> float:
        return 0.5 * (self.hi - self.lo)

    def is_zero(self) -> bool:
        return not np.any(np.asarray(self.coeffs) != 0.0)

    def derivative(self, w: np.ndarray, order: int) -> np.ndarray:
        out = np.zeros(w.shape, dtype=complex)
        offset = w - self.center
        far = np.abs(offset) > _FAR_RATIO * self.half
        if np.any(far):
            out[far] = self._far(offset[far], order)
        near = ~far
        if np.any(near):
            out[near] = self._near(w[near], order)
        return out

    def _far(self, offset: np.ndarray, order: int) -> np.ndarray:
        rho = self.half / offset
        k = np.arange(_LAURENT_TERMS)
        weights = self._moments * poch(k + 1.0, order)
        powers = rho[:, None] ** (k + 1)[None, :]
        series = powers @ weights
        return ((-1.0) ** order) * series / offset**order

    def _near(self, w: np.ndarray, order: int) -> np.ndarray:
        degree = len(self.coeffs) - 1
        # Taylor coefficients of g at w
        taylor = np.zeros((degree + 1, w.size), dtype=complex)
        for i, c in enumerate(self.coeffs):
            if c == 0.0:
                continue
            for j in range(i + 1):
                taylor[j] += c * comb(i, j, exact=True) * w ** (i - j)
        p_off = self.lo - w
        q_off = self.hi - w
        total = np.zeros(w.size, dtype=complex)
        for j in range(degree + 1):
            n = j - order
            if n == 0:
                with np.errstate(divide="ignore", invalid="ignore"):
                    term = -np.log((w - self.lo) / (w - self.hi))
            else:
                with np.errstate(divide="ignore", invalid="ignore"):
                    term = (q_off.astype(complex) ** n - p_off.astype(complex) ** n) / n
            total += taylor[j] * term
        return -math.factorial(order) * total


class SegmentSum:
    """Sum of segment transforms; the building block for C and for f'."""

    def __init__(self, segments: Iterable[Segment]) -> None:
        self.segments: tuple[Segment, ...] = tuple(
            s for s in segments if s.hi - s.lo >= MIN_SEGMENT and not s.is_zero()
        )

    @classmethod
    def from_pieces(cls, pieces: Sequence[tuple[float, float, Sequence[float]]]) -> "SegmentSum":
        return cls(Segment(lo, hi, tuple(float(c) for c in coeffs)) for lo, hi, coeffs in pieces)

    def without(self, lo: float, hi: float, tol: float = 1e-12) -> "SegmentSum":
        """Segments lying outside ``[lo, hi]``."""

        return SegmentSum(
            s for s in self.segments if s.hi <= lo + tol or s.lo >= hi - tol
        )

    def derivative(self, w, order: int = 0):
        if order < 0:
            raise ValueError("order must be non-negative")
        arr = np.asarray(w, dtype=complex)
        flat = np.atleast_1d(arr).ravel()
        total = np.zeros(flat.shape, dtype=complex)
        for segment in self.segments:
            total += segment.derivative(flat, order)
        if arr.ndim == 0:
            return complex(total[0])
        return total.reshape(arr.shape)

    def __call__(self, w):
        return self.derivative(w, 0)

    def on_support(self, x: float) -> bool:
        return any(s.lo <= x <= s.hi for s in self.segments)


__all__ = ["MIN_SEGMENT", "Segment", "SegmentSum"]

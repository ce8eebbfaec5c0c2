"""Lozenge tilings equivalent to interlaced particle configurations."""
from __future__ import annotations

import logging
import math
from collections import defaultdict
from dataclasses import dataclass
from enum import Enum

from ..errors import CombinatoricsError
from .patterns import GTPattern

logger = logging.getLogger(__name__)

HALF_SQRT3 = 0.5 * math.sqrt(3.0)

Vertex = tuple[int, int]


class LozengeKind(str, Enum):
    A = "A"  # vertical, one per particle
    B = "B"
    C = "C"


# colores de relleno del SVG
COLORS = {LozengeKind.A: "#e41a1c", LozengeKind.B: "#ff7f00", LozengeKind.C: "#377eb8"}


@dataclass(frozen=True)
class Lozenge:
    """A lozenge of the triangular lattice, named by the lattice vertex (i, h)."""

    kind: LozengeKind
    i: int
    h: int

    @property
    def vertices(self) -> tuple[Vertex, Vertex, Vertex, Vertex]:
        i, h = self.i, self.h
        if self.kind is LozengeKind.A:
            return (i + 1, h - 1), (i + 1, h), (i, h + 1), (i, h)
        if self.kind is LozengeKind.B:
            return (i, h), (i + 1, h), (i + 1, h + 1), (i, h + 1)
        return (i, h), (i + 1, h), (i, h + 1), (i - 1, h + 1)

    def points(self) -> list[tuple[float, float]]:
        return [lattice_point(v) for v in self.vertices]


def lattice_point(vertex: Vertex) -> tuple[float, float]:
    """Vertex (i, h) at i·(1, 0) + h·(1/2, √3/2)."""

    i, h = vertex
    return i + 0.5 * h, HALF_SQRT3 * h


@dataclass(frozen=True)
class Tiling:
    top: tuple[int, ...]
    lozenges: tuple[Lozenge, ...]

    @property
    def n(self) -> int:
        return len(self.top)

    def of_kind(self, kind: LozengeKind) -> tuple[Lozenge, ...]:
        return tuple(z for z in self.lozenges if z.kind is kind)


def _pair_strip(h: int, free: list[tuple[int, str]]) -> list[Lozenge]:
    # posición en la franja: U(i) en 2i, D(i) en 2i + 1
    ordered = sorted(free, key=lambda item: 2 * item[0] + (item[1] == "D"))
    if len(ordered) % 2:
        raise CombinatoricsError("franja con un número impar de triángulos libres", context={"h": h})
    out: list[Lozenge] = []
    for (i0, t0), (i1, t1) in zip(ordered[0::2], ordered[1::2]):
        if t0 == "U" and t1 == "D" and i0 == i1:
            out.append(Lozenge(LozengeKind.B, i0, h))
        elif t0 == "D" and t1 == "U" and i1 == i0 + 1:
            out.append(Lozenge(LozengeKind.C, i1, h))
        else:
            raise CombinatoricsError(
                "triángulos libres no adyacentes",
                context={"h": h, "pares": [(i0, t0), (i1, t1)]},
            )
    return out


def to_tiling(pattern: GTPattern) -> Tiling:
    """A lozenge at every particle; the free triangles of each strip h..h+1
    (h = 0..n−1) are paired from left to right into B and C lozenges."""

    n = pattern.n
    top = pattern.rows[-1]
    x1, xn = top[0], top[-1]
    lozenges = [Lozenge(LozengeKind.A, u, r) for r, row in enumerate(pattern.rows, start=1) for u in row]
    for h in range(n):
        upper_taken = set(pattern.rows[h - 1]) if h >= 1 else set()
        lower_taken = set(pattern.rows[h])
        free = [(i, "U") for i in range(xn + n - h, x1 + 1) if i not in upper_taken]
        free += [(i, "D") for i in range(xn + n - h - 1, x1 + 1) if i not in lower_taken]
        lozenges.extend(_pair_strip(h, free))
    logger.debug("Teselado con %d rombos para n=%d", len(lozenges), n)
    return Tiling(top=tuple(top), lozenges=tuple(lozenges))


def from_tiling(tiling: Tiling) -> GTPattern:
    """Read the particle rows back from the A lozenges."""

    rows: dict[int, list[int]] = defaultdict(list)
    for lozenge in tiling.of_kind(LozengeKind.A):
        rows[lozenge.h].append(lozenge.i)
    return GTPattern(rows=[sorted(rows[r], reverse=True) for r in range(1, tiling.n + 1)])


def tiling_to_svg(tiling: Tiling, *, scale: float = 24.0, stroke: float = 0.06) -> str:
    points = [p for lozenge in tiling.lozenges for p in lozenge.points()]
    if not points:
        raise CombinatoricsError("teselado vacío")
    min_x = min(p[0] for p in points)
    max_x = max(p[0] for p in points)
    min_y = min(p[1] for p in points)
    max_y = max(p[1] for p in points)
    margin = 0.5
    width = (max_x - min_x + 2 * margin) * scale
    height = (max_y - min_y + 2 * margin) * scale

    def to_svg(p: tuple[float, float]) -> str:
        # el eje y del SVG apunta hacia abajo
        sx = (p[0] - min_x + margin) * scale
        sy = (max_y - p[1] + margin) * scale
        return f"{sx:.3f},{sy:.3f}"

    polygons = "\n".join(
        f'  <polygon class="{z.kind.value}" points="{" ".join(to_svg(p) for p in z.points())}" '
        f'fill="{COLORS[z.kind]}" stroke="#000" stroke-width="{stroke * scale:.3f}"/>'
        for z in tiling.lozenges
    )
    return f"""<?xml version="1.0" encoding="UTF-8"?>
<svg xmlns="http://www.w3.org/2000/svg" width="{width:.3f}" height="{height:.3f}" viewBox="0 0 {width:.3f} {height:.3f}">
{polygons}
</svg>
"""


__all__ = [
    "COLORS",
    "HALF_SQRT3",
    "Lozenge",
    "LozengeKind",
    "Tiling",
    "from_tiling",
    "lattice_point",
    "tiling_to_svg",
    "to_tiling",
]

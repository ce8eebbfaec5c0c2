"""Gelfand-Tsetlin patterns with a fixed top row: enumeration, counting,
exact uniform sampling and the brute-force correlation oracle."""
from __future__ import annotations

import logging
import math
from bisect import bisect_right
from fractions import Fraction
from functools import lru_cache
from itertools import accumulate, product
from typing import Iterator, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from ..errors import LengthMismatch, TooLarge
from ..kernel import SiteCoord, TopRow, bareiss_determinant, ensure_distinct

logger = logging.getLogger(__name__)

MAX_ENUMERATION_ROWS = 8
MAX_ENUMERATION_SPREAD = 12
MAX_CANDIDATES = 2_000_000

Row = tuple[int, ...]


def _check_decreasing(row: Sequence[int], name: str) -> None:
    if any(left <= right for left, right in zip(row, row[1:])):
        raise ValueError(f"la fila {name} debe ser estrictamente decreciente: {list(row)}")


def interlaces(upper: Sequence[int], lower: Sequence[int]) -> bool:
    """upper_1 ≥ lower_1 > upper_2 ≥ lower_2 > … > upper_{k+1}."""

    if len(upper) != len(lower) + 1:
        raise LengthMismatch(
            "la fila superior debe tener un elemento más",
            context={"upper": list(upper), "lower": list(lower)},
        )
    _check_decreasing(upper, "superior")
    _check_decreasing(lower, "inferior")
    return all(upper[i] >= lower[i] > upper[i + 1] for i in range(len(lower)))


def interlaces_determinant(upper: Sequence[int], lower: Sequence[int]) -> bool:
    """Interlacing test through det[1_{upper_i ≥ lower'_j}], lower' = lower + (upper_last,).

    Column j is the indicator of the first p_j rows; the determinant is 1
    exactly when p_j = j for every j, and 0 otherwise.
    """

    if len(upper) != len(lower) + 1:
        raise LengthMismatch(
            "la fila superior debe tener un elemento más",
            context={"upper": list(upper), "lower": list(lower)},
        )
    padded = [*lower, upper[-1]]
    matrix = [[int(zi >= zj) for zj in padded] for zi in upper]
    return bareiss_determinant(matrix) == 1


class GTPattern(BaseModel):
    """Filas y^(1), …, y^(n); la fila r tiene r entradas y cada fila entrelaza con la siguiente."""

    model_config = ConfigDict(frozen=True)

    rows: tuple[tuple[int, ...], ...] = Field(..., min_length=1)

    @field_validator("rows", mode="before")
    @classmethod
    def _tuples(cls, value: object) -> object:
        if isinstance(value, (list, tuple)):
            return tuple(tuple(int(item) for item in row) for row in value)
        return value

    @field_validator("rows", mode="after")
    @classmethod
    def _shape(cls, rows: tuple[Row, ...]) -> tuple[Row, ...]:
        for index, row in enumerate(rows, start=1):
            if len(row) != index:
                raise ValueError(f"la fila {index} debe tener {index} entradas")
            _check_decreasing(row, str(index))
        for lower, upper in zip(rows, rows[1:]):
            if not interlaces(upper, lower):
                raise ValueError(f"las filas {list(upper)} y {list(lower)} no entrelazan")
        return rows

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def top(self) -> TopRow:
        return TopRow(self.rows[-1])

    def row(self, r: int) -> Row:
        return self.rows[r - 1]

    def has_particle(self, u: int, r: int) -> bool:
        return u in self.rows[r - 1]

    def particles(self) -> frozenset[tuple[int, int]]:
        return frozenset((u, r) for r, row in enumerate(self.rows, start=1) for u in row)

    def as_lists(self) -> list[list[int]]:
        return [list(row) for row in self.rows]


def _lower_rows(upper: Row) -> Iterator[Row]:
    ranges = [range(upper[i + 1] + 1, upper[i] + 1) for i in range(len(upper) - 1)]
    return product(*ranges)


def _descend(rows: list[Row]) -> Iterator[list[Row]]:
    if len(rows[-1]) == 1:
        yield rows
        return
    for lower in _lower_rows(rows[-1]):
        yield from _descend([*rows, lower])


def _guard(top: TopRow) -> None:
    if top.n > MAX_ENUMERATION_ROWS or top.spread > MAX_ENUMERATION_SPREAD:
        raise TooLarge(
            "enumeración demasiado grande",
            context={
                "n": top.n,
                "spread": top.spread,
                "max_n": MAX_ENUMERATION_ROWS,
                "max_spread": MAX_ENUMERATION_SPREAD,
            },
        )


def enumerate_patterns(top: TopRow) -> Iterator[GTPattern]:
    """Every pattern with top row ``top`` once, in lexicographic order of
    (y^(n−1), y^(n−2), …, y^(1))."""

    _guard(top)
    return (GTPattern.model_construct(rows=tuple(reversed(rows))) for rows in _descend([top.x]))


def _count(row: Row) -> int:
    numerator = 1
    denominator = 1
    size = len(row)
    for i in range(size):
        for j in range(i + 1, size):
            numerator *= row[i] - row[j]
            denominator *= j - i
    return numerator // denominator


def count_patterns(top: TopRow) -> int:
    """Z_n = ∏_{i<j} (x_i − x_j)/(j − i)."""

    return _count(top.x)


@lru_cache(maxsize=4096)
def _children(upper: Row) -> tuple[tuple[Row, ...], tuple[int, ...]]:
    size = math.prod(upper[i] - upper[i + 1] for i in range(len(upper) - 1))
    if size > MAX_CANDIDATES:
        raise TooLarge(
            "demasiadas filas candidatas para el muestreo exacto",
            context={"upper": list(upper), "candidatas": size},
        )
    rows = tuple(_lower_rows(upper))
    cumulative = tuple(accumulate(_count(row) for row in rows))
    return rows, cumulative


def _uniform_below(rng: np.random.Generator, bound: int) -> int:
    """Uniform integer in [0, bound) for bounds beyond 64 bits."""

    if bound < 2**62:
        return int(rng.integers(bound))
    bits = bound.bit_length()
    width = (bits + 7) // 8
    excess = width * 8 - bits
    while True:
        draw = int.from_bytes(rng.bytes(width), "big") >> excess
        if draw < bound:
            return draw


def _draw(top: TopRow, rng: np.random.Generator) -> GTPattern:
    rows: list[Row] = [top.x]
    while len(rows[-1]) > 1:
        candidates, cumulative = _children(rows[-1])
        pick = _uniform_below(rng, cumulative[-1])
        rows.append(candidates[bisect_right(cumulative, pick)])
    return GTPattern.model_construct(rows=tuple(reversed(rows)))


def sample_pattern(top: TopRow, seed: int) -> GTPattern:
    """Exact uniform sample, row by row from the top, each candidate row
    weighted by the number of patterns it heads."""

    return _draw(top, np.random.default_rng(seed))


def sample_patterns(top: TopRow, seed: int, size: int) -> list[GTPattern]:
    """``size`` samples drawn from one generator stream seeded by ``seed``."""

    if size < 0:
        raise ValueError("size debe ser ≥ 0")
    rng = np.random.default_rng(seed)
    out = [_draw(top, rng) for _ in range(size)]
    logger.info("Muestreados %d patrones con fila superior %s", size, list(top.x))
    return out


def spawn_seeds(seed: int, count: int) -> list[int]:
    """Independent 64-bit child seeds from ``SeedSequence(seed).spawn``."""

    children = np.random.SeedSequence(seed).spawn(count)
    return [int(child.generate_state(1, dtype=np.uint64)[0]) for child in children]


def empirical_correlation(top: TopRow, sites: Sequence[SiteCoord]) -> Fraction:
    """ρ_m(sites) by brute force: share of patterns with a particle at every site."""

    _guard(top)
    ensure_distinct(sites)
    for site in sites:
        top.check_site(site)
    if not sites:
        return Fraction(1)
    wanted = {site.as_tuple() for site in sites}
    hits = 0
    total = 0
    for pattern in enumerate_patterns(top):
        total += 1
        if wanted <= pattern.particles():
            hits += 1
    return Fraction(hits, total)


__all__ = [
    "GTPattern",
    "MAX_CANDIDATES",
    "MAX_ENUMERATION_ROWS",
    "MAX_ENUMERATION_SPREAD",
    "count_patterns",
    "empirical_correlation",
    "enumerate_patterns",
    "interlaces",
    "interlaces_determinant",
    "sample_pattern",
    "sample_patterns",
    "spawn_seeds",
]

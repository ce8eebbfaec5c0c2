"""Exact determinants over the rationals."""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence, Union

Number = Union[int, Fraction]


def bareiss_determinant(matrix: Sequence[Sequence[Number]]) -> Fraction:
    """Determinant by fraction-free (Bareiss) elimination.

    Rows are first scaled to integers by the lcm of their denominators, so
    every intermediate value is an integer and each division is exact.
    The empty matrix has determinant 1.
    """

    size = len(matrix)
    if any(len(row) != size for row in matrix):
        raise ValueError("la matriz debe ser cuadrada")
    if size == 0:
        return Fraction(1)

    scale = 1
    rows: list[list[int]] = []
    for row in matrix:
        values = [Fraction(item) for item in row]
        lcm = math.lcm(*(v.denominator for v in values))
        scale *= lcm
        rows.append([int(v * lcm) for v in values])

    sign = 1
    previous = 1
    for k in range(size - 1):
        if rows[k][k] == 0:
            for i in range(k + 1, size):
                if rows[i][k] != 0:
                    rows[k], rows[i] = rows[i], rows[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        pivot = rows[k][k]
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                # exacta por la identidad de Sylvester
                rows[i][j] = (pivot * rows[i][j] - rows[i][k] * rows[k][j]) // previous
            rows[i][k] = 0
        previous = pivot
    return Fraction(sign * rows[-1][-1], scale)


__all__ = ["bareiss_determinant"]

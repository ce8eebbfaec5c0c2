"""Gelfand-Tsetlin patterns, exact sampling and lozenge tilings."""

from .patterns import (
    MAX_CANDIDATES,
    MAX_ENUMERATION_ROWS,
    MAX_ENUMERATION_SPREAD,
    GTPattern,
    count_patterns,
    empirical_correlation,
    enumerate_patterns,
    interlaces,
    interlaces_determinant,
    sample_pattern,
    sample_patterns,
    spawn_seeds,
)
from .tiling import Lozenge, LozengeKind, Tiling, from_tiling, lattice_point, tiling_to_svg, to_tiling

__all__ = [
    "GTPattern",
    "Lozenge",
    "LozengeKind",
    "MAX_CANDIDATES",
    "MAX_ENUMERATION_ROWS",
    "MAX_ENUMERATION_SPREAD",
    "Tiling",
    "count_patterns",
    "empirical_correlation",
    "enumerate_patterns",
    "from_tiling",
    "interlaces",
    "interlaces_determinant",
    "lattice_point",
    "sample_pattern",
    "sample_patterns",
    "spawn_seeds",
    "tiling_to_svg",
    "to_tiling",
]

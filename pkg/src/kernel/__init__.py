"""Exact finite-n correlation kernel and its contour-integral form."""

from .contour import DEFAULT_NODES, ContourPoles, contour_poles, default_contours, kernel_contour
from .exact import correlation, ensure_distinct, kernel, kernel_matrix, ktilde, phi, phi_compose, phi_finite_difference
from .linalg import bareiss_determinant
from .models import ContourParams, KernelValue, SiteCoord, TopRow, query_payload

__all__ = [
    "ContourParams",
    "ContourPoles",
    "DEFAULT_NODES",
    "KernelValue",
    "SiteCoord",
    "TopRow",
    "bareiss_determinant",
    "contour_poles",
    "correlation",
    "default_contours",
    "ensure_distinct",
    "kernel",
    "kernel_contour",
    "kernel_matrix",
    "ktilde",
    "phi",
    "phi_compose",
    "phi_finite_difference",
    "query_payload",
]

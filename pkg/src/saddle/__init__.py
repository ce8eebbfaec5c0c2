"""Saddle-point function f' for a point (χ, η) and the roots it has."""

from .context import Rectangle, SaddleContext, SaddleFunction, f_prime, make_context, saddle_function
from .homeo import boundary_limit_form, chi_eta_from_w
from .roots import (
    BOTTOM_HEIGHT,
    MULTIPLICITY_TOLERANCE,
    NEWTON_RESIDUAL,
    UPPER_HALF,
    Root,
    RootReport,
    count_roots,
    liquid_membership,
    multiplicity_from_derivatives,
    real_root_multiplicity,
    real_roots_in,
    root_bound_violations,
    root_report,
    upper_root,
    winding_number,
)

__all__ = [
    "BOTTOM_HEIGHT",
    "MULTIPLICITY_TOLERANCE",
    "NEWTON_RESIDUAL",
    "Rectangle",
    "Root",
    "RootReport",
    "SaddleContext",
    "SaddleFunction",
    "UPPER_HALF",
    "boundary_limit_form",
    "chi_eta_from_w",
    "count_roots",
    "f_prime",
    "liquid_membership",
    "make_context",
    "multiplicity_from_derivatives",
    "real_root_multiplicity",
    "real_roots_in",
    "root_bound_violations",
    "root_report",
    "saddle_function",
    "upper_root",
    "winding_number",
]

"""Edge curve, its case classification and the assembled boundary ∂L."""

from .edge import (
    CASE_TABLE,
    CUSP_CASES,
    PARABOLIC_CASES,
    EdgeState,
    classify_case,
    edge_point,
    edge_state,
    f_derivatives,
    tangency_point,
)
from .export import CSV_COLUMNS, boundary_payload, boundary_to_json, edge_csv, write_edge_csv
from .flat import FLAT_CASES, FlatPoint, SideState, flat_boundary_points, flat_segments, side_state
from .geometry import EdgeSample, curvature, find_cusps, local_geometry
from .sampling import (
    DEFAULT_BUDGET,
    PROBE_DEPTH,
    RESOLUTION_DEPTH,
    RESOLUTION_TOLERANCE,
    BoundaryAssembly,
    ProbeResult,
    assemble_boundary,
    boundary_probe,
    membership_transition,
    sample_edge,
    tangency_probe,
)

__all__ = [
    "BoundaryAssembly",
    "CASE_TABLE",
    "CSV_COLUMNS",
    "CUSP_CASES",
    "DEFAULT_BUDGET",
    "EdgeSample",
    "EdgeState",
    "FLAT_CASES",
    "FlatPoint",
    "PARABOLIC_CASES",
    "PROBE_DEPTH",
    "ProbeResult",
    "RESOLUTION_DEPTH",
    "RESOLUTION_TOLERANCE",
    "SideState",
    "assemble_boundary",
    "boundary_payload",
    "boundary_probe",
    "boundary_to_json",
    "classify_case",
    "curvature",
    "edge_csv",
    "edge_point",
    "edge_state",
    "f_derivatives",
    "find_cusps",
    "flat_boundary_points",
    "flat_segments",
    "local_geometry",
    "membership_transition",
    "sample_edge",
    "side_state",
    "tangency_point",
    "tangency_probe",
    "write_edge_csv",
]

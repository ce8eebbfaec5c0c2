"""CSV and JSON renderings of edge samples and of the assembled boundary."""
from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path
from typing import Any, Iterable

from ..measure import write_text_atomic
from .geometry import EdgeSample
from .sampling import BoundaryAssembly, ProbeResult

CSV_COLUMNS = (
    "t",
    "chi",
    "eta",
    "component",
    "case",
    "multiplicity",
    "x1",
    "x2",
    "y1",
    "y2",
    "a1",
    "a2",
    "b1",
    "b2",
)


def edge_csv(samples: Iterable[EdgeSample]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for sample in samples:
        writer.writerow({key: _cell(value) for key, value in sample.as_row().items()})
    return buffer.getvalue()


def _cell(value: Any) -> Any:
    if isinstance(value, float):
        return repr(value)
    return value


def write_edge_csv(samples: Iterable[EdgeSample], path: str | Path) -> None:
    write_text_atomic(path, edge_csv(samples))


def _finite(value: float) -> float | None:
    return value if math.isfinite(value) else None


def _probe_payload(probe: ProbeResult) -> dict[str, Any]:
    return {
        "t": _finite(probe.anchor.real),
        "points": [list(p) for p in probe.points],
        "limit": list(probe.limit),
        "bound": _finite(probe.bound),
        "extrapolated": list(probe.extrapolated),
    }


def boundary_payload(assembly: BoundaryAssembly) -> dict[str, Any]:
    return {
        "tangency": list(assembly.tangency),
        "edge_segments": [
            [sample.as_row() for sample in segment] for segment in assembly.edge_segments
        ],
        "flat_segments": [span.as_list() for span in assembly.flat_segments],
        "flat_points": [
            {"span": point.span.as_list(), "case": point.case} for point in assembly.flat_points
        ],
        "probes": [_probe_payload(probe) for probe in assembly.probes],
        "unresolved": list(assembly.unresolved),
        "complete": assembly.complete,
    }


def boundary_to_json(assembly: BoundaryAssembly) -> str:
    return json.dumps(boundary_payload(assembly), indent=2, ensure_ascii=False, allow_nan=False) + "\n"


__all__ = ["CSV_COLUMNS", "boundary_payload", "boundary_to_json", "edge_csv", "write_edge_csv"]

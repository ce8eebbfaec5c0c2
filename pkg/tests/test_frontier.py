from __future__ import annotations

import csv
import io
import json
import math
import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from src.errors import FrontierGeometryError, NotInR
from src.frontier import (
    CSV_COLUMNS,
    PARABOLIC_CASES,
    assemble_boundary,
    boundary_probe,
    boundary_to_json,
    classify_case,
    curvature,
    edge_csv,
    edge_point,
    f_derivatives,
    find_cusps,
    flat_boundary_points,
    flat_segments,
    local_geometry,
    membership_transition,
    sample_edge,
    tangency_point,
    tangency_probe,
    write_edge_csv,
)
from src.measure import RTag, Span, geometry
from src.presets import preset
from src.saddle import chi_eta_from_w, make_context

SQRT3 = math.sqrt(3.0)


def _spec(name: str):
    return preset(name).spec


def test_edge_point_examples() -> None:
    assert edge_point(_spec("c"), 0.0) == pytest.approx((0.75, 0.25), abs=1e-12)
    assert edge_point(_spec("a"), 2.0) == pytest.approx((SQRT3 - 1, 7 - 4 * SQRT3), abs=1e-12)
    assert edge_point(_spec("b"), 1.5) == pytest.approx((1.5, 1.0), abs=1e-12)


@pytest.mark.parametrize(
    "name, ts",
    [
        ("a", [-4.0, -1.5, 1.2, 2.0, 7.0]),
        ("b", [-2.0, 1.2, 1.8, 3.5]),
        ("c", [-1.0, 0.25, 0.6, 0.9, 1.2, 2.5]),
        ("d", [-0.5, 0.2, 0.5, 1.1, 1.7, 2.5, 3.5]),
        ("e", [-3.0, -1.1, 1.1, 4.0]),
    ],
)
def test_edge_point_matches_closed_form(name: str, ts: list[float]) -> None:
    item = preset(name)
    for t in ts:
        assert edge_point(item.spec, t) == pytest.approx(item.closed_edge(t), abs=1e-9)


def test_edge_point_outside_r() -> None:
    with pytest.raises(NotInR):
        edge_point(_spec("a"), 0.0)


def test_tangency_points() -> None:
    assert tangency_point(_spec("a")) == pytest.approx((0.5, 0.0))
    assert tangency_point(_spec("c")) == pytest.approx((1.25, 0.0))
    assert tangency_point(_spec("b")) == pytest.approx((2.0, 0.0))


@pytest.mark.parametrize("name", list("abcd"))
def test_special_points_and_cases(name: str) -> None:
    item = preset(name)
    for special in item.special_points:
        if special.kind == "tangency":
            assert tangency_point(item.spec) == pytest.approx(special.point, abs=special.tolerance)
            continue
        assert edge_point(item.spec, special.t) == pytest.approx(special.point, abs=special.tolerance)
        if special.expected_case is not None:
            assert classify_case(item.spec, special.t)[0] == special.expected_case


def test_classify_case_examples() -> None:
    assert classify_case(_spec("d"), 4 / 3) == (7, 2)
    assert classify_case(_spec("c"), 1.5) == (6, 1)
    assert classify_case(_spec("b"), 1.5) == (5, 1)
    assert classify_case(_spec("a"), 3.0) == (1, 2)
    assert classify_case(_spec("c"), 0.25) == (3, 2)


def test_edge_third_derivative_vanishes_only_at_cusps() -> None:
    assert find_cusps(_spec("c")) == []
    assert find_cusps(_spec("d")) == []
    second, third, _ = f_derivatives(_spec("d"), 4 / 3)
    assert abs(second) < 1e-9
    assert abs(third) > 1e-3


def test_local_frames() -> None:
    right = local_geometry(_spec("c"), 1.5)
    assert right.component_tag is RTag.ONE
    assert right.x_vec == (0.0, 1.0) and right.y_vec == (1.0, 0.0)
    left = local_geometry(_spec("c"), 0.0)
    assert left.component_tag is RTag.TWO
    assert left.x_vec == (1.0, -1.0) and left.y_vec == (1.0, 1.0)
    for sample in (right, left, local_geometry(_spec("a"), 2.0)):
        x, y = sample.x_vec, sample.y_vec
        assert x[0] * y[0] + x[1] * y[1] == pytest.approx(0.0, abs=1e-14)


def _projected(sample, point):
    dx, dy = point[0] - sample.point[0], point[1] - sample.point[1]
    (x1, x2), (y1, y2) = sample.x_vec, sample.y_vec
    a = (dx * x1 + dy * x2) / (x1 * x1 + x2 * x2)
    b = (dx * y1 + dy * y2) / (y1 * y1 + y2 * y2)
    return a, b


@pytest.mark.parametrize(
    "name, t",
    [("a", 2.0), ("a", -1.7), ("c", 0.25), ("c", 0.0), ("c", 1.5), ("c", 1.0), ("b", 1.5), ("d", 4 / 3)],
)
def test_expansion_coefficients_match_the_curve(name: str, t: float) -> None:
    spec = _spec(name)
    sample = local_geometry(spec, t)
    delta = 1e-3
    a_plus, b_plus = _projected(sample, edge_point(spec, t + delta))
    a_minus, b_minus = _projected(sample, edge_point(spec, t - delta))
    assert (a_plus - a_minus) / (2 * delta) == pytest.approx(sample.a1, rel=1e-3, abs=1e-4)
    assert (a_plus + a_minus) / (2 * delta**2) == pytest.approx(sample.a2, rel=1e-3, abs=1e-3)
    assert (b_plus + b_minus) / (2 * delta**2) == pytest.approx(sample.b1, rel=1e-3, abs=1e-3)
    assert (b_plus - b_minus) / (2 * delta**3) == pytest.approx(sample.b2, rel=1e-2, abs=1e-2)


def test_cusp_of_first_order_at_run_end() -> None:
    spec = _spec("d")
    sample = local_geometry(spec, 4 / 3)
    assert sample.case == 7 and sample.is_cusp
    assert abs(sample.a1) < 1e-6 * max(abs(sample.a2), 1.0)
    assert abs(sample.b1) < 1e-6 * max(abs(sample.a2), 1.0)
    assert abs(sample.a2) > 1e-6 and abs(sample.b2) > 1e-6
    _, third, _ = f_derivatives(spec, 4 / 3)
    run = geometry(spec).component_at(4 / 3).run
    e_ci = math.exp(geometry(spec).removed(run)(4 / 3).real)
    assert sample.a2 == pytest.approx(-1.5 * (4 / 3 - run.lo) * e_ci * third, rel=1e-6)
    assert sample.b2 == pytest.approx(-third, rel=1e-6)
    with pytest.raises(FrontierGeometryError):
        curvature(sample)


@pytest.mark.parametrize(
    "name, ts",
    [("a", [-3.0, 2.0, 5.0]), ("b", [1.5, 1.2, 4.0]), ("c", [0.0, 0.25, 0.75, 1.5, 2.0])],
)
def test_curvature_is_negative_at_parabolic_points(name: str, ts: list[float]) -> None:
    for t in ts:
        sample = local_geometry(_spec(name), t)
        assert sample.case in PARABOLIC_CASES
        assert abs(sample.a1) > 0 and abs(sample.b1) > 0
        assert curvature(sample) < 0


def test_flat_points_of_uniform_density() -> None:
    points = flat_boundary_points(_spec("a"))
    assert [p.case for p in points] == [4, 1, 2]
    assert flat_segments(points) == [Span(-1.0, 1.0)]


def test_flat_points_of_tent_density_are_unclassified() -> None:
    points = flat_boundary_points(_spec("e"))
    assert sorted(p.span.lo for p in points if not p.classified) == [-1.0, 0.0, 1.0]


def test_flat_points_of_hexagon_are_empty() -> None:
    assert flat_boundary_points(_spec("c")) == []
    assert flat_segments(flat_boundary_points(_spec("b"))) == [Span(0.0, 1.0), Span(2.0, 3.0)]


@pytest.mark.parametrize("t", [-1.0, 0.0, 1.0])
def test_probe_reaches_top_side_for_tent_density(t: float) -> None:
    probe = boundary_probe(_spec("e"), t, 20)
    assert probe.distance((t, 1.0)) < 2e-2
    raw = [math.hypot(p[0] - t, p[1] - 1.0) for p in probe.points[-10:]]
    assert all(later < earlier for earlier, later in zip(raw, raw[1:]))


def test_probe_inside_r_tends_to_edge_point() -> None:
    probe = boundary_probe(_spec("a"), 2.0, 30)
    assert probe.distance(edge_point(_spec("a"), 2.0), extrapolated=False) < 1e-6


def test_tangency_probe() -> None:
    for name in "ac":
        probe = tangency_probe(_spec(name))
        assert probe.distance(tangency_point(_spec(name)), extrapolated=False) < 1e-3


@pytest.mark.parametrize("name, t", [("a", 2.0), ("c", 0.25), ("c", 2.0), ("d", 0.7)])
def test_edge_point_is_vertical_limit(name: str, t: float) -> None:
    spec = _spec(name)
    assert chi_eta_from_w(spec, complex(t, 1e-8)) == pytest.approx(edge_point(spec, t), abs=1e-6)


def test_edge_limits_of_quartic_density() -> None:
    item = preset("f")
    for label, t in (("p_1", -1.0 - 1e-7), ("p_2", 1.0 + 1e-7)):
        special = item.point(label)
        assert edge_point(item.spec, t) == pytest.approx(special.point, abs=special.tolerance)


def test_sample_edge_of_uniform_density() -> None:
    samples = sample_edge(_spec("a"), 64)
    assert all(s.case == 1 for s in samples)
    for sample in samples:
        make_context(_spec("a"), *sample.point)
    left = [s for s in samples if s.t < -1]
    right = [s for s in samples if s.t > 1]
    for part in (left, right):
        for first, second in zip(part, part[1:]):
            assert math.dist(first.point, second.point) < 0.05


def test_sample_edge_of_hexagon_has_only_parabolic_points() -> None:
    samples = sample_edge(_spec("c"), 32)
    assert {s.case for s in samples} <= PARABOLIC_CASES
    assert {5, 6, 8} <= {s.case for s in samples}


def test_sample_edge_rejects_small_budget() -> None:
    with pytest.raises(ValueError):
        sample_edge(_spec("a"), 8)


@pytest.mark.parametrize("name, t", [("a", 2.0), ("a", -3.0), ("c", 1.5), ("b", 1.5)])
def test_membership_changes_across_the_edge(name: str, t: float) -> None:
    sample = local_geometry(_spec(name), t)
    plus, minus = membership_transition(_spec(name), sample)
    assert plus != minus


def test_assemble_boundary_flags() -> None:
    hexagon = assemble_boundary(_spec("c"), 32)
    assert hexagon.complete and hexagon.flat_segments == ()
    assert hexagon.tangency == pytest.approx((1.25, 0.0))
    assert len(hexagon.edge_segments) == 1

    two_blocks = assemble_boundary(_spec("b"), 32)
    assert two_blocks.complete
    assert two_blocks.flat_segments == (Span(0.0, 1.0), Span(2.0, 3.0))

    quartic = assemble_boundary(_spec("f"), 32)
    assert not quartic.complete
    assert quartic.unresolved == (-1.0, 1.0)


def test_edge_segments_are_ordered_by_parameter() -> None:
    assembly = assemble_boundary(_spec("a"), 32)
    assert assembly.complete
    firsts = [segment[0].t for segment in assembly.edge_segments]
    assert firsts == sorted(firsts)
    assert assembly.flat_segments == (Span(-1.0, 1.0),)


def test_csv_and_json_exports(tmp_path: Path) -> None:
    samples = sample_edge(_spec("c"), 16)
    text = edge_csv(samples)
    rows = list(csv.DictReader(io.StringIO(text)))
    assert tuple(rows[0].keys()) == CSV_COLUMNS
    assert len(rows) == len(samples)
    assert "\r" not in text

    target = tmp_path / "out" / "edge.csv"
    write_edge_csv(samples, target)
    assert target.read_text(encoding="utf-8") == text

    payload = json.loads(boundary_to_json(assemble_boundary(_spec("b"), 16)))
    assert payload["complete"] is True
    assert payload["tangency"] == [2.0, 0.0]
    assert payload["flat_segments"] == [[0.0, 1.0], [2.0, 3.0]]

from __future__ import annotations

import cmath
import math
import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from src.errors import (
    DensityOutOfRange,
    MassNotOne,
    MeasureValidationError,
    NotInR,
    OutOfTrapezoid,
    OverlappingPieces,
    PointOnSupport,
    SupportTooNarrow,
)
from src.measure import (
    PieceKind,
    RTag,
    Span,
    cauchy,
    cauchy_deriv,
    classify_pieces,
    extended_cauchy_derivative,
    extended_exp_c,
    geometry,
    loads_measure,
    mean,
    r_decomposition,
    read_measure,
    support_sets,
    validate,
    write_measure,
)
from src.presets import preset


def _spec(pieces):
    return validate({"pieces": [{"interval": list(i), "poly": p} for i, p in pieces]})


def test_validate_accepts_uniform_half_density() -> None:
    spec = _spec([((-1, 1), [0.5])])
    assert spec.a == -1 and spec.b == 1


def test_validate_accepts_two_unit_blocks() -> None:
    spec = _spec([((0, 0.5), [1]), ((1, 1.5), [1])])
    assert (spec.a, spec.b) == (0, 1.5)


def test_validate_rejects_width_one() -> None:
    with pytest.raises(SupportTooNarrow) as excinfo:
        _spec([((0, 1), [1])])
    assert excinfo.value.codes == ["SupportTooNarrow"]


def test_validate_reports_every_violation() -> None:
    with pytest.raises(MeasureValidationError) as excinfo:
        _spec([((0, 1), [0.9]), ((0.5, 2), [0.9])])
    assert isinstance(excinfo.value, OverlappingPieces)
    assert set(excinfo.value.codes) == {"OverlappingPieces", "MassNotOne"}


def test_validate_rejects_density_above_one() -> None:
    with pytest.raises(DensityOutOfRange):
        _spec([((0, 1), [0.2, 1.6]), ((2, 2.2), [0.0])])


def test_validate_rejects_wrong_mass() -> None:
    with pytest.raises(MassNotOne):
        _spec([((0, 2), [0.6])])


def test_validate_rejects_malformed_interval() -> None:
    with pytest.raises(MeasureValidationError):
        validate({"pieces": [{"interval": [1, 0], "poly": [1]}]})


def test_cauchy_matches_closed_values_for_half_density() -> None:
    spec = preset("a").spec
    assert cauchy(spec, 3) == pytest.approx(0.5 * math.log(2), abs=1e-14)
    assert cauchy(spec, 1j) == pytest.approx(-1j * math.pi / 4, abs=1e-14)


def test_cauchy_far_field_is_one_over_w() -> None:
    for name in "abcdef":
        spec = preset(name).spec
        w = 1e9
        bound = 2 * max(abs(spec.a), abs(spec.b)) / w**2
        assert abs(cauchy(spec, w) - 1 / w) <= bound


def test_cauchy_rejects_points_on_support() -> None:
    with pytest.raises(PointOnSupport):
        cauchy(preset("a").spec, 0.3)
    with pytest.raises(PointOnSupport):
        cauchy(preset("a").spec, 1.0)


@pytest.mark.parametrize("name", list("abcdef"))
def test_cauchy_matches_closed_forms(name: str) -> None:
    item = preset(name)
    rng = np.random.default_rng(7)
    for _ in range(25):
        w = complex(rng.uniform(item.spec.a - 2, item.spec.b + 2), 10 ** rng.uniform(-3, 1))
        expected = item.closed_c(w)
        assert abs(cauchy(item.spec, w) - expected) <= 1e-9 * max(1.0, abs(expected))


@pytest.mark.parametrize("name", ["a", "c", "e", "f"])
def test_cauchy_derivatives_match_finite_differences(name: str) -> None:
    spec = preset(name).spec

    def stencil(w: complex, h: float) -> list[complex]:
        return [cauchy(spec, w + k * h) for k in (-2, -1, 0, 1, 2)]

    for w in (0.3 + 0.7j, -1.4 + 0.2j, 2.5 + 1.5j):
        v = stencil(w, 1e-5)
        first = (v[3] - v[1]) / 2e-5
        v = stencil(w, 1e-4)
        second = (v[3] - 2 * v[2] + v[1]) / 1e-8
        v = stencil(w, 1e-3)
        third = (v[4] - 2 * v[3] + 2 * v[1] - v[0]) / 2e-9
        assert abs(cauchy_deriv(spec, w, 1) - first) <= 1e-6 * max(1.0, abs(first))
        assert abs(cauchy_deriv(spec, w, 2) - second) <= 1e-5 * max(1.0, abs(second))
        assert abs(cauchy_deriv(spec, w, 3) - third) <= 1e-4 * max(1.0, abs(third))


def test_cauchy_deriv_on_real_gap() -> None:
    assert cauchy_deriv(preset("a").spec, 3.0, 1).real == pytest.approx(-1 / 8, abs=1e-14)


def test_cauchy_deriv_inside_unit_density_run() -> None:
    t = 0.25
    expected = 1 / t - 1 / (t - 0.5) + 1 / (t - 1.0) - 1 / (t - 1.5)
    value = cauchy_deriv(preset("c").spec, t, 1)
    assert value.real > 0
    assert value.real == pytest.approx(expected, rel=1e-10)
    assert value.imag == 0.0
    assert value.real == pytest.approx(extended_cauchy_derivative(preset("c").spec, t, 1), rel=1e-14)


def test_support_sets_top_edge_has_no_s2() -> None:
    spec = preset("a").spec
    for chi in (-0.7, 0.2, 0.9):
        sets = support_sets(spec, chi, 1.0)
        assert sets.s2 == ()
        assert sets.j3 is None and sets.j4 is None


@settings(max_examples=60, deadline=None)
@given(
    st.floats(min_value=-4, max_value=4),
    st.floats(min_value=1e-3, max_value=10),
    st.sampled_from(list("abcdef")),
)
def test_cauchy_is_conjugate_symmetric(re: float, im: float, name: str) -> None:
    spec = preset(name).spec
    w = complex(re, im)
    assert cauchy(spec, w.conjugate()) == pytest.approx(cauchy(spec, w).conjugate(), rel=1e-13, abs=1e-15)
    assert cauchy_deriv(spec, w.conjugate(), 1) == pytest.approx(
        cauchy_deriv(spec, w, 1).conjugate(), rel=1e-13, abs=1e-15
    )


def test_extended_exp_branches() -> None:
    hexagon = preset("c").spec
    assert extended_exp_c(hexagon, 0.0).value == 0.0
    assert extended_exp_c(hexagon, 0.5).reciprocal == 0.0
    assert extended_exp_c(hexagon, 0.25).value < 0
    assert extended_exp_c(hexagon, 0.6).value > 0
    assert extended_exp_c(preset("a").spec, 3.0).value == pytest.approx(math.sqrt(2), rel=1e-14)


def test_extended_exp_matches_complex_limit_on_runs() -> None:
    hexagon = preset("c").spec
    t = 0.25
    limit = cmath.exp(cauchy(hexagon, complex(t, 1e-9)))
    assert extended_exp_c(hexagon, t).value == pytest.approx(limit.real, rel=1e-6)


def test_extended_derivative_signs() -> None:
    hexagon = preset("c").spec
    assert extended_cauchy_derivative(hexagon, 0.25, 1) > 0
    assert extended_cauchy_derivative(hexagon, 0.6, 1) < 0
    assert extended_cauchy_derivative(preset("a").spec, -2.0, 1) < 0
    with pytest.raises(NotInR):
        extended_cauchy_derivative(hexagon, 0.5, 1)


def test_extended_exp_rejects_points_outside_r() -> None:
    with pytest.raises(NotInR):
        extended_exp_c(preset("a").spec, 0.0)


def test_r_decomposition_of_hexagon() -> None:
    components = r_decomposition(preset("c").spec)
    by_tag: dict[RTag, list[tuple[float, float]]] = {}
    for component in components:
        by_tag.setdefault(component.tag, []).append((component.lo, component.hi))
    assert by_tag[RTag.MU] == [
        (-math.inf, 0.0),
        (0.5, pytest.approx(0.75, abs=1e-12)),
        (pytest.approx(0.75, abs=1e-12), 1.0),
        (1.5, math.inf),
    ]
    assert by_tag[RTag.LAMBDA_MU] == [(0.0, 0.5), (1.0, 1.5)]
    assert [lo for lo, _ in by_tag[RTag.ZERO]] == [pytest.approx(0.75, abs=1e-12)]
    assert [lo for lo, _ in by_tag[RTag.ONE]] == [0.5, 1.5]
    assert [lo for lo, _ in by_tag[RTag.TWO]] == [0.0, 1.0]
    assert geometry(preset("c").spec).outside_r() == ()


def test_r_decomposition_of_half_density() -> None:
    components = r_decomposition(preset("a").spec)
    assert [(c.lo, c.hi, c.tag) for c in components] == [
        (-math.inf, -1.0, RTag.MU),
        (1.0, math.inf, RTag.MU),
    ]
    assert geometry(preset("a").spec).outside_r() == (Span(-1.0, 1.0),)


def test_r_decomposition_finds_zero_between_blocks() -> None:
    zeros = [c.lo for c in r_decomposition(preset("b").spec) if c.tag is RTag.ZERO]
    assert zeros == [pytest.approx(1.5, abs=1e-12)]


def test_classify_pieces_tags_unit_density() -> None:
    kinds = [p.kind for p in classify_pieces(preset("c").spec)]
    assert kinds == [PieceKind.ONE, PieceKind.ONE]
    assert classify_pieces(preset("e").spec)[0].kind is PieceKind.MIXED


def test_support_sets_of_hexagon() -> None:
    sets = support_sets(preset("c").spec, 0.75, 0.5)
    assert sets.s1 == (Span(1.0, 1.5),)
    assert sets.s2 == (Span(0.5, 0.75),)
    assert sets.s3 == (Span(0.0, 0.25),)
    assert sets.j1 == Span(1.5, math.inf)
    assert sets.j2 == Span(-math.inf, 0.0)
    assert sets.j3 == Span(0.75, 1.0)
    assert sets.j4 == Span(0.25, 0.5)
    assert sets.k == ()


def test_support_sets_half_density_and_top_edge() -> None:
    spec = preset("a").spec
    assert support_sets(spec, 0.0, 0.5).s2 == (Span(-0.5, 0.0),)
    assert support_sets(spec, 0.2, 1.0).s2 == ()


def test_support_sets_rejects_points_outside_trapezoid() -> None:
    with pytest.raises(OutOfTrapezoid):
        support_sets(preset("a").spec, 1.5, 0.5)


def test_mean_of_presets() -> None:
    assert mean(preset("c").spec) == pytest.approx(0.75, abs=1e-15)
    assert mean(preset("a").spec) == pytest.approx(0.0, abs=1e-15)


def test_measure_file_round_trip(tmp_path: Path) -> None:
    spec = preset("d").spec
    target = tmp_path / "nested" / "d.json"
    write_measure(spec, target)
    assert read_measure(target) == spec


def test_measure_reader_rejects_non_finite_numbers() -> None:
    with pytest.raises(ValueError):
        loads_measure('{"pieces": [{"interval": [0, NaN], "poly": [1]}]}')
    with pytest.raises(ValueError):
        loads_measure('{"pieces": [{"interval": [0, 2], "poly": [Infinity]}]}')

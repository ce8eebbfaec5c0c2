from __future__ import annotations

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

from src.errors import AmbiguousMultiplicity, OutOfTrapezoid, PointOnSingularSet
from src.measure import Span, mean
from src.presets import C_D, preset
from src.saddle import (
    NEWTON_RESIDUAL,
    UPPER_HALF,
    Rectangle,
    chi_eta_from_w,
    count_roots,
    f_prime,
    liquid_membership,
    make_context,
    multiplicity_from_derivatives,
    real_root_multiplicity,
    real_roots_in,
    root_bound_violations,
    root_report,
    saddle_function,
    upper_root,
)

SQRT2 = math.sqrt(2.0)


def test_chi_eta_from_w_at_i() -> None:
    chi, eta = chi_eta_from_w(preset("a").spec, 1j)
    assert chi == pytest.approx(SQRT2 - 1, abs=1e-12)
    assert eta == pytest.approx(3 - 2 * SQRT2, abs=1e-12)


def test_chi_eta_far_away_tends_to_tangency() -> None:
    for name in "abc":
        spec = preset(name).spec
        chi, eta = chi_eta_from_w(spec, 1e4j + 3.0)
        assert chi == pytest.approx(0.5 + mean(spec), abs=1e-3)
        assert eta == pytest.approx(0.0, abs=1e-3)


def test_chi_eta_rejects_real_points() -> None:
    with pytest.raises(ValueError):
        chi_eta_from_w(preset("a").spec, 2.0)


def test_f_prime_vanishes_at_its_upper_root() -> None:
    spec = preset("a").spec
    ctx = make_context(spec, SQRT2 - 1, 3 - 2 * SQRT2)
    assert abs(f_prime(ctx, 1j)) < 1e-12


def test_f_prime_matches_logarithmic_form() -> None:
    spec = preset("c").spec
    ctx = make_context(spec, 0.9, 0.6)
    for w in (0.3 + 0.4j, 2.0 + 0.1j, -1.0 + 3.0j):
        expected = (
            preset("c").closed_c(w) + np.log(w - ctx.chi) - np.log(w - ctx.lower)
        )
        assert f_prime(ctx, w) == pytest.approx(complex(expected), abs=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.floats(-3, 3), st.floats(1e-2, 5))
def test_f_prime_is_conjugate_symmetric(re: float, im: float) -> None:
    ctx = make_context(preset("c").spec, 0.75, 0.5)
    w = complex(re, im)
    assert f_prime(ctx, w.conjugate()) == pytest.approx(f_prime(ctx, w).conjugate(), abs=1e-12)


def test_f_prime_rejects_singular_points() -> None:
    ctx = make_context(preset("a").spec, 0.0, 0.5)
    with pytest.raises(PointOnSingularSet):
        f_prime(ctx, -0.25)


def test_context_rejects_points_outside_trapezoid() -> None:
    with pytest.raises(OutOfTrapezoid):
        make_context(preset("a").spec, 1.2, 0.5)
    with pytest.raises(OutOfTrapezoid):
        make_context(preset("a").spec, -0.5, 0.2)


def test_upper_root_recovers_i() -> None:
    ctx = make_context(preset("a").spec, SQRT2 - 1, 3 - 2 * SQRT2)
    root = upper_root(ctx)
    assert root is not None
    assert abs(root - 1j) < 1e-8


def test_upper_root_near_top_of_hexagon() -> None:
    ctx = make_context(preset("c").spec, 0.75, 0.9)
    root = upper_root(ctx)
    assert root is not None and root.imag > 0
    assert abs(f_prime(ctx, root)) < 1e-10


def test_upper_root_absent_on_top_edge() -> None:
    ctx = make_context(preset("a").spec, 0.3, 1.0)
    assert upper_root(ctx) is None


@pytest.mark.parametrize("name", list("abcd"))
def test_round_trip_through_liquid_region(name: str) -> None:
    spec = preset(name).spec
    rng = np.random.default_rng(11)
    for _ in range(4):
        w = complex(rng.uniform(spec.a - 0.5, spec.b + 0.5), rng.uniform(0.2, 2.0))
        chi, eta = chi_eta_from_w(spec, w)
        ctx = make_context(spec, chi, eta)
        root = upper_root(ctx)
        assert root is not None
        assert abs(root - w) < 1e-8


def test_membership_examples() -> None:
    spec = preset("a").spec
    assert liquid_membership(make_context(spec, 0.0, 0.5))[0]
    assert not liquid_membership(make_context(spec, 0.5, 0.0))[0]
    assert not liquid_membership(make_context(spec, 1.0, 0.5))[0]


def test_count_roots_in_rectangle_and_on_j() -> None:
    spec = preset("a").spec
    ctx = make_context(spec, SQRT2 - 1, 3 - 2 * SQRT2)
    assert count_roots(ctx, Rectangle(-0.5, 0.5, 0.5, 1.5)) == 1
    assert count_roots(ctx, Rectangle(1.5, 2.5, 0.5, 1.5)) == 0
    fn = saddle_function(ctx)
    for span in fn.decomposition.j_intervals.values():
        assert count_roots(ctx, span) == 0


def test_count_roots_eta_zero_has_none_on_j3_j4() -> None:
    ctx = make_context(preset("c").spec, 1.25, 0.0)
    sets = saddle_function(ctx).decomposition
    for span in (sets.j3, sets.j4):
        if span is not None:
            assert count_roots(ctx, span) == 0


def test_root_report_of_liquid_point() -> None:
    ctx = make_context(preset("a").spec, 0.0, 0.5)
    report = root_report(ctx)
    assert report.count(UPPER_HALF) == 2
    assert report.upper is not None
    assert root_bound_violations(ctx, report) == []


@pytest.mark.parametrize("name", ["a", "c"])
def test_root_bounds_on_random_trapezoid_points(name: str) -> None:
    spec = preset(name).spec
    rng = np.random.default_rng(5)
    for _ in range(8):
        eta = rng.uniform(0.05, 0.95)
        lower = rng.uniform(spec.a, spec.b - (1 - eta))
        chi = lower + 1 - eta
        ctx = make_context(spec, chi, eta)
        assert root_bound_violations(ctx) == []


def test_multiplicity_on_hexagon_edge() -> None:
    chi, eta = preset("c").closed_edge(2.0)
    ctx = make_context(preset("c").spec, chi, eta)
    assert abs(f_prime(ctx, 2.0)) < 1e-12
    assert real_root_multiplicity(ctx, 2.0) == 2


def test_multiplicity_at_zero_of_c() -> None:
    ctx = make_context(preset("b").spec, 1.5, 1.0)
    assert real_root_multiplicity(ctx, 1.5) == 1


def test_multiplicity_of_double_root_at_run_end() -> None:
    c = C_D
    ctx = make_context(preset("d").spec, 4 / 3, 5 / 9 + 4 / (27 * (c - 1)))
    assert abs(f_prime(ctx, 4 / 3)) < 1e-10
    assert real_root_multiplicity(ctx, 4 / 3) == 2


def test_multiplicity_from_derivatives_rules() -> None:
    assert multiplicity_from_derivatives(1.0, 0.0, 0.0) == 1
    assert multiplicity_from_derivatives(1e-12, 2.0, 1.0) == 2
    assert multiplicity_from_derivatives(0.0, 1e-10, 3.0) == 3
    with pytest.raises(AmbiguousMultiplicity):
        multiplicity_from_derivatives(0.0, 0.0, 0.0)


def test_real_interval_across_singular_set_is_rejected() -> None:
    from src.errors import BoundaryTooClose

    ctx = make_context(preset("a").spec, 0.0, 0.5)
    with pytest.raises(BoundaryTooClose):
        count_roots(ctx, Span(-2.0, 0.0))


def test_no_upper_root_just_outside_the_edge() -> None:
    spec = preset("a").spec
    assert upper_root(make_context(spec, 0.73264, 0.07099)) is None


def test_membership_settles_near_hexagon_boundary() -> None:
    ctx = make_context(preset("c").spec, 1.47570, 0.44145)
    inside, witness = liquid_membership(ctx)
    if inside:
        assert abs(f_prime(ctx, witness)) < 1e-10
    assert root_bound_violations(ctx) == []


def test_upper_root_meets_strict_residual() -> None:
    spec = preset("c").spec
    w = 0.6 + 0.3j
    ctx = make_context(spec, *chi_eta_from_w(spec, w))
    root = upper_root(ctx)
    assert root is not None
    slope = saddle_function(ctx).transform.derivative(root, 1)
    assert abs(f_prime(ctx, root)) <= NEWTON_RESIDUAL * (1 + abs(slope))


def test_simple_roots_next_to_a_log_singularity() -> None:
    ctx = make_context(preset("a").spec, 0.99309, 0.35987)
    span = saddle_function(ctx).real_intervals()["J1"]
    roots = real_roots_in(ctx, span)
    assert [m for _, m in roots] == [1, 1]
    assert roots[0][0] == pytest.approx(1.000226, abs=1e-5)
    assert roots[1][0] == pytest.approx(1.542971, abs=1e-5)
    assert root_bound_violations(ctx) == []


@pytest.mark.parametrize("name", list("abcd"))
def test_far_points_map_into_trapezoid(name: str) -> None:
    spec = preset(name).spec
    for height in (1e2, 1e3, 1e4, 1e5, 1e6):
        for u in (spec.a - 1.0, 0.5 * (spec.a + spec.b), spec.b + 3.0):
            chi, eta = chi_eta_from_w(spec, complex(u, height))
            assert -1e-12 <= eta <= 1.0
            assert chi <= spec.b + 1e-12
            assert chi + eta - 1.0 >= spec.a - 1e-12

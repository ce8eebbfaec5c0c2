from __future__ import annotations

import math
import sys
from pathlib import Path

import numpy as np
import pytest

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from src.errors import UnknownPreset
from src.frontier import assemble_boundary, classify_case, edge_point
from src.measure import geometry, loads_measure, total_mass
from src.presets import C1_D, C2_D, C_D, PRESETS, export, preset


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_presets_are_valid_measures(name: str) -> None:
    item = preset(name)
    assert item.name == name
    assert total_mass(item.spec) == pytest.approx(1.0, abs=1e-12)
    assert any(special.kind == "tangency" for special in item.special_points)


def test_preset_lookup() -> None:
    assert preset(" C ") is preset("c")
    with pytest.raises(UnknownPreset) as info:
        preset("z")
    assert "z" in str(info.value)
    assert not str(info.value).startswith("'")


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_export_round_trips(name: str) -> None:
    assert loads_measure(export(name)) == preset(name).spec


@pytest.mark.parametrize("name", list("abcd"))
def test_closed_edge_on_every_component(name: str) -> None:
    item = preset(name)
    for component in geometry(item.spec).r_components:
        if component.is_point:
            continue
        for s in np.linspace(-0.95, 0.95, 100):
            t = component.span.from_unit(float(s))
            assert edge_point(item.spec, t) == pytest.approx(item.closed_edge(t), abs=1e-9), (name, t)


def test_hexagon_landmarks() -> None:
    labels = [special.label for special in preset("c").special_points]
    assert labels == [f"p_{k}" for k in range(6)]
    assert preset("c").point("p_2").point == (0.5, 0.75)
    assert preset("c").point("p_2").expected_case == 6


def test_three_run_constants() -> None:
    assert C_D == pytest.approx((23 + math.sqrt(217)) / 12, abs=1e-15)
    assert 6 * C_D**2 - 23 * C_D + 13 == pytest.approx(0.0, abs=1e-12)
    assert 1 / 3 < C2_D < 1
    assert 4 / 3 < C1_D < C_D
    item = preset("d")
    assert classify_case(item.spec, C_D)[0] == 8
    assert classify_case(item.spec, C_D + 1 / 3)[0] == 6
    cusp = item.point("p_5")
    assert cusp.point == pytest.approx((4 / 3, 5 / 9 + 4 / (27 * (C_D - 1))), abs=1e-15)
    assert cusp.expected_case == 7


def test_quartic_density_is_flagged_partial() -> None:
    item = preset("f")
    assert item.closed_edge is None
    assert not item.complete
    assert {s.kind for s in item.special_points} == {"tangency", "edge_limit"}


@pytest.mark.parametrize("name", ["d", "e"])
def test_boundary_completeness_flag(name: str) -> None:
    item = preset(name)
    assert assemble_boundary(item.spec, 32).complete is item.complete

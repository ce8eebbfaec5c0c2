from __future__ import annotations

import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from src import verify
from src.errors import ConvergenceFailure
from src.verify import SUITES, CheckResult, SuiteResult, run_suite


def test_suite_result_flags_failures() -> None:
    result = SuiteResult("x", (CheckResult("ok", True), CheckResult("broken", False, "detalle")))
    assert not result.passed
    assert [c.name for c in result.failures] == ["broken"]
    payload = result.as_dict()
    assert payload["passed"] is False
    assert payload["checks"][1] == {"name": "broken", "passed": False, "detail": "detalle"}


def test_unknown_suite() -> None:
    with pytest.raises(ValueError):
        run_suite("nope")


@pytest.mark.parametrize("name", ["kernel", "combinatorics", "presets"])
def test_quick_suites_pass(name: str) -> None:
    result = run_suite(name, quick=True, seed=3)
    assert result.name == name
    assert result.checks
    assert result.passed, [(c.name, c.detail) for c in result.failures]


def test_quick_frontier_suite_passes() -> None:
    result = run_suite(" Frontier ", quick=True)
    assert {c.name for c in result.checks} == {"landmarks", "case_walk", "flat_probes", "completeness"}
    assert result.passed, [(c.name, c.detail) for c in result.failures]


def test_suite_names() -> None:
    assert set(SUITES) == {"kernel", "combinatorics", "saddle", "frontier", "presets"}


def test_root_bounds_fail_on_solver_error(monkeypatch) -> None:
    calls = {"n": 0}

    def flaky(ctx):
        calls["n"] += 1
        if calls["n"] == 3:
            raise ConvergenceFailure("Newton no converge", context={"chi": ctx.chi})
        return []

    monkeypatch.setattr(verify, "root_bound_violations", flaky)
    result = run_suite("saddle", quick=True, seed=1)
    root_bounds = next(c for c in result.checks if c.name == "root_bounds")
    assert not root_bounds.passed
    assert "Newton no converge" in root_bounds.detail
    assert not result.passed

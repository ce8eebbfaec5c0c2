"""Invariant suites run by ``verify --suite``.

Each suite returns a :class:`SuiteResult` made of named checks; ``quick``
runs the same checks at reduced counts.
"""
from __future__ import annotations

import itertools
import logging
import math
import time
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .combinatorics import (
    count_patterns,
    empirical_correlation,
    enumerate_patterns,
    interlaces,
    interlaces_determinant,
    sample_patterns,
)
from .errors import FrontierError, SaddleError
from .frontier import assemble_boundary, boundary_probe, classify_case, edge_point, local_geometry, tangency_point
from .kernel import SiteCoord, TopRow, correlation, kernel, kernel_contour, phi, phi_compose, phi_finite_difference
from .measure import cauchy, geometry
from .presets import PRESETS, preset
from .saddle import chi_eta_from_w, make_context, root_bound_violations, upper_root

logger = logging.getLogger(__name__)

SUITES = ("kernel", "combinatorics", "saddle", "frontier", "presets")


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class SuiteResult:
    name: str
    checks: tuple[CheckResult, ...] = field(default_factory=tuple)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> tuple[CheckResult, ...]:
        return tuple(check for check in self.checks if not check.passed)

    def as_dict(self) -> dict[str, object]:
        return {
            "suite": self.name,
            "passed": self.passed,
            "elapsed": round(self.elapsed, 3),
            "checks": [
                {"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks
            ],
        }


def _tops(max_n: int, max_spread: int) -> list[TopRow]:
    """Top rows with x_n = 0, 2 ≤ n ≤ max_n and spread ≤ max_spread."""

    out = []
    for n in range(2, max_n + 1):
        for spread in range(n - 1, max_spread + 1):
            for middle in itertools.combinations(range(1, spread), n - 2):
                out.append(TopRow([spread, *sorted(middle, reverse=True), 0]))
    return out


def _sites(top: TopRow) -> list[SiteCoord]:
    return [SiteCoord(u=u, r=r) for r in range(1, top.n) for u in range(top.lowest(r), top.x[0] + 1)]


# -- kernel ----------------------------------------------------------------------


def _determinantal_identity(quick: bool, seed: int) -> CheckResult:
    max_n, max_spread, max_size = (3, 4, 2) if quick else (4, 6, 3)
    checked = 0
    for top in _tops(max_n, max_spread):
        sites = _sites(top)
        for size in range(1, max_size + 1):
            for chosen in itertools.combinations(sites, size):
                exact = correlation(top, list(chosen))
                oracle = empirical_correlation(top, list(chosen))
                checked += 1
                if exact != oracle:
                    return CheckResult(
                        "determinantal_identity",
                        False,
                        f"top={list(top.x)} sites={[s.as_tuple() for s in chosen]}: {exact} != {oracle}",
                    )
    return CheckResult("determinantal_identity", True, f"{checked} conjuntos de sitios")


def _contour_agreement(quick: bool, seed: int) -> CheckResult:
    rng = np.random.default_rng(seed)
    queries = 5 if quick else 20
    worst = 0.0
    for _ in range(queries):
        n = int(rng.integers(2, 7))
        x = sorted(rng.choice(np.arange(0, n + 6), size=n, replace=False).tolist(), reverse=True)
        top = TopRow(x)
        a, b = (SiteCoord(u=int(rng.integers(top.lowest(r), top.x[0] + 1)), r=r)
                for r in rng.integers(1, n, size=2).tolist())
        gap = abs(kernel_contour(top, a, b) - float(kernel(top, a, b).value))
        worst = max(worst, gap)
    return CheckResult("contour_agreement", worst < 1e-6, f"máxima discrepancia {worst:.3e} en {queries} consultas")


def _phi_identities(quick: bool, seed: int) -> CheckResult:
    bound = 4 if quick else 8
    for n in range(2, 7):
        for r in range(1, n):
            for s in range(r + 1, n + 1):
                for u in range(-bound, bound + 1):
                    for v in range(-bound, bound + 1):
                        if phi_finite_difference(n, r, s, u, v) != phi(r, s, u, v):
                            return CheckResult("phi_identities", False, f"diferencias finitas en {(n, r, s, u, v)}")
                        for m in range(r + 1, s):
                            if phi_compose(r, m, s, u, v) != phi(r, s, u, v):
                                return CheckResult("phi_identities", False, f"semigrupo en {(r, m, s, u, v)}")
    return CheckResult("phi_identities", True)


# -- combinatorics -------------------------------------------------------------


def _count_sweep(quick: bool, seed: int) -> CheckResult:
    max_n, max_spread = (4, 5) if quick else (5, 7)
    for top in _tops(max_n, max_spread):
        listed = sum(1 for _ in enumerate_patterns(top))
        if listed != count_patterns(top):
            return CheckResult("count_sweep", False, f"top={list(top.x)}: {count_patterns(top)} != {listed}")
    return CheckResult("count_sweep", True)


def _sampler_uniformity(quick: bool, seed: int) -> CheckResult:
    top = TopRow([6, 4, 2, 0])
    size, threshold = (20_000, 0.05) if quick else (100_000, 0.02)
    patterns = [p.rows for p in enumerate_patterns(top)]
    counts = Counter(p.rows for p in sample_patterns(top, seed, size))
    distance = 0.5 * sum(abs(counts[rows] / size - 1 / len(patterns)) for rows in patterns)
    stray = set(counts) - set(patterns)
    return CheckResult(
        "sampler_uniformity",
        distance < threshold and not stray,
        f"distancia de variación total {distance:.4f} con {size} muestras",
    )


def _interlacing_equivalence(quick: bool, seed: int) -> CheckResult:
    rng = np.random.default_rng(seed)
    trials = 500 if quick else 5000
    for _ in range(trials):
        k = int(rng.integers(1, 6))
        upper = sorted(rng.choice(np.arange(-8, 9), size=k + 1, replace=False).tolist(), reverse=True)
        lower = sorted(rng.choice(np.arange(-8, 9), size=k, replace=False).tolist(), reverse=True)
        if interlaces(upper, lower) != interlaces_determinant(upper, lower):
            return CheckResult("interlacing_equivalence", False, f"{upper} / {lower}")
    return CheckResult("interlacing_equivalence", True, f"{trials} pares de filas")


# -- saddle ------------------------------------------------------------------


def _homeomorphism_round_trip(quick: bool, seed: int) -> CheckResult:
    rng = np.random.default_rng(seed)
    per_preset = 20 if quick else 200
    worst = abs(complex(*chi_eta_from_w(preset("a").spec, 1j)) - complex(math.sqrt(2) - 1, 3 - 2 * math.sqrt(2)))
    if worst > 1e-12:
        return CheckResult("homeomorphism_round_trip", False, f"valor en i: error {worst:.3e}")
    worst = 0.0
    for name in "abcd":
        spec = preset(name).spec
        for _ in range(per_preset):
            w = complex(rng.uniform(spec.a - 0.5, spec.b + 0.5), rng.uniform(0.2, 2.0))
            root = upper_root(make_context(spec, *chi_eta_from_w(spec, w)))
            gap = math.inf if root is None else abs(root - w)
            worst = max(worst, gap)
    return CheckResult("homeomorphism_round_trip", worst < 1e-8, f"máximo error {worst:.3e}")


def _root_bounds(quick: bool, seed: int) -> CheckResult:
    rng = np.random.default_rng(seed)
    per_preset = 25 if quick else 500
    total = 0
    for name in sorted(PRESETS):
        spec = preset(name).spec
        for _ in range(per_preset):
            eta = rng.uniform(0.05, 0.95)
            lower = rng.uniform(spec.a, spec.b - (1 - eta))
            chi = lower + 1 - eta
            total += 1
            try:
                problems = root_bound_violations(make_context(spec, chi, eta))
            except SaddleError as exc:
                return CheckResult("root_bounds", False, f"preset {name} en ({chi:.6g}, {eta:.6g}): {exc}")
            if problems:
                return CheckResult("root_bounds", False, f"preset {name} en ({chi:.6g}, {eta:.6g}): {problems}")
    return CheckResult("root_bounds", True, f"{total} puntos")


# -- frontier ----------------------------------------------------------------


def _landmarks(quick: bool, seed: int) -> CheckResult:
    for name in "abcd":
        item = preset(name)
        for special in item.special_points:
            if special.kind == "tangency":
                point = tangency_point(item.spec)
            else:
                point = edge_point(item.spec, special.t)
                if special.expected_case is not None and classify_case(item.spec, special.t)[0] != special.expected_case:
                    return CheckResult("landmarks", False, f"{name}/{special.label}: caso inesperado")
            if math.dist(point, special.point) > special.tolerance:
                return CheckResult("landmarks", False, f"{name}/{special.label}: {point} != {special.point}")
    return CheckResult("landmarks", True)


def _case_walk(quick: bool, seed: int) -> CheckResult:
    spec = preset("c").spec
    seen: set[int] = set()
    for component in geometry(spec).r_components:
        if component.is_point:
            seen.add(classify_case(spec, component.lo)[0])
            continue
        for s in np.linspace(-0.9, 0.9, 7 if quick else 25):
            seen.add(classify_case(spec, component.span.from_unit(float(s)))[0])
    if not seen <= {1, 3, 5, 6, 8}:
        return CheckResult("case_walk", False, f"casos en el hexágono: {sorted(seen)}")
    cusp = local_geometry(preset("d").spec, 4 / 3)
    ok = (
        cusp.case == 7
        and abs(cusp.a1) < 1e-6
        and abs(cusp.b1) < 1e-6
        and abs(cusp.a2) > 1e-6
        and abs(cusp.b2) > 1e-6
    )
    return CheckResult("case_walk", ok, f"hexágono {sorted(seen)}; cúspide en 4/3: caso {cusp.case}")


def _flat_probes(quick: bool, seed: int) -> CheckResult:
    spec = preset("e").spec
    worst = 0.0
    for t in (-1.0, 0.0, 1.0):
        probe = boundary_probe(spec, t, 20)
        worst = max(worst, probe.distance((t, 1.0)))
        raw = [math.dist(p, (t, 1.0)) for p in probe.points[-10:]]
        if any(later >= earlier for earlier, later in zip(raw, raw[1:])):
            return CheckResult("flat_probes", False, f"t={t}: distancias no decrecientes")
    return CheckResult("flat_probes", worst < 2e-2, f"máxima distancia extrapolada {worst:.3e}")


def _completeness(quick: bool, seed: int) -> CheckResult:
    names = "cf" if quick else sorted(PRESETS)
    wrong = [n for n in names if assemble_boundary(preset(n).spec, 32).complete is not preset(n).complete]
    return CheckResult("completeness", not wrong, f"incorrectos: {wrong}" if wrong else "")


# -- presets -----------------------------------------------------------------


def _closed_forms(quick: bool, seed: int) -> CheckResult:
    count = 20 if quick else 100
    rng = np.random.default_rng(seed)
    for name in sorted(PRESETS):
        item = preset(name)
        for _ in range(count // 4):
            w = complex(rng.uniform(item.spec.a - 1, item.spec.b + 1), rng.uniform(0.05, 2.0))
            expected = item.closed_c(w)
            if abs(expected - cauchy(item.spec, w)) > 1e-9 * max(1.0, abs(expected)):
                return CheckResult("closed_forms", False, f"{name}: C({w})")
        if item.closed_edge is None or name not in "abcd":
            continue
        for component in geometry(item.spec).r_components:
            if component.is_point:
                continue
            for s in np.linspace(-0.95, 0.95, count):
                t = component.span.from_unit(float(s))
                if math.dist(edge_point(item.spec, t), item.closed_edge(t)) > 1e-9:
                    return CheckResult("closed_forms", False, f"{name}: borde en t={t}")
    return CheckResult("closed_forms", True)


_CHECKS: dict[str, tuple[Callable[[bool, int], CheckResult], ...]] = {
    "kernel": (_phi_identities, _determinantal_identity, _contour_agreement),
    "combinatorics": (_count_sweep, _interlacing_equivalence, _sampler_uniformity),
    "saddle": (_homeomorphism_round_trip, _root_bounds),
    "frontier": (_landmarks, _case_walk, _flat_probes, _completeness),
    "presets": (_closed_forms,),
}


def _run_check(check: Callable[[bool, int], CheckResult], quick: bool, seed: int) -> CheckResult:
    try:
        return check(quick, seed)
    except FrontierError as exc:
        return CheckResult(check.__name__.lstrip("_"), False, str(exc))


def run_suite(name: str, *, quick: bool = False, seed: int = 0) -> SuiteResult:
    """Run one suite, or every suite when ``name`` is ``all``."""

    key = name.strip().lower()
    if key == "all":
        names = SUITES
    elif key in _CHECKS:
        names = (key,)
    else:
        raise ValueError(f"suite desconocida: {name!r} (disponibles: all, {', '.join(SUITES)})")

    started = time.perf_counter()
    checks: list[CheckResult] = []
    for suite in names:
        for check in _CHECKS[suite]:
            result = _run_check(check, quick, seed)
            if len(names) > 1:
                result = CheckResult(f"{suite}.{result.name}", result.passed, result.detail)
            logger.info("%s %s %s", "OK " if result.passed else "FALLO", result.name, result.detail)
            checks.append(result)
    return SuiteResult(name=key, checks=tuple(checks), elapsed=time.perf_counter() - started)


__all__ = ["CheckResult", "SUITES", "SuiteResult", "run_suite"]

"""Command line front door for frontier curves, kernels, samples and checks."""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import sys
from typing import Any, Callable, Sequence

from dotenv import load_dotenv

from .combinatorics import sample_patterns, tiling_to_svg, to_tiling
from .errors import FrontierError
from .frontier import (
    assemble_boundary,
    boundary_probe,
    boundary_to_json,
    edge_csv,
    local_geometry,
    sample_edge,
)
from .kernel import SiteCoord, TopRow, default_contours, kernel, kernel_contour, query_payload
from .logging_config import configure_logging
from .measure import MeasureSpec, read_measure, write_text_atomic
from .presets import PRESETS, export, preset
from .saddle import liquid_membership, make_context
from .settings import Settings, get_settings
from .verify import SUITES, run_suite

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2


def _finite(value: Any) -> Any:
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


def _dumps(payload: Any) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False, allow_nan=False) + "\n"


def _emit(text: str, out: str | None) -> None:
    if out:
        write_text_atomic(out, text)
        logger.info("Resultado escrito en %s", out)
    else:
        sys.stdout.write(text)
        sys.stdout.flush()


def _load_measure(args: argparse.Namespace) -> MeasureSpec:
    if args.preset:
        return preset(args.preset).spec
    return read_measure(args.measure)


def _parse_toprow(value: str) -> TopRow:
    try:
        entries = [int(part) for part in value.split(",") if part.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"fila superior inválida: {value!r}") from exc
    try:
        return TopRow(entries)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"fila superior inválida: {value!r}") from exc


# -- verbs -------------------------------------------------------------------


def _cmd_frontier(args: argparse.Namespace, settings: Settings) -> int:
    spec = _load_measure(args)
    budget = args.budget or settings.frontier_budget
    if args.format == "json":
        assembly = assemble_boundary(
            spec,
            budget,
            resolution_tolerance=settings.probe_resolution_tolerance,
            tolerance=settings.multiplicity_tolerance,
        )
        _emit(boundary_to_json(assembly), args.out)
    else:
        samples = sample_edge(spec, budget, tolerance=settings.multiplicity_tolerance)
        logger.info("%d muestras del borde", len(samples))
        _emit(edge_csv(samples), args.out)
    return EXIT_OK


def _cmd_classify(args: argparse.Namespace, settings: Settings) -> int:
    spec = _load_measure(args)
    rows = []
    for t in args.t:
        sample = local_geometry(spec, t, tolerance=settings.multiplicity_tolerance)
        row = {key: _finite(value) for key, value in sample.as_row().items()}
        if args.probe:
            probe = boundary_probe(spec, t, settings.probe_depth)
            row["probe"] = {"limit": list(probe.limit), "extrapolated": list(probe.extrapolated)}
        rows.append(row)
    if args.format == "csv":
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=list(rows[0]), lineterminator="\n", extrasaction="ignore")
        writer.writeheader()
        writer.writerows(rows)
        _emit(buffer.getvalue(), args.out)
    else:
        _emit(_dumps(rows), args.out)
    return EXIT_OK


def _cmd_membership(args: argparse.Namespace, settings: Settings) -> int:
    spec = _load_measure(args)
    ctx = make_context(spec, args.chi, args.eta)
    inside, witness = liquid_membership(ctx, bottom=settings.root_bottom_height)
    payload = {
        "chi": args.chi,
        "eta": args.eta,
        "liquid": inside,
        "witness": None if witness is None else [witness.real, witness.imag],
    }
    _emit(_dumps(payload), args.out)
    return EXIT_OK


def _cmd_kernel(args: argparse.Namespace, settings: Settings) -> int:
    top: TopRow = args.toprow
    a = SiteCoord(u=args.u, r=args.r)
    b = SiteCoord(u=args.v, r=args.s)
    value = kernel(top, a, b)
    payload = query_payload(top, a, b, value)
    if args.contour:
        params = default_contours(top, a, b, settings.contour_nodes)
        approx = kernel_contour(top, a, b, params)
        payload["contour"] = {"re": approx.real, "im": approx.imag, "nodes": params.nodes}
    _emit(_dumps(payload), args.out)
    return EXIT_OK


def _cmd_sample(args: argparse.Namespace, settings: Settings) -> int:
    top: TopRow = args.toprow
    seed = settings.default_seed if args.seed is None else args.seed
    patterns = sample_patterns(top, seed, args.count)
    if args.format == "svg":
        _emit(tiling_to_svg(to_tiling(patterns[0])), args.out)
    elif args.format == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["sample", "r", "u"])
        for index, pattern in enumerate(patterns):
            for r, row in enumerate(pattern.rows, start=1):
                for u in row:
                    writer.writerow([index, r, u])
        _emit(buffer.getvalue(), args.out)
    else:
        payload = {"toprow": list(top.x), "seed": seed, "samples": [p.as_lists() for p in patterns]}
        _emit(_dumps(payload), args.out)
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace, settings: Settings) -> int:
    seed = settings.default_seed if args.seed is None else args.seed
    result = run_suite(args.suite, quick=args.quick, seed=seed)
    if args.format == "json":
        _emit(_dumps(result.as_dict()), args.out)
    else:
        lines = [f"{'OK' if c.passed else 'FALLO':5} {c.name} {c.detail}".rstrip() for c in result.checks]
        lines.append(f"{result.name}: {'OK' if result.passed else 'FALLO'} ({result.elapsed:.1f} s)")
        _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if result.passed else EXIT_DOMAIN


def _cmd_preset(args: argparse.Namespace, settings: Settings) -> int:
    if args.list:
        _emit("".join(f"{name}\t{preset(name).description}\n" for name in sorted(PRESETS)), args.out)
        return EXIT_OK
    if not args.name:
        raise FrontierError("indique un preset o use --list")
    _emit(export(args.name), args.out)
    return EXIT_OK


# -- parser ------------------------------------------------------------------


def _add_measure_source(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument("--measure", help="Fichero JSON con la medida límite")
    group.add_argument("--preset", choices=sorted(PRESETS), help="Uno de los ejemplos incluidos")


def _add_output(parser: argparse.ArgumentParser, formats: Sequence[str], default: str) -> None:
    parser.add_argument("--out", help="Fichero de salida (por defecto, salida estándar)")
    parser.add_argument("--format", choices=list(formats), default=default)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="frontier", description=__doc__)
    parser.add_argument("--log-level", help="Nivel de log (por defecto LOG_LEVEL o INFO)")
    verbs = parser.add_subparsers(dest="verb", required=True, metavar="verb")

    frontier = verbs.add_parser("frontier", help="Curva del borde o frontera completa")
    _add_measure_source(frontier)
    frontier.add_argument("--budget", type=int, help="Muestras iniciales del borde")
    _add_output(frontier, ("csv", "json"), "csv")
    frontier.set_defaults(handler=_cmd_frontier)

    classify = verbs.add_parser("classify", help="Caso y geometría local en puntos t de R")
    _add_measure_source(classify)
    classify.add_argument("--t", type=float, action="append", required=True, help="Parámetro (repetible)")
    classify.add_argument("--probe", action="store_true", help="Añade la sonda hacia (t, 1)")
    _add_output(classify, ("csv", "json"), "json")
    classify.set_defaults(handler=_cmd_classify)

    membership = verbs.add_parser("membership", help="¿Está (χ, η) en la región líquida?")
    _add_measure_source(membership)
    membership.add_argument("--chi", type=float, required=True)
    membership.add_argument("--eta", type=float, required=True)
    _add_output(membership, ("json",), "json")
    membership.set_defaults(handler=_cmd_membership)

    kernel_cmd = verbs.add_parser("kernel", help="Núcleo exacto K(u, r; v, s)")
    kernel_cmd.add_argument("--toprow", type=_parse_toprow, required=True, help="Fila superior, p. ej. 4,2,0")
    for flag in ("--u", "--r", "--v", "--s"):
        kernel_cmd.add_argument(flag, type=int, required=True)
    kernel_cmd.add_argument("--contour", action="store_true", help="Incluye la integral de contorno")
    _add_output(kernel_cmd, ("json",), "json")
    kernel_cmd.set_defaults(handler=_cmd_kernel)

    sample = verbs.add_parser("sample", help="Patrones uniformes con fila superior fija")
    sample.add_argument("--toprow", type=_parse_toprow, required=True)
    sample.add_argument("--seed", type=int, help="Semilla (por defecto DEFAULT_SEED)")
    sample.add_argument("--count", type=int, default=1)
    _add_output(sample, ("json", "csv", "svg"), "json")
    sample.set_defaults(handler=_cmd_sample)

    verify = verbs.add_parser("verify", help="Suites de invariantes")
    verify.add_argument("--suite", choices=["all", *SUITES], default="all")
    verify.add_argument("--quick", action="store_true", help="Recuentos reducidos")
    verify.add_argument("--seed", type=int)
    _add_output(verify, ("text", "json"), "text")
    verify.set_defaults(handler=_cmd_verify)

    preset_cmd = verbs.add_parser("preset", help="Exporta un ejemplo como JSON de medida")
    preset_cmd.add_argument("name", nargs="?", choices=sorted(PRESETS))
    preset_cmd.add_argument("--list", action="store_true")
    preset_cmd.add_argument("--out")
    preset_cmd.set_defaults(handler=_cmd_preset)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    """Parse ``argv`` and run one verb; returns the process exit code."""

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    if getattr(args, "count", 1) < 1:
        parser.print_usage(sys.stderr)
        sys.stderr.write("frontier: error: --count debe ser positivo\n")
        return EXIT_USAGE

    handler: Callable[[argparse.Namespace, Settings], int] = args.handler
    try:
        settings = get_settings()
        configure_logging(
            args.log_level or settings.log_level,
            settings.log_file,
            color=False if settings.no_color else None,
        )
        return handler(args, settings)
    except (FrontierError, ValueError, OSError) as exc:
        logger.error("%s: %s", type(exc).__name__, exc)
        return EXIT_DOMAIN


def main() -> None:
    load_dotenv()
    sys.exit(run(sys.argv[1:]))


__all__ = ["EXIT_DOMAIN", "EXIT_OK", "EXIT_USAGE", "build_parser", "main", "run"]


if __name__ == "__main__":
    main()

"""Lectura y escritura del formato JSON de medidas."""
from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path
from typing import Any

from .models import MeasureSpec
from .validation import validate


def _reject_constant(name: str) -> Any:
    raise ValueError(f"número no finito en el fichero de medida: {name}")


def loads_measure(text: str) -> MeasureSpec:
    try:
        payload = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ValueError(f"JSON de medida inválido: {exc}") from exc
    if not isinstance(payload, dict) or "pieces" not in payload:
        raise ValueError('el fichero de medida necesita una clave "pieces"')
    return validate(payload)


def dumps_measure(spec: MeasureSpec) -> str:
    payload = {
        "pieces": [
            {"interval": [piece.lo, piece.hi], "poly": list(piece.coeffs)}
            for piece in spec.pieces
        ]
    }
    # json renders floats with repr, the shortest round-tripping form
    return json.dumps(payload, indent=2, allow_nan=False) + "\n"


def read_measure(path: str | Path) -> MeasureSpec:
    return loads_measure(Path(path).read_text(encoding="utf-8"))


def write_text_atomic(path: str | Path, text: str) -> None:
    """Write ``text`` to a sibling temporary file then rename it over ``path``."""

    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(prefix=f".{target.name}.", dir=target.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)
        os.replace(tmp_name, target)
    except BaseException:
        Path(tmp_name).unlink(missing_ok=True)
        raise


def write_measure(spec: MeasureSpec, path: str | Path) -> None:
    write_text_atomic(path, dumps_measure(spec))


__all__ = [
    "dumps_measure",
    "loads_measure",
    "read_measure",
    "write_measure",
    "write_text_atomic",
]

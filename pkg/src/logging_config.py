"""Utilities for centralised logging configuration."""
from __future__ import annotations

import logging
import os
import sys
from pathlib import Path
from typing import Optional

DEFAULT_FORMAT = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"

_LEVEL_COLORS = {
    logging.DEBUG: "\033[36m",
    logging.INFO: "\033[32m",
    logging.WARNING: "\033[33m",
    logging.ERROR: "\033[31m",
    logging.CRITICAL: "\033[1;31m",
}
_RESET = "\033[0m"


class _ColorFormatter(logging.Formatter):
    """Wraps the level name in ANSI colours."""

    def format(self, record: logging.LogRecord) -> str:
        original = record.levelname
        color = _LEVEL_COLORS.get(record.levelno)
        if color:
            record.levelname = f"{color}{original}{_RESET}"
        try:
            return super().format(record)
        finally:
            record.levelname = original


def _level_from_name(level_name: str | int | None) -> int:
    if isinstance(level_name, int):
        return level_name
    if not level_name:
        return logging.INFO
    level_str = str(level_name).upper()
    return getattr(logging, level_str, logging.INFO)


def color_enabled(stream=None) -> bool:
    """True when ``stream`` is a terminal and NO_COLOR is unset or empty."""

    if os.environ.get("NO_COLOR"):
        return False
    stream = stream or sys.stderr
    isatty = getattr(stream, "isatty", None)
    return bool(isatty and isatty())


def configure_logging(
    level: str | int = "INFO",
    log_file: Optional[str] = None,
    *,
    color: bool | None = None,
) -> None:
    """Configure root handlers for the command line.

    Diagnostics go to stderr so that data written to stdout stays clean.
    """

    numeric_level = _level_from_name(level)
    root_logger = logging.getLogger()
    root_logger.setLevel(numeric_level)
    for handler in root_logger.handlers:
        handler.setLevel(numeric_level)

    if not root_logger.handlers:
        use_color = color_enabled() if color is None else color
        stream_handler = logging.StreamHandler(sys.stderr)
        stream_handler.setLevel(numeric_level)
        formatter_cls = _ColorFormatter if use_color else logging.Formatter
        stream_handler.setFormatter(formatter_cls(DEFAULT_FORMAT))
        root_logger.addHandler(stream_handler)

    if log_file:
        path = Path(log_file)
        path.parent.mkdir(parents=True, exist_ok=True)
        existing = [
            handler
            for handler in root_logger.handlers
            if isinstance(handler, logging.FileHandler)
            and getattr(handler, "baseFilename", None) == str(path.resolve())
        ]
        if not existing:
            file_handler = logging.FileHandler(path, encoding="utf-8")
            file_handler.setLevel(numeric_level)
            file_handler.setFormatter(logging.Formatter(DEFAULT_FORMAT))
            root_logger.addHandler(file_handler)


__all__ = ["DEFAULT_FORMAT", "color_enabled", "configure_logging"]

from __future__ import annotations

import logging
import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from src.errors import ConfigurationError, FrontierError, TooLarge
from src.logging_config import color_enabled, configure_logging
from src.settings import Settings, get_settings


@pytest.fixture()
def fresh_settings(monkeypatch):
    get_settings.cache_clear()
    monkeypatch.chdir(ROOT / "tests")
    yield monkeypatch
    get_settings.cache_clear()


def test_settings_defaults(fresh_settings) -> None:
    for name in ("LOG_LEVEL", "DEFAULT_SEED", "CONTOUR_NODES", "NO_COLOR"):
        fresh_settings.delenv(name, raising=False)
    settings = get_settings()
    assert settings.log_level == "INFO"
    assert settings.default_seed == 0
    assert settings.contour_nodes == 1024
    assert settings.probe_resolution_tolerance == pytest.approx(2e-2)
    assert settings.no_color is False
    assert get_settings() is settings


def test_settings_from_environment(fresh_settings) -> None:
    fresh_settings.setenv("DEFAULT_SEED", "99")
    fresh_settings.setenv("NO_COLOR", "1")
    fresh_settings.setenv("FRONTIER_BUDGET", "64")
    settings = get_settings()
    assert settings.default_seed == 99
    assert settings.no_color is True
    assert settings.frontier_budget == 64


def test_invalid_settings_raise_configuration_error(fresh_settings) -> None:
    fresh_settings.setenv("CONTOUR_NODES", "1000")
    with pytest.raises(ConfigurationError) as info:
        get_settings()
    assert "contour_nodes" in str(info.value)


def test_empty_no_color_keeps_color(monkeypatch) -> None:
    monkeypatch.setenv("NO_COLOR", "")
    assert Settings(no_color="").no_color is False


def test_color_disabled_by_no_color(monkeypatch) -> None:
    class _Tty:
        def isatty(self) -> bool:
            return True

    monkeypatch.delenv("NO_COLOR", raising=False)
    assert color_enabled(_Tty())
    monkeypatch.setenv("NO_COLOR", "1")
    assert not color_enabled(_Tty())


def test_configure_logging_adds_one_file_handler(tmp_path: Path) -> None:
    path = tmp_path / "logs" / "run.log"
    root = logging.getLogger()
    before = list(root.handlers)
    try:
        configure_logging("DEBUG", str(path), color=False)
        configure_logging("DEBUG", str(path), color=False)
        file_handlers = [
            h for h in root.handlers if isinstance(h, logging.FileHandler) and h.baseFilename == str(path.resolve())
        ]
        assert len(file_handlers) == 1
        logging.getLogger("src.tests").debug("hola")
        file_handlers[0].flush()
        assert "hola" in path.read_text(encoding="utf-8")
    finally:
        for handler in list(root.handlers):
            if handler not in before:
                root.removeHandler(handler)
                handler.close()


def test_error_context_rendering() -> None:
    plain = FrontierError("sin contexto")
    assert str(plain) == "sin contexto"
    error = TooLarge("demasiados patrones", context={"n": 9})
    assert str(error) == 'demasiados patrones (contexto={"n": 9})'
    assert error.as_dict() == {"error": "TooLarge", "detail": "demasiados patrones", "context": {"n": 9}}
    assert isinstance(error, FrontierError)

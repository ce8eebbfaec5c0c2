"""Runtime configuration sourced from environment variables and ``.env``."""
from __future__ import annotations

from functools import lru_cache

from pydantic import AliasChoices, Field, ValidationError, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from .errors import ConfigurationError


class Settings(BaseSettings):
    """Defaults used by the command line; library calls take explicit arguments."""

    model_config = SettingsConfigDict(
        env_file=".env", env_file_encoding="utf-8", extra="ignore"
    )

    log_level: str = "INFO"
    log_file: str | None = None
    no_color: bool = Field(False, validation_alias=AliasChoices("NO_COLOR", "no_color"))
    default_seed: int = Field(0, ge=0, lt=2**64)
    frontier_budget: int = Field(512, ge=16)
    contour_nodes: int = Field(1024, ge=256)
    probe_depth: int = Field(20, ge=1, le=60)
    multiplicity_tolerance: float = Field(1e-7, gt=0, lt=1)
    probe_resolution_tolerance: float = Field(2e-2, gt=0)
    root_bottom_height: float = Field(1e-6, gt=0)

    @field_validator("no_color", mode="before")
    @classmethod
    def _any_value_disables_color(cls, value: object) -> bool:
        # NO_COLOR is honoured whenever it is present and non-empty
        if isinstance(value, bool):
            return value
        return bool(str(value or "").strip())

    @field_validator("contour_nodes")
    @classmethod
    def _power_of_two(cls, value: int) -> int:
        if value & (value - 1):
            raise ValueError("contour_nodes debe ser potencia de dos")
        return value


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Return cached application settings."""

    try:
        return Settings()
    except ValidationError as exc:
        raise ConfigurationError(
            "Configuración inválida", context={"errors": exc.errors(include_url=False)}
        ) from exc


__all__ = ["Settings", "get_settings"]

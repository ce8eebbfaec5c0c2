"""Top rows, particle sites, contour parameters and exact kernel values."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from ..errors import InadmissibleSite, RowOutOfRange


class TopRow(BaseModel):
    """Fila superior x_1 > x_2 > … > x_n de un patrón de Gelfand-Tsetlin."""

    model_config = ConfigDict(extra="ignore", frozen=True)

    x: tuple[int, ...] = Field(..., min_length=1, description="Posiciones estrictamente decrecientes")

    def __init__(self, x: object = None, /, **data: object) -> None:
        if x is not None:
            data["x"] = x
        super().__init__(**data)

    @model_validator(mode="before")
    @classmethod
    def _from_sequence(cls, value: object) -> object:
        if isinstance(value, (list, tuple)):
            return {"x": value}
        return value

    @field_validator("x", mode="before")
    @classmethod
    def _integers(cls, value: object) -> object:
        if isinstance(value, (list, tuple)):
            out = []
            for item in value:
                if isinstance(item, bool) or (isinstance(item, float) and not item.is_integer()):
                    raise ValueError(f"posición no entera: {item!r}")
                out.append(int(item))
            return tuple(out)
        return value

    @field_validator("x", mode="after")
    @classmethod
    def _strictly_decreasing(cls, value: tuple[int, ...]) -> tuple[int, ...]:
        if any(left <= right for left, right in zip(value, value[1:])):
            raise ValueError(f"la fila superior debe ser estrictamente decreciente: {list(value)}")
        return value

    @property
    def n(self) -> int:
        return len(self.x)

    @property
    def spread(self) -> int:
        """x_1 − x_n."""

        return self.x[0] - self.x[-1]

    @property
    def is_dense(self) -> bool:
        return self.spread == self.n - 1

    def lowest(self, row: int) -> int:
        """Smallest position a particle of ``row`` can occupy."""

        return self.x[-1] + self.n - row

    def check_site(self, site: "SiteCoord") -> None:
        if not 1 <= site.r <= self.n - 1:
            raise RowOutOfRange(
                "la fila debe estar en 1..n−1",
                context={"r": site.r, "n": self.n},
            )
        if site.u < self.lowest(site.r):
            raise InadmissibleSite(
                "sitio por debajo de x_n + n − r",
                context={"u": site.u, "r": site.r, "minimo": self.lowest(site.r)},
            )


class SiteCoord(BaseModel):
    """Posición (u, r): columna ``u`` de la fila ``r``."""

    model_config = ConfigDict(extra="ignore", frozen=True)

    u: int = Field(..., description="Posición horizontal")
    r: int = Field(..., ge=1, description="Fila")

    @model_validator(mode="before")
    @classmethod
    def _from_pair(cls, value: object) -> object:
        if isinstance(value, (list, tuple)):
            if len(value) != 2:
                raise ValueError("un sitio necesita exactamente (u, r)")
            return {"u": value[0], "r": value[1]}
        return value

    def as_tuple(self) -> tuple[int, int]:
        return self.u, self.r


class ContourParams(BaseModel):
    """Two counter-clockwise circles: Γ (inner, variable z) inside γ (outer, variable w)."""

    model_config = ConfigDict(extra="ignore", frozen=True, populate_by_name=True)

    outer_center: float = Field(..., alias="gamma_center", allow_inf_nan=False)
    outer_radius: float = Field(..., alias="gamma_radius", gt=0, allow_inf_nan=False)
    inner_center: float = Field(..., alias="Gamma_center", allow_inf_nan=False)
    inner_radius: float = Field(..., alias="Gamma_radius", gt=0, allow_inf_nan=False)
    nodes: int = Field(1024, ge=256, description="Nodos del trapecio por círculo")

    @field_validator("nodes")
    @classmethod
    def _power_of_two(cls, value: int) -> int:
        if value & (value - 1):
            raise ValueError("nodes debe ser potencia de dos")
        return value

    @model_validator(mode="after")
    def _nested(self) -> "ContourParams":
        if abs(self.outer_center - self.inner_center) + self.inner_radius >= self.outer_radius:
            raise ValueError("Γ debe quedar estrictamente dentro de γ")
        return self


@dataclass(frozen=True)
class KernelValue:
    value: Fraction

    def as_dict(self) -> dict[str, str]:
        return {"num": str(self.value.numerator), "den": str(self.value.denominator)}

    def __float__(self) -> float:
        return float(self.value)


def query_payload(top: TopRow, site_ur: SiteCoord, site_vs: SiteCoord, value: KernelValue) -> dict[str, object]:
    """JSON result of one kernel query; big integers travel as decimal strings."""

    return {
        "n": top.n,
        "toprow": list(top.x),
        "query": {"u": site_ur.u, "r": site_ur.r, "v": site_vs.u, "s": site_vs.r},
        "value": value.as_dict(),
    }


__all__ = ["ContourParams", "KernelValue", "SiteCoord", "TopRow", "query_payload"]

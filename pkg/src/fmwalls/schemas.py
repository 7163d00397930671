"""Pydantic request models shared by the HTTP service and the CLI client."""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from pydantic import BaseModel, Field

from .lattice import InvalidInput, Surface
from .mukai import MukaiVector, parse_vector


class SurfaceSchema(BaseModel):
    name: str = "surface"
    gram: list[list[int]]
    ample: list[int]
    product_of_elliptic_curves: bool = False
    elliptic_classes: list[list[int]] | None = None

    def build(self) -> Surface:
        return Surface(
            self.gram,
            self.ample,
            name=self.name,
            product_of_elliptic_curves=self.product_of_elliptic_curves,
            elliptic_classes=self.elliptic_classes,
        )


class VectorSchema(BaseModel):
    r: int
    xi: list[int]
    a: int


VectorField = str | VectorSchema


def resolve_vector(field: VectorField, surface: Surface) -> MukaiVector:
    if isinstance(field, str):
        return parse_vector(field, surface.rank)
    if len(field.xi) != surface.rank:
        raise InvalidInput("vector_length", f"xi has {len(field.xi)} coordinates, rank is {surface.rank}")
    return MukaiVector(field.r, tuple(field.xi), field.a)


def parse_rational(value: Any) -> Fraction:
    """Accept "p/q", "p", integers, and {"num","den"} objects."""
    if isinstance(value, bool):
        raise InvalidInput("rational_syntax", f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInput("rational_syntax", f"not a rational: {value!r}") from exc
    if isinstance(value, dict) and set(value) == {"num", "den"}:
        try:
            return Fraction(int(value["num"]), int(value["den"]))
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInput("rational_syntax", f"not a rational: {value!r}") from exc
    raise InvalidInput("rational_syntax", f"not a rational: {value!r}")


RationalField = str | int | dict


class PairRequest(BaseModel):
    surface: SurfaceSchema
    x: VectorField
    y: VectorField


class FmRequest(BaseModel):
    surface: SurfaceSchema
    v: VectorField
    kind: str = "transform"  # transform | dual | shift


class WallsRequest(BaseModel):
    surface: SurfaceSchema
    v: VectorField
    tsq_min: RationalField = 0
    tsq_max: RationalField = 10
    radius: int = 12


class DecomposeRequest(BaseModel):
    surface: SurfaceSchema
    v: VectorField
    u: VectorField


class RegimesRequest(BaseModel):
    surface: SurfaceSchema
    v: VectorField
    radius: int = 12
    dual: bool = False


class VerdictRequest(BaseModel):
    surface: SurfaceSchema
    v: VectorField
    radius: int = 12


class AmpWallsRequest(BaseModel):
    surface: SurfaceSchema
    v: VectorField
    radius: int = 12


class AppendixRequest(BaseModel):
    surface: SurfaceSchema
    v: VectorField
    radius: int = 12


class OracleRequest(BaseModel):
    surface: SurfaceSchema
    v: VectorField
    box: int = 6
    tsq_max: RationalField = 10


class SweepRequest(BaseModel):
    surface: SurfaceSchema
    template: str
    variables: dict[str, tuple[int, int]] = Field(default_factory=dict)
    radius: int = 12


class Report(BaseModel):
    tool: dict
    command: str
    surface: str
    vector: str | None
    certified: bool | None
    payload: Any

"""Request/response models shared by the HTTP service and the CLI client.

Exact rationals travel as {"num": "...", "den": "..."} decimal strings so
arbitrary-precision values survive JSON and JavaScript clients; decimal
renderings are display-only and carry an explicit digit count.
"""

from __future__ import annotations

from fractions import Fraction

from pydantic import BaseModel, Field, model_validator


def fraction_decimal(f: Fraction, digits: int = 12) -> str:
    """Fixed-point decimal rendering, round half away from zero. Display only."""
    if digits < 0:
        raise ValueError("digits must be >= 0")
    sign = "-" if f < 0 else ""
    f = -f if f < 0 else f
    num, den = (f * 10**digits).numerator, (f * 10**digits).denominator
    q, r = divmod(num, den)
    if 2 * r >= den:
        q += 1
    if digits == 0:
        return sign + str(q)
    s = str(q).rjust(digits + 1, "0")
    return f"{sign}{s[:-digits]}.{s[-digits:]}"


class FractionOut(BaseModel):
    num: str
    den: str

    @classmethod
    def of(cls, f: Fraction) -> "FractionOut":
        return cls(num=str(f.numerator), den=str(f.denominator))

    def to_fraction(self) -> Fraction:
        return Fraction(int(self.num), int(self.den))


class EdgeListIn(BaseModel):
    """The JSON edge-list graph format: order plus [u, v] pairs."""

    order: int = Field(ge=1, le=62)
    edges: list[tuple[int, int]] = []


class GraphIn(BaseModel):
    """A graph given either as a graph6 string or as an edge list."""

    graph6: str | None = None
    edges: EdgeListIn | None = None

    @model_validator(mode="after")
    def _exactly_one(self) -> "GraphIn":
        if (self.graph6 is None) == (self.edges is None):
            raise ValueError("provide exactly one of graph6/edges")
        return self


class ComputeRequest(BaseModel):
    graph: GraphIn
    dp_limit: int | None = Field(default=None, ge=1)
    decimals: int = Field(default=12, ge=1, le=60)


class BoundsOut(BaseModel):
    lower: FractionOut
    upper: FractionOut


class ComputeResponse(BaseModel):
    graph6: str
    order: int
    edge_count: int
    likelihood: FractionOut
    likelihood_decimal: str
    aut: int
    paths: int
    bounds: BoundsOut


class PathsRequest(BaseModel):
    graph: GraphIn
    limit: int | None = Field(default=None, ge=1)
    tree: bool = False


class PathItem(BaseModel):
    ordering: list[int]
    back_degrees: list[int]
    weight: FractionOut


class PathsResponse(BaseModel):
    graph6: str
    order: int
    count: int
    total: FractionOut
    paths: list[PathItem]
    tree: dict | None = None


class BoundsRequest(BaseModel):
    graph: GraphIn


class BoundsResponse(BaseModel):
    graph6: str
    aut: int
    lower: FractionOut
    upper: FractionOut


class FamilyRequest(BaseModel):
    kind: str
    order: int = Field(ge=1, le=62)
    size: int = Field(default=0, ge=0)
    dp_limit: int | None = Field(default=None, ge=1)


class FamilyResponse(BaseModel):
    kind: str
    order: int
    size: int
    graph6: str
    closed_form: FractionOut | None
    dp: FractionOut
    agree: bool | None  # null when the family has no closed form


class SimulateRequest(BaseModel):
    graph: GraphIn
    samples: int = Field(default=100_000, ge=1)
    seed: int = Field(default=1, ge=0)
    compare: bool = False
    decimals: int = Field(default=12, ge=1, le=60)


class SimulateResponse(BaseModel):
    target: str
    samples: int
    seed: int
    hits: int
    p_hat: str
    stderr: str
    exact: FractionOut | None = None
    z: str | None = None


class CensusRequest(BaseModel):
    order: int = Field(ge=1)
    limit: int | None = Field(default=None, ge=1)


class CensusRow(BaseModel):
    graph6: str
    likelihood: FractionOut
    aut: int


class CensusResponse(BaseModel):
    order: int
    classes: int
    total: FractionOut
    rows: list[CensusRow]


class VerifyRequest(BaseModel):
    suites: list[str] | None = None
    max_order: int = Field(default=6, ge=1)
    samples: int = Field(default=100_000, ge=1)
    seed: int = Field(default=1, ge=0)


class CheckOut(BaseModel):
    name: str
    passed: bool
    detail: str


class VerifyResponse(BaseModel):
    passed: bool
    checks: list[CheckOut]


class HealthResponse(BaseModel):
    status: str
    version: str

"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from pydantic import BaseModel, Field, model_validator

from ..errors import ParameterError
from ..graph6 import parse_graph6
from ..graphs import Graph


class GraphPayload(BaseModel):
    """A graph, either as a graph6 record or as an explicit edge list."""

    graph6: str | None = None
    n: int | None = None
    edges: list[tuple[int, int]] | None = None
    lenient: bool = False

    @model_validator(mode="after")
    def _one_form(self):
        has_g6 = self.graph6 is not None
        has_edges = self.n is not None and self.edges is not None
        if has_g6 == has_edges:
            raise ValueError("provide either graph6 or (n, edges)")
        return self

    def to_graph(self) -> Graph:
        if self.graph6 is not None:
            return parse_graph6(self.graph6, lenient=self.lenient)
        return Graph.from_edges(self.n, self.edges)


class GraphInfo(BaseModel):
    n: int
    m: int
    graph6: str
    connected: bool
    components: list[list[int]]
    diameter: int | None = Field(
        None, description="null when the graph is disconnected"
    )
    small_class: str
    two_k2_free: bool


class CopnumRequest(BaseModel):
    graph: GraphPayload
    k_max: int = 4


class CopnumResponse(BaseModel):
    cop_number: int | None = Field(
        None, description="null when it exceeds k_max"
    )
    k_max: int
    capture_time: int | None = None


class TrapWitnessModel(BaseModel):
    u: int
    pair: tuple[int, int]
    type_one: bool
    type_two: bool
    connected: bool


class TrapsResponse(BaseModel):
    count: int
    witnesses: list[TrapWitnessModel]


class FindTrapResponse(BaseModel):
    outcome: str
    witness: TrapWitnessModel | None = None


class ForbiddenRequest(BaseModel):
    graph: GraphPayload
    kind: str = Field(description="one of 2k2, rk2, path, cantmove")
    param: int | None = Field(
        None, description="r for rk2, t for path; ignored otherwise"
    )

    @model_validator(mode="after")
    def _known_kind(self):
        if self.kind not in {"2k2", "rk2", "path", "cantmove"}:
            raise ValueError(f"unknown kind {self.kind!r}")
        return self


class ForbiddenResponse(BaseModel):
    found: bool
    vertices: list[int] | None = None
    detail: dict | None = None


class SimulateRequest(BaseModel):
    graph: GraphPayload
    strategy: str = Field(description="freeze or rk2")
    r: int = 3
    turn_cap: int | None = None

    @model_validator(mode="after")
    def _known_strategy(self):
        if self.strategy not in {"freeze", "rk2"}:
            raise ValueError(f"unknown strategy {self.strategy!r}")
        return self


class SimulateResponse(BaseModel):
    strategy: str
    cop_count: int
    captured: bool
    cop_turns: int
    turn_cap: int
    cop_start: list[int]
    robber_start: int
    events: list[tuple[str, int | list[int]]]


class VerifyRequest(BaseModel):
    checks: str = Field(description="comma-separated check list, or 'all'")
    n_max: int | None = None
    graph6_lines: list[str] | None = None
    k_max: int = 4
    workers: int = 1
    lenient: bool = False

    @model_validator(mode="after")
    def _one_source(self):
        if (self.n_max is None) == (self.graph6_lines is None):
            raise ValueError("provide exactly one of n_max / graph6_lines")
        return self


def witness_model(w) -> TrapWitnessModel:
    return TrapWitnessModel(
        u=w.u, pair=w.pair, type_one=w.type_one,
        type_two=w.type_two, connected=w.connected,
    )


def require_param(value: int | None, what: str) -> int:
    if value is None:
        raise ParameterError(f"{what} requires the param field")
    return value

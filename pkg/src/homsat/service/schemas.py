"""Request/response bodies for the HTTP service."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, Field, model_validator


class GraphSpec(BaseModel):
    """A graph, either by catalog name (K5, C7, PETERSEN, ...) or as the
    text of a graph file."""

    name: Optional[str] = None
    text: Optional[str] = None

    @model_validator(mode="after")
    def _exactly_one(self):
        if (self.name is None) == (self.text is None):
            raise ValueError("provide exactly one of 'name' or 'text'")
        return self


class EncodeRequest(BaseModel):
    g: GraphSpec
    h: GraphSpec


class EncodeResponse(BaseModel):
    dimacs: str
    num_vars: int
    num_clauses: int


class DecideRequest(BaseModel):
    g: GraphSpec
    h: GraphSpec


class DecideResponse(BaseModel):
    kind: Literal["positive", "negative"]
    witness: str


class RefuteResponse(BaseModel):
    kind: Literal["positive", "negative"]
    trace: Optional[str] = None
    witness: Optional[str] = None
    steps: Optional[int] = None


class CheckRequest(BaseModel):
    dimacs: str
    trace: str


class CheckResponse(BaseModel):
    ok: bool
    step_id: Optional[int] = None
    reason: Optional[str] = None
    tree_like: Optional[bool] = None
    warnings: list[str] = Field(default_factory=list)


class InterpolateRequest(BaseModel):
    dimacs: str
    split: str
    trace: str


class InterpolateResponse(BaseModel):
    circuit: str
    gates: int


class PhpRequest(BaseModel):
    pigeons: int = Field(ge=1)
    holes: int = Field(ge=1)


class BenchRequest(BaseModel):
    start: int = Field(ge=1)
    stop: int = Field(ge=1)
    budget_s: Optional[float] = Field(default=None, gt=0)


class BenchResponse(BaseModel):
    csv: str
    truncated: bool = False


class SolveCounters(BaseModel):
    decisions: int
    conflicts: int
    propagations: int
    time_ms: float


class OracleRequest(BaseModel):
    dimacs: str
    saturate: bool = False
    var_budget: int = Field(default=12, ge=1)


class OracleResponse(BaseModel):
    status: Literal["SAT", "UNSAT"]
    assignment: Optional[list[int]] = None
    stats: Optional[SolveCounters] = None
    trace: Optional[str] = None


class ErrorBody(BaseModel):
    error: str
    detail: str
    walk: Optional[list[int]] = None

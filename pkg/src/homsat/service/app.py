"""FastAPI application exposing the package over HTTP.

Domain errors map to 400 with an :class:`ErrorBody`; a failed proof check
is not an error (the check itself succeeded) and comes back 200 with
``ok: false``.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..bench import BenchBudgetExceeded, bench_php, gen_php, rows_to_csv
from ..encoding import encode, parse_dimacs, write_dimacs
from ..errors import HomsatError, TargetNotBipartite
from ..graphs import Graph, named_graph, parse_graph
from ..interpolate import interpolate, parse_split, write_circuit
from ..proofs import check_refutation, is_tree_like, parse_trace, write_trace
from ..refute import NEGATIVE, POSITIVE, pipeline, write_witness
from ..solver import dpll_solve, saturate
from .schemas import (
    BenchRequest,
    BenchResponse,
    CheckRequest,
    CheckResponse,
    DecideRequest,
    DecideResponse,
    EncodeRequest,
    EncodeResponse,
    ErrorBody,
    GraphSpec,
    InterpolateRequest,
    InterpolateResponse,
    OracleRequest,
    OracleResponse,
    PhpRequest,
    RefuteResponse,
    SolveCounters,
)


def _graph(spec: GraphSpec) -> Graph:
    return named_graph(spec.name) if spec.name is not None else parse_graph(spec.text)


def create_app() -> FastAPI:
    app = FastAPI(title="homsat", version=__version__)

    @app.exception_handler(HomsatError)
    async def _domain_error(_request: Request, exc: HomsatError) -> JSONResponse:
        body = ErrorBody(error=type(exc).__name__, detail=str(exc))
        if isinstance(exc, TargetNotBipartite):
            body.walk = [v + 1 for v in exc.walk.verts]
        return JSONResponse(status_code=400, content=body.model_dump())

    @app.get("/health")
    def health():
        return {"status": "ok", "version": __version__}

    @app.post("/encode", response_model=EncodeResponse)
    def encode_endpoint(req: EncodeRequest):
        cnf, _ = encode(_graph(req.g), _graph(req.h))
        return EncodeResponse(
            dimacs=write_dimacs(cnf), num_vars=cnf.num_vars, num_clauses=len(cnf.clauses)
        )

    @app.post("/decide", response_model=DecideResponse)
    def decide_endpoint(req: DecideRequest):
        cert = pipeline(_graph(req.g), _graph(req.h))
        if cert.kind == POSITIVE:
            return DecideResponse(kind=POSITIVE, witness=write_witness(cert.homomorphism))
        return DecideResponse(kind=NEGATIVE, witness=write_trace(cert.proof))

    @app.post("/refute", response_model=RefuteResponse)
    def refute_endpoint(req: DecideRequest):
        cert = pipeline(_graph(req.g), _graph(req.h))
        if cert.kind == POSITIVE:
            return RefuteResponse(kind=POSITIVE, witness=write_witness(cert.homomorphism))
        return RefuteResponse(
            kind=NEGATIVE, trace=write_trace(cert.proof), steps=len(cert.proof)
        )

    @app.post("/check", response_model=CheckResponse)
    def check_endpoint(req: CheckRequest):
        cnf = parse_dimacs(req.dimacs)
        proof = parse_trace(req.trace, cnf)
        result = check_refutation(cnf, proof)
        return CheckResponse(
            ok=result.ok,
            step_id=result.step_id,
            reason=result.reason.value if result.reason else None,
            tree_like=is_tree_like(proof) if result.ok else None,
            warnings=list(result.warnings),
        )

    @app.post("/interpolate", response_model=InterpolateResponse)
    def interpolate_endpoint(req: InterpolateRequest):
        cnf = parse_dimacs(req.dimacs)
        split = parse_split(req.split, cnf)
        proof = parse_trace(req.trace, cnf)
        circuit = interpolate(split, proof)
        return InterpolateResponse(circuit=write_circuit(circuit), gates=len(circuit))

    @app.post("/php", response_model=EncodeResponse)
    def php_endpoint(req: PhpRequest):
        cnf = gen_php(req.pigeons, req.holes)
        return EncodeResponse(
            dimacs=write_dimacs(cnf), num_vars=cnf.num_vars, num_clauses=len(cnf.clauses)
        )

    @app.post("/bench", response_model=BenchResponse)
    def bench_endpoint(req: BenchRequest):
        try:
            rows = bench_php(req.start, req.stop, req.budget_s)
            return BenchResponse(csv=rows_to_csv(rows))
        except BenchBudgetExceeded as exc:
            return BenchResponse(csv=rows_to_csv(exc.rows), truncated=True)

    @app.post("/oracle", response_model=OracleResponse)
    def oracle_endpoint(req: OracleRequest):
        cnf = parse_dimacs(req.dimacs)
        if req.saturate:
            proof = saturate(cnf, req.var_budget)
            if proof is None:
                return OracleResponse(status="SAT")
            return OracleResponse(status="UNSAT", trace=write_trace(proof))
        model, stats = dpll_solve(cnf)
        counters = SolveCounters(
            decisions=stats.decisions,
            conflicts=stats.conflicts,
            propagations=stats.propagations,
            time_ms=stats.time_ms,
        )
        if model is None:
            return OracleResponse(status="UNSAT", stats=counters)
        return OracleResponse(status="SAT", assignment=list(model), stats=counters)

    return app

"""FastAPI service wrapping the core package.

Every endpoint is a thin veneer: parse the payload into core types, call
the library, serialize the result. Long outputs (enumeration, batch
verification) stream line by line.
"""

from __future__ import annotations

import json
import math
from typing import Iterator

from fastapi import FastAPI, Query, Request
from fastapi.responses import JSONResponse, StreamingResponse

from .. import __version__
from ..errors import CopgameError, ParameterError
from ..forbidden import (
    cantmove_violation,
    find_induced_2k2,
    find_induced_path,
    find_induced_rk2,
)
from ..graph6 import emit_graph6
from ..graphs import classify_small, components, diameter, is_connected
from ..harness import RunConfig, parse_check_spec, run_verification
from ..harness.enumerate import enumerate_connected_graphs
from ..harness.runner import record_json_line
from ..solver import (
    best_robber_policy,
    capture_time,
    is_k_cop_win,
    layered_solve,
    simulate_game,
)
from ..strategies import freeze_edge_strategy, rk2_guard_strategy
from ..traps import enumerate_traps, find_connected_trap
from . import models


def create_app() -> FastAPI:
    app = FastAPI(
        title="copgame",
        version=__version__,
        description="Cops-and-robbers solving and verification on small graphs",
    )

    @app.exception_handler(CopgameError)
    async def _copgame_error(request: Request, exc: CopgameError):
        return JSONResponse(
            status_code=400,
            content={"detail": str(exc), "error": type(exc).__name__},
        )

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/graph/info", response_model=models.GraphInfo)
    def graph_info(payload: models.GraphPayload) -> models.GraphInfo:
        g = payload.to_graph()
        diam = diameter(g)
        return models.GraphInfo(
            n=g.n,
            m=g.m,
            graph6=emit_graph6(g),
            connected=is_connected(g),
            components=[list(c) for c in components(g)],
            diameter=None if math.isinf(diam) else int(diam),
            small_class=classify_small(g).value,
            two_k2_free=find_induced_2k2(g) is None,
        )

    @app.post("/solver/copnum", response_model=models.CopnumResponse)
    def solver_copnum(req: models.CopnumRequest) -> models.CopnumResponse:
        g = req.graph.to_graph()
        if req.k_max < 1:
            raise ParameterError(f"k_max must be >= 1, got {req.k_max}")
        c = None
        cap = None
        for k in range(1, req.k_max + 1):
            win, table = is_k_cop_win(g, k)
            if win:
                c = k
                cap = capture_time(g, k, table=table)
                break
        return models.CopnumResponse(cop_number=c, k_max=req.k_max, capture_time=cap)

    @app.post("/traps/list", response_model=models.TrapsResponse)
    def traps_list(payload: models.GraphPayload) -> models.TrapsResponse:
        g = payload.to_graph()
        witnesses = enumerate_traps(g)
        return models.TrapsResponse(
            count=len(witnesses),
            witnesses=[models.witness_model(w) for w in witnesses],
        )

    @app.post("/traps/connected", response_model=models.FindTrapResponse)
    def traps_connected(payload: models.GraphPayload) -> models.FindTrapResponse:
        g = payload.to_graph()
        result = find_connected_trap(g)
        return models.FindTrapResponse(
            outcome=result.outcome.value,
            witness=models.witness_model(result.witness) if result.witness else None,
        )

    @app.post("/forbidden", response_model=models.ForbiddenResponse)
    def forbidden(req: models.ForbiddenRequest) -> models.ForbiddenResponse:
        g = req.graph.to_graph()
        if req.kind == "2k2":
            w = find_induced_2k2(g)
            return models.ForbiddenResponse(
                found=w is not None, vertices=list(w.vertices) if w else None
            )
        if req.kind == "rk2":
            w = find_induced_rk2(g, models.require_param(req.param, "rk2"))
            return models.ForbiddenResponse(
                found=w is not None, vertices=list(w.vertices) if w else None
            )
        if req.kind == "path":
            w = find_induced_path(g, models.require_param(req.param, "path"))
            return models.ForbiddenResponse(
                found=w is not None, vertices=list(w.vertices) if w else None
            )
        hit = cantmove_violation(g)
        if hit is None:
            return models.ForbiddenResponse(found=False)
        (v, w_), u, x = hit
        return models.ForbiddenResponse(
            found=True,
            vertices=[v, w_, u, x],
            detail={"edge": [v, w_], "u": u, "x": x},
        )

    @app.post("/simulate", response_model=models.SimulateResponse)
    def simulate(req: models.SimulateRequest) -> models.SimulateResponse:
        g = req.graph.to_graph()
        if req.strategy == "freeze":
            strategy = freeze_edge_strategy(g)
            cap = req.turn_cap or 2 * g.n
        else:
            strategy = rk2_guard_strategy(g, req.r)
            cap = req.turn_cap or 2 * g.n * req.r
        robber = best_robber_policy(layered_solve(g, strategy.cop_count))
        trace = simulate_game(g, strategy, robber, cap)
        return models.SimulateResponse(
            strategy=req.strategy,
            cop_count=strategy.cop_count,
            captured=trace.captured,
            cop_turns=trace.cop_turns,
            turn_cap=cap,
            cop_start=list(trace.cop_start),
            robber_start=trace.robber_start,
            events=[
                (kind, list(pos) if isinstance(pos, tuple) else pos)
                for kind, pos in trace.events
            ],
        )

    @app.get("/enumerate")
    def enumerate_endpoint(n: int = Query(ge=1, le=7)) -> StreamingResponse:
        def lines() -> Iterator[str]:
            for g in enumerate_connected_graphs(n):
                yield emit_graph6(g) + "\n"

        return StreamingResponse(lines(), media_type="text/plain")

    @app.post("/verify")
    def verify(req: models.VerifyRequest) -> StreamingResponse:
        config = RunConfig(
            checks=parse_check_spec(req.checks),
            n_max=req.n_max,
            graph6_lines=req.graph6_lines,
            k_max=req.k_max,
            workers=req.workers,
            lenient=req.lenient,
        )
        run = run_verification(config)

        def lines() -> Iterator[str]:
            # errors after the 200 header (e.g. a corrupt record deep in
            # the corpus under strict parsing) surface as a fatal object
            try:
                for rec in run.records():
                    yield record_json_line(rec) + "\n"
            except CopgameError as exc:
                yield json.dumps(
                    {"fatal": {"error": type(exc).__name__, "detail": str(exc)}},
                    sort_keys=True,
                ) + "\n"
                return
            yield json.dumps({"summary": run.summary}, sort_keys=True) + "\n"

        return StreamingResponse(lines(), media_type="application/x-ndjson")

    return app


app = create_app()

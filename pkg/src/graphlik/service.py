"""Handler layer plus the FastAPI app.

Handlers take request models and return response models; the HTTP routes and
the CLI both call them, so the two front ends cannot drift apart.  Handlers
raise domain exceptions (parse errors, limit errors); routes translate those
to 400/422, the CLI to exit codes.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from fastapi import FastAPI, HTTPException

from . import __version__
from .canonical import automorphism_count
from .errors import EdgeListParseError, Graph6ParseError, LimitExceededError
from .graphs import FamilySpec, Graph, family_graph, parse_graph6, to_graph6
from .growth import estimate_likelihood
from .likelihood import (
    DEFAULT_DP_LIMIT,
    DEFAULT_PATHS_LIMIT,
    NoClosedFormError,
    cycle_from_path_relation,
    enumerate_path_constructions,
    family_closed_form,
    likelihood_bounds,
    likelihood_census,
    likelihood_exact,
    likelihood_from_paths,
    path_prefix_tree,
)
from .schemas import (
    BoundsOut,
    BoundsRequest,
    BoundsResponse,
    CensusRequest,
    CensusResponse,
    CensusRow,
    CheckOut,
    ComputeRequest,
    ComputeResponse,
    FamilyRequest,
    FamilyResponse,
    FractionOut,
    GraphIn,
    HealthResponse,
    PathItem,
    PathsRequest,
    PathsResponse,
    SimulateRequest,
    SimulateResponse,
    VerifyRequest,
    VerifyResponse,
    fraction_decimal,
)
from .verify import run_suites


def graph_from_input(gi: GraphIn) -> Graph:
    """Materialize a request graph; raises the codec's own errors."""
    if gi.graph6 is not None:
        return parse_graph6(gi.graph6.strip())
    assert gi.edges is not None
    return Graph.from_edges(gi.edges.order, gi.edges.edges)


def handle_compute(req: ComputeRequest) -> ComputeResponse:
    g = graph_from_input(req.graph)
    dp_limit = req.dp_limit if req.dp_limit is not None else DEFAULT_DP_LIMIT
    lk = likelihood_exact(g, dp_limit=dp_limit)
    aut = automorphism_count(g)
    b = likelihood_bounds(g)
    return ComputeResponse(
        graph6=to_graph6(g),
        order=g.order,
        edge_count=g.edge_count,
        likelihood=FractionOut.of(lk),
        likelihood_decimal=fraction_decimal(lk, req.decimals),
        aut=aut,
        paths=factorial(g.order) // aut,
        bounds=BoundsOut(lower=FractionOut.of(b.lower), upper=FractionOut.of(b.upper)),
    )


def handle_paths(req: PathsRequest) -> PathsResponse:
    g = graph_from_input(req.graph)
    limit = req.limit if req.limit is not None else DEFAULT_PATHS_LIMIT
    paths = enumerate_path_constructions(g, limit=limit)
    return PathsResponse(
        graph6=to_graph6(g),
        order=g.order,
        count=len(paths),
        total=FractionOut.of(likelihood_from_paths(paths)),
        paths=[
            PathItem(
                ordering=list(p.ordering),
                back_degrees=list(p.back_degrees),
                weight=FractionOut.of(p.weight),
            )
            for p in paths
        ],
        tree=path_prefix_tree(g, paths) if req.tree else None,
    )


def handle_bounds(req: BoundsRequest) -> BoundsResponse:
    g = graph_from_input(req.graph)
    b = likelihood_bounds(g)
    return BoundsResponse(
        graph6=to_graph6(g),
        aut=automorphism_count(g),
        lower=FractionOut.of(b.lower),
        upper=FractionOut.of(b.upper),
    )


def handle_family(req: FamilyRequest) -> FamilyResponse:
    spec = FamilySpec(req.kind, req.order, req.size)
    g = family_graph(spec)
    dp_limit = req.dp_limit if req.dp_limit is not None else DEFAULT_DP_LIMIT
    dp = likelihood_exact(g, dp_limit=dp_limit)
    closed: Fraction | None
    try:
        closed = family_closed_form(spec)
    except NoClosedFormError:
        # cycles still have the path relation; plain paths have nothing
        closed = cycle_from_path_relation(req.order, dp_limit=dp_limit) if req.kind == "cycle" else None
    return FamilyResponse(
        kind=req.kind,
        order=req.order,
        size=req.size,
        graph6=to_graph6(g),
        closed_form=FractionOut.of(closed) if closed is not None else None,
        dp=FractionOut.of(dp),
        agree=(closed == dp) if closed is not None else None,
    )


def handle_simulate(req: SimulateRequest) -> SimulateResponse:
    g = graph_from_input(req.graph)
    est = estimate_likelihood(g, req.samples, req.seed)
    exact = None
    z = None
    if req.compare:
        lk = likelihood_exact(g)
        exact = FractionOut.of(lk)
        if est.stderr > 0:
            z = fraction_decimal(Fraction((float(est.p_hat) - float(lk)) / est.stderr), 4)
    return SimulateResponse(
        target=to_graph6(g),
        samples=req.samples,
        seed=req.seed,
        hits=est.hits,
        p_hat=fraction_decimal(est.p_hat, req.decimals),
        stderr=fraction_decimal(Fraction(est.stderr), req.decimals),
        exact=exact,
        z=z,
    )


def handle_census(req: CensusRequest) -> CensusResponse:
    kwargs = {"limit": req.limit} if req.limit is not None else {}
    rows = likelihood_census(req.order, **kwargs)
    total = sum((r.likelihood for r in rows), start=Fraction(0))
    return CensusResponse(
        order=req.order,
        classes=len(rows),
        total=FractionOut.of(total),
        rows=[
            CensusRow(graph6=r.key.graph6, likelihood=FractionOut.of(r.likelihood), aut=r.aut)
            for r in rows
        ],
    )


def handle_verify(req: VerifyRequest) -> VerifyResponse:
    results = run_suites(
        req.suites, max_order=req.max_order, samples=req.samples, seed=req.seed
    )
    return VerifyResponse(
        passed=all(r.passed for r in results),
        checks=[CheckOut(name=r.name, passed=r.passed, detail=r.detail) for r in results],
    )


# ---------------------------------------------------------------------------
# FastAPI app

app = FastAPI(
    title="graphlik",
    version=__version__,
    description="Exact likelihood of graphs under uniform random vertex addition",
)

_BAD_INPUT = (Graph6ParseError, EdgeListParseError, NoClosedFormError, ValueError)


def _run(handler, req):
    try:
        return handler(req)
    except LimitExceededError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc
    except _BAD_INPUT as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from exc


@app.get("/health", response_model=HealthResponse)
def health() -> HealthResponse:
    return HealthResponse(status="ok", version=__version__)


@app.post("/compute", response_model=ComputeResponse)
def compute(req: ComputeRequest) -> ComputeResponse:
    return _run(handle_compute, req)


@app.post("/paths", response_model=PathsResponse)
def paths(req: PathsRequest) -> PathsResponse:
    return _run(handle_paths, req)


@app.post("/bounds", response_model=BoundsResponse)
def bounds(req: BoundsRequest) -> BoundsResponse:
    return _run(handle_bounds, req)


@app.post("/family", response_model=FamilyResponse)
def family(req: FamilyRequest) -> FamilyResponse:
    return _run(handle_family, req)


@app.post("/simulate", response_model=SimulateResponse)
def simulate(req: SimulateRequest) -> SimulateResponse:
    return _run(handle_simulate, req)


@app.post("/census", response_model=CensusResponse)
def census(req: CensusRequest) -> CensusResponse:
    return _run(handle_census, req)


@app.post("/verify", response_model=VerifyResponse)
def verify(req: VerifyRequest) -> VerifyResponse:
    return _run(handle_verify, req)

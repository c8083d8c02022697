"""Command-line client.

A thin front end over the handler layer: every verb builds the same request
model the HTTP service accepts, executes it (in-process by default, over
HTTP with --server), and renders the response model.  Graphs are given as a
graph6 string, an inline JSON edge list, or a path to a file holding either.

Exit codes: 0 success / all checks passed; 1 failed checks or a refused
size limit; 2 usage errors; 65 malformed graph input.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import EdgeListParseError, Graph6ParseError, LimitExceededError
from .graphs import parse_edge_json
from .schemas import (
    BoundsRequest,
    BoundsResponse,
    CensusRequest,
    CensusResponse,
    ComputeRequest,
    ComputeResponse,
    EdgeListIn,
    FamilyRequest,
    FamilyResponse,
    GraphIn,
    PathsRequest,
    PathsResponse,
    SimulateRequest,
    SimulateResponse,
    VerifyRequest,
    VerifyResponse,
)

_STATUS_EXIT = {400: 65, 422: 1}


def load_graph_input(text: str) -> GraphIn:
    """Resolve a graph argument: file path, inline JSON edge list, or graph6."""
    path = Path(text)
    try:
        if path.is_file():
            text = path.read_text()
    except OSError:
        pass  # not a readable path; treat as a literal
    text = text.strip()
    if text.startswith("{"):
        g = parse_edge_json(text)
        return GraphIn(edges=EdgeListIn(order=g.order, edges=g.edges()))
    return GraphIn(graph6=text)


def _execute(args, path: str, req, resp_type):
    """Run a request locally or against --server; returns the response model."""
    if args.server:
        import httpx

        r = httpx.post(args.server.rstrip("/") + path, json=req.model_dump(mode="json"),
                       timeout=None)
        if r.status_code != 200:
            try:
                detail = r.json().get("detail", r.text)
            except ValueError:
                detail = r.text
            print(f"error: {detail}", file=sys.stderr)
            raise SystemExit(_STATUS_EXIT.get(r.status_code, 1))
        return resp_type.model_validate(r.json())
    from . import service

    handler = {
        "/compute": service.handle_compute,
        "/paths": service.handle_paths,
        "/bounds": service.handle_bounds,
        "/family": service.handle_family,
        "/simulate": service.handle_simulate,
        "/census": service.handle_census,
        "/verify": service.handle_verify,
    }[path]
    return handler(req)


def _emit_json(model) -> int:
    print(model.model_dump_json(indent=2))
    return 0


def _frac(fo) -> str:
    return f"{fo.num}/{fo.den}"


def cmd_compute(args) -> int:
    req = ComputeRequest(graph=load_graph_input(args.graph), dp_limit=args.dp_limit,
                         decimals=args.decimals)
    resp = _execute(args, "/compute", req, ComputeResponse)
    if args.format == "json":
        return _emit_json(resp)
    print(f"graph6: {resp.graph6}")
    print(f"order: {resp.order}  edges: {resp.edge_count}")
    print(f"likelihood: {_frac(resp.likelihood)} (= {resp.likelihood_decimal})")
    print(f"aut: {resp.aut}  paths: {resp.paths}")
    print(f"bounds: {_frac(resp.bounds.lower)} <= likelihood <= {_frac(resp.bounds.upper)}")
    return 0


def cmd_paths(args) -> int:
    req = PathsRequest(graph=load_graph_input(args.graph), limit=args.limit, tree=args.tree)
    resp = _execute(args, "/paths", req, PathsResponse)
    if args.format == "json":
        return _emit_json(resp)
    print(f"graph6: {resp.graph6}")
    print(f"path constructions: {resp.count}  total weight: {_frac(resp.total)}")
    for p in resp.paths:
        degs = ",".join(str(d) for d in p.back_degrees)
        print(f"  ordering {tuple(p.ordering)}  back-degrees ({degs})  weight {_frac(p.weight)}")
    if resp.tree is not None:
        _print_tree(resp.tree, 0)
    return 0


def _print_tree(node: dict, depth: int) -> None:
    label = node["graph6"] if node["graph6"] is not None else "(root)"
    print("  " * depth + f"{label}  leaves={node['leaves']}")
    for child in node["children"]:
        _print_tree(child, depth + 1)


def cmd_bounds(args) -> int:
    req = BoundsRequest(graph=load_graph_input(args.graph))
    resp = _execute(args, "/bounds", req, BoundsResponse)
    if args.format == "json":
        return _emit_json(resp)
    print(f"graph6: {resp.graph6}")
    print(f"aut: {resp.aut}")
    print(f"bounds: {_frac(resp.lower)} <= likelihood <= {_frac(resp.upper)}")
    return 0


def cmd_family(args) -> int:
    req = FamilyRequest(kind=args.kind, order=args.order, size=args.size,
                        dp_limit=args.dp_limit)
    resp = _execute(args, "/family", req, FamilyResponse)
    if args.format == "json":
        return _emit_json(resp)
    size = f" size={resp.size}" if resp.kind == "matching" else ""
    print(f"family: {resp.kind} order={resp.order}{size}  graph6: {resp.graph6}")
    print(f"dp: {_frac(resp.dp)}")
    if resp.closed_form is None:
        print("closed form: none")
    else:
        verdict = "agree" if resp.agree else "DISAGREE"
        print(f"closed form: {_frac(resp.closed_form)}  [{verdict}]")
        if not resp.agree:
            return 1
    return 0


def cmd_simulate(args) -> int:
    req = SimulateRequest(graph=load_graph_input(args.graph), samples=args.samples,
                          seed=args.seed, compare=args.compare, decimals=args.decimals)
    resp = _execute(args, "/simulate", req, SimulateResponse)
    if args.format == "json":
        return _emit_json(resp)
    print(f"target: {resp.target}  samples: {resp.samples}  seed: {resp.seed}")
    print(f"hits: {resp.hits}  p_hat: {resp.p_hat}  stderr: {resp.stderr}")
    if resp.exact is not None:
        z = resp.z if resp.z is not None else "n/a"
        print(f"exact: {_frac(resp.exact)}  z: {z}")
    return 0


def cmd_census(args) -> int:
    req = CensusRequest(order=args.order, limit=args.limit)
    resp = _execute(args, "/census", req, CensusResponse)
    if args.format == "json":
        return _emit_json(resp)
    if args.format == "csv":
        print("graph6,num,den,aut")
        for row in resp.rows:
            print(f"{row.graph6},{row.likelihood.num},{row.likelihood.den},{row.aut}")
        return 0
    print(f"order: {resp.order}  classes: {resp.classes}  total: {_frac(resp.total)}")
    for row in resp.rows:
        print(f"  {row.graph6}  {_frac(row.likelihood)}  aut={row.aut}")
    return 0


def cmd_verify(args) -> int:
    suites = args.suites or None
    req = VerifyRequest(suites=suites, max_order=args.max_order, samples=args.samples,
                        seed=args.seed)
    resp = _execute(args, "/verify", req, VerifyResponse)
    if args.format == "json":
        print(resp.model_dump_json(indent=2))
    else:
        for check in resp.checks:
            mark = "PASS" if check.passed else "FAIL"
            print(f"{mark} {check.name}: {check.detail}")
    return 0 if resp.passed else 1


def cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("graphlik.service:app", host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graphlik",
        description="Exact likelihood of graphs under uniform random vertex addition.",
    )
    parser.add_argument("--server", metavar="URL", default=None,
                        help="send the request to a running service instead of computing locally")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats=("plain", "json")):
        p.add_argument("--format", choices=formats, default="plain")

    p = sub.add_parser("compute", help="exact likelihood, aut count, and bounds")
    p.add_argument("graph", help="graph6 string, JSON edge list, or a file holding either")
    p.add_argument("--dp-limit", type=int, default=None,
                   help="max order for the subset DP (cost grows exponentially)")
    p.add_argument("--decimals", type=int, default=12)
    common(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("paths", help="enumerate path constructions with weights")
    p.add_argument("graph")
    p.add_argument("--limit", type=int, default=None,
                   help="max order for path enumeration (factorial cost)")
    p.add_argument("--tree", action="store_true", help="print the growth-prefix tree")
    common(p)
    p.set_defaults(func=cmd_paths)

    p = sub.add_parser("bounds", help="likelihood bounds from the automorphism count")
    p.add_argument("graph")
    common(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("family", help="closed form vs DP for a named family")
    p.add_argument("kind", choices=["complete", "star", "path", "cycle", "empty",
                                    "matching", "one_edge"])
    p.add_argument("--order", "-t", type=int, required=True)
    p.add_argument("--size", "-s", type=int, default=0, help="matching edge count")
    p.add_argument("--dp-limit", type=int, default=None)
    common(p)
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("simulate", help="Monte Carlo estimate with the sealed RNG")
    p.add_argument("graph")
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--compare", action="store_true",
                   help="also compute the exact value and the z-score")
    p.add_argument("--decimals", type=int, default=12)
    common(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("census", help="likelihood of every isomorphism class of an order")
    p.add_argument("order", type=int)
    p.add_argument("--limit", type=int, default=None,
                   help="max census order (class count grows superexponentially)")
    common(p, formats=("plain", "json", "csv"))
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("verify", help="run self-verification suites")
    p.add_argument("suites", nargs="*",
                   help="suites to run (default: all); see README for names")
    p.add_argument("--max-order", type=int, default=6)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=1)
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (Graph6ParseError, EdgeListParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 65
    except LimitExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

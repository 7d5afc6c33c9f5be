"""Command-line client for the copgame service.

Every subcommand talks HTTP to the service layer. By default the
service app is mounted in-process (no server needed); point
``--server`` or the COPGAME_SERVER environment variable at a running
instance to use a remote one. ``copgame serve`` starts such an
instance.

Exit codes: 0 all pass, 1 any check failure (or uncaught capture
failure), 2 usage or parse errors.
"""

from __future__ import annotations

import argparse
import asyncio
import csv
import json
import os
import sys
from pathlib import Path
from typing import Iterator

import httpx

WORKERS_ENV = "COPGAME_WORKERS"
SERVER_ENV = "COPGAME_SERVER"

_USAGE_ERRORS = {"Graph6ParseError", "GraphConstructionError", "ParameterError"}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "serve":
        return _cmd_serve(args)
    try:
        return asyncio.run(_dispatch(args))
    except _ServiceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except httpx.HTTPError as exc:
        print(f"transport error: {exc}", file=sys.stderr)
        return 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="copgame",
        description="Cops-and-robbers solving and verification on small graphs",
    )
    parser.add_argument(
        "--server",
        default=os.environ.get(SERVER_ENV),
        help="base URL of a running service (default: in-process)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("copnum", help="cop number of each input graph")
    p.add_argument("input", help="graph6 string, file of graph6 lines, edge-list file, or -")
    p.add_argument("--kmax", type=int, default=4)

    p = sub.add_parser("traps", help="enumerate all trap witnesses")
    p.add_argument("input")

    p = sub.add_parser("find-trap", help="constructive connected-trap search")
    p.add_argument("input")

    p = sub.add_parser("verify", help="run property checks over a corpus")
    p.add_argument("--checks", required=True,
                   help="comma-separated list, e.g. THEOREM_MAIN,PT_BOUND(5), or 'all'")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--n-max", type=int, dest="n_max",
                     help="internal enumerator: all connected graphs on 1..N vertices")
    src.add_argument("--input", help="graph6 file or - for stdin")
    p.add_argument("--workers", type=int,
                   default=int(os.environ.get(WORKERS_ENV, "1")))
    p.add_argument("--kmax", type=int, default=4)
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--lenient", action="store_true",
                   help="accept nonzero graph6 padding bits")
    p.add_argument("--csv", action="store_true", help="CSV report instead of JSONL")

    p = sub.add_parser("simulate", help="run a scripted strategy against the optimal robber")
    p.add_argument("input")
    p.add_argument("--strategy", choices=("freeze", "rk2"), required=True)
    p.add_argument("--r", type=int, default=3, help="r for the rk2 guard script")
    p.add_argument("--turn-cap", type=int, dest="turn_cap")
    p.add_argument("--trace", action="store_true", help="print every half-turn")

    p = sub.add_parser("enumerate", help="emit all connected labeled graphs as graph6")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    return parser


class _ServiceError(Exception):
    def __init__(self, message: str, exit_code: int):
        super().__init__(message)
        self.exit_code = exit_code


def _make_client(server: str | None) -> httpx.AsyncClient:
    if server:
        return httpx.AsyncClient(base_url=server, timeout=None)
    from .service.app import app

    return httpx.AsyncClient(
        transport=httpx.ASGITransport(app=app),
        base_url="http://copgame.internal",
        timeout=None,
    )


async def _dispatch(args: argparse.Namespace) -> int:
    handlers = {
        "copnum": _cmd_copnum,
        "traps": _cmd_traps,
        "find-trap": _cmd_find_trap,
        "verify": _cmd_verify,
        "simulate": _cmd_simulate,
        "enumerate": _cmd_enumerate,
    }
    async with _make_client(args.server) as client:
        return await handlers[args.command](client, args)


def _raise_for_error(resp: httpx.Response) -> None:
    if resp.status_code == 200:
        return
    try:
        body = resp.json()
    except json.JSONDecodeError:
        body = {}
    detail = body.get("detail", resp.text)
    error = body.get("error", "")
    code = 2 if error in _USAGE_ERRORS or resp.status_code == 422 else 1
    raise _ServiceError(f"{error or resp.status_code}: {detail}", code)


def _graph_payloads(source: str) -> Iterator[dict]:
    """Graph payloads from a literal graph6 string, a file, or stdin.

    Files starting with a digit hold one graph in edge-list format
    ("n m" then m lines "u v"); anything else is graph6, one per line.
    A graph6 byte is never a digit, so the sniff is unambiguous.
    """
    if source == "-":
        text = sys.stdin.read()
    elif Path(source).exists():
        text = Path(source).read_text()
    else:
        yield {"graph6": source.strip()}
        return
    stripped = text.lstrip()
    if stripped and stripped[0].isdigit():
        lines = [ln for ln in (raw.strip() for raw in text.splitlines()) if ln]
        n, m = lines[0].split()
        edges = [tuple(int(x) for x in ln.split()) for ln in lines[1:]]
        if len(edges) != int(m):
            raise _ServiceError(
                f"edge-list header says {m} edges, found {len(edges)}", 2
            )
        yield {"n": int(n), "edges": edges}
        return
    for line in text.splitlines():
        line = line.strip()
        if line and line != ">>graph6<<":
            yield {"graph6": line}


async def _cmd_copnum(client: httpx.AsyncClient, args) -> int:
    for payload in _graph_payloads(args.input):
        resp = await client.post(
            "/solver/copnum", json={"graph": payload, "k_max": args.kmax}
        )
        _raise_for_error(resp)
        body = resp.json()
        label = payload.get("graph6", f"n={payload.get('n')}")
        if body["cop_number"] is None:
            print(f"{label}\tcop_number>{args.kmax}")
        else:
            print(
                f"{label}\tcop_number={body['cop_number']}"
                f"\tcapture_time={body['capture_time']}"
            )
    return 0


async def _cmd_traps(client: httpx.AsyncClient, args) -> int:
    for payload in _graph_payloads(args.input):
        resp = await client.post("/traps/list", json=payload)
        _raise_for_error(resp)
        body = resp.json()
        label = payload.get("graph6", f"n={payload.get('n')}")
        print(f"{label}\t{body['count']} trap(s)")
        for w in body["witnesses"]:
            kind = "I" if w["type_one"] else ("II" if w["type_two"] else "-")
            conn = "connected" if w["connected"] else "unconnected"
            print(f"  u={w['u']} by ({w['pair'][0]},{w['pair'][1]}) type-{kind} {conn}")
    return 0


async def _cmd_find_trap(client: httpx.AsyncClient, args) -> int:
    for payload in _graph_payloads(args.input):
        resp = await client.post("/traps/connected", json=payload)
        _raise_for_error(resp)
        body = resp.json()
        label = payload.get("graph6", f"n={payload.get('n')}")
        if body["witness"] is None:
            print(f"{label}\t{body['outcome']}")
        else:
            w = body["witness"]
            print(
                f"{label}\t{body['outcome']}: u={w['u']} "
                f"by ({w['pair'][0]},{w['pair'][1]})"
            )
    return 0


async def _cmd_verify(client: httpx.AsyncClient, args) -> int:
    request = {
        "checks": args.checks,
        "k_max": args.kmax,
        "workers": args.workers,
        "lenient": args.lenient,
    }
    if args.n_max is not None:
        request["n_max"] = args.n_max
    else:
        if args.input == "-":
            text = sys.stdin.read()
        else:
            text = Path(args.input).read_text()
        request["graph6_lines"] = [
            ln for ln in (raw.strip() for raw in text.splitlines()) if ln
        ]

    out = open(args.out, "w") if args.out else sys.stdout
    writer = csv.writer(out) if args.csv else None
    if writer:
        writer.writerow(
            ["graph_id", "graph6", "n", "m", "check", "status", "witness", "elapsed"]
        )
    summary = None
    try:
        async with client.stream("POST", "/verify", json=request) as resp:
            if resp.status_code != 200:
                await resp.aread()
                _raise_for_error(resp)
            async for line in resp.aiter_lines():
                if not line:
                    continue
                record = json.loads(line)
                if "fatal" in record:
                    fatal = record["fatal"]
                    code = 2 if fatal["error"] in _USAGE_ERRORS else 1
                    raise _ServiceError(
                        f"{fatal['error']}: {fatal['detail']}", code
                    )
                if "summary" in record:
                    summary = record["summary"]
                    if not args.csv:
                        out.write(line + "\n")
                    continue
                if writer:
                    for c in record["checks"]:
                        writer.writerow(
                            [record["graph_id"], record["graph6"], record["n"],
                             record["m"], c["name"], c["status"],
                             c["witness"] or "", record["elapsed"]]
                        )
                else:
                    out.write(line + "\n")
    finally:
        if args.out:
            out.close()

    if summary is None:
        raise _ServiceError("verification stream ended without a summary", 1)
    for name, counts in sorted(summary["checks"].items()):
        print(
            f"{name}: pass={counts['pass']} fail={counts['fail']} "
            f"skip={counts['skip']} error={counts['error']}",
            file=sys.stderr,
        )
    print(
        f"graphs={summary['graphs']} failures={summary['failures']} "
        f"errors={summary['errors']}",
        file=sys.stderr,
    )
    return 0 if summary["all_ok"] else 1


async def _cmd_simulate(client: httpx.AsyncClient, args) -> int:
    worst = 0
    for payload in _graph_payloads(args.input):
        request = {
            "graph": payload,
            "strategy": args.strategy,
            "r": args.r,
        }
        if args.turn_cap:
            request["turn_cap"] = args.turn_cap
        resp = await client.post("/simulate", json=request)
        _raise_for_error(resp)
        body = resp.json()
        label = payload.get("graph6", f"n={payload.get('n')}")
        outcome = "captured" if body["captured"] else "NOT captured"
        print(
            f"{label}\t{args.strategy} with {body['cop_count']} cops: {outcome} "
            f"after {body['cop_turns']} cop turns (cap {body['turn_cap']})"
        )
        if args.trace:
            print(f"  cops start at {tuple(body['cop_start'])}, "
                  f"robber at {body['robber_start']}")
            for kind, pos in body["events"]:
                print(f"  {kind}: {tuple(pos) if isinstance(pos, list) else pos}")
        if not body["captured"]:
            worst = 1
    return worst


async def _cmd_enumerate(client: httpx.AsyncClient, args) -> int:
    async with client.stream("GET", "/enumerate", params={"n": args.n}) as resp:
        if resp.status_code != 200:
            await resp.aread()
            _raise_for_error(resp)
        async for line in resp.aiter_lines():
            if line:
                print(line)
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("copgame.service.app:app", host=args.host, port=args.port)
    return 0


if __name__ == "__main__":
    sys.exit(main())

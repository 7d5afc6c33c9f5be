"""Batch verification runner: streams per-graph records, aggregates a
summary, and serializes reports.

Input comes from the internal labeled enumerator (n_max) or from graph6
lines (file / standard input). Worker-per-graph parallelism preserves
input order, so two runs with identical config and input produce
byte-identical reports modulo the elapsed field.
"""

from __future__ import annotations

import csv
import json
import multiprocessing
import time
from dataclasses import dataclass, field
from typing import IO, Iterator

from ..errors import CopgameError, ParameterError
from ..graph6 import emit_graph6, parse_graph6
from ..graphs import Graph
from .checks import CheckResult, CheckStatus, GraphFacts, build_checks
from .enumerate import MAX_ENUM_N, enumerate_connected_graphs

_CHUNK = 128


@dataclass
class RunConfig:
    """What to verify and how.

    Exactly one of ``n_max`` (internal enumerator, all connected labeled
    graphs on 1..n_max vertices) and ``graph6_lines`` must be given.
    """

    checks: list[str]
    n_max: int | None = None
    graph6_lines: list[str] | None = None
    k_max: int = 4
    workers: int = 1
    lenient: bool = False

    def __post_init__(self):
        if (self.n_max is None) == (self.graph6_lines is None):
            raise ParameterError("exactly one of n_max / graph6_lines required")
        if self.n_max is not None and not 1 <= self.n_max <= MAX_ENUM_N:
            raise ParameterError(
                f"n_max must be in 1..{MAX_ENUM_N}, got {self.n_max}"
            )
        if self.workers < 1:
            raise ParameterError(f"workers must be >= 1, got {self.workers}")
        if self.k_max < 1:
            raise ParameterError(f"k_max must be >= 1, got {self.k_max}")
        if not self.checks:
            raise ParameterError("no checks selected")


@dataclass
class VerificationRecord:
    graph_id: int
    graph6: str
    n: int
    m: int
    checks: list[CheckResult]
    elapsed: float

    def to_dict(self) -> dict:
        return {
            "graph_id": self.graph_id,
            "graph6": self.graph6,
            "n": self.n,
            "m": self.m,
            "checks": [
                {"name": c.name, "status": c.status.value, "witness": c.witness}
                for c in self.checks
            ],
            "elapsed": self.elapsed,
        }


@dataclass
class VerificationRun:
    """Streamed verification results; ``summary`` is complete once the
    record generator has been exhausted."""

    config: RunConfig
    summary: dict = field(default_factory=dict)
    _consumed: bool = False

    def records(self) -> Iterator[VerificationRecord]:
        if self._consumed:
            raise RuntimeError("records() may be consumed only once")
        self._consumed = True
        counts: dict[str, dict[str, int]] = {}
        graphs = 0
        failures = 0
        errors = 0
        for rec in _record_stream(self.config):
            graphs += 1
            for c in rec.checks:
                bucket = counts.setdefault(
                    c.name, {"pass": 0, "fail": 0, "skip": 0, "error": 0}
                )
                bucket[c.status.value.lower()] += 1
                if c.status is CheckStatus.FAIL:
                    failures += 1
                elif c.status is CheckStatus.ERROR:
                    errors += 1
            yield rec
        self.summary = {
            "graphs": graphs,
            "checks": counts,
            "failures": failures,
            "errors": errors,
            "all_ok": failures == 0 and errors == 0,
        }

    def run_to_summary(self) -> dict:
        """Drain the stream discarding records; returns the summary."""
        for _ in self.records():
            pass
        return self.summary


def run_verification(config: RunConfig) -> VerificationRun:
    return VerificationRun(config)


def _record_stream(config: RunConfig) -> Iterator[VerificationRecord]:
    if config.workers == 1:
        checks = build_checks(config.checks)
        for gid, item in _graph_source(config):
            yield _check_one(gid, item, checks, config.k_max, config.lenient)
        return

    ctx = multiprocessing.get_context(
        "fork" if "fork" in multiprocessing.get_all_start_methods() else None
    )
    payloads = _payload_source(config)
    with ctx.Pool(
        config.workers,
        initializer=_init_worker,
        initargs=(config.checks, config.k_max, config.lenient),
    ) as pool:
        yield from pool.imap(_run_payload, payloads, chunksize=_CHUNK)


def _graph_source(config: RunConfig) -> Iterator[tuple[int, Graph | str]]:
    if config.n_max is not None:
        gid = 0
        for n in range(1, config.n_max + 1):
            for g in enumerate_connected_graphs(n):
                yield gid, g
                gid += 1
    else:
        from ..graph6 import HEADER

        gid = 0
        for line in config.graph6_lines:
            line = line.strip()
            if not line or line == HEADER:
                continue
            yield gid, line
            gid += 1


def _payload_source(config: RunConfig) -> Iterator[tuple[int, str]]:
    for gid, item in _graph_source(config):
        yield gid, item if isinstance(item, str) else emit_graph6(item)


def _check_one(
    gid: int,
    item: Graph | str,
    checks,
    k_max: int,
    lenient: bool,
) -> VerificationRecord:
    start = time.perf_counter()
    if isinstance(item, str):
        g = parse_graph6(item, lenient=lenient)
        g6 = emit_graph6(g)
    else:
        g = item
        g6 = emit_graph6(g)
    facts = GraphFacts(g, k_max)
    results: list[CheckResult] = []
    for name, fn in checks:
        try:
            results.append(fn(facts))
        except CopgameError as exc:
            results.append(
                CheckResult(name, CheckStatus.ERROR, f"{type(exc).__name__}: {exc}")
            )
    return VerificationRecord(
        graph_id=gid,
        graph6=g6,
        n=g.n,
        m=g.m,
        checks=results,
        elapsed=time.perf_counter() - start,
    )


_WORKER_STATE: dict = {}


def _init_worker(check_names: list[str], k_max: int, lenient: bool) -> None:
    _WORKER_STATE["checks"] = build_checks(check_names)
    _WORKER_STATE["k_max"] = k_max
    _WORKER_STATE["lenient"] = lenient


def _run_payload(payload: tuple[int, str]) -> VerificationRecord:
    gid, g6 = payload
    return _check_one(
        gid, g6, _WORKER_STATE["checks"], _WORKER_STATE["k_max"],
        _WORKER_STATE["lenient"],
    )


def record_json_line(rec: VerificationRecord) -> str:
    return json.dumps(rec.to_dict(), sort_keys=True, separators=(",", ":"))


def write_jsonl(run: VerificationRun, stream: IO[str]) -> dict:
    """One JSON record per graph, then the summary as a final object."""
    for rec in run.records():
        stream.write(record_json_line(rec))
        stream.write("\n")
    stream.write(json.dumps({"summary": run.summary}, sort_keys=True))
    stream.write("\n")
    return run.summary


def write_csv(run: VerificationRun, stream: IO[str]) -> dict:
    """One row per (graph, check)."""
    writer = csv.writer(stream)
    writer.writerow(
        ["graph_id", "graph6", "n", "m", "check", "status", "witness", "elapsed"]
    )
    for rec in run.records():
        for c in rec.checks:
            writer.writerow(
                [rec.graph_id, rec.graph6, rec.n, rec.m, c.name,
                 c.status.value, c.witness or "", f"{rec.elapsed:.6f}"]
            )
    return run.summary

"""Batch verification pipeline: corpus enumeration, per-graph property
checks, and machine-readable reports."""

from .enumerate import enumerate_connected_graphs, iter_all_labeled_graphs
from .checks import (
    CheckResult,
    CheckStatus,
    GraphFacts,
    available_check_names,
    build_checks,
    parse_check_spec,
)
from .runner import (
    RunConfig,
    VerificationRecord,
    VerificationRun,
    run_verification,
)

__all__ = [
    "CheckResult",
    "CheckStatus",
    "GraphFacts",
    "RunConfig",
    "VerificationRecord",
    "VerificationRun",
    "available_check_names",
    "build_checks",
    "enumerate_connected_graphs",
    "iter_all_labeled_graphs",
    "parse_check_spec",
    "run_verification",
]

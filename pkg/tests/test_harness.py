import io
import json
from math import comb

import pytest

from copgame.errors import Graph6ParseError, ParameterError
from copgame.graph6 import emit_graph6
from copgame.harness import (
    RunConfig,
    available_check_names,
    enumerate_connected_graphs,
    iter_all_labeled_graphs,
    parse_check_spec,
    run_verification,
)
from copgame.harness.checks import CheckStatus, GraphFacts, check_bipartite_dom, check_diameter3
from copgame.harness.runner import write_csv, write_jsonl

from conftest import c5, path, petersen


def connected_labeled_count(n):
    """Classic recurrence: subtract graphs whose component of vertex 1
    is smaller than n."""
    total = lambda k: 1 << comb(k, 2)  # noqa: E731
    c = {1: 1}
    for m in range(2, n + 1):
        c[m] = total(m) - sum(
            comb(m - 1, k - 1) * c[k] * total(m - k) for k in range(1, m)
        )
    return c[n]


def test_enumerator_counts_match_recurrence():
    for n, want in [(1, 1), (2, 1), (3, 4), (4, 38), (5, 728), (6, 26704)]:
        assert connected_labeled_count(n) == want
        assert sum(1 for _ in enumerate_connected_graphs(n)) == want


def test_enumerator_yields_all_labeled_graphs():
    assert sum(1 for _ in iter_all_labeled_graphs(4)) == 64


def test_enumerator_range_errors():
    with pytest.raises(ParameterError):
        list(enumerate_connected_graphs(0))
    with pytest.raises(ParameterError):
        list(enumerate_connected_graphs(8))


def test_run_config_validation():
    with pytest.raises(ParameterError):
        RunConfig(checks=["THEOREM_MAIN"])  # no source
    with pytest.raises(ParameterError):
        RunConfig(checks=["THEOREM_MAIN"], n_max=3, graph6_lines=["Dhc"])
    with pytest.raises(ParameterError):
        RunConfig(checks=["THEOREM_MAIN"], n_max=9)
    with pytest.raises(ParameterError):
        RunConfig(checks=["THEOREM_MAIN"], n_max=3, workers=0)
    with pytest.raises(ParameterError):
        RunConfig(checks=[], n_max=3)


def test_parse_check_spec():
    assert parse_check_spec("THEOREM_MAIN, DIAMETER3") == ["THEOREM_MAIN", "DIAMETER3"]
    assert parse_check_spec("PT_BOUND(5)") == ["PT_BOUND(5)"]
    assert parse_check_spec("pt_bound:6") == ["PT_BOUND(6)"]
    assert parse_check_spec("RK2_SIM") == ["RK2_SIM(3)"]
    assert "THEOREM_MAIN" in parse_check_spec("all")
    with pytest.raises(ParameterError):
        parse_check_spec("NOT_A_CHECK")
    with pytest.raises(ParameterError):
        parse_check_spec("THEOREM_MAIN(3)")
    with pytest.raises(ParameterError):
        parse_check_spec("")
    assert sorted(available_check_names()) == available_check_names()


def test_pt_bound_parameter_validation():
    from copgame.harness.checks import build_checks

    with pytest.raises(ParameterError):
        build_checks(["PT_BOUND(2)"])
    with pytest.raises(ParameterError):
        build_checks(["RK2_SIM(1)"])


def test_skip_semantics_for_inapplicable_checks():
    lines = [emit_graph6(c5()), emit_graph6(path(5)), emit_graph6(petersen())]
    cfg = RunConfig(
        checks=parse_check_spec("THEOREM_MAIN,PT_BOUND(5),PT_BOUND(6),DIAMETER3"),
        graph6_lines=lines,
    )
    run = run_verification(cfg)
    records = list(run.records())
    by_name = [{c.name: c.status for c in rec.checks} for rec in records]

    c5_res, p5_res, pet_res = by_name
    assert c5_res["THEOREM_MAIN"] is CheckStatus.PASS
    # P5 is not 2K2-free and contains an induced P5, but is P6-free
    assert p5_res["THEOREM_MAIN"] is CheckStatus.SKIP
    assert p5_res["PT_BOUND(5)"] is CheckStatus.SKIP
    assert p5_res["PT_BOUND(6)"] is CheckStatus.PASS
    # Petersen is not 2K2-free, so the diameter check does not apply
    assert pet_res["DIAMETER3"] is CheckStatus.SKIP
    assert run.summary["all_ok"]


def test_error_outcome_recorded_not_raised():
    # k_max=1 cannot decide the cop number of a pendant C5, so the
    # degree-1 check reports ERROR instead of crashing the run
    from copgame.graphs import from_edge_list

    g6 = emit_graph6(c5())
    pend = from_edge_list(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5)])
    cfg = RunConfig(
        checks=["DEGREE1_INVARIANCE"],
        graph6_lines=[emit_graph6(pend), g6],
        k_max=1,
    )
    run = run_verification(cfg)
    records = list(run.records())
    assert records[0].checks[0].status is CheckStatus.ERROR
    assert run.summary["errors"] == 1
    assert not run.summary["all_ok"]


def test_strict_parse_raises_lenient_passes():
    corrupt = "A" + chr(63 + 0b100001)  # K2 with a nonzero padding bit
    cfg = RunConfig(checks=["CANTMOVE_EQUIV"], graph6_lines=[corrupt])
    with pytest.raises(Graph6ParseError):
        list(run_verification(cfg).records())
    cfg = RunConfig(checks=["CANTMOVE_EQUIV"], graph6_lines=[corrupt], lenient=True)
    assert run_verification(cfg).run_to_summary()["all_ok"]


def test_workers_preserve_order_and_content():
    cfg1 = RunConfig(checks=parse_check_spec("all"), n_max=4, workers=1)
    cfg2 = RunConfig(checks=parse_check_spec("all"), n_max=4, workers=2)
    recs1 = list(run_verification(cfg1).records())
    recs2 = list(run_verification(cfg2).records())
    strip = lambda rec: (rec.graph_id, rec.graph6, rec.n, rec.m, rec.checks)  # noqa: E731
    assert [strip(r) for r in recs1] == [strip(r) for r in recs2]


def test_reports_byte_identical_modulo_elapsed():
    def report():
        cfg = RunConfig(checks=["THEOREM_MAIN", "TRICHOTOMY"], n_max=3)
        buf = io.StringIO()
        write_jsonl(run_verification(cfg), buf)
        lines = []
        for line in buf.getvalue().splitlines():
            obj = json.loads(line)
            obj.pop("elapsed", None)
            lines.append(json.dumps(obj, sort_keys=True))
        return "\n".join(lines)

    assert report() == report()


def test_csv_export():
    cfg = RunConfig(checks=["THEOREM_MAIN"], n_max=2)
    buf = io.StringIO()
    summary = write_csv(run_verification(cfg), buf)
    rows = buf.getvalue().strip().splitlines()
    assert rows[0].startswith("graph_id,graph6,")
    assert len(rows) == 1 + summary["graphs"]


def test_graph_facts_caching():
    facts = GraphFacts(petersen())
    assert facts.connected
    assert not facts.two_k2_free
    assert check_diameter3(facts).status is CheckStatus.SKIP
    assert check_bipartite_dom(facts).status is CheckStatus.SKIP


def test_verification_run_single_use():
    cfg = RunConfig(checks=["THEOREM_MAIN"], n_max=2)
    run = run_verification(cfg)
    list(run.records())
    with pytest.raises(RuntimeError):
        list(run.records())

import json

import pytest

from copgame.cli import main
from copgame.graph6 import emit_graph6

from conftest import path, petersen


def test_copnum_literal_graph6(capsys):
    assert main(["copnum", "Dhc"]) == 0
    out = capsys.readouterr().out
    assert "cop_number=2" in out and "capture_time=1" in out


def test_copnum_exceeds_kmax(capsys):
    assert main(["copnum", emit_graph6(petersen()), "--kmax", "2"]) == 0
    assert "cop_number>2" in capsys.readouterr().out


def test_copnum_graph6_file(tmp_path, capsys):
    corpus = tmp_path / "graphs.g6"
    corpus.write_text("Dhc\nCh\n")
    assert main(["copnum", str(corpus)]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 2
    assert lines[1].startswith("Ch\tcop_number=1")


def test_copnum_edge_list_file(tmp_path, capsys):
    listing = tmp_path / "graph.txt"
    listing.write_text("5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n")
    assert main(["copnum", str(listing)]) == 0
    assert "cop_number=2" in capsys.readouterr().out


def test_parse_error_exits_2(capsys):
    rc = main(["copnum", "###"])
    assert rc == 2
    assert "error" in capsys.readouterr().err.lower()


def test_find_trap_and_traps(capsys):
    assert main(["find-trap", "Dhc"]) == 0
    assert "IS_C5" in capsys.readouterr().out
    assert main(["traps", emit_graph6(path(4))]) == 0
    out = capsys.readouterr().out
    assert "trap(s)" in out and "u=0" in out


def test_simulate_freeze(capsys):
    assert main(["simulate", "--strategy", "freeze", "Dhc"]) == 0
    assert "captured" in capsys.readouterr().out


def test_simulate_rk2_with_trace(capsys):
    assert main(["simulate", "--strategy", "rk2", "--r", "3", "Dhc", "--trace"]) == 0
    out = capsys.readouterr().out
    assert "4 cops" in out and "cops start" in out


def test_enumerate(capsys):
    assert main(["enumerate", "--n", "3"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 4


def test_verify_stdin_to_file(tmp_path, capsys, monkeypatch):
    import io

    monkeypatch.setattr("sys.stdin", io.StringIO("Dhc\nCh\n"))
    out_path = tmp_path / "report.jsonl"
    rc = main([
        "verify", "--checks", "THEOREM_MAIN,TRICHOTOMY",
        "--input", "-", "--out", str(out_path),
    ])
    assert rc == 0
    err = capsys.readouterr().err
    assert "failures=0" in err
    lines = out_path.read_text().splitlines()
    assert len(lines) == 3  # two records plus the summary
    assert json.loads(lines[-1])["summary"]["all_ok"] is True


def test_verify_error_exit_code(tmp_path):
    from copgame.graphs import from_edge_list

    pend = from_edge_list(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5)])
    corpus = tmp_path / "in.g6"
    corpus.write_text(emit_graph6(pend) + "\n")
    rc = main([
        "verify", "--checks", "DEGREE1_INVARIANCE",
        "--input", str(corpus), "--kmax", "1",
        "--out", str(tmp_path / "r.jsonl"),
    ])
    assert rc == 1


def test_verify_csv(tmp_path):
    out_path = tmp_path / "report.csv"
    rc = main([
        "verify", "--checks", "THEOREM_MAIN", "--n-max", "3",
        "--csv", "--out", str(out_path),
    ])
    assert rc == 0
    rows = out_path.read_text().strip().splitlines()
    assert rows[0].startswith("graph_id,")
    assert len(rows) == 1 + 6  # header + one row per (graph, check)


def test_verify_bad_check_exits_2(capsys):
    rc = main(["verify", "--checks", "NOPE", "--n-max", "3"])
    assert rc == 2


def test_verify_corrupt_line_mid_stream_exits_2(tmp_path, capsys):
    corpus = tmp_path / "in.g6"
    corpus.write_text("Dhc\n#bad#\nCh\n")
    rc = main([
        "verify", "--checks", "THEOREM_MAIN",
        "--input", str(corpus), "--out", str(tmp_path / "r.jsonl"),
    ])
    assert rc == 2
    assert "Graph6ParseError" in capsys.readouterr().err


def test_usage_error_exits_2():
    with pytest.raises(SystemExit) as err:
        main(["verify", "--n-max", "3"])  # --checks is required
    assert err.value.code == 2


def test_workers_env_default(monkeypatch, tmp_path, capsys):
    monkeypatch.setenv("COPGAME_WORKERS", "2")
    rc = main([
        "verify", "--checks", "CANTMOVE_EQUIV", "--n-max", "3",
        "--out", str(tmp_path / "r.jsonl"),
    ])
    assert rc == 0
    assert "failures=0" in capsys.readouterr().err

"""Tests for the command-line front end."""

from geodetic.cli import main
from geodetic.graph import feedback_edge_number, format_graph, parse_graph

from conftest import complete_graph, cycle_graph, path_graph


def write_graph(tmp_path, name, g):
    path = tmp_path / name
    path.write_text(format_graph(g))
    return str(path)


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def test_solve_cycle_with_fpt(tmp_path, capsys):
    path = write_graph(tmp_path, "c6.graph", cycle_graph(6))
    code, out = run(capsys, ["solve", path, "--algo", "fpt", "--deterministic"])
    assert code == 0
    assert "optimum 2" in out
    assert "status optimal" in out


def test_solve_path_with_brute(tmp_path, capsys):
    path = write_graph(tmp_path, "p4.graph", path_graph(4))
    code, out = run(capsys, ["solve", path, "--algo", "brute", "--deterministic"])
    assert code == 0
    assert "optimum 2" in out
    assert "witness 0 3" in out


def test_solve_cross_check_agrees(tmp_path, capsys):
    path = write_graph(tmp_path, "k4.graph", complete_graph(4))
    code, out = run(capsys, ["solve", path, "--cross-check", "--deterministic"])
    assert code == 0
    assert "cross-check ok" in out


def test_solve_threshold_answers(tmp_path, capsys):
    path = write_graph(tmp_path, "k4.graph", complete_graph(4))
    code, out = run(capsys, ["solve", path, "--k", "4", "--deterministic"])
    assert code == 0
    assert "answer yes" in out
    code, out = run(capsys, ["solve", path, "--k", "3", "--deterministic"])
    assert code == 1
    assert "answer no" in out


def test_solve_disconnected_needs_flag(tmp_path, capsys):
    path = tmp_path / "disc.graph"
    path.write_text("5 4\n0 1\n0 2\n1 2\n3 4\n")
    code, _out = run(capsys, ["solve", str(path), "--deterministic"])
    assert code == 2
    code, out = run(
        capsys, ["solve", str(path), "--per-component", "--deterministic"]
    )
    assert code == 0
    assert "optimum 5" in out
    assert "witness 0 1 2 3 4" in out


def test_verify_accepts_and_rejects(tmp_path, capsys):
    graph = write_graph(tmp_path, "p4.graph", path_graph(4))
    good = tmp_path / "good.set"
    good.write_text("0 3\n")
    code, out = run(capsys, ["verify", graph, str(good)])
    assert code == 0
    assert "status geodetic" in out

    k4 = write_graph(tmp_path, "k4.graph", complete_graph(4))
    bad = tmp_path / "bad.set"
    bad.write_text("0 1 2\n")
    code, out = run(capsys, ["verify", k4, str(bad)])
    assert code == 1
    assert "uncovered 3" in out


def test_verify_out_of_range_is_an_error(tmp_path, capsys):
    graph = write_graph(tmp_path, "p4.graph", path_graph(4))
    bad = tmp_path / "oob.set"
    bad.write_text("0 9\n")
    code, _out = run(capsys, ["verify", graph, str(bad)])
    assert code == 2


def test_stats_reports_bounds(tmp_path, capsys):
    path = write_graph(tmp_path, "k4.graph", complete_graph(4))
    code, out = run(capsys, ["stats", path])
    assert code == 0
    assert "fen 3" in out
    assert "branch-vertices 4" in out
    assert "branch-bound ok" in out


def test_stats_tree_has_no_branch_graph(tmp_path, capsys):
    path = write_graph(tmp_path, "p5.graph", path_graph(5))
    code, out = run(capsys, ["stats", path])
    assert code == 0
    assert "fen 0" in out
    assert "branch-graph empty" in out


def test_reduce_output_round_trips(tmp_path, capsys):
    path = tmp_path / "ruly.graph"
    path.write_text("8 8\n0 1\n1 2\n2 3\n0 3\n3 4\n4 5\n4 6\n4 7\n")
    out_file = tmp_path / "reduced.graph"
    code, out = run(capsys, ["reduce", str(path), "--out", str(out_file)])
    assert code == 0
    assert "RULE" in out
    assert "k-decrease" in out
    reduced = parse_graph(out_file.read_text())
    assert reduced.n < 8


def test_generate_random_fen_has_exact_fen(tmp_path, capsys):
    code, out = run(
        capsys,
        ["generate", "random-fen", "--n", "20", "--fen", "3", "--seed", "7",
         "--out", str(tmp_path / "rf")],
    )
    assert code == 0
    g = parse_graph((tmp_path / "rf.graph").read_text())
    assert feedback_edge_number(g) == 3


def test_generate_cycle_leaves_plain_cycle(tmp_path, capsys):
    code, _out = run(
        capsys,
        ["generate", "cycle-leaves", "--length", "6", "--leaves", "0",
         "--out", str(tmp_path / "cl")],
    )
    assert code == 0
    g = parse_graph((tmp_path / "cl.graph").read_text())
    assert (g.n, g.m) == (6, 6)
    assert all(len(g.adj[v]) == 2 for v in range(g.n))


def test_generate_gadget_emits_solution_that_verifies(tmp_path, capsys):
    prefix = str(tmp_path / "gad")
    code, out = run(
        capsys,
        ["generate", "gadget", "--k", "2", "--m", "1", "--n", "1",
         "--planted", "yes", "--seed", "3", "--out", prefix],
    )
    assert code == 0
    assert "k_prime 8" in out
    code, out = run(capsys, ["verify", prefix + ".graph", prefix + ".solution"])
    assert code == 0
    assert "status geodetic" in out


def test_deterministic_reports_are_byte_identical(tmp_path, capsys):
    path = write_graph(tmp_path, "c9.graph", cycle_graph(9))
    _code, first = run(capsys, ["solve", path, "--deterministic"])
    _code, second = run(capsys, ["solve", path, "--deterministic"])
    assert first == second


def test_quiet_silences_stdout(tmp_path, capsys):
    path = write_graph(tmp_path, "c6.graph", cycle_graph(6))
    code, out = run(capsys, ["solve", path, "--quiet", "--deterministic"])
    assert code == 0
    assert out == ""


def test_parse_error_exits_2(tmp_path, capsys):
    path = tmp_path / "broken.graph"
    path.write_text("not a graph\n")
    code, _out = run(capsys, ["solve", str(path)])
    assert code == 2

import csv
import io

import numpy as np
import pytest

from navtime import cli
from navtime.errors import UsageError
from navtime.harness import ALGORITHMS, CSV_HEADER, ExperimentConfig, karate_path, records_to_csv, run_experiment


@pytest.fixture
def path_file(tmp_path):
    f = tmp_path / "path4.txt"
    f.write_text("a0 a1\na1 a2\na2 a3\n")
    return f


def test_path4_single_trial(path_file):
    recs = run_experiment(ExperimentConfig(path_file, c_size=1, trials=1, k_max=1, algorithms=["greedy"]))
    assert [r.k for r in recs] == [0, 1]
    # C is {a0} or {a3}; both are mirror images
    assert recs[0].m == pytest.approx(22 / 3)
    assert recs[1].m == pytest.approx(10 / 3)
    assert {r.graph for r in recs} == {"path4"}


def test_record_invariants_karate():
    cfg = ExperimentConfig(karate_path(), c_size=3, trials=4, k_max=8, master_seed=3)
    recs = run_experiment(cfg)
    table: dict = {}
    for r in recs:
        table.setdefault((r.algorithm, r.trial), {})[r.k] = r.m
    assert {a for a, _ in table} == set(ALGORITHMS)
    for t in range(4):
        base = {table[(a, t)][0] for a in ALGORITHMS}
        assert len(base) == 1
        for a in ALGORITHMS:
            ms = table[(a, t)]
            assert sorted(ms) == list(range(9))
            assert all(ms[k] <= ms[0] + 1e-9 for k in ms)
            assert all(ms[k + 1] <= ms[k] + 1e-9 for k in range(8))


def test_full_budget_all_algorithms_agree(path_file):
    cfg = ExperimentConfig(path_file, c_size=1, trials=3, k_max=2)
    recs = run_experiment(cfg)
    finals = {}
    for r in recs:
        if r.k == 2:
            finals.setdefault(r.trial, []).append(r.m)
    for ms in finals.values():
        assert max(ms) - min(ms) <= 1e-8


def test_csv_format(path_file):
    recs = run_experiment(ExperimentConfig(path_file, c_size=1, trials=1, k_max=1, algorithms=["ra"]))
    text = records_to_csv(recs)
    assert "\r" not in text
    rows = list(csv.reader(io.StringIO(text)))
    assert tuple(rows[0]) == CSV_HEADER
    assert rows[1][5] == "7.33333333333"


def test_bad_config():
    with pytest.raises(UsageError):
        ExperimentConfig("x", c_size=1, algorithms=["magic"])


def test_cli_run_deterministic(tmp_path):
    outs = []
    for i in range(2):
        out = tmp_path / f"r{i}.csv"
        rc = cli.main(["run", "--graph", str(karate_path()), "--c-size", "3", "--trials", "3",
                       "--k-max", "5", "--algorithms", "greedy,pa,random", "--seed", "42", "--out", str(out)])
        assert rc == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]
    assert outs[0].count(b"\n") == 1 + 3 * 3 * 6


def test_cli_seed_changes_output(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for seed, out in ((1, a), (2, b)):
        cli.main(["run", "--graph", str(karate_path()), "--c-size", "3", "--trials", "2",
                  "--k-max", "2", "--algorithms", "random", "--seed", str(seed), "--out", str(out)])
    assert a.read_bytes() != b.read_bytes()


@pytest.mark.parametrize("prop", ["monotonicity", "supermodularity", "sherman-morrison", "centrality"])
def test_cli_check_ok(prop, capsys):
    assert cli.main(["check", "--property", prop, "--instances", "5", "--seed", "1"]) == 0
    assert "0 violations" in capsys.readouterr().out


def test_cli_check_violation_exit_code(monkeypatch):
    from navtime.oracle import CheckRow, PropertyReport

    def broken(n, rng):
        return PropertyReport("fake", [CheckRow(0, "q", 1.0, 0.0, False)])

    monkeypatch.setitem(cli.CHECKS, "monotonicity", broken)
    assert cli.main(["check", "--property", "monotonicity", "--instances", "1"]) == 3


def test_cli_check_csv(tmp_path):
    out = tmp_path / "rep.csv"
    cli.main(["check", "--property", "monotonicity", "--instances", "4", "--csv", str(out)])
    assert out.read_text().startswith("seed,quantity,lhs,rhs,pass\n")


def test_cli_exact(path_file, capsys):
    assert cli.main(["exact", "--graph", str(path_file), "--c-size", "1", "--k", "1", "--seed", "0"]) == 0
    out = capsys.readouterr().out
    assert "exhaustive  3.33333333333" in out
    assert "greedy      3.33333333333  ratio 1.000000" in out


def test_cli_error_codes(tmp_path, path_file):
    assert cli.main(["exact", "--graph", str(path_file), "--c-size", "1", "--k", "5"]) == 1
    assert cli.main(["run", "--graph", str(tmp_path / "missing"), "--c-size", "1"]) == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("a b c\n")
    assert cli.main(["run", "--graph", str(bad), "--c-size", "1"]) == 2
    with pytest.raises(SystemExit) as info:
        cli.main(["run", "--graph", str(path_file)])
    assert info.value.code == 1


def test_random_selection_nested_across_budgets():
    from navtime.absorbing import build_system
    from navtime.graph import candidate_edges, read_edge_list, sample_partition
    from navtime.harness import rank_edges

    g = read_edge_list(karate_path())
    p = sample_partition(g, 3, np.random.default_rng(0))
    cands = candidate_edges(g, p)
    sys = build_system(g, p)
    short = rank_edges(g, sys, cands, "random", 4, seed=99)
    long = rank_edges(g, sys, cands, "random", 10, seed=99)
    assert long[:4] == short

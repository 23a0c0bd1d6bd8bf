import json
import os

import pytest

from conftest import FIG1_FILE
from cpplc.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture()
def fig1_file(tmp_path):
    path = tmp_path / "fig1.cpplc"
    path.write_text(FIG1_FILE)
    return str(path)


def test_gen_writes_deterministic_files(tmp_path, capsys):
    out_a = tmp_path / "a"
    out_b = tmp_path / "b"
    args = ["gen", "--n", "6", "--density", "0.5", "--demand", "rand",
            "--w", "halfQ", "--eulerian", "--seed", "5", "--count", "3"]
    code, out, _ = run_cli(capsys, *args, "--out-dir", str(out_a))
    assert code == 0
    assert len(out.splitlines()) == 3
    code, _, _ = run_cli(capsys, *args, "--out-dir", str(out_b))
    assert code == 0
    for name in os.listdir(out_a):
        assert (out_a / name).read_bytes() == (out_b / name).read_bytes()


def test_solve_and_cost_round_trip(tmp_path, capsys, fig1_file):
    sol = tmp_path / "fig1.sol"
    code, out, _ = run_cli(
        capsys, "solve", fig1_file, "--alg", "exact", "--out", str(sol)
    )
    assert code == 0
    stats = json.loads(out)
    assert stats["cost"] == pytest.approx(275.0)
    assert set(stats) == {"cost", "evals", "seconds"}

    code, out, _ = run_cli(capsys, "cost", fig1_file, str(sol))
    assert code == 0
    assert "verdict ok" in out
    assert "275.000000" in out


@pytest.mark.parametrize("alg", ["ghc", "ils", "vns", "ea", "aco"])
def test_solve_algorithms_smoke(tmp_path, capsys, fig1_file, alg):
    sol = tmp_path / f"{alg}.sol"
    code, out, _ = run_cli(
        capsys, "solve", fig1_file, "--alg", alg, "--seed", "3",
        "--iters", "5", "--out", str(sol),
    )
    assert code == 0
    assert json.loads(out)["cost"] >= 275.0
    code, _, _ = run_cli(capsys, "cost", fig1_file, str(sol))
    assert code == 0


def test_solve_deterministic_solution_files(tmp_path, capsys, fig1_file):
    sols = []
    for name in ("s1.sol", "s2.sol"):
        sol = tmp_path / name
        code, _, _ = run_cli(
            capsys, "solve", fig1_file, "--alg", "ea", "--seed", "9",
            "--iters", "5", "--out", str(sol),
        )
        assert code == 0
        sols.append(sol.read_bytes())
    assert sols[0] == sols[1]


def test_cost_duplicate_edge_rejected(tmp_path, capsys, fig1_file):
    sol = tmp_path / "dup.sol"
    sol.write_text("CPPLC-SOL 1\ncost 275\n4\n1 1\n2 1\n2 1\n4 2\n")
    code, _, err = run_cli(capsys, "cost", fig1_file, str(sol))
    assert code == 2
    assert "duplicate" in err


def test_cost_mismatch_detected(tmp_path, capsys, fig1_file):
    sol = tmp_path / "off.sol"
    sol.write_text("CPPLC-SOL 1\ncost 276\n4\n1 1\n2 1\n3 1\n4 2\n")
    code, out, _ = run_cli(capsys, "cost", fig1_file, str(sol))
    assert code == 2
    assert "verdict mismatch" in out


def test_solve_exact_refuses_large(tmp_path, capsys):
    out_dir = tmp_path / "big"
    run_cli(capsys, "gen", "--n", "8", "--density", "0.6", "--seed", "1",
            "--out-dir", str(out_dir))
    inst = out_dir / os.listdir(out_dir)[0]
    code, _, err = run_cli(capsys, "solve", str(inst), "--alg", "exact")
    assert code == 2
    assert "exceeds" in err


def test_bench_csv_and_determinism(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("CPPLC_THREADS", "1")
    data = tmp_path / "data"
    run_cli(capsys, "gen", "--n", "4", "--density", "0.4", "--seed", "2",
            "--count", "2", "--out-dir", str(data))
    csv_a = tmp_path / "a.csv"
    csv_b = tmp_path / "b.csv"
    args = ["bench", str(data), "--algs", "ghc,ils", "--seeds", "0,1",
            "--iters", "5", "--gap-ref", "exact", "--timing", "zero"]
    code, out, _ = run_cli(capsys, *args, "--csv", str(csv_a))
    assert code == 0
    assert "gap%" in out
    code, _, _ = run_cli(capsys, *args, "--csv", str(csv_b))
    assert code == 0
    assert csv_a.read_bytes() == csv_b.read_bytes()
    lines = csv_a.read_text().splitlines()
    assert lines[0] == "instance,alg,seed,cost,evals,seconds"
    assert len(lines) == 1 + 2 * 2 * 2
    for line in lines[1:]:
        assert line.endswith(",0.000000")


def test_bench_threads_do_not_change_rows(tmp_path, capsys, monkeypatch):
    data = tmp_path / "data"
    run_cli(capsys, "gen", "--n", "4", "--density", "0.4", "--seed", "4",
            "--count", "2", "--out-dir", str(data))
    outputs = []
    for threads in ("1", "2"):
        monkeypatch.setenv("CPPLC_THREADS", threads)
        csv = tmp_path / f"t{threads}.csv"
        code, _, _ = run_cli(
            capsys, "bench", str(data), "--algs", "ghc,vns", "--seeds", "0",
            "--iters", "3", "--timing", "zero", "--csv", str(csv),
        )
        assert code == 0
        outputs.append(csv.read_bytes())
    assert outputs[0] == outputs[1]


def test_bench_skips_unreadable_instances(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("CPPLC_THREADS", "1")
    data = tmp_path / "data"
    run_cli(capsys, "gen", "--n", "4", "--density", "0.4", "--seed", "6",
            "--out-dir", str(data))
    (data / "broken.cpplc").write_text("CPPLC 9\n")
    csv = tmp_path / "rows.csv"
    code, _, err = run_cli(
        capsys, "bench", str(data), "--algs", "ghc", "--seeds", "0",
        "--iters", "2", "--timing", "zero", "--csv", str(csv),
    )
    assert code != 0
    assert "skipping" in err
    assert len(csv.read_text().splitlines()) == 2  # header + surviving instance


def test_run_bench_gaps_nonnegative_against_exact(tmp_path, capsys, monkeypatch):
    from cpplc.bench import gap_percent, run_bench

    monkeypatch.setenv("CPPLC_THREADS", "1")
    data = tmp_path / "data"
    run_cli(capsys, "gen", "--n", "4", "--density", "0.4", "--seed", "8",
            "--count", "2", "--out-dir", str(data))
    paths = [str(data / f) for f in sorted(os.listdir(data))]
    rows, reference, warnings = run_bench(
        paths, algs=["ghc", "ils", "ea"], seeds=[0], max_iters=10,
        gap_ref="exact", timing="zero",
    )
    assert not warnings
    assert len(rows) == 2 * 3
    for row in rows:
        assert gap_percent(row.cost, reference[row.instance]) >= -1e-9
    # A single dominating alg gets gap 0 under the best-known reference.
    rows2, ref2, _ = run_bench(paths, algs=["ea"], seeds=[0], max_iters=10)
    for row in rows2:
        assert gap_percent(row.cost, ref2[row.instance]) == 0.0


def test_unknown_bench_alg_rejected(tmp_path, capsys):
    data = tmp_path / "data"
    run_cli(capsys, "gen", "--n", "4", "--density", "0.4", "--seed", "6",
            "--out-dir", str(data))
    code, _, err = run_cli(capsys, "bench", str(data), "--algs", "ghc,bogus")
    assert code == 2
    assert "unknown algorithm" in err


def test_missing_instance_file(capsys, tmp_path):
    code, _, err = run_cli(capsys, "cost", str(tmp_path / "no.cpplc"), str(tmp_path / "no.sol"))
    assert code == 2

"""End-to-end tests for the benchmark command line."""
import csv
import subprocess
import sys
from pathlib import Path

import pytest

from laneps.cli import main

REPO = Path(__file__).resolve().parent.parent
CONFIGS = REPO / "docs" / "configs"


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestExample:
    def test_report_contents(self, capsys):
        code, out, err = run(capsys, "example", "1", "--n", "5", "--alpha", "0.1")
        assert code == 0 and err == ""
        assert "kind=linear" in out
        assert "mae = " in out and "ae_b = " in out
        assert "kappa_inf = " in out
        assert "converged = yes" in out
        assert "newton_iters" not in out  # linear solve has no iteration count

    def test_nonlinear_report_swaps_diagnostics(self, capsys):
        code, out, _ = run(capsys, "example", "2", "--n", "6", "--alpha", "0.8")
        assert code == 0
        assert "newton_iters = " in out
        assert "kappa_inf" not in out

    def test_runs_are_bit_identical(self, capsys):
        _, first, _ = run(capsys, "example", "1", "--n", "5", "--alpha", "0.1")
        _, second, _ = run(capsys, "example", "1", "--n", "5", "--alpha", "0.1")
        assert first == second

    def test_csv_round_trip(self, capsys, tmp_path):
        path = tmp_path / "report.csv"
        code, _, _ = run(capsys, "example", "1", "--n", "5", "--alpha", "0.1",
                         "--csv", str(path))
        assert code == 0
        raw = path.read_bytes()
        assert b"\r" not in raw  # LF line endings
        rows = list(csv.DictReader(raw.decode("utf-8").splitlines()))
        assert len(rows) == 50
        recomputed = max(float(r["abs_error"]) for r in rows)
        assert recomputed == float(rows[0]["mae"])  # .17g round-trips exactly
        assert rows[-1]["x"] == "1" and rows[-1]["rel_is_abs"] == "1"
        assert all(r["newton_iters"] == "" for r in rows)

    def test_invalid_basis_parameter_fails_cleanly(self, capsys):
        code, _, err = run(capsys, "example", "1", "--n", "5", "--alpha", "-0.6")
        assert code == 1
        assert "error:" in err


class TestNodes:
    def test_dump_shape_and_endpoint(self, capsys):
        code, out, _ = run(capsys, "nodes", "--n", "4", "--alpha", "0.5", "--b", "1.5")
        lines = out.strip().splitlines()
        assert code == 0
        assert lines[0] == "index,node,weight"
        assert len(lines) == 6
        first = lines[1].split(",")
        assert first[0] == "0" and float(first[1]) == 1.5
        assert all(float(line.split(",")[2]) > 0.0 for line in lines[1:])

    def test_dump_is_deterministic(self, capsys):
        _, first, _ = run(capsys, "nodes", "--n", "12", "--alpha", "-0.4", "--b", "2")
        _, second, _ = run(capsys, "nodes", "--n", "12", "--alpha", "-0.4", "--b", "2")
        assert first == second


class TestSweep:
    def test_grid_rows_sorted_and_complete(self, capsys, tmp_path):
        path = tmp_path / "sweep.csv"
        code, out, _ = run(capsys, "sweep", "1", "--n", "8,4",
                           "--alpha-range", "-0.4:0.2:0.2", "--csv", str(path))
        assert code == 0
        assert "8 rows" in out
        rows = list(csv.DictReader(path.read_text(encoding="utf-8").splitlines()))
        keys = [(int(r["n"]), float(r["alpha"])) for r in rows]
        assert keys == sorted(keys)
        assert {r["status"] for r in rows} == {"ok"}
        assert all(float(r["mae"]) < 1e-3 for r in rows)
        assert all(float(r["runtime_ms"]) >= 0.0 for r in rows)
        assert all(r["newton_iters"] == "" for r in rows)  # linear problem

    def test_nonlinear_grid_reports_iterations_not_condition(self, capsys, tmp_path):
        path = tmp_path / "sweep2.csv"
        code, _, _ = run(capsys, "sweep", "2", "--n", "4",
                         "--alpha-range", "0.8:0.1:0.9", "--csv", str(path))
        assert code == 0
        rows = list(csv.DictReader(path.read_text(encoding="utf-8").splitlines()))
        assert all(r["kappa_inf"] == "" for r in rows)
        assert all(int(r["newton_iters"]) >= 1 for r in rows)

    def test_malformed_range_is_an_error(self, capsys, tmp_path):
        code, _, err = run(capsys, "sweep", "1", "--n", "4",
                           "--alpha-range", "0.5:0.1", "--csv",
                           str(tmp_path / "x.csv"))
        assert code == 1
        assert "error:" in err


class TestSolve:
    def test_registry_and_config_paths_agree_byte_for_byte(self, capsys):
        _, via_registry, _ = run(capsys, "example", "3", "--n", "6", "--alpha", "-0.2")
        _, via_config, _ = run(capsys, "solve", "--config",
                               str(CONFIGS / "example3.cfg"))
        assert via_registry == via_config

    def test_config_without_exact_solution_reports_values_only(self, capsys, tmp_path):
        cfg = tmp_path / "plain.cfg"
        cfg.write_text(
            "kind = linear\nalpha1 = 0\nalpha2 = 1\nbeta = 1\ngamma = 0\n"
            "delta = 0\nb = 1\np = 0\ng = 2*x\nn = 6\nalpha = 0.5\n"
            "eval_points = 5\n",
            encoding="utf-8",
        )
        code, out, _ = run(capsys, "solve", "--config", str(cfg))
        assert code == 0
        assert "y_approx" in out
        assert "mae" not in out

    def test_parse_error_exits_with_diagnostics(self, capsys, tmp_path):
        cfg = tmp_path / "broken.cfg"
        cfg.write_text(
            "kind = linear\nalpha1 = 0\nalpha2 = 1\nbeta = 1\ngamma = 0\n"
            "delta = 0\nb = 1\np = 0\ng = sin(\nn = 6\nalpha = 0.5\n",
            encoding="utf-8",
        )
        code, _, err = run(capsys, "solve", "--config", str(cfg))
        assert code == 2
        assert "column" in err

    def test_missing_file_exits_nonzero(self, capsys, tmp_path):
        code, _, err = run(capsys, "solve", "--config", str(tmp_path / "nope.cfg"))
        assert code == 2
        assert "error:" in err

    def test_nonconvergent_solve_exits_nonzero(self, capsys, tmp_path):
        cfg = tmp_path / "stiff.cfg"
        cfg.write_text(
            "kind = nonlinear\nalpha1 = 0\nalpha2 = 1\nbeta = 1\ngamma = 0\n"
            "delta = 0\nb = 1\nf = exp(60*y) - 1000000\nn = 8\nalpha = 0.5\n",
            encoding="utf-8",
        )
        code, _, err = run(capsys, "solve", "--config", str(cfg))
        assert code == 1
        assert "error:" in err


class TestCheck:
    def test_full_reference_battery_passes(self, capsys):
        code, out, _ = run(capsys, "check")
        assert code == 0
        assert "all checks passed" in out
        assert out.count(": ok") >= 12
        assert "FAIL" not in out


class TestEntryPoint:
    def test_module_invocation(self):
        proc = subprocess.run(
            [sys.executable, "-m", "laneps", "nodes", "--n", "2",
             "--alpha", "0.5", "--b", "1"],
            capture_output=True, text=True, check=False,
        )
        assert proc.returncode == 0
        assert proc.stdout.startswith("index,node,weight")

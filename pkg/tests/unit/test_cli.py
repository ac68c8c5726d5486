"""Unit tests for the command-line interface."""

import pytest

from src.benchio.results import read_results
from src.main import build_parser, main

SPEC_TEXT = "\n".join([
    "grid=tiny",
    "agents=2",
    "algorithms=idle",
    "instances=2",
    "window=2",
    "cap=100",
    "fail_policy=allstay",
]) + "\n"


@pytest.fixture
def tiny_files(benchmark_dir):
    return benchmark_dir / "tiny.map", benchmark_dir / "scen-random" / "tiny-random-1.scen"


class TestParser:
    """Tests for argument parsing."""

    def test_solve_arguments(self):
        """Test solve defaults."""
        args = build_parser().parse_args(
            ["solve", "--map", "m.map", "--scen", "s.scen", "--agents", "3", "--algo", "lns2"]
        )
        assert args.command == "solve"
        assert args.agents == 3
        assert args.nb_policy == "shared"
        assert args.fail_policy is None
        assert args.log_level is None

    def test_log_level_after_subcommand(self):
        """Test that a subcommand's --log-level is kept."""
        args = build_parser().parse_args(["report", "r.csv", "--log-level", "DEBUG"])
        assert args.log_level == "DEBUG"

    def test_bench_lists(self):
        """Test comma-separated options."""
        args = build_parser().parse_args(["bench", "exp1", "--agents", "10,20", "--algorithms", "pibt, prp:fixed"])
        assert args.agents == [10, 20]
        assert args.algorithms == ["pibt", "prp:fixed"]


class TestSolve:
    """Tests for the solve command."""

    def test_solve_prints_row(self, tiny_files, capsys):
        """Test one results row on stdout."""
        map_path, scen_path = tiny_files
        code = main(["solve", "--map", str(map_path), "--scen", str(scen_path), "--agents", "2", "--algo", "pibt"])
        assert code == 0
        (record,) = read_results(capsys.readouterr().out)
        assert record.grid_name == "tiny"
        assert record.scen_id == 1
        assert record.solved
        assert record.budget == 30

    def test_solve_trace_and_out(self, tiny_files, tmp_path, capsys):
        """Test period trace lines and the CSV file."""
        map_path, scen_path = tiny_files
        out = tmp_path / "row.csv"
        code = main([
            "solve", "--map", str(map_path), "--scen", str(scen_path), "--agents", "3",
            "--algo", "lns2", "--nb-policy", "cpb", "--trace", "--out", str(out), "--window", "2",
        ])
        assert code == 0
        stdout = capsys.readouterr().out
        assert stdout.startswith("# period 0 t=0")
        (record,) = read_results(out.read_text(encoding="utf-8"))
        assert record.policy == "cpb"
        assert record.window == 2

    def test_horizon_below_window(self, tiny_files):
        """Test that h < w is a configuration error."""
        map_path, scen_path = tiny_files
        code = main([
            "solve", "--map", str(map_path), "--scen", str(scen_path), "--agents", "2",
            "--algo", "prp", "--window", "5", "--horizon", "3",
        ])
        assert code == 1

    @pytest.mark.parametrize("option", ["--window", "--horizon", "--budget-multiplier", "--nb-size"])
    def test_explicit_zero_is_configuration_error(self, tiny_files, option):
        """Test that an explicit 0 is rejected instead of replaced by the default."""
        map_path, scen_path = tiny_files
        code = main([
            "solve", "--map", str(map_path), "--scen", str(scen_path), "--agents", "2",
            "--algo", "lns2", option, "0",
        ])
        assert code == 1

    def test_missing_map(self, tmp_path, tiny_files):
        """Test that a missing file is an I/O error."""
        _, scen_path = tiny_files
        code = main([
            "solve", "--map", str(tmp_path / "absent.map"), "--scen", str(scen_path), "--agents", "2", "--algo", "prp",
        ])
        assert code == 2

    def test_bad_policy(self, tiny_files):
        """Test an unparsable neighborhood policy."""
        map_path, scen_path = tiny_files
        code = main([
            "solve", "--map", str(map_path), "--scen", str(scen_path), "--agents", "2",
            "--algo", "lns2", "--nb-policy", "fixed:none",
        ])
        assert code == 1

    def test_usage_error(self):
        """Test that argparse errors exit with 1."""
        assert main(["solve", "--agents", "2"]) == 1


class TestBench:
    """Tests for the bench command."""

    def test_idle_planner_is_unsolved_at_cap(self, benchmark_dir, tmp_path):
        """Test a spec file with the never-moving planner."""
        spec = tmp_path / "idle.spec"
        spec.write_text(SPEC_TEXT, encoding="utf-8")
        out = tmp_path / "results.csv"
        code = main(["bench", str(spec), "--benchmark-dir", str(benchmark_dir), "--out", str(out)])
        assert code == 0
        records = read_results(out.read_text(encoding="utf-8"))
        assert len(records) == 2
        assert all(not r.solved and r.makespan == 100 for r in records)
        aggregate = (tmp_path / "results-aggregate.csv").read_text(encoding="utf-8").splitlines()
        assert aggregate[1].endswith(",100.00,0,2")

    def test_unknown_preset_grid(self, tmp_path):
        """Test a preset restricted to a grid it does not have."""
        code = main(["bench", "exp1", "--grid", "den520d", "--out", str(tmp_path / "r.csv")])
        assert code == 1

    def test_missing_spec_file(self, tmp_path):
        """Test a spec path that does not exist."""
        assert main(["bench", str(tmp_path / "none.spec")]) == 2


class TestReport:
    """Tests for the report command."""

    def test_empty_results(self, tmp_path):
        """Test that an empty results file reports nothing and succeeds."""
        results = tmp_path / "results.csv"
        results.write_text("", encoding="utf-8")
        assert main(["report", str(results), "--out-dir", str(tmp_path / "report")]) == 0

    def test_report_files(self, benchmark_dir, tmp_path, capsys):
        """Test bench followed by report."""
        spec = tmp_path / "idle.spec"
        spec.write_text(SPEC_TEXT.replace("algorithms=idle", "algorithms=pibt"), encoding="utf-8")
        out = tmp_path / "results.csv"
        assert main(["bench", str(spec), "--benchmark-dir", str(benchmark_dir), "--out", str(out)]) == 0
        assert main(["report", str(out), "--out-dir", str(tmp_path / "report")]) == 0
        assert (tmp_path / "report" / "tiny-cactus.csv").is_file()
        assert (tmp_path / "report" / "tiny-table.csv").is_file()

    def test_malformed_results(self, tmp_path):
        """Test a results file with missing columns."""
        results = tmp_path / "results.csv"
        results.write_text("grid_name,algorithm\ntiny,pibt\n", encoding="utf-8")
        assert main(["report", str(results)]) == 2

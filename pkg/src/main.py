"""Command-line entry point: solve, bench and report."""

import argparse
import re
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from pydantic import ValidationError

from src.benchio.results import RunRecord, aggregate_csv, read_results, write_results
from src.config.settings import get_settings
from src.core.models import (
    AgentBudgetPolicy,
    Algorithm,
    FailPolicy,
    NeighborhoodBudgetPolicy,
    PlannerConfig,
)
from src.experiments.harness import RunTask, run_experiment, run_task
from src.experiments.presets import get_preset, is_preset
from src.experiments.report import write_report
from src.experiments.spec import load_spec_file
from src.processing.executor import PeriodRecord
from src.utils.exceptions import (
    BenchmarkFileError,
    BenchmarkParseError,
    ConfigurationError,
    InvalidInstanceError,
)
from src.utils.logging import get_logger, setup_logging

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_IO = 2
EXIT_INTERRUPTED = 130

_SCEN_INDEX = re.compile(r"-(\d+)$")


class _Parser(argparse.ArgumentParser):
    """Reports usage errors as configuration errors (exit code 1)."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise ConfigurationError(message)


def _csv_list(value: str) -> List[str]:
    return [item.strip() for item in value.split(",") if item.strip()]


def _int_list(value: str) -> List[int]:
    try:
        return [int(item) for item in _csv_list(value)]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got '{value}'") from None


def _add_common(parser: argparse.ArgumentParser, default=argparse.SUPPRESS) -> None:
    parser.add_argument(
        "--log-level",
        type=str,
        default=default,
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Logging level (overrides config)",
    )


def _add_episode_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--window", type=int, default=None, help="Execution window w")
    parser.add_argument("--horizon", type=int, default=None, help="Planning horizon h (default: 2w)")
    parser.add_argument("--budget-multiplier", type=float, default=None, help="Expansions per agent per period")
    parser.add_argument("--budget", type=int, default=None, help="Absolute per-period budget (overrides multiplier)")
    parser.add_argument("--cap", type=int, default=None, help="Makespan cap")
    parser.add_argument(
        "--fail-policy",
        type=str,
        default=None,
        choices=[policy.value for policy in FailPolicy],
        help="Fail policy (default: istay)",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rtmapf", description="Real-time multi-agent pathfinding under a planning budget")
    _add_common(parser, default=None)
    subparsers = parser.add_subparsers(dest="command", required=True)

    solve = subparsers.add_parser("solve", help="Run one episode and print its results row")
    _add_common(solve)
    solve.add_argument("--map", type=Path, required=True, help="MovingAI .map file")
    solve.add_argument("--scen", type=Path, required=True, help="MovingAI .scen file")
    solve.add_argument("--agents", type=int, required=True, help="Number of agents taken from the scenario")
    solve.add_argument("--algo", type=str, required=True, choices=[a.value for a in Algorithm], help="Planner")
    solve.add_argument(
        "--agent-budget-policy",
        type=str,
        default=AgentBudgetPolicy.SHARED.value,
        choices=[p.value for p in AgentBudgetPolicy],
        help="PrP budget policy",
    )
    solve.add_argument("--nb-policy", type=str, default="shared", help="shared, cpb or fixed:<B_F>")
    solve.add_argument(
        "--intra-policy",
        type=str,
        default=AgentBudgetPolicy.SHARED.value,
        choices=[p.value for p in AgentBudgetPolicy],
        help="Budget split inside an LNS2 neighborhood",
    )
    solve.add_argument("--nb-size", type=int, default=None, help="LNS2 neighborhood size")
    solve.add_argument("--seed", type=int, default=0, help="Random seed")
    solve.add_argument("--warm-start", action="store_true", help="Reuse the previous LNS2 incumbent")
    solve.add_argument("--truncate-at-horizon", action="store_true", help="Stop searches at the horizon")
    solve.add_argument("--trace", action="store_true", help="Print every planning period")
    solve.add_argument("--out", type=Path, default=None, help="Also write the row to this CSV file")
    _add_episode_options(solve)

    bench = subparsers.add_parser("bench", help="Run an experiment sweep")
    _add_common(bench)
    bench.add_argument("spec", type=str, help="Preset (exp1, exp2) or KEY=VALUE spec file")
    bench.add_argument("--grid", type=_csv_list, default=None, help="Grids of a preset (comma-separated)")
    bench.add_argument("--agents", type=_int_list, default=None, help="Agent counts (replaces the sweep)")
    bench.add_argument("--benchmark-dir", type=Path, default=None, help="Directory of .map and .scen files")
    bench.add_argument("--workers", type=int, default=None, help="Parallel worker processes")
    bench.add_argument("--instances", "--scens", dest="instances", type=int, default=None,
                       help="Scenario files per cell")
    bench.add_argument("--algorithms", type=_csv_list, default=None, help="Algorithm labels (comma-separated)")
    bench.add_argument("--seeds", type=_int_list, default=None, help="Seeds (comma-separated)")
    bench.add_argument("--out", type=Path, default=Path("results.csv"), help="Results CSV")
    bench.add_argument("--aggregate-out", type=Path, default=None, help="Mean-makespan CSV")
    _add_episode_options(bench)

    report = subparsers.add_parser("report", help="Cactus data and tables from a results CSV")
    _add_common(report)
    report.add_argument("results", type=Path, help="Results CSV written by bench")
    report.add_argument("--out-dir", type=Path, default=Path("report"), help="Output directory")
    report.add_argument("--plot", action="store_true", help="Also render cactus plots")

    return parser


def _planner_config(args: argparse.Namespace) -> PlannerConfig:
    settings = get_settings()
    try:
        return PlannerConfig(
            algorithm=Algorithm(args.algo),
            agent_budget_policy=AgentBudgetPolicy(args.agent_budget_policy),
            nb_policy=NeighborhoodBudgetPolicy.parse(args.nb_policy),
            intra_policy=AgentBudgetPolicy(args.intra_policy),
            nb_size=args.nb_size if args.nb_size is not None else settings.nb_size,
            p_conflict=settings.p_conflict,
            fail_policy=FailPolicy(args.fail_policy or FailPolicy.I_STAY.value),
            truncate_at_horizon=args.truncate_at_horizon,
            warm_start=args.warm_start,
        )
    except ValidationError as e:
        raise ConfigurationError(f"Invalid planner configuration: {e}") from None


def _format_positions(positions) -> str:
    return " ".join(f"{row},{col}" for row, col in positions)


def _print_period(record: PeriodRecord) -> None:
    print(
        f"# period {record.index} t={record.start_time} expansions={record.expansions} "
        f"conflicts_before={record.conflicts_before} conflicts_after={record.conflicts_after} "
        f"stayed={list(record.stayed_agents)} positions={_format_positions(record.positions)}"
    )


def cmd_solve(args: argparse.Namespace) -> int:
    settings = get_settings()
    config = _planner_config(args)
    window = args.window if args.window is not None else settings.window
    horizon = args.horizon if args.horizon is not None else settings.default_horizon(window)
    multiplier = args.budget_multiplier if args.budget_multiplier is not None else settings.budget_multiplier
    if multiplier <= 0:
        raise ConfigurationError(f"Budget multiplier must be positive, got {multiplier}")
    budget = args.budget if args.budget is not None else max(1, int(multiplier * args.agents))
    match = _SCEN_INDEX.search(args.scen.stem)

    task = RunTask(
        grid=args.map.stem,
        map_path=args.map,
        scen_path=args.scen,
        scen_id=int(match.group(1)) if match else 0,
        agent_count=args.agents,
        window=window,
        horizon=horizon,
        budget=budget,
        cap=args.cap if args.cap is not None else settings.makespan_cap,
        seed=args.seed,
        config=config,
    )
    record = run_task(task, _print_period if args.trace else None)
    if args.trace and not record.solved:
        logger.warning(f"Episode not solved within makespan cap {task.cap}")

    text = write_results([record])
    print(text, end="")
    if args.out is not None:
        args.out.write_text(text, encoding="utf-8")
        logger.info(f"Wrote {args.out}")
    return EXIT_OK


def _bench_overrides(args: argparse.Namespace) -> dict:
    overrides = {
        "window": args.window,
        "horizon": args.horizon,
        "budget": args.budget,
        "budget_multipliers": [args.budget_multiplier] if args.budget_multiplier is not None else None,
        "cap": args.cap,
        "fail_policy": args.fail_policy,
        "instances": args.instances,
        "algorithms": args.algorithms,
        "seeds": args.seeds,
        "agent_counts": args.agents,
    }
    return {key: value for key, value in overrides.items() if value is not None}


def cmd_bench(args: argparse.Namespace) -> int:
    settings = get_settings()
    overrides = _bench_overrides(args)
    if is_preset(args.spec):
        overrides.setdefault("instances", settings.instances_per_cell)
        overrides.setdefault("budget_multipliers", [settings.budget_multiplier])
        overrides.setdefault("nb_size", settings.nb_size)
        overrides.setdefault("p_conflict", settings.p_conflict)
        overrides.setdefault("window", settings.window)
        overrides.setdefault("cap", settings.makespan_cap)
        overrides.setdefault("horizon_factor", settings.horizon_factor)
        specs = get_preset(args.spec, args.grid, **overrides)
    else:
        specs = [load_spec_file(args.spec, **overrides)]

    benchmark_dir = args.benchmark_dir or settings.benchmark_dir
    workers = args.workers if args.workers is not None else settings.workers
    if workers < 1:
        raise ConfigurationError(f"Worker count must be >= 1, got {workers}")
    done = 0

    def progress(record: RunRecord) -> None:
        nonlocal done
        done += 1
        logger.debug(
            f"[{done}] {record.grid_name} {record.algorithm}:{record.policy} agents={record.agent_count} "
            f"w={record.window} scen={record.scen_id} -> makespan {record.makespan}"
        )

    records = run_experiment(specs, benchmark_dir, workers, progress)

    args.out.write_text(write_results(records), encoding="utf-8")
    aggregate_out = args.aggregate_out or args.out.with_name(f"{args.out.stem}-aggregate.csv")
    aggregate_out.write_text(aggregate_csv(records), encoding="utf-8")
    solved = sum(record.solved for record in records)
    logger.info(f"{len(records)} episodes ({solved} solved): wrote {args.out} and {aggregate_out}")
    return EXIT_OK


def cmd_report(args: argparse.Namespace) -> int:
    try:
        text = args.results.read_text(encoding="utf-8")
    except OSError as e:
        raise BenchmarkFileError(f"Cannot read results file {args.results}: {e}") from e
    records = read_results(text)
    for path in write_report(records, args.out_dir, plot=args.plot):
        print(path)
    return EXIT_OK


COMMANDS = {
    "solve": cmd_solve,
    "bench": cmd_bench,
    "report": cmd_report,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Main entry point for the application.

    Args:
        argv: Command-line arguments (defaults to sys.argv)

    Returns:
        Exit code: 0 success, 1 usage or configuration error, 2 I/O or parse error
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        settings = get_settings()
        setup_logging(level=args.log_level or settings.log_level)
    except (ConfigurationError, ValidationError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        logger.debug(f"Running command {args.command}")
        return COMMANDS[args.command](args)
    except KeyboardInterrupt:
        logger.info("Interrupted by user")
        return EXIT_INTERRUPTED
    except (ConfigurationError, InvalidInstanceError, ValidationError) as e:
        logger.error(f"Command '{args.command}' failed: {e}")
        logger.debug("Traceback", exc_info=True)
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except (BenchmarkParseError, BenchmarkFileError, OSError) as e:
        logger.error(f"Command '{args.command}' failed: {e}")
        logger.debug("Traceback", exc_info=True)
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

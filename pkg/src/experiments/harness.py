"""Sweep harness: expand specs into episodes, run them, collect RunRecords."""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Callable, Iterable, List, Optional, Sequence, Tuple, Union

from src.benchio.maps import load_map
from src.benchio.results import RunRecord
from src.benchio.scenarios import load_scenario
from src.core.domain import GridMap, Instance
from src.core.models import PlannerConfig
from src.experiments.spec import ExperimentSpec
from src.processing.executor import PeriodCallback, run_episode
from src.utils.exceptions import BenchmarkFileError
from src.utils.logging import get_logger

logger = get_logger(__name__)

PathLike = Union[str, Path]


def resolve_map_path(benchmark_dir: PathLike, grid: str) -> Path:
    """`<dir>/<grid>.map` or `<dir>/maps/<grid>.map`."""
    root = Path(benchmark_dir)
    for candidate in (root / f"{grid}.map", root / "maps" / f"{grid}.map"):
        if candidate.is_file():
            return candidate
    raise BenchmarkFileError(f"Map file for grid '{grid}' not found under {root}")


def resolve_scen_path(benchmark_dir: PathLike, grid: str, scen_type: str, index: int) -> Path:
    """`<dir>/scen-<type>/<grid>-<type>-<i>.scen` or `<dir>/<grid>-<type>-<i>.scen`."""
    root = Path(benchmark_dir)
    name = f"{grid}-{scen_type}-{index}.scen"
    for candidate in (root / f"scen-{scen_type}" / name, root / name):
        if candidate.is_file():
            return candidate
    raise BenchmarkFileError(f"Scenario file {name} not found under {root}")


@dataclass(frozen=True)
class RunTask:
    """Everything one worker needs to run one episode."""

    grid: str
    map_path: Path
    scen_path: Path
    scen_id: int
    agent_count: int
    window: int
    horizon: int
    budget: int
    cap: int
    seed: int
    config: PlannerConfig

    @property
    def sort_key(self) -> Tuple:
        return (
            self.grid,
            self.config.algorithm.value,
            self.config.policy_label,
            self.config.fail_policy.value,
            self.agent_count,
            self.window,
            self.budget,
            self.scen_id,
            self.seed,
        )


@lru_cache(maxsize=None)
def _cached_map(path: str) -> GridMap:
    return load_map(path)


def run_task(task: RunTask, on_period: Optional[PeriodCallback] = None) -> RunRecord:
    """Run one episode and turn it into a results row."""
    grid = _cached_map(str(task.map_path))
    agents = load_scenario(task.scen_path, task.agent_count, grid)
    instance = Instance(grid, tuple(agents), task.budget, task.window, task.horizon, task.cap)
    result = run_episode(instance, task.config, task.seed, on_period)
    return RunRecord(
        grid_name=task.grid,
        algorithm=task.config.algorithm.value,
        policy=task.config.policy_label,
        fail_policy=task.config.fail_policy.value,
        agent_count=task.agent_count,
        window=task.window,
        horizon=task.horizon,
        budget=task.budget,
        seed=task.seed,
        scen_id=task.scen_id,
        makespan=result.makespan,
        solved=result.solved,
        periods=result.periods,
        expansions_total=result.total_expansions,
    )


def build_tasks(spec: ExperimentSpec, benchmark_dir: PathLike) -> List[RunTask]:
    """
    Expand a spec into episodes, resolving every file up front.

    Raises:
        BenchmarkFileError: If the map or a scenario file is missing
    """
    map_path = resolve_map_path(benchmark_dir, spec.grid)
    scen_paths = [
        resolve_scen_path(benchmark_dir, spec.grid, spec.scen_type, index)
        for index in range(1, spec.instances + 1)
    ]
    tasks = []
    for cell in spec.cells():
        for config in spec.planner_configs():
            for scen_id, scen_path in enumerate(scen_paths, start=1):
                for seed in spec.seeds:
                    tasks.append(
                        RunTask(
                            grid=spec.grid,
                            map_path=map_path,
                            scen_path=scen_path,
                            scen_id=scen_id,
                            agent_count=cell.agent_count,
                            window=cell.window,
                            horizon=cell.horizon,
                            budget=cell.budget,
                            cap=spec.cap,
                            seed=seed,
                            config=config,
                        )
                    )
    return tasks


def run_tasks(
    tasks: Sequence[RunTask],
    workers: int = 1,
    on_record: Optional[Callable[[RunRecord], None]] = None,
) -> List[RunRecord]:
    """
    Run episodes, in worker processes when `workers > 1`.

    The records come back sorted by (grid, algorithm, policy, fail policy,
    agents, window, budget, scenario, seed), whatever the worker count.
    """
    ordered = sorted(tasks, key=lambda task: task.sort_key)
    records: List[RunRecord] = []
    if workers > 1 and len(ordered) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for record in pool.map(run_task, ordered, chunksize=max(1, len(ordered) // (workers * 4))):
                records.append(record)
                if on_record is not None:
                    on_record(record)
    else:
        for task in ordered:
            record = run_task(task)
            records.append(record)
            if on_record is not None:
                on_record(record)
    return records


def run_experiment(
    specs: Iterable[ExperimentSpec],
    benchmark_dir: PathLike,
    workers: int = 1,
    on_record: Optional[Callable[[RunRecord], None]] = None,
) -> List[RunRecord]:
    """Build the tasks of every spec and run them all."""
    tasks: List[RunTask] = []
    for spec in specs:
        spec_tasks = build_tasks(spec, benchmark_dir)
        logger.info(
            f"Grid {spec.grid}: {len(spec_tasks)} episodes "
            f"({len(spec.cells())} cells x {len(spec.algorithms)} algorithms x "
            f"{spec.instances} scenarios x {len(spec.seeds)} seeds)"
        )
        tasks.extend(spec_tasks)
    return run_tasks(tasks, workers, on_record)

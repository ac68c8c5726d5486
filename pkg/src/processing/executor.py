"""The plan / commit / execute loop of one real-time MAPF episode."""

from dataclasses import dataclass, field
from typing import Callable, List, Optional, Tuple

from src.core.domain import Cell, Instance, PartialSolution, find_conflicts
from src.core.models import PlannerConfig
from src.planners.base import PlanningContext
from src.planners.registry import create_planner
from src.processing.fail_policy import SolutionPrefix, prefix_conflicts, resolve
from src.search.meter import BudgetMeter
from src.utils.exceptions import BudgetOverrunError, InvalidInstanceError
from src.utils.logging import get_logger

logger = get_logger(__name__)

Positions = Tuple[Cell, ...]


@dataclass(frozen=True)
class PeriodRecord:
    """What happened in one planning period."""

    index: int
    start_time: int
    expansions: int
    conflicts_before: int
    conflicts_after: int
    stayed_agents: Tuple[int, ...]
    positions: Positions


@dataclass
class EpisodeResult:
    """Outcome of one episode; `makespan` never exceeds the instance's cap."""

    solved: bool
    makespan: int
    periods: int
    records: List[PeriodRecord] = field(default_factory=list)
    trajectory: List[Positions] = field(default_factory=list)

    @property
    def expansions_per_period(self) -> List[int]:
        return [record.expansions for record in self.records]

    @property
    def conflicts_resolved_per_period(self) -> List[int]:
        return [record.conflicts_before for record in self.records]

    @property
    def total_expansions(self) -> int:
        return sum(self.expansions_per_period)


PeriodCallback = Callable[[PeriodRecord], None]


def _check_partial(partial: PartialSolution, positions: Positions) -> None:
    if len(partial) != len(positions) or partial.positions != tuple(positions):
        raise InvalidInstanceError("Planner returned paths that do not start at the agents' current cells")


def run_episode(
    instance: Instance,
    config: PlannerConfig,
    seed: int,
    on_period: Optional[PeriodCallback] = None,
) -> EpisodeResult:
    """
    Alternate planning and execution until all agents are at their goals or the cap is hit.

    Each period gets a fresh meter of `instance.budget` expansions. The
    planner's partial solution is resolved by the configured fail policy
    and all `window` committed steps are executed. The goal test runs after
    every executed timestep, so the makespan need not be a multiple of the
    window.

    Args:
        instance: The problem
        config: Algorithm, budget policies and fail policy
        seed: Seed of the episode's random generator
        on_period: Called with every PeriodRecord (used by `solve --trace`)

    Returns:
        EpisodeResult with the executed trajectory

    Raises:
        BudgetOverrunError: If a planner charged more than the period budget
    """
    goals = instance.goals
    window = instance.window
    cap = instance.makespan_cap
    positions: Positions = instance.starts
    trajectory: List[Positions] = [positions]
    records: List[PeriodRecord] = []

    logger.info(
        f"Episode start: {config.label}, {config.fail_policy.value}, {instance.num_agents} agents, "
        f"w={window}, h={instance.horizon}, B={instance.budget}, seed={seed}"
    )
    if instance.at_goals(positions):
        logger.info("Episode finished: all agents start at their goals")
        return EpisodeResult(solved=True, makespan=0, periods=0, trajectory=trajectory)

    context = PlanningContext.create(instance, config, seed)
    planner = create_planner(context)
    t = 0
    solved_at: Optional[int] = None

    while solved_at is None and t < cap:
        meter = BudgetMeter(instance.budget)
        partial = planner.plan(positions, meter)
        if meter.used > instance.budget:
            raise BudgetOverrunError(f"Period {len(records)} used {meter.used} > {instance.budget} expansions")
        _check_partial(partial, positions)

        prefix: SolutionPrefix = resolve(partial, config.fail_policy, window)
        record = PeriodRecord(
            index=len(records),
            start_time=t,
            expansions=meter.used,
            conflicts_before=prefix_conflicts(partial, window),
            conflicts_after=len(find_conflicts(prefix.as_partial(), window)),
            stayed_agents=tuple(sorted(prefix.stayed)),
            positions=positions,
        )
        records.append(record)
        if on_period is not None:
            on_period(record)

        for step in range(1, window + 1):
            t += 1
            positions = prefix.positions_at(step)
            trajectory.append(positions)
            context.pibt_state.advance(positions, goals)
            if instance.at_goals(positions):
                solved_at = t
                break
            if t >= cap:
                break

    if solved_at is not None:
        logger.info(f"Episode solved: makespan {solved_at} after {len(records)} periods")
        return EpisodeResult(True, solved_at, len(records), records, trajectory)

    logger.info(f"Episode unsolved: cap {cap} reached after {len(records)} periods")
    return EpisodeResult(False, cap, len(records), records, trajectory)

"""Fail policies: turning a partial solution into a conflict-free committed prefix."""

from dataclasses import dataclass, field
from typing import FrozenSet, Set, Tuple

from src.core.domain import Cell, PartialSolution, TimedPath, find_conflicts
from src.core.models import FailPolicy
from src.utils.exceptions import InvalidInstanceError
from src.utils.logging import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class SolutionPrefix:
    """Exactly `window + 1` cells per agent, free of conflicts."""

    paths: Tuple[TimedPath, ...]
    window: int
    stayed: FrozenSet[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        object.__setattr__(self, "paths", tuple(self.paths))
        object.__setattr__(self, "stayed", frozenset(self.stayed))
        for agent, path in enumerate(self.paths):
            if len(path) != self.window + 1:
                raise InvalidInstanceError(
                    f"Prefix of agent {agent} has {len(path)} cells, expected {self.window + 1}"
                )

    def positions_at(self, t: int) -> Tuple[Cell, ...]:
        return tuple(path.cells[t] for path in self.paths)

    @property
    def final_positions(self) -> Tuple[Cell, ...]:
        return self.positions_at(self.window)

    def as_partial(self) -> PartialSolution:
        return PartialSolution(self.paths)


def _check_distinct_starts(partial: PartialSolution) -> None:
    starts = partial.positions
    if len(set(starts)) != len(starts):
        raise InvalidInstanceError("Agents of a partial solution must start in distinct cells")


def all_stay(partial: PartialSolution, window: int) -> SolutionPrefix:
    """Every agent waits for the whole window."""
    _check_distinct_starts(partial)
    paths = tuple(TimedPath.stay(cell).prefix(window) for cell in partial.positions)
    return SolutionPrefix(paths, window, frozenset(range(len(partial))))


def i_stay(partial: PartialSolution, window: int) -> SolutionPrefix:
    """
    Agents in conflicts, and agents without a plan, wait; everyone else moves.

    Making an agent wait can put it in the way of a mover, so the stay set
    is grown until the committed prefixes are conflict-free. Two waiting
    agents never collide because starts are distinct.

    Args:
        partial: Planner output
        window: Number of steps to commit

    Returns:
        The committed prefix; `stayed` names the agents that were held back
        although their own path had more than one cell
    """
    _check_distinct_starts(partial)
    prefixes = [path.prefix(window) for path in partial.paths]
    waits = [TimedPath.stay(path.start).prefix(window) for path in partial.paths]
    staying: Set[int] = {agent for agent, path in enumerate(partial.paths) if len(path) == 1}

    while True:
        current = PartialSolution(
            tuple(waits[agent] if agent in staying else prefixes[agent] for agent in range(len(prefixes)))
        )
        involved = {agent for conflict in find_conflicts(current, window) for agent in conflict.agents}
        newly = involved - staying
        if not newly:
            break
        staying |= newly

    held_back = frozenset(agent for agent in staying if len(partial[agent]) > 1)
    if held_back:
        logger.debug(f"IStay held back agents {sorted(held_back)}")
    return SolutionPrefix(current.paths, window, held_back)


def resolve(partial: PartialSolution, policy: FailPolicy, window: int) -> SolutionPrefix:
    """
    Apply a fail policy.

    Args:
        partial: Planner output; first cells must be pairwise distinct
        policy: AllStay or IStay
        window: Execution window

    Returns:
        A conflict-free prefix of `window + 1` cells per agent
    """
    if policy is FailPolicy.ALL_STAY:
        return all_stay(partial, window)
    return i_stay(partial, window)


def prefix_conflicts(partial: PartialSolution, window: int) -> int:
    """Conflicts in the raw w-step prefixes, before any fail policy."""
    return len(find_conflicts(partial, window))

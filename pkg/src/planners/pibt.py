"""Priority Inheritance with Backtracking (PIBT), iterated over an execution window."""

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from src.core.domain import Cell, GridMap, PartialSolution, TimedPath
from src.planners.base import Planner
from src.search.heuristics import DistanceMap, build_distance_map
from src.search.meter import BudgetMeter
from src.utils.logging import get_logger

logger = get_logger(__name__)


@dataclass
class PibtState:
    """
    Dynamic priorities plus current positions.

    An agent's priority is (epochs since it was last at its goal, -id), so
    the order is total and agents parked at their goals rank below every
    agent still travelling.
    """

    positions: List[Cell]
    epochs: List[int]

    @classmethod
    def initial(cls, positions: Sequence[Cell], goals: Sequence[Cell]) -> "PibtState":
        positions = [tuple(p) for p in positions]
        epochs = [0 if pos == goal else 1 for pos, goal in zip(positions, goals)]
        return cls(positions=positions, epochs=epochs)

    def priority(self, agent: int) -> Tuple[int, int]:
        return self.epochs[agent], -agent

    def order(self) -> List[int]:
        """Agents in descending priority."""
        return sorted(range(len(self.positions)), key=self.priority, reverse=True)

    def advance(self, positions: Sequence[Cell], goals: Sequence[Cell]) -> None:
        """Record one executed timestep."""
        self.positions = [tuple(p) for p in positions]
        self.epochs = [
            0 if pos == goal else epoch + 1
            for pos, goal, epoch in zip(self.positions, goals, self.epochs)
        ]

    def copy(self) -> "PibtState":
        return PibtState(positions=list(self.positions), epochs=list(self.epochs))


def pibt_step(
    grid: GridMap,
    state: PibtState,
    goals: Sequence[Cell],
    dmaps: Sequence[DistanceMap],
) -> List[Cell]:
    """
    One synchronized PIBT step.

    Agents are processed in descending priority. Each ranks its neighbors
    and the wait move by goal distance, then by cell index. When the chosen
    cell is occupied by an agent that has not moved yet, that agent inherits
    the priority and must move first; if it cannot, the next candidate is
    tried.

    Args:
        grid: The map
        state: Current positions and priorities (not modified)
        goals: Goal of every agent
        dmaps: Distance map per agent

    Returns:
        Next cell of every agent, free of vertex and swap conflicts
    """
    current = state.positions
    occupied_now: Dict[Cell, int] = {cell: agent for agent, cell in enumerate(current)}
    occupied_next: Dict[Cell, int] = {}
    nxt: List[Optional[Cell]] = [None] * len(current)

    def candidates(agent: int) -> List[Cell]:
        cell = current[agent]
        options = (cell,) + grid.neighbors(cell)
        return sorted(options, key=lambda v: (dmaps[agent][v], grid.index(v)))

    def assign(agent: int) -> bool:
        here = current[agent]
        for v in candidates(agent):
            if v in occupied_next:
                continue
            other = occupied_now.get(v)
            # the agent we would swap with
            if other is not None and nxt[other] == here:
                continue

            nxt[agent] = v
            occupied_next[v] = agent
            if other is not None and other != agent and nxt[other] is None and not assign(other):
                continue
            return True

        nxt[agent] = here
        occupied_next[here] = agent
        return False

    for agent in state.order():
        if nxt[agent] is None:
            assign(agent)

    return list(nxt)


def pibt_prefix(
    grid: GridMap,
    positions: Sequence[Cell],
    goals: Sequence[Cell],
    window: int,
    dmaps: Optional[Sequence[DistanceMap]] = None,
    state: Optional[PibtState] = None,
) -> PartialSolution:
    """
    Apply `pibt_step` `window` times; costs no planning budget.

    Args:
        grid: The map
        positions: Current cell of every agent
        goals: Goal of every agent
        window: Number of steps to plan
        dmaps: Distance map per agent (built on demand when omitted)
        state: Priorities to start from; copied, never modified

    Returns:
        A PartialSolution of `window + 1` cells per agent, conflict-free throughout
    """
    if dmaps is None:
        dmaps = [build_distance_map(grid, goal) for goal in goals]
    if state is None:
        state = PibtState.initial(positions, goals)
    state = state.copy()
    state.positions = [tuple(p) for p in positions]

    trail = [list(state.positions)]
    for _ in range(window):
        step = pibt_step(grid, state, goals, dmaps)
        state.advance(step, goals)
        trail.append(step)

    paths = tuple(
        TimedPath(tuple(trail[t][agent] for t in range(window + 1)))
        for agent in range(len(positions))
    )
    return PartialSolution(paths)


class PibtPlanner(Planner):
    """PIBT for w steps from the episode's priority state."""

    name = "pibt"

    def plan(self, positions: Sequence[Cell], meter: BudgetMeter) -> PartialSolution:
        ctx = self.context
        return pibt_prefix(
            ctx.instance.map,
            positions,
            ctx.instance.goals,
            ctx.instance.window,
            ctx.dmaps,
            ctx.pibt_state,
        )

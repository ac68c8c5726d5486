"""Budget-metered windowed space-time A*."""

import heapq
import math
from typing import Dict, List, Optional, Tuple

from src.core.constants import SearchConfig
from src.core.domain import Cell, GridMap, TimedPath
from src.search.constraints import ConstraintTable
from src.search.heuristics import DistanceMap, build_distance_map
from src.search.meter import BudgetMeter
from src.utils.exceptions import BudgetExhaustedError, NoPathError
from src.utils.logging import get_logger

logger = get_logger(__name__)

_STATE = 0
_TERMINAL = 1

State = Tuple[Cell, int]


def time_cap(horizon: int, dmap: DistanceMap, window: int) -> int:
    """Deepest timestep the search may generate."""
    return horizon + dmap.max_distance + window


def plan_path(
    grid: GridMap,
    start: Cell,
    goal: Cell,
    constraints: ConstraintTable,
    horizon: int,
    meter: BudgetMeter,
    agent_budget: int,
    soft_weight: int = SearchConfig.SOFT_WEIGHT,
    *,
    dmap: Optional[DistanceMap] = None,
    window: int = 0,
    truncate_at_horizon: bool = False,
) -> TimedPath:
    """
    Plan one agent over (cell, time) states.

    The objective is lexicographic: soft collisions within the horizon
    first, then path cost. Hard constraints are never violated within the
    horizon, and the returned path may park at its goal without violating
    one. Every expanded state is charged to `meter`.

    Open-list order: fewer collisions, lower f, higher g, smaller cell index.

    Args:
        grid: The map
        start: Current cell of the agent (time 0)
        goal: Target cell
        constraints: Hard/soft occupancy index
        horizon: Last timestep at which constraints apply
        meter: Period meter charged per expansion
        agent_budget: Expansion allowance of this call
        soft_weight: Penalty per soft collision (0 ignores soft constraints)
        dmap: Precomputed distance map to `goal`
        window: Execution window; widens the time cap
        truncate_at_horizon: Stop paths at the horizon instead of at the goal

    Returns:
        The best path found

    Raises:
        BudgetExhaustedError: The allowance ran out before a path was found
        NoPathError: No path exists under the constraints within the time cap
    """
    if dmap is None:
        dmap = build_distance_map(grid, goal)
    dist = dmap.as_rows()
    limit = min(agent_budget, meter.remaining)
    cap = time_cap(horizon, dmap, window)
    width = grid.width

    if dist[start[0]][start[1]] == math.inf:
        raise NoPathError(f"Goal {goal} is unreachable from {start}", expansions=0)

    # entries: (collisions, f, -g, cell index, kind, t, cell); g == t
    open_list: List[tuple] = [
        (0, dist[start[0]][start[1]], 0, start[0] * width + start[1], _STATE, 0, start)
    ]
    best: Dict[State, int] = {(start, 0): 0}
    parent: Dict[State, State] = {}
    closed = set()
    expansions = 0

    while open_list:
        collisions, _, _, _, kind, t, cell = heapq.heappop(open_list)
        if kind == _TERMINAL:
            logger.debug(f"Path {start}->{goal}: cost {t}, {collisions} collisions, {expansions} expansions")
            return _reconstruct(parent, cell, t)

        state = (cell, t)
        if state in closed:
            continue
        if expansions >= limit:
            raise BudgetExhaustedError(
                f"Budget of {limit} expansions exhausted planning {start}->{goal}",
                expansions=expansions,
            )
        meter.charge()
        expansions += 1
        closed.add(state)

        if cell == goal and constraints.is_terminal_safe(goal, t):
            extra = soft_weight * constraints.soft_after(goal, t) if soft_weight else 0
            if extra == 0:
                logger.debug(f"Path {start}->{goal}: cost {t}, {collisions} collisions, {expansions} expansions")
                return _reconstruct(parent, cell, t)
            heapq.heappush(
                open_list,
                (collisions + extra, t, -t, cell[0] * width + cell[1], _TERMINAL, t, cell),
            )

        if truncate_at_horizon and t >= horizon:
            # cost estimate of a truncated path: horizon plus what is left to go
            heapq.heappush(
                open_list,
                (collisions, t + dist[cell[0]][cell[1]], -t, cell[0] * width + cell[1], _TERMINAL, t, cell),
            )
            continue
        if t >= cap:
            continue

        nt = t + 1
        for nb in (cell,) + grid.neighbors(cell):
            h = dist[nb[0]][nb[1]]
            if h == math.inf:
                continue
            successor = (nb, nt)
            if successor in closed:
                continue
            if nt <= horizon:
                if constraints.is_vertex_blocked(nb, nt) or constraints.is_edge_blocked(cell, nb, nt):
                    continue
                next_collisions = collisions + soft_weight * constraints.soft_cost(cell, nb, nt) if soft_weight else collisions
            else:
                next_collisions = collisions
            if next_collisions < best.get(successor, math.inf):
                best[successor] = next_collisions
                parent[successor] = state
                heapq.heappush(
                    open_list,
                    (next_collisions, nt + h, -nt, nb[0] * width + nb[1], _STATE, nt, nb),
                )

    raise NoPathError(f"No path {start}->{goal} within time cap {cap}", expansions=expansions)


def _reconstruct(parent: Dict[State, State], cell: Cell, t: int) -> TimedPath:
    cells = [cell]
    state = (cell, t)
    while state in parent:
        state = parent[state]
        cells.append(state[0])
    cells.reverse()
    return TimedPath(tuple(cells))

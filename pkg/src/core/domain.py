"""Core value types for grids, paths, conflicts and solutions.

Cells are ``(row, col)`` tuples. Every type here is immutable after
construction; the functions are pure.
"""

from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from itertools import combinations
from typing import Dict, Iterable, List, Mapping, Sequence, Set, Tuple, Union

import numpy as np

from src.core.constants import GridConfig
from src.utils.exceptions import ConfigurationError, InvalidInstanceError

Cell = Tuple[int, int]
Edge = Tuple[Cell, Cell]


@dataclass(frozen=True, eq=False)
class GridMap:
    """4-connected grid; unblocked cells are the vertices of the graph."""

    width: int
    height: int
    blocked: np.ndarray
    name: str = ""

    def __post_init__(self) -> None:
        if self.width < 1 or self.height < 1:
            raise InvalidInstanceError(f"Grid dimensions must be positive, got {self.width}x{self.height}")
        blocked = np.array(self.blocked, dtype=bool)
        if blocked.shape != (self.height, self.width):
            raise InvalidInstanceError(
                f"Blocked mask shape {blocked.shape} does not match {self.height}x{self.width}"
            )
        blocked.setflags(write=False)
        object.__setattr__(self, "blocked", blocked)

    @classmethod
    def empty(cls, width: int, height: int, name: str = "") -> "GridMap":
        """Obstacle-free grid."""
        return cls(width, height, np.zeros((height, width), dtype=bool), name)

    @classmethod
    def from_rows(cls, rows: Sequence[str], name: str = "") -> "GridMap":
        """Build a grid from strings where '@' marks a blocked cell and '.' a free one."""
        mask = [[ch == GridConfig.BLOCKED_CHAR for ch in row] for row in rows]
        return cls(len(rows[0]), len(rows), np.array(mask, dtype=bool), name)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GridMap):
            return NotImplemented
        return (
            self.width == other.width
            and self.height == other.height
            and bool(np.array_equal(self.blocked, other.blocked))
        )

    def __hash__(self) -> int:
        return hash((self.width, self.height, self.blocked.tobytes()))

    def in_bounds(self, cell: Cell) -> bool:
        row, col = cell
        return 0 <= row < self.height and 0 <= col < self.width

    def is_free(self, cell: Cell) -> bool:
        return self.in_bounds(cell) and not self.blocked[cell[0], cell[1]]

    def index(self, cell: Cell) -> int:
        """Row-major cell index, used for deterministic tie-breaking."""
        return cell[0] * self.width + cell[1]

    @cached_property
    def _adjacency(self) -> Dict[Cell, Tuple[Cell, ...]]:
        adjacency: Dict[Cell, Tuple[Cell, ...]] = {}
        for cell in self.free_cells():
            adjacency[cell] = tuple(
                (cell[0] + dr, cell[1] + dc)
                for dr, dc in GridConfig.MOVES
                if self.is_free((cell[0] + dr, cell[1] + dc))
            )
        return adjacency

    def neighbors(self, cell: Cell) -> Tuple[Cell, ...]:
        """Unblocked 4-neighbors of a free cell."""
        return self._adjacency.get(cell, ())

    def free_cells(self) -> List[Cell]:
        rows, cols = np.nonzero(~self.blocked)
        return [(int(r), int(c)) for r, c in zip(rows, cols)]


@dataclass(frozen=True)
class AgentTask:
    """Start/goal pair of one agent."""

    id: int
    start: Cell
    goal: Cell


@dataclass(frozen=True)
class Instance:
    """A real-time MAPF problem: map, agents, per-period budget, window and horizon."""

    map: GridMap
    agents: Tuple[AgentTask, ...]
    budget: int
    window: int
    horizon: int
    makespan_cap: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "agents", tuple(self.agents))
        if self.window < 1:
            raise ConfigurationError(f"Execution window must be >= 1, got {self.window}")
        if self.horizon < self.window:
            raise ConfigurationError(
                f"Planning horizon ({self.horizon}) must be >= execution window ({self.window})"
            )
        if self.budget < 1:
            raise ConfigurationError(f"Planning budget must be >= 1, got {self.budget}")
        if self.makespan_cap < 0:
            raise ConfigurationError(f"Makespan cap must be >= 0, got {self.makespan_cap}")

        for expected_id, agent in enumerate(self.agents):
            if agent.id != expected_id:
                raise InvalidInstanceError(f"Agent ids must be 0..k-1 in order, got {agent.id} at {expected_id}")
            for role, cell in (("start", agent.start), ("goal", agent.goal)):
                if not self.map.is_free(cell):
                    raise InvalidInstanceError(f"Agent {agent.id} {role} {cell} is blocked or out of bounds")
        if len(set(self.starts)) != len(self.agents):
            raise InvalidInstanceError("Two agents share a start cell")
        if len(set(self.goals)) != len(self.agents):
            raise InvalidInstanceError("Two agents share a goal cell")

    @property
    def num_agents(self) -> int:
        return len(self.agents)

    @property
    def starts(self) -> Tuple[Cell, ...]:
        return tuple(agent.start for agent in self.agents)

    @property
    def goals(self) -> Tuple[Cell, ...]:
        return tuple(agent.goal for agent in self.agents)

    def at_goals(self, positions: Sequence[Cell]) -> bool:
        return all(pos == agent.goal for pos, agent in zip(positions, self.agents))


@dataclass(frozen=True)
class TimedPath:
    """Cells visited at timesteps 0, 1, ...; the agent waits at the last cell afterwards."""

    cells: Tuple[Cell, ...]

    def __post_init__(self) -> None:
        cells = tuple((int(cell[0]), int(cell[1])) for cell in self.cells)
        if not cells:
            raise InvalidInstanceError("A timed path needs at least one cell")
        for (r1, c1), (r2, c2) in zip(cells, cells[1:]):
            if abs(r1 - r2) + abs(c1 - c2) > 1:
                raise InvalidInstanceError(f"Non-adjacent consecutive cells {(r1, c1)} -> {(r2, c2)}")
        object.__setattr__(self, "cells", cells)

    @classmethod
    def stay(cls, cell: Cell) -> "TimedPath":
        return cls((cell,))

    def __len__(self) -> int:
        return len(self.cells)

    @property
    def cost(self) -> int:
        return len(self.cells) - 1

    @property
    def start(self) -> Cell:
        return self.cells[0]

    @property
    def end(self) -> Cell:
        return self.cells[-1]

    def at(self, t: int) -> Cell:
        return position_at(self, t)

    def prefix(self, steps: int) -> "TimedPath":
        """Exactly steps+1 cells, tail-padded."""
        return TimedPath(tuple(position_at(self, t) for t in range(steps + 1)))


@dataclass(frozen=True)
class PartialSolution:
    """One path per agent; may contain conflicts or paths that stop short of the goal."""

    paths: Tuple[TimedPath, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "paths", tuple(self.paths))

    @classmethod
    def stay(cls, positions: Iterable[Cell]) -> "PartialSolution":
        """Every agent keeps a length-1 path at its current cell."""
        return cls(tuple(TimedPath.stay(pos) for pos in positions))

    def __len__(self) -> int:
        return len(self.paths)

    def __getitem__(self, agent: int) -> TimedPath:
        return self.paths[agent]

    @property
    def positions(self) -> Tuple[Cell, ...]:
        return tuple(path.start for path in self.paths)

    def with_paths(self, updates: Mapping[int, TimedPath]) -> "PartialSolution":
        paths = list(self.paths)
        for agent, path in updates.items():
            if path.start != paths[agent].start:
                raise InvalidInstanceError(
                    f"Replacement path for agent {agent} starts at {path.start}, expected {paths[agent].start}"
                )
            paths[agent] = path
        return PartialSolution(tuple(paths))

    def horizon_length(self) -> int:
        """Longest path cost; beyond it every agent is parked."""
        return max((path.cost for path in self.paths), default=0)


class ConflictKind(str, Enum):
    VERTEX = "vertex"
    SWAP = "swap"


@dataclass(frozen=True, order=True)
class Conflict:
    """A vertex or swap conflict between agents i < j at a timestep.

    For a swap, ``location`` is the move (a, b) of agent i; agent j moves b -> a.
    """

    time: int
    agents: Tuple[int, int]
    kind: ConflictKind = field(compare=False)
    location: Union[Cell, Edge] = field(compare=False)

    def __post_init__(self) -> None:
        i, j = self.agents
        if i == j:
            raise InvalidInstanceError("A conflict needs two distinct agents")
        if i > j:
            object.__setattr__(self, "agents", (j, i))


def position_at(path: TimedPath, t: int) -> Cell:
    """Cell of the path at timestep t, waiting at the final cell forever."""
    cells = path.cells
    if t < len(cells):
        return cells[t]
    return cells[-1]


def find_conflicts(sol: PartialSolution, up_to: int) -> List[Conflict]:
    """
    Every vertex and swap conflict at timesteps 0..up_to.

    Args:
        sol: Paths of all agents (tail-padded)
        up_to: Last timestep to check

    Returns:
        Conflicts sorted by (time, lower agent id, higher agent id)
    """
    conflicts: List[Conflict] = []
    paths = sol.paths
    previous: List[Cell] = []
    for t in range(up_to + 1):
        current = [position_at(path, t) for path in paths]

        occupants: Dict[Cell, List[int]] = defaultdict(list)
        for agent, cell in enumerate(current):
            occupants[cell].append(agent)
        for cell, agents in occupants.items():
            for i, j in combinations(agents, 2):
                conflicts.append(Conflict(t, (i, j), ConflictKind.VERTEX, cell))

        if t > 0:
            # several agents may share a directed move when vertex conflicts exist
            moves: Dict[Edge, List[int]] = defaultdict(list)
            for agent, (src, dst) in enumerate(zip(previous, current)):
                if src != dst:
                    moves[(src, dst)].append(agent)
            for (src, dst), movers in moves.items():
                for agent in movers:
                    for other in moves.get((dst, src), ()):
                        if agent < other:
                            conflicts.append(
                                Conflict(t, (agent, other), ConflictKind.SWAP, (src, dst))
                            )

        previous = current

    conflicts.sort()
    return conflicts


def conflicts_per_agent(sol: PartialSolution, up_to: int) -> List[int]:
    """Number of conflict records each agent takes part in."""
    counts = [0] * len(sol)
    for conflict in find_conflicts(sol, up_to):
        i, j = conflict.agents
        counts[i] += 1
        counts[j] += 1
    return counts


def conflicting_pairs(sol: PartialSolution, up_to: int) -> Set[Tuple[int, int]]:
    """Distinct agent pairs with at least one conflict."""
    return {conflict.agents for conflict in find_conflicts(sol, up_to)}


def makespan(sol: PartialSolution) -> int:
    return max(path.cost for path in sol.paths)


def soc(sol: PartialSolution) -> int:
    return sum(path.cost for path in sol.paths)

"""Per-goal distance tables used as the space-time A* heuristic."""

from collections import deque
from dataclasses import dataclass
from typing import List

import numpy as np

from src.core.domain import Cell, GridMap


@dataclass(frozen=True, eq=False)
class DistanceMap:
    """Shortest unconstrained grid distance from every cell to `goal` (inf if unreachable)."""

    goal: Cell
    table: np.ndarray

    def __getitem__(self, cell: Cell) -> float:
        return float(self.table[cell[0], cell[1]])

    @property
    def max_distance(self) -> int:
        finite = self.table[np.isfinite(self.table)]
        return int(finite.max()) if finite.size else 0

    def as_rows(self) -> List[List[float]]:
        """Plain nested lists; faster than numpy indexing inside search loops."""
        return self.table.tolist()


def build_distance_map(grid: GridMap, goal: Cell) -> DistanceMap:
    """
    Reverse breadth-first search from the goal.

    Args:
        grid: The map
        goal: Unblocked goal cell

    Returns:
        DistanceMap with exact distances; unreachable and blocked cells are inf
    """
    table = np.full((grid.height, grid.width), np.inf)
    table[goal[0], goal[1]] = 0
    frontier = deque([goal])
    while frontier:
        cell = frontier.popleft()
        next_distance = table[cell[0], cell[1]] + 1
        for nb in grid.neighbors(cell):
            if table[nb[0], nb[1]] == np.inf:
                table[nb[0], nb[1]] = next_distance
                frontier.append(nb)
    table.setflags(write=False)
    return DistanceMap(goal, table)

"""Hard and soft space-time constraints derived from other agents' paths."""

from collections import defaultdict
from typing import Dict, Iterable, Set, Tuple

from src.core.domain import Cell, TimedPath, position_at

# (from, to, t): a move from -> to arriving at t
Move = Tuple[Cell, Cell, int]


class ConstraintTable:
    """
    Occupancy index over timesteps 0..horizon.

    Hard entries must never be violated; soft entries are counted as
    collisions. Both ignore everything after the horizon. Paths are
    tail-padded, so an agent parked at its last cell keeps occupying it.
    """

    def __init__(self, horizon: int):
        self.horizon = horizon
        self._hard_vertices: Set[Tuple[Cell, int]] = set()
        self._hard_edges: Set[Move] = set()
        self._last_hard: Dict[Cell, int] = {}
        self._soft_vertices: Dict[Tuple[Cell, int], int] = defaultdict(int)
        self._soft_edges: Dict[Move, int] = defaultdict(int)

    @classmethod
    def from_paths(
        cls,
        horizon: int,
        hard: Iterable[TimedPath] = (),
        soft: Iterable[TimedPath] = (),
    ) -> "ConstraintTable":
        table = cls(horizon)
        for path in hard:
            table.add_hard_path(path)
        for path in soft:
            table.add_soft_path(path)
        return table

    def block_vertex(self, cell: Cell, t: int) -> None:
        if t > self.horizon:
            return
        self._hard_vertices.add((cell, t))
        if t > self._last_hard.get(cell, -1):
            self._last_hard[cell] = t

    def block_edge(self, src: Cell, dst: Cell, t: int) -> None:
        """Forbid moving src -> dst between t-1 and t."""
        if t <= self.horizon:
            self._hard_edges.add((src, dst, t))

    def add_hard_path(self, path: TimedPath) -> None:
        previous = position_at(path, 0)
        self.block_vertex(previous, 0)
        for t in range(1, self.horizon + 1):
            cell = position_at(path, t)
            self.block_vertex(cell, t)
            if cell != previous:
                # the reverse move would be a swap
                self.block_edge(cell, previous, t)
            previous = cell

    def add_soft_path(self, path: TimedPath) -> None:
        previous = position_at(path, 0)
        self._soft_vertices[(previous, 0)] += 1
        for t in range(1, self.horizon + 1):
            cell = position_at(path, t)
            self._soft_vertices[(cell, t)] += 1
            if cell != previous:
                self._soft_edges[(cell, previous, t)] += 1
            previous = cell

    def is_vertex_blocked(self, cell: Cell, t: int) -> bool:
        return (cell, t) in self._hard_vertices

    def is_edge_blocked(self, src: Cell, dst: Cell, t: int) -> bool:
        return (src, dst, t) in self._hard_edges

    def is_terminal_safe(self, goal: Cell, t: int) -> bool:
        """Whether parking at `goal` from t on violates no hard constraint within the horizon."""
        return self._last_hard.get(goal, -1) < t

    def soft_cost(self, src: Cell, dst: Cell, t: int) -> int:
        """Soft collisions of the move src -> dst arriving at t."""
        if t > self.horizon:
            return 0
        cost = self._soft_vertices.get((dst, t), 0)
        if src != dst:
            cost += self._soft_edges.get((src, dst, t), 0)
        return cost

    def soft_after(self, cell: Cell, t: int) -> int:
        """Soft collisions of parking at `cell` during (t, horizon]."""
        return sum(self._soft_vertices.get((cell, s), 0) for s in range(t + 1, self.horizon + 1))

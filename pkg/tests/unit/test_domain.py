"""Unit tests for grids, paths, instances and conflict detection."""

import numpy as np
import pytest

from src.core.domain import (
    AgentTask,
    Conflict,
    ConflictKind,
    GridMap,
    Instance,
    PartialSolution,
    TimedPath,
    conflicting_pairs,
    conflicts_per_agent,
    find_conflicts,
    makespan,
    position_at,
    soc,
)
from src.utils.exceptions import ConfigurationError, InvalidInstanceError
from tests.fixtures.layouts import make_instance


def _solution(*paths):
    return PartialSolution(tuple(TimedPath(tuple(p)) for p in paths))


class TestGridMap:
    """Tests for GridMap."""

    def test_from_rows_marks_blocked_cells(self):
        """Test that '@' becomes a blocked cell."""
        grid = GridMap.from_rows([".@.", "..."])
        assert (grid.width, grid.height) == (3, 2)
        assert not grid.is_free((0, 1))
        assert grid.is_free((0, 0))

    def test_out_of_bounds_is_not_free(self, empty_grid):
        """Test bounds checks."""
        assert not empty_grid.is_free((-1, 0))
        assert not empty_grid.is_free((0, 5))

    def test_neighbors_skip_blocked_and_outside(self):
        """Test 4-connectivity."""
        grid = GridMap.from_rows(["..", ".@"])
        assert set(grid.neighbors((0, 0))) == {(0, 1), (1, 0)}
        assert grid.neighbors((1, 1)) == ()

    def test_blocked_mask_is_read_only(self, empty_grid):
        """Test immutability of the obstacle mask."""
        with pytest.raises(ValueError):
            empty_grid.blocked[0, 0] = True

    def test_equality_ignores_name(self):
        """Test that equal masks make equal grids."""
        assert GridMap.empty(3, 2, "a") == GridMap.empty(3, 2, "b")
        assert GridMap.empty(3, 2) != GridMap.from_rows(["..@", "..."])

    def test_shape_mismatch_rejected(self):
        """Test mask validation."""
        with pytest.raises(InvalidInstanceError):
            GridMap(3, 3, np.zeros((2, 3), dtype=bool))


class TestInstance:
    """Tests for Instance validation."""

    def test_horizon_below_window_is_configuration_error(self, empty_grid):
        """Test the h >= w precondition."""
        with pytest.raises(ConfigurationError):
            make_instance(empty_grid, [((0, 0), (0, 1))], window=3, horizon=2)

    def test_zero_budget_rejected(self, empty_grid):
        """Test B >= 1."""
        with pytest.raises(ConfigurationError):
            make_instance(empty_grid, [((0, 0), (0, 1))], budget=0)

    def test_blocked_start_rejected(self, walled_grid):
        """Test that starts must be free."""
        with pytest.raises(InvalidInstanceError):
            make_instance(walled_grid, [((0, 2), (0, 0))])

    def test_duplicate_goals_rejected(self, empty_grid):
        """Test distinct goals."""
        with pytest.raises(InvalidInstanceError):
            make_instance(empty_grid, [((0, 0), (2, 2)), ((1, 1), (2, 2))])

    def test_ids_must_be_consecutive(self, empty_grid):
        """Test agent id order."""
        with pytest.raises(InvalidInstanceError):
            Instance(empty_grid, (AgentTask(1, (0, 0), (0, 1)),), 10, 1, 2, 100)

    def test_at_goals(self, swap_instance):
        """Test goal detection."""
        assert swap_instance.at_goals(swap_instance.goals)
        assert not swap_instance.at_goals(swap_instance.starts)


class TestTimedPath:
    """Tests for TimedPath."""

    def test_rejects_jumps(self):
        """Test adjacency of consecutive cells."""
        with pytest.raises(InvalidInstanceError):
            TimedPath(((0, 0), (0, 2)))

    def test_position_at_waits_at_end(self):
        """Test tail padding."""
        path = TimedPath(((0, 0), (0, 1)))
        assert position_at(path, 0) == (0, 0)
        assert position_at(path, 1) == (0, 1)
        assert position_at(path, 50) == (0, 1)

    def test_prefix_pads_and_truncates(self):
        """Test exact prefix length."""
        path = TimedPath(((0, 0), (0, 1), (0, 2)))
        assert path.prefix(1).cells == ((0, 0), (0, 1))
        assert path.prefix(4).cells == ((0, 0), (0, 1), (0, 2), (0, 2), (0, 2))

    def test_numpy_cells_are_normalized(self):
        """Test that numpy integers become plain ints."""
        path = TimedPath(((np.int64(1), np.int64(2)),))
        assert path.start == (1, 2)
        assert type(path.start[0]) is int


class TestFindConflicts:
    """Tests for conflict detection."""

    def test_single_agent_has_no_conflicts(self):
        """Test trivial case."""
        assert find_conflicts(_solution([(0, 0), (0, 1)]), 10) == []

    def test_vertex_conflict(self):
        """Test two agents entering the same cell."""
        sol = _solution([(0, 0), (0, 1)], [(0, 2), (0, 1)])
        conflicts = find_conflicts(sol, 5)
        assert conflicts[0] == Conflict(1, (0, 1), ConflictKind.VERTEX, (0, 1))
        assert conflicts[0].kind is ConflictKind.VERTEX
        assert conflicts[0].location == (0, 1)

    def test_swap_conflict(self):
        """Test head-on edge swap."""
        sol = _solution([(0, 0), (0, 1)], [(0, 1), (0, 0)])
        conflicts = find_conflicts(sol, 5)
        assert len(conflicts) == 1
        assert conflicts[0].kind is ConflictKind.SWAP
        assert conflicts[0].agents == (0, 1)
        assert conflicts[0].time == 1

    def test_conflict_with_parked_agent(self):
        """Test that a path ending early keeps occupying its last cell."""
        sol = _solution([(0, 1)], [(0, 3), (0, 2), (0, 1)])
        conflicts = find_conflicts(sol, 5)
        assert [(c.time, c.agents) for c in conflicts] == [(2, (0, 1)), (3, (0, 1)), (4, (0, 1)), (5, (0, 1))]

    def test_up_to_limits_the_window(self):
        """Test that conflicts after up_to are ignored."""
        sol = _solution([(0, 1)], [(0, 3), (0, 2), (0, 1)])
        assert find_conflicts(sol, 1) == []

    def test_sorted_by_time_then_agents(self):
        """Test deterministic order."""
        sol = _solution(
            [(1, 0), (1, 1)],
            [(0, 0), (0, 1)],
            [(0, 1), (0, 1)],
            [(1, 2), (1, 1)],
        )
        conflicts = find_conflicts(sol, 2)
        keys = [(c.time, c.agents) for c in conflicts]
        assert keys == sorted(keys)

    def test_counts_and_pairs(self):
        """Test per-agent counts and distinct pairs."""
        sol = _solution([(0, 1)], [(0, 3), (0, 2), (0, 1)])
        assert conflicts_per_agent(sol, 3) == [2, 2]
        assert conflicting_pairs(sol, 3) == {(0, 1)}

    def test_swap_reported_for_every_agent_sharing_a_move(self):
        """Test that two agents making the same move both swap with the opposite mover."""
        sol = _solution(
            [(1, 0), (0, 0), (0, 1)],
            [(0, 0), (0, 0), (0, 1)],
            [(0, 2), (0, 1), (0, 0)],
        )
        swaps = {(c.time, c.agents) for c in find_conflicts(sol, 3) if c.kind is ConflictKind.SWAP}
        assert swaps == {(2, (0, 2)), (2, (1, 2))}
        assert conflicting_pairs(sol, 3) == {(0, 1), (0, 2), (1, 2)}
        assert [c.location for c in find_conflicts(sol, 3) if c.agents == (0, 2) and c.kind is ConflictKind.SWAP] == [
            ((0, 0), (0, 1))
        ]

    @pytest.mark.parametrize("seed", range(20))
    def test_matches_all_pairs_enumeration(self, seed):
        """Test against a brute-force scan of every pair and timestep."""
        sol = _random_walks(seed)
        expected = _brute_force_conflicts(sol, 5)
        found = [(c.time, c.agents[0], c.agents[1], c.kind, c.location) for c in find_conflicts(sol, 5)]
        assert sorted(found, key=str) == sorted(expected, key=str)

    @pytest.mark.parametrize("seed", range(20))
    def test_relabeling_agents_gives_the_same_conflicts(self, seed):
        """Test that reversing agent ids only relabels the conflicts."""
        sol = _random_walks(seed)
        reversed_sol = PartialSolution(tuple(reversed(sol.paths)))
        last = len(sol) - 1

        def keyed(conflicts, relabel):
            return sorted(
                (c.time, tuple(sorted(relabel(a) for a in c.agents)), c.kind.value) for c in conflicts
            )

        assert keyed(find_conflicts(sol, 5), lambda a: a) == keyed(
            find_conflicts(reversed_sol, 5), lambda a: last - a
        )

    @pytest.mark.parametrize("seed", range(10))
    def test_larger_up_to_only_adds_conflicts(self, seed):
        """Test that extending up_to keeps every earlier conflict."""
        sol = _random_walks(seed)
        for up_to in range(6):
            shorter = {(c.time, c.agents, c.kind) for c in find_conflicts(sol, up_to)}
            longer = {(c.time, c.agents, c.kind) for c in find_conflicts(sol, up_to + 1)}
            assert shorter <= longer
            assert shorter == {key for key in longer if key[0] <= up_to}


def _random_walks(seed, agents=3, steps=4):
    grid = GridMap.from_rows(["...."] * 4)
    rng = np.random.default_rng(seed)
    cells = [(r, c) for r in range(4) for c in range(4)]
    paths = []
    for _ in range(agents):
        walk = [cells[rng.integers(len(cells))]]
        for _ in range(steps):
            options = (walk[-1],) + grid.neighbors(walk[-1])
            walk.append(options[rng.integers(len(options))])
        paths.append(TimedPath(tuple(walk)))
    return PartialSolution(tuple(paths))


def _brute_force_conflicts(sol, up_to):
    found = []
    for t in range(up_to + 1):
        for i in range(len(sol)):
            for j in range(i + 1, len(sol)):
                pi, pj = sol.paths[i], sol.paths[j]
                if position_at(pi, t) == position_at(pj, t):
                    found.append((t, i, j, ConflictKind.VERTEX, position_at(pi, t)))
                elif t > 0:
                    a, b = position_at(pi, t - 1), position_at(pi, t)
                    if a != b and position_at(pj, t - 1) == b and position_at(pj, t) == a:
                        found.append((t, i, j, ConflictKind.SWAP, (a, b)))
    return found


class TestPartialSolution:
    """Tests for PartialSolution helpers."""

    def test_stay_and_metrics(self):
        """Test stay paths and cost metrics."""
        sol = PartialSolution.stay([(0, 0), (1, 1)])
        assert sol.positions == ((0, 0), (1, 1))
        assert makespan(sol) == 0
        assert soc(sol) == 0

    def test_with_paths_checks_start(self):
        """Test that replacements must start at the agent's cell."""
        sol = PartialSolution.stay([(0, 0), (1, 1)])
        updated = sol.with_paths({0: TimedPath(((0, 0), (0, 1)))})
        assert soc(updated) == 1
        with pytest.raises(InvalidInstanceError):
            sol.with_paths({1: TimedPath(((0, 0), (0, 1)))})

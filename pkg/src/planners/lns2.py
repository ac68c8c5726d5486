"""MAPF-LNS2 with neighborhood and intra-neighborhood budget policies."""

from typing import Dict, FrozenSet, List, Mapping, Optional, Sequence

import numpy as np

from src.core.constants import Lns2Config, SearchConfig
from src.core.domain import (
    Cell,
    Instance,
    PartialSolution,
    TimedPath,
    conflicting_pairs,
    conflicts_per_agent,
    find_conflicts,
    position_at,
    soc,
)
from src.core.models import AgentBudgetPolicy, NeighborhoodBudgetPolicy, NeighborhoodPolicyKind
from src.planners.base import Planner
from src.planners.prp import allocate_fixed
from src.search.astar import plan_path
from src.search.constraints import ConstraintTable
from src.search.heuristics import DistanceMap, build_distance_map
from src.search.meter import BudgetMeter
from src.utils.exceptions import SearchError
from src.utils.logging import get_logger

logger = get_logger(__name__)

Neighborhood = FrozenSet[int]


def lower_bound_budget(size: int, window: int) -> int:
    """(1 + 2 + ... + size + 1) * window, in closed form."""
    return (size * (size + 1) // 2 + 1) * window


def proportional_budget(remaining: int, neighborhood_conflicts: int, total_conflicts: int) -> int:
    """remaining * conflicts(N) / conflicts(All), rounded down; 0 when nothing conflicts."""
    if total_conflicts <= 0:
        return 0
    return remaining * neighborhood_conflicts // total_conflicts


def neighborhood_budget(
    policy: NeighborhoodBudgetPolicy,
    neighborhood: Neighborhood,
    conflicts: Sequence[int],
    remaining: int,
    window: int,
) -> int:
    """
    Expansions granted to one neighborhood.

    Args:
        policy: Shared, Fixed(B_F) or ConflictProportion
        neighborhood: Agents to replan
        conflicts: Conflict count of every agent in the incumbent
        remaining: Budget still available this period
        window: Execution window

    Returns:
        The allocation, never more than `remaining`
    """
    remaining = max(0, remaining)
    if policy.kind is NeighborhoodPolicyKind.SHARED:
        return remaining
    if policy.kind is NeighborhoodPolicyKind.FIXED:
        return min(policy.fixed_budget, remaining)

    in_neighborhood = sum(conflicts[agent] for agent in neighborhood)
    proportional = proportional_budget(remaining, in_neighborhood, sum(conflicts))
    return min(remaining, max(proportional, lower_bound_budget(len(neighborhood), window)))


def select_neighborhood(
    incumbent: PartialSolution,
    nb_size: int,
    rng: np.random.Generator,
    up_to: int,
    p_conflict: float = Lns2Config.P_CONFLICT,
) -> Neighborhood:
    """
    Pick the agents to replan.

    With probability `p_conflict` the neighborhood grows from a random
    conflicting agent by walking over the agents it conflicts with, padded
    with random agents when the walk runs dry; otherwise it is a uniform
    random subset.
    """
    num_agents = len(incumbent)
    if nb_size >= num_agents:
        return frozenset(range(num_agents))

    conflicts = find_conflicts(incumbent, up_to)
    if conflicts and rng.random() < p_conflict:
        graph: Dict[int, set] = {}
        for conflict in conflicts:
            i, j = conflict.agents
            graph.setdefault(i, set()).add(j)
            graph.setdefault(j, set()).add(i)

        seed = int(rng.choice(sorted(graph)))
        chosen = {seed}
        current = seed
        while len(chosen) < nb_size:
            frontier = sorted(graph[current] - chosen)
            if not frontier:
                frontier = sorted({nb for agent in chosen for nb in graph.get(agent, ())} - chosen)
            if not frontier:
                frontier = sorted(set(range(num_agents)) - chosen)
            current = int(rng.choice(frontier))
            chosen.add(current)
        return frozenset(chosen)

    return frozenset(int(agent) for agent in rng.choice(num_agents, size=nb_size, replace=False))


def replan_neighborhood(
    instance: Instance,
    incumbent: PartialSolution,
    neighborhood: Neighborhood,
    allocation: int,
    meter: BudgetMeter,
    rng: np.random.Generator,
    dmaps: Sequence[DistanceMap],
    intra: AgentBudgetPolicy = AgentBudgetPolicy.SHARED,
    *,
    truncate_at_horizon: bool = False,
) -> Optional[Dict[int, TimedPath]]:
    """
    Replan a neighborhood with PrP: hard among its agents, soft against the rest.

    Args:
        instance: The problem
        incumbent: Current best solution
        neighborhood: Agents to replan
        allocation: Expansions this call may charge
        meter: Period meter
        rng: Source of the random priority order
        dmaps: Distance maps per agent
        intra: How the allocation is split between the neighborhood's agents

    Returns:
        New paths for every agent of the neighborhood, or None if any agent failed
    """
    sub_meter = meter.child(allocation)
    if sub_meter.remaining <= 0:
        return None

    outside = [path for agent, path in enumerate(incumbent.paths) if agent not in neighborhood]
    constraints = ConstraintTable.from_paths(instance.horizon, soft=outside)
    order = [int(agent) for agent in rng.permutation(sorted(neighborhood))]

    candidate: Dict[int, TimedPath] = {}
    for position, agent in enumerate(order):
        if intra is AgentBudgetPolicy.FIXED:
            agent_budget = allocate_fixed(sub_meter.remaining, len(order) - position)
        else:
            agent_budget = sub_meter.remaining
        if agent_budget <= 0:
            return None
        try:
            path = plan_path(
                instance.map,
                incumbent[agent].start,
                instance.agents[agent].goal,
                constraints,
                instance.horizon,
                sub_meter,
                agent_budget,
                SearchConfig.SOFT_WEIGHT,
                dmap=dmaps[agent],
                window=instance.window,
                truncate_at_horizon=truncate_at_horizon,
            )
        except SearchError as e:
            logger.debug(f"Neighborhood {sorted(neighborhood)} failed at agent {agent}: {e}")
            return None
        candidate[agent] = path
        constraints.add_hard_path(path)
    return candidate


def initial_solution(
    instance: Instance,
    current_positions: Sequence[Cell],
    meter: BudgetMeter,
    rng: np.random.Generator,
    dmaps: Sequence[DistanceMap],
    seeds: Optional[Mapping[int, TimedPath]] = None,
    *,
    truncate_at_horizon: bool = False,
) -> PartialSolution:
    """PrP pass where earlier paths are only soft constraints; seeded agents are kept as given."""
    seeds = dict(seeds or {})
    goals = instance.goals
    paths = [TimedPath.stay(pos) for pos in current_positions]
    constraints = ConstraintTable(instance.horizon)

    for agent, path in seeds.items():
        paths[agent] = path
        constraints.add_soft_path(path)

    for agent in (int(a) for a in rng.permutation(instance.num_agents)):
        if agent in seeds:
            continue
        if current_positions[agent] != goals[agent] and meter.remaining > 0:
            try:
                paths[agent] = plan_path(
                    instance.map,
                    current_positions[agent],
                    goals[agent],
                    constraints,
                    instance.horizon,
                    meter,
                    meter.remaining,
                    SearchConfig.SOFT_WEIGHT,
                    dmap=dmaps[agent],
                    window=instance.window,
                    truncate_at_horizon=truncate_at_horizon,
                )
            except SearchError as e:
                logger.debug(f"Initial path for agent {agent} failed: {e}")
        constraints.add_soft_path(paths[agent])

    return PartialSolution(tuple(paths))


def lns2_plan(
    instance: Instance,
    current_positions: Sequence[Cell],
    nb_policy: NeighborhoodBudgetPolicy,
    nb_size: int,
    meter: BudgetMeter,
    rng: Optional[np.random.Generator] = None,
    dmaps: Optional[Sequence[DistanceMap]] = None,
    *,
    intra: AgentBudgetPolicy = AgentBudgetPolicy.SHARED,
    p_conflict: float = Lns2Config.P_CONFLICT,
    conflicts_full_path: bool = False,
    truncate_at_horizon: bool = False,
    seeds: Optional[Mapping[int, TimedPath]] = None,
) -> PartialSolution:
    """
    Initial soft-constrained planning followed by neighborhood repair.

    The repair loop runs while budget remains and the incumbent has
    conflicts within the horizon. A candidate replaces the incumbent only
    if it has fewer conflicting pairs, or as many and a strictly lower SOC.

    Args:
        instance: The problem
        current_positions: Cell of every agent at period start
        nb_policy: Neighborhood budget policy
        nb_size: Agents per neighborhood
        meter: Fresh period meter
        rng: Seeded generator (priority orders and neighborhoods)
        dmaps: Distance maps per agent
        intra: Intra-neighborhood budget policy
        p_conflict: Probability of conflict-based neighborhood selection
        conflicts_full_path: Count conflicts(i) over whole paths instead of the horizon
        truncate_at_horizon: Search only up to the horizon
        seeds: Warm-start paths used as-is in the initial solution

    Returns:
        The incumbent; it may still contain conflicts
    """
    if rng is None:
        rng = np.random.default_rng()
    if dmaps is None:
        dmaps = [build_distance_map(instance.map, agent.goal) for agent in instance.agents]
    horizon = instance.horizon

    incumbent = initial_solution(
        instance, current_positions, meter, rng, dmaps, seeds, truncate_at_horizon=truncate_at_horizon
    )
    pairs = len(conflicting_pairs(incumbent, horizon))
    iterations = stalls = accepted = 0

    while pairs > 0 and meter.remaining > 0 and stalls < Lns2Config.MAX_STALLED_ITERATIONS:
        iterations += 1
        count_up_to = max(horizon, incumbent.horizon_length()) if conflicts_full_path else horizon
        conflicts = conflicts_per_agent(incumbent, count_up_to)
        neighborhood = select_neighborhood(incumbent, nb_size, rng, horizon, p_conflict)
        allocation = neighborhood_budget(nb_policy, neighborhood, conflicts, meter.remaining, instance.window)
        logger.debug(
            f"LNS2 iteration {iterations}: pairs={pairs}, N={sorted(neighborhood)}, allocation={allocation}"
        )

        before = meter.used
        candidate = replan_neighborhood(
            instance, incumbent, neighborhood, allocation, meter, rng, dmaps, intra,
            truncate_at_horizon=truncate_at_horizon,
        )
        stalls = stalls + 1 if meter.used == before else 0
        if candidate is None:
            continue

        proposal = incumbent.with_paths(candidate)
        proposal_pairs = len(conflicting_pairs(proposal, horizon))
        if proposal_pairs < pairs or (proposal_pairs == pairs and soc(proposal) < soc(incumbent)):
            incumbent, pairs = proposal, proposal_pairs
            accepted += 1

    logger.debug(
        f"LNS2 finished: {iterations} iterations, {accepted} accepted, {pairs} conflicting pairs, "
        f"{meter.used}/{meter.ceiling} expansions"
    )
    return incumbent


class Lns2Planner(Planner):
    """LNS2 per period; optionally warm-started from the previous period's incumbent."""

    name = "lns2"

    def __init__(self, context):
        super().__init__(context)
        self._previous: Optional[PartialSolution] = None

    def _warm_start_seeds(self, positions: Sequence[Cell]) -> Dict[int, TimedPath]:
        seeds: Dict[int, TimedPath] = {}
        if self._previous is None:
            return seeds
        window = self.context.instance.window
        goals = self.context.instance.goals
        for agent, path in enumerate(self._previous.paths):
            if position_at(path, window) != positions[agent]:
                continue
            rest = TimedPath(path.cells[window:]) if len(path) > window else TimedPath.stay(positions[agent])
            if len(rest) > 1 or rest.end == goals[agent]:
                seeds[agent] = rest
        return seeds

    def plan(self, positions: Sequence[Cell], meter: BudgetMeter) -> PartialSolution:
        ctx = self.context
        config = ctx.config
        seeds = self._warm_start_seeds(positions) if config.warm_start else None
        solution = lns2_plan(
            ctx.instance,
            positions,
            config.nb_policy,
            config.nb_size,
            meter,
            ctx.rng,
            ctx.dmaps,
            intra=config.intra_policy,
            p_conflict=config.p_conflict,
            conflicts_full_path=config.conflicts_full_path,
            truncate_at_horizon=config.truncate_at_horizon,
            seeds=seeds,
        )
        self._previous = solution
        return solution

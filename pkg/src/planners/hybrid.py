"""LNS2+PIBT: run both planners and keep the partial solution that commits better."""

from typing import Optional, Sequence, Tuple

import numpy as np

from src.core.constants import Lns2Config
from src.core.domain import Cell, Instance, PartialSolution
from src.core.models import AgentBudgetPolicy, FailPolicy, NeighborhoodBudgetPolicy
from src.planners.base import Planner
from src.planners.lns2 import lns2_plan
from src.planners.pibt import PibtState, pibt_prefix
from src.processing.fail_policy import resolve
from src.search.heuristics import DistanceMap, build_distance_map
from src.search.meter import BudgetMeter
from src.utils.logging import get_logger

logger = get_logger(__name__)


def commit_score(
    partial: PartialSolution,
    dmaps: Sequence[DistanceMap],
    fail_policy: FailPolicy,
    window: int,
) -> Tuple[int, float]:
    """
    (agents that get closer to their goal, goal-distance sum after the window).

    Both are measured on what would actually be executed, i.e. after the
    fail policy has resolved the partial solution.
    """
    prefix = resolve(partial, fail_policy, window)
    start, end = prefix.positions_at(0), prefix.final_positions
    progressing = sum(
        1 for agent, dmap in enumerate(dmaps) if dmap[end[agent]] < dmap[start[agent]]
    )
    remaining = float(sum(dmap[end[agent]] for agent, dmap in enumerate(dmaps)))
    return progressing, remaining


def hybrid_plan(
    instance: Instance,
    positions: Sequence[Cell],
    meter: BudgetMeter,
    nb_policy: NeighborhoodBudgetPolicy,
    *,
    nb_size: int = Lns2Config.NEIGHBORHOOD_SIZE,
    rng: Optional[np.random.Generator] = None,
    dmaps: Optional[Sequence[DistanceMap]] = None,
    pibt_state: Optional[PibtState] = None,
    fail_policy: FailPolicy = FailPolicy.I_STAY,
    intra: AgentBudgetPolicy = AgentBudgetPolicy.SHARED,
    p_conflict: float = Lns2Config.P_CONFLICT,
    conflicts_full_path: bool = False,
    truncate_at_horizon: bool = False,
) -> PartialSolution:
    """
    Better of an LNS2 solution and a PIBT prefix.

    Only LNS2 charges the meter. The winner has more agents progressing
    after fail-policy resolution; on a tie, the lower goal-distance sum
    after the window; on a full tie, the LNS2 solution.

    Args:
        instance: The problem
        positions: Cell of every agent at period start
        meter: Fresh period meter
        nb_policy: LNS2 neighborhood budget policy
        nb_size: LNS2 neighborhood size
        rng: Seeded generator for LNS2
        dmaps: Distance maps per agent
        pibt_state: PIBT priorities; not modified
        fail_policy: Policy used to score both candidates

    Returns:
        The chosen partial solution
    """
    if dmaps is None:
        dmaps = [build_distance_map(instance.map, agent.goal) for agent in instance.agents]
    window = instance.window

    lns2_solution = lns2_plan(
        instance,
        positions,
        nb_policy,
        nb_size,
        meter,
        rng,
        dmaps,
        intra=intra,
        p_conflict=p_conflict,
        conflicts_full_path=conflicts_full_path,
        truncate_at_horizon=truncate_at_horizon,
    )
    pibt_solution = pibt_prefix(instance.map, positions, instance.goals, window, dmaps, pibt_state)

    lns2_progress, lns2_remaining = commit_score(lns2_solution, dmaps, fail_policy, window)
    pibt_progress, pibt_remaining = commit_score(pibt_solution, dmaps, fail_policy, window)
    pibt_wins = (pibt_progress, -pibt_remaining) > (lns2_progress, -lns2_remaining)

    logger.debug(
        f"Hybrid: LNS2 ({lns2_progress} progressing, {lns2_remaining} to go) vs "
        f"PIBT ({pibt_progress} progressing, {pibt_remaining} to go) -> {'PIBT' if pibt_wins else 'LNS2'}"
    )
    return pibt_solution if pibt_wins else lns2_solution


class HybridPlanner(Planner):
    """LNS2+PIBT with the episode's LNS2 settings and PIBT priorities."""

    name = "lns2+pibt"

    def plan(self, positions: Sequence[Cell], meter: BudgetMeter) -> PartialSolution:
        ctx = self.context
        config = ctx.config
        return hybrid_plan(
            ctx.instance,
            positions,
            meter,
            config.nb_policy,
            nb_size=config.nb_size,
            rng=ctx.rng,
            dmaps=ctx.dmaps,
            pibt_state=ctx.pibt_state,
            fail_policy=config.fail_policy,
            intra=config.intra_policy,
            p_conflict=config.p_conflict,
            conflicts_full_path=config.conflicts_full_path,
            truncate_at_horizon=config.truncate_at_horizon,
        )

"""Prioritized Planning under a planning budget, with the Persist behavior."""

from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence

from src.core.domain import Cell, Instance, PartialSolution, TimedPath
from src.core.models import AgentBudgetPolicy
from src.planners.base import Planner
from src.search.astar import plan_path
from src.search.constraints import ConstraintTable
from src.search.heuristics import DistanceMap, build_distance_map
from src.search.meter import BudgetMeter
from src.utils.exceptions import BudgetExhaustedError, InvalidInstanceError, NoPathError
from src.utils.logging import get_logger

logger = get_logger(__name__)

PriorityOrder = Sequence[int]


class PlanOutcome(str, Enum):
    PLANNED = "planned"
    AT_GOAL = "at_goal"
    NO_PATH = "no_path"
    BUDGET_EXHAUSTED = "budget_exhausted"
    SKIPPED = "skipped"


@dataclass(frozen=True)
class AgentPlanRecord:
    """What one agent was given and what it spent."""

    agent: int
    allocation: int
    expansions: int
    outcome: PlanOutcome


def allocate_fixed(total_remaining: int, agents_remaining: int) -> int:
    """
    Even split of what is left among the agents still to plan.

    Called again before every agent, so the unused part of an earlier
    allocation flows back into later ones.

    Args:
        total_remaining: Expansions left in the pool
        agents_remaining: Agents not yet planned, including the next one

    Returns:
        floor(total_remaining / agents_remaining)
    """
    if agents_remaining < 1:
        raise ValueError(f"agents_remaining must be >= 1, got {agents_remaining}")
    return max(0, total_remaining) // agents_remaining


def validate_order(order: PriorityOrder, num_agents: int) -> List[int]:
    order = [int(agent) for agent in order]
    if sorted(order) != list(range(num_agents)):
        raise InvalidInstanceError(f"Priority order {order} is not a permutation of 0..{num_agents - 1}")
    return order


def prp_plan(
    instance: Instance,
    current_positions: Sequence[Cell],
    order: PriorityOrder,
    policy: AgentBudgetPolicy,
    meter: BudgetMeter,
    dmaps: Optional[Sequence[DistanceMap]] = None,
    *,
    trace: Optional[List[AgentPlanRecord]] = None,
    truncate_at_horizon: bool = False,
) -> PartialSolution:
    """
    Plan agents one by one in priority order against the paths already found.

    Agents already at their goal go first with zero-cost stay paths. A
    failing agent keeps a length-1 path and planning persists with the next
    agent. Under Shared every agent may draw on the whole remaining budget;
    under Fixed it gets `allocate_fixed` of it.

    Args:
        instance: The problem
        current_positions: Cell of every agent at period start
        order: Priority order (highest first)
        policy: Shared or Fixed
        meter: Fresh period meter
        dmaps: Distance maps per agent (built on demand when omitted)
        trace: Receives one AgentPlanRecord per agent
        truncate_at_horizon: Search only up to the horizon

    Returns:
        A PartialSolution whose planned paths are mutually conflict-free within the horizon
    """
    order = validate_order(order, instance.num_agents)
    goals = instance.goals
    if dmaps is None:
        dmaps = [build_distance_map(instance.map, goal) for goal in goals]

    paths = [TimedPath.stay(pos) for pos in current_positions]
    constraints = ConstraintTable(instance.horizon)

    parked = [agent for agent in order if current_positions[agent] == goals[agent]]
    pending = [agent for agent in order if current_positions[agent] != goals[agent]]
    for agent in parked:
        constraints.add_hard_path(paths[agent])
        if trace is not None:
            trace.append(AgentPlanRecord(agent, 0, 0, PlanOutcome.AT_GOAL))

    for position, agent in enumerate(pending):
        if policy is AgentBudgetPolicy.FIXED:
            allocation = allocate_fixed(meter.remaining, len(pending) - position)
        else:
            allocation = meter.remaining

        if allocation <= 0:
            outcome, spent = PlanOutcome.SKIPPED, 0
        else:
            before = meter.used
            try:
                path = plan_path(
                    instance.map,
                    current_positions[agent],
                    goals[agent],
                    constraints,
                    instance.horizon,
                    meter,
                    allocation,
                    soft_weight=0,
                    dmap=dmaps[agent],
                    window=instance.window,
                    truncate_at_horizon=truncate_at_horizon,
                )
                paths[agent] = path
                constraints.add_hard_path(path)
                outcome = PlanOutcome.PLANNED
            except NoPathError:
                outcome = PlanOutcome.NO_PATH
            except BudgetExhaustedError:
                outcome = PlanOutcome.BUDGET_EXHAUSTED
            spent = meter.used - before

        logger.debug(f"PrP agent {agent}: {outcome.value} ({spent}/{allocation} expansions)")
        if trace is not None:
            trace.append(AgentPlanRecord(agent, allocation, spent, outcome))

    return PartialSolution(tuple(paths))


class PrpPlanner(Planner):
    """PrP with a fresh random priority order every period."""

    name = "prp"

    def plan(self, positions: Sequence[Cell], meter: BudgetMeter) -> PartialSolution:
        ctx = self.context
        order = ctx.rng.permutation(ctx.instance.num_agents)
        return prp_plan(
            ctx.instance,
            positions,
            order,
            ctx.config.agent_budget_policy,
            meter,
            ctx.dmaps,
            truncate_at_horizon=ctx.config.truncate_at_horizon,
        )

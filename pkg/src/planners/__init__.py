"""Windowed MAPF planners and their registry."""

from src.planners.base import IdlePlanner, Planner, PlanningContext
from src.planners.prp import AgentPlanRecord, PlanOutcome, allocate_fixed, prp_plan, PrpPlanner
from src.planners.lns2 import (
    lns2_plan,
    lower_bound_budget,
    neighborhood_budget,
    proportional_budget,
    select_neighborhood,
    Lns2Planner,
)
from src.planners.pibt import PibtState, pibt_prefix, pibt_step, PibtPlanner
from src.planners.hybrid import hybrid_plan, HybridPlanner
from src.planners.registry import (
    create_planner,
    get_all_planners,
    get_planner,
    register_planner,
    PLANNER_REGISTRY,
)

__all__ = [
    "Planner",
    "PlanningContext",
    "IdlePlanner",
    "AgentPlanRecord",
    "PlanOutcome",
    "allocate_fixed",
    "prp_plan",
    "PrpPlanner",
    "lns2_plan",
    "lower_bound_budget",
    "neighborhood_budget",
    "proportional_budget",
    "select_neighborhood",
    "Lns2Planner",
    "PibtState",
    "pibt_prefix",
    "pibt_step",
    "PibtPlanner",
    "hybrid_plan",
    "HybridPlanner",
    "create_planner",
    "get_all_planners",
    "get_planner",
    "register_planner",
    "PLANNER_REGISTRY",
]

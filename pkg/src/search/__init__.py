"""Budget-metered single-agent search."""

from src.search.meter import BudgetMeter
from src.search.constraints import ConstraintTable
from src.search.heuristics import DistanceMap, build_distance_map
from src.search.astar import plan_path, time_cap

__all__ = [
    "BudgetMeter",
    "ConstraintTable",
    "DistanceMap",
    "build_distance_map",
    "plan_path",
    "time_cap",
]

"""Planner registry for looking up planners by algorithm name."""

from typing import Dict, List, Type

from src.core.models import Algorithm
from src.planners.base import IdlePlanner, Planner, PlanningContext
from src.planners.hybrid import HybridPlanner
from src.planners.lns2 import Lns2Planner
from src.planners.pibt import PibtPlanner
from src.planners.prp import PrpPlanner


# Registry mapping algorithm names to planner classes
PLANNER_REGISTRY: Dict[str, Type[Planner]] = {
    PrpPlanner.name: PrpPlanner,
    Lns2Planner.name: Lns2Planner,
    PibtPlanner.name: PibtPlanner,
    HybridPlanner.name: HybridPlanner,
    IdlePlanner.name: IdlePlanner,
}


def get_all_planners() -> List[str]:
    """
    Get the names of all registered planners.

    Returns:
        Sorted planner names
    """
    return sorted(PLANNER_REGISTRY)


def get_planner(name: str) -> Type[Planner]:
    """
    Get a planner class by algorithm name.

    Args:
        name: Algorithm name (e.g. `lns2`)

    Returns:
        Planner class

    Raises:
        KeyError: If no planner is registered under that name
    """
    if name not in PLANNER_REGISTRY:
        available = ", ".join(get_all_planners())
        raise KeyError(f"Planner '{name}' not found. Available planners: {available}")
    return PLANNER_REGISTRY[name]


def register_planner(name: str, planner: Type[Planner]) -> None:
    """
    Register a new planner class.

    Args:
        name: Algorithm name
        planner: Planner subclass to register
    """
    PLANNER_REGISTRY[name] = planner


def create_planner(context: PlanningContext) -> Planner:
    """Instantiate the planner named by the context's configuration."""
    algorithm = context.config.algorithm
    name = algorithm.value if isinstance(algorithm, Algorithm) else str(algorithm)
    return get_planner(name)(context)

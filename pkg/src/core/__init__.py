"""Core domain module."""

# Constants first: utils.logging depends on them
from src.core.constants import (
    LoggingConfig,
    GridConfig,
    SearchConfig,
    Lns2Config,
    RuntimeConfig,
    BenchConfig,
)

_DOMAIN_NAMES = (
    "Cell", "GridMap", "AgentTask", "Instance", "TimedPath", "PartialSolution",
    "Conflict", "ConflictKind", "position_at", "find_conflicts", "conflicts_per_agent",
    "conflicting_pairs", "makespan", "soc",
)
_MODEL_NAMES = (
    "Algorithm", "AgentBudgetPolicy", "FailPolicy", "NeighborhoodBudgetPolicy",
    "NeighborhoodPolicyKind", "PlannerConfig",
)


def __getattr__(name: str):
    """Lazy import for domain types and models to avoid circular imports with utils."""
    if name in _DOMAIN_NAMES:
        from src.core import domain
        return getattr(domain, name)
    if name in _MODEL_NAMES:
        from src.core import models
        return getattr(models, name)
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")


__all__ = [
    "LoggingConfig",
    "GridConfig",
    "SearchConfig",
    "Lns2Config",
    "RuntimeConfig",
    "BenchConfig",
    *_DOMAIN_NAMES,
    *_MODEL_NAMES,
]

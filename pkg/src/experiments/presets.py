"""Built-in experiment presets: the agent sweep and the window sweep."""

from typing import Callable, Dict, List, Optional, Sequence

from src.core.constants import BenchConfig
from src.experiments.spec import ExperimentSpec, build_spec
from src.utils.exceptions import ConfigurationError


def _exp1(grid: str) -> Dict[str, object]:
    return {"grid": grid, "agent_counts": BenchConfig.EXP1_AGENTS[grid]}


def _exp2(grid: str) -> Dict[str, object]:
    return {"grid": grid, "windows": BenchConfig.EXP2_WINDOWS, "agent_count": BenchConfig.EXP2_AGENTS[grid]}


PRESETS: Dict[str, Callable[[str], Dict[str, object]]] = {
    "exp1": _exp1,
    "exp2": _exp2,
}
PRESET_GRIDS: Dict[str, List[str]] = {
    "exp1": list(BenchConfig.EXP1_AGENTS),
    "exp2": list(BenchConfig.EXP2_AGENTS),
}


def is_preset(name: str) -> bool:
    return name in PRESETS


def get_preset(name: str, grids: Optional[Sequence[str]] = None, **overrides: object) -> List[ExperimentSpec]:
    """
    Build the specs of a preset, one per grid.

    Args:
        name: `exp1` (agent sweep, w=5) or `exp2` (window sweep 2..8)
        grids: Restrict to these grids; all preset grids when omitted
        **overrides: ExperimentSpec fields to replace (None values are ignored)

    Raises:
        ConfigurationError: For an unknown preset or grid
    """
    if name not in PRESETS:
        raise ConfigurationError(f"Unknown preset '{name}'. Available presets: {', '.join(PRESETS)}")
    known = PRESET_GRIDS[name]
    selected = list(grids) if grids else known
    unknown = [grid for grid in selected if grid not in known]
    if unknown:
        raise ConfigurationError(
            f"Preset '{name}' has no grid {', '.join(unknown)}. Available grids: {', '.join(known)}"
        )

    specs = []
    for grid in selected:
        values = PRESETS[name](grid)
        values.update({key: value for key, value in overrides.items() if value is not None})
        specs.append(build_spec(values))
    return specs

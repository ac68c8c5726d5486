"""Experiment specifications: one grid, one sweep, an algorithm matrix."""

from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Union

from dotenv import dotenv_values
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from src.core.constants import BenchConfig, Lns2Config, RuntimeConfig
from src.core.models import FailPolicy, PlannerConfig
from src.utils.exceptions import BenchmarkFileError, ConfigurationError

# spec-file keys that hold comma-separated lists, mapped to model fields
_LIST_KEYS: Dict[str, str] = {
    "agents": "agent_counts",
    "windows": "windows",
    "budget_multiplier": "budget_multipliers",
    "budget_multipliers": "budget_multipliers",
    "algorithms": "algorithms",
    "seeds": "seeds",
}
_SCALAR_KEYS = {
    "grid", "window", "agent_count", "budget", "horizon", "horizon_factor", "instances", "cap",
    "fail_policy", "scen_type", "nb_size", "p_conflict",
}


@dataclass(frozen=True)
class SweepCell:
    """One point of the sweep; every algorithm runs every scenario in it."""

    agent_count: int
    window: int
    horizon: int
    budget: int
    budget_multiplier: Optional[float]


class ExperimentSpec(BaseModel):
    """
    A sweep over agent counts or over windows on one grid.

    Exactly one of `agent_counts` and `windows` is set. Sweeping windows
    needs a fixed `agent_count`; sweeping agents uses the fixed `window`.
    The per-period budget is `budget` when given, else
    floor(multiplier * agents) for every multiplier.
    """

    model_config = ConfigDict(frozen=True)

    grid: str = Field(min_length=1)
    agent_counts: Optional[List[int]] = None
    windows: Optional[List[int]] = None
    window: int = Field(default=RuntimeConfig.WINDOW, ge=1)
    agent_count: Optional[int] = Field(default=None, ge=1)
    budget_multipliers: List[float] = Field(default_factory=lambda: [BenchConfig.BUDGET_MULTIPLIER])
    budget: Optional[int] = Field(default=None, ge=1)
    horizon: Optional[int] = Field(default=None, ge=1)
    horizon_factor: int = Field(default=RuntimeConfig.HORIZON_FACTOR, ge=1)
    algorithms: List[str] = Field(default_factory=lambda: list(BenchConfig.ALGORITHMS))
    seeds: List[int] = Field(default_factory=lambda: [0])
    instances: int = Field(default=BenchConfig.INSTANCES_PER_CELL, ge=1)
    cap: int = Field(default=RuntimeConfig.MAKESPAN_CAP, ge=1)
    fail_policy: FailPolicy = FailPolicy.I_STAY
    scen_type: str = BenchConfig.SCEN_TYPE
    nb_size: int = Field(default=Lns2Config.NEIGHBORHOOD_SIZE, ge=1)
    p_conflict: float = Field(default=Lns2Config.P_CONFLICT, ge=0.0, le=1.0)

    @field_validator("agent_counts", "windows", "budget_multipliers", "algorithms", "seeds")
    @classmethod
    def _non_empty(cls, value):
        if value is not None and not value:
            raise ValueError("list must not be empty")
        return value

    @field_validator("agent_counts", "windows")
    @classmethod
    def _positive(cls, value):
        if value is not None and any(v < 1 for v in value):
            raise ValueError(f"values must be >= 1, got {value}")
        return value

    @field_validator("budget_multipliers")
    @classmethod
    def _positive_multipliers(cls, value):
        if any(v <= 0 for v in value):
            raise ValueError(f"budget multipliers must be > 0, got {value}")
        return value

    @field_validator("algorithms")
    @classmethod
    def _known_algorithms(cls, value):
        for label in value:
            try:
                PlannerConfig.from_label(label)
            except ConfigurationError as e:
                raise ValueError(str(e)) from e
        return value

    @model_validator(mode="after")
    def _one_sweep(self) -> "ExperimentSpec":
        if (self.agent_counts is None) == (self.windows is None):
            raise ValueError("exactly one of agent counts and windows must be a sweep list")
        if self.windows is not None and self.agent_count is None:
            raise ValueError("a window sweep needs a fixed agent_count")
        if self.horizon is not None:
            for window in self.windows or [self.window]:
                if self.horizon < window:
                    raise ValueError(f"horizon {self.horizon} is smaller than window {window}")
        return self

    @property
    def sweep_key(self) -> str:
        return "agent_count" if self.agent_counts is not None else "window"

    @property
    def sweep_values(self) -> List[int]:
        return list(self.agent_counts if self.agent_counts is not None else self.windows)

    def budget_for(self, agent_count: int, multiplier: float) -> int:
        if self.budget is not None:
            return self.budget
        return max(1, int(multiplier * agent_count))

    def cells(self) -> List[SweepCell]:
        """Sweep points in sweep order, then multiplier order."""
        cells = []
        for value in self.sweep_values:
            agents = value if self.sweep_key == "agent_count" else self.agent_count
            window = value if self.sweep_key == "window" else self.window
            horizon = self.horizon if self.horizon is not None else self.horizon_factor * window
            multipliers = [None] if self.budget is not None else self.budget_multipliers
            for multiplier in multipliers:
                cells.append(
                    SweepCell(agents, window, horizon, self.budget_for(agents, multiplier or 0.0), multiplier)
                )
        return cells

    def planner_configs(self) -> List[PlannerConfig]:
        return [
            PlannerConfig.from_label(
                label, fail_policy=self.fail_policy, nb_size=self.nb_size, p_conflict=self.p_conflict
            )
            for label in self.algorithms
        ]


def build_spec(values: Dict[str, object]) -> ExperimentSpec:
    """
    Validate raw values into an ExperimentSpec.

    Raises:
        ConfigurationError: If validation fails
    """
    try:
        return ExperimentSpec(**values)
    except ValidationError as e:
        errors = "; ".join(
            f"{'.'.join(str(part) for part in err['loc']) or 'spec'}: {err['msg']}" for err in e.errors()
        )
        raise ConfigurationError(f"Invalid experiment spec: {errors}") from None


def parse_spec_values(raw: Dict[str, Optional[str]]) -> Dict[str, object]:
    """Map KEY=VALUE strings onto ExperimentSpec fields; lists are comma-separated."""
    values: Dict[str, object] = {}
    for key, value in raw.items():
        key = key.strip().lower()
        if value is None or not value.strip():
            continue
        if key in _LIST_KEYS:
            values[_LIST_KEYS[key]] = [item.strip() for item in value.split(",") if item.strip()]
        elif key in _SCALAR_KEYS:
            values[key] = value.strip()
        else:
            raise ConfigurationError(f"Unknown experiment spec key '{key}'")
    return values


def load_spec_file(path: Union[str, Path], **overrides: object) -> ExperimentSpec:
    """
    Read a KEY=VALUE experiment spec file.

    Args:
        path: Spec file
        **overrides: Field values that replace the file's (None values are ignored)

    Raises:
        BenchmarkFileError: If the file does not exist
        ConfigurationError: If a key is unknown or a value invalid
    """
    path = Path(path)
    if not path.is_file():
        raise BenchmarkFileError(f"Experiment spec file {path} not found")
    values = parse_spec_values(dotenv_values(path))
    values.update({key: value for key, value in overrides.items() if value is not None})
    return build_spec(values)

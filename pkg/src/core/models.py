"""Pydantic models and enums shared by planners, the runtime and the harness."""

from enum import Enum
from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.core.constants import Lns2Config
from src.utils.exceptions import ConfigurationError


class Algorithm(str, Enum):
    """Planner names accepted by --algo."""

    PIBT = "pibt"
    PRP = "prp"
    LNS2 = "lns2"
    LNS2_PIBT = "lns2+pibt"
    IDLE = "idle"


class AgentBudgetPolicy(str, Enum):
    """How PrP splits a budget between the agents it plans."""

    SHARED = "shared"
    FIXED = "fixed"


class FailPolicy(str, Enum):
    """How a partial solution becomes a conflict-free committed prefix."""

    ALL_STAY = "allstay"
    I_STAY = "istay"


class NeighborhoodPolicyKind(str, Enum):
    SHARED = "shared"
    FIXED = "fixed"
    CONFLICT_PROPORTION = "cpb"


class NeighborhoodBudgetPolicy(BaseModel):
    """LNS2 neighborhood budget policy: Shared, Fixed(B_F) or ConflictProportion."""

    model_config = ConfigDict(frozen=True)

    kind: NeighborhoodPolicyKind = NeighborhoodPolicyKind.SHARED
    fixed_budget: Optional[int] = Field(default=None, ge=1)

    @model_validator(mode="after")
    def _check_fixed_budget(self) -> "NeighborhoodBudgetPolicy":
        if self.kind is NeighborhoodPolicyKind.FIXED and self.fixed_budget is None:
            raise ValueError("Fixed neighborhood policy needs a budget B_F >= 1")
        if self.kind is not NeighborhoodPolicyKind.FIXED and self.fixed_budget is not None:
            raise ValueError(f"{self.kind.value} policy takes no fixed budget")
        return self

    @classmethod
    def shared(cls) -> "NeighborhoodBudgetPolicy":
        return cls(kind=NeighborhoodPolicyKind.SHARED)

    @classmethod
    def fixed(cls, budget: int) -> "NeighborhoodBudgetPolicy":
        return cls(kind=NeighborhoodPolicyKind.FIXED, fixed_budget=budget)

    @classmethod
    def conflict_proportion(cls) -> "NeighborhoodBudgetPolicy":
        return cls(kind=NeighborhoodPolicyKind.CONFLICT_PROPORTION)

    @classmethod
    def parse(cls, text: str) -> "NeighborhoodBudgetPolicy":
        """
        Parse `shared`, `cpb` or `fixed:<B_F>`.

        Raises:
            ConfigurationError: If the text is not a known policy
        """
        name, _, arg = text.strip().lower().partition(":")
        try:
            if name == NeighborhoodPolicyKind.FIXED.value:
                return cls.fixed(int(arg))
            if arg:
                raise ValueError(f"unexpected argument '{arg}'")
            return cls(kind=NeighborhoodPolicyKind(name))
        except ValueError as e:
            raise ConfigurationError(f"Invalid neighborhood policy '{text}': {e}") from e

    @property
    def label(self) -> str:
        if self.kind is NeighborhoodPolicyKind.FIXED:
            return f"fixed:{self.fixed_budget}"
        return self.kind.value


class PlannerConfig(BaseModel):
    """Algorithm plus every policy knob of one planner run."""

    model_config = ConfigDict(frozen=True)

    algorithm: Algorithm
    agent_budget_policy: AgentBudgetPolicy = AgentBudgetPolicy.SHARED
    nb_policy: NeighborhoodBudgetPolicy = Field(default_factory=NeighborhoodBudgetPolicy.shared)
    intra_policy: AgentBudgetPolicy = AgentBudgetPolicy.SHARED
    nb_size: int = Field(default=Lns2Config.NEIGHBORHOOD_SIZE, ge=1)
    p_conflict: float = Field(default=Lns2Config.P_CONFLICT, ge=0.0, le=1.0)
    fail_policy: FailPolicy = FailPolicy.I_STAY
    truncate_at_horizon: bool = False
    conflicts_full_path: bool = False
    warm_start: bool = False

    @classmethod
    def from_label(cls, label: str, **overrides: Any) -> "PlannerConfig":
        """
        Build a config from a matrix label such as `lns2:cpb` or `prp:fixed`.

        Args:
            label: `<algorithm>[:<policy>]`
            **overrides: Remaining PlannerConfig fields

        Raises:
            ConfigurationError: If the label is malformed
        """
        name, _, policy = label.strip().lower().partition(":")
        try:
            algorithm = Algorithm(name)
        except ValueError as e:
            choices = ", ".join(a.value for a in Algorithm)
            raise ConfigurationError(f"Unknown algorithm '{name}' (choose from {choices})") from e

        fields = dict(overrides)
        if policy:
            if algorithm is Algorithm.PRP:
                try:
                    fields["agent_budget_policy"] = AgentBudgetPolicy(policy)
                except ValueError as e:
                    raise ConfigurationError(f"Unknown PrP budget policy '{policy}'") from e
            elif algorithm in (Algorithm.LNS2, Algorithm.LNS2_PIBT):
                fields["nb_policy"] = NeighborhoodBudgetPolicy.parse(policy)
            else:
                raise ConfigurationError(f"Algorithm '{name}' takes no budget policy")
        try:
            return cls(algorithm=algorithm, **fields)
        except ValueError as e:
            raise ConfigurationError(f"Invalid planner configuration '{label}': {e}") from e

    @property
    def policy_label(self) -> str:
        """Budget-policy column of a results row."""
        if self.algorithm is Algorithm.PRP:
            return self.agent_budget_policy.value
        if self.algorithm in (Algorithm.LNS2, Algorithm.LNS2_PIBT):
            return self.nb_policy.label
        return "none"

    @property
    def label(self) -> str:
        if self.policy_label == "none":
            return self.algorithm.value
        return f"{self.algorithm.value}:{self.policy_label}"

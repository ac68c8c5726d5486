"""Planner interface and the per-episode planning context."""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import TYPE_CHECKING, ClassVar, Sequence, Tuple

import numpy as np

from src.core.domain import Cell, Instance, PartialSolution
from src.core.models import PlannerConfig
from src.search.heuristics import DistanceMap, build_distance_map
from src.search.meter import BudgetMeter

if TYPE_CHECKING:
    from src.planners.pibt import PibtState


@dataclass
class PlanningContext:
    """Everything a planner may consult across the periods of one episode."""

    instance: Instance
    config: PlannerConfig
    dmaps: Tuple[DistanceMap, ...]
    rng: np.random.Generator
    pibt_state: "PibtState"

    @classmethod
    def create(cls, instance: Instance, config: PlannerConfig, seed: int) -> "PlanningContext":
        from src.planners.pibt import PibtState

        dmaps = tuple(build_distance_map(instance.map, agent.goal) for agent in instance.agents)
        return cls(
            instance=instance,
            config=config,
            dmaps=dmaps,
            rng=np.random.default_rng(seed),
            pibt_state=PibtState.initial(instance.starts, instance.goals),
        )


class Planner(ABC):
    """A windowed MAPF planner called once per planning period."""

    name: ClassVar[str]

    def __init__(self, context: PlanningContext):
        self.context = context

    @abstractmethod
    def plan(self, positions: Sequence[Cell], meter: BudgetMeter) -> PartialSolution:
        """
        Produce a partial solution from the agents' current positions.

        Args:
            positions: Current cell of every agent
            meter: Fresh meter holding this period's budget

        Returns:
            One path per agent, starting at its current cell
        """


class IdlePlanner(Planner):
    """Never moves anyone; with any fail policy the agents stay put."""

    name = "idle"

    def plan(self, positions: Sequence[Cell], meter: BudgetMeter) -> PartialSolution:
        return PartialSolution.stay(positions)

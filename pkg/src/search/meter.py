"""Planning-budget meter counting single-agent search node expansions."""

from typing import Optional

from src.utils.exceptions import BudgetOverrunError


class BudgetMeter:
    """
    Monotone expansion counter with a hard ceiling.

    A child meter (see `child`) has its own ceiling and forwards every
    charge to its parent, so a neighborhood allocation can never spend more
    than the period budget that contains it.
    """

    def __init__(self, ceiling: int, parent: Optional["BudgetMeter"] = None):
        if ceiling < 0:
            raise BudgetOverrunError(f"Meter ceiling must be >= 0, got {ceiling}")
        self.ceiling = ceiling
        self.used = 0
        self._parent = parent

    @property
    def remaining(self) -> int:
        own = self.ceiling - self.used
        if self._parent is not None:
            return min(own, self._parent.remaining)
        return own

    @property
    def exhausted(self) -> bool:
        return self.remaining <= 0

    def charge(self, expansions: int = 1) -> None:
        """
        Record expansions against this meter and its ancestors.

        Raises:
            BudgetOverrunError: If the charge would exceed any ceiling
        """
        if expansions < 0:
            raise BudgetOverrunError("Cannot refund expansions")
        if expansions > self.remaining:
            raise BudgetOverrunError(
                f"Charging {expansions} expansions exceeds the remaining {self.remaining}"
            )
        meter: Optional[BudgetMeter] = self
        while meter is not None:
            meter.used += expansions
            meter = meter._parent

    def child(self, ceiling: int) -> "BudgetMeter":
        """Sub-meter capped at min(ceiling, remaining)."""
        return BudgetMeter(max(0, min(ceiling, self.remaining)), parent=self)

    def __repr__(self) -> str:
        return f"BudgetMeter(used={self.used}, ceiling={self.ceiling})"

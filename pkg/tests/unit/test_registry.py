"""Unit tests for the planner registry."""

import pytest
from unittest.mock import Mock

from src.core.models import PlannerConfig
from src.planners.base import IdlePlanner, Planner, PlanningContext
from src.planners.lns2 import Lns2Planner
from src.planners.registry import (
    create_planner,
    get_all_planners,
    get_planner,
    register_planner,
    PLANNER_REGISTRY
)


class TestPlannerRegistry:
    """Tests for planner registry."""

    def test_get_all_planners(self):
        """Test getting all registered planners."""
        names = get_all_planners()
        assert names == sorted(names)
        assert {"pibt", "prp", "lns2", "lns2+pibt", "idle"} <= set(names)

    def test_get_planner_exists(self):
        """Test getting an existing planner."""
        assert get_planner("lns2") is Lns2Planner
        assert issubclass(get_planner("pibt"), Planner)

    def test_get_planner_not_found(self):
        """Test getting a non-existent planner raises KeyError."""
        with pytest.raises(KeyError, match="Available planners"):
            get_planner("cbs")

    def test_register_planner(self):
        """Test registering a new planner."""
        mock_planner = Mock()

        original_count = len(PLANNER_REGISTRY)
        register_planner("test_planner", mock_planner)

        assert len(PLANNER_REGISTRY) == original_count + 1
        assert get_planner("test_planner") is mock_planner

        # Cleanup
        del PLANNER_REGISTRY["test_planner"]

    def test_create_planner(self, swap_instance):
        """Test instantiating the planner named by a context."""
        context = PlanningContext.create(swap_instance, PlannerConfig.from_label("idle"), seed=0)
        planner = create_planner(context)
        assert isinstance(planner, IdlePlanner)
        assert planner.context is context

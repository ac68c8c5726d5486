"""Desk-scale experiment reproductions on the MovingAI benchmarks.

Set RTMAPF_BENCHMARK_DIR to a directory holding the `.map` files and a
`scen-random/` folder to run them.
"""

import os
from statistics import mean

import pytest

from src.benchio.results import write_results
from src.experiments.harness import run_experiment
from src.experiments.spec import build_spec

BENCHMARK_DIR = os.environ.get("RTMAPF_BENCHMARK_DIR")

pytestmark = [
    pytest.mark.integration,
    pytest.mark.skipif(not BENCHMARK_DIR, reason="RTMAPF_BENCHMARK_DIR is not set"),
]


def _mean_makespans(grid, agents, algorithms):
    spec = build_spec({
        "grid": grid, "agent_counts": [agents], "window": 5, "budget": 15 * agents,
        "algorithms": algorithms, "instances": 25,
    })
    records = run_experiment([spec], BENCHMARK_DIR, workers=os.cpu_count() or 1)
    by_label = {}
    for record in records:
        label = record.algorithm if record.policy == "none" else f"{record.algorithm}:{record.policy}"
        by_label.setdefault(label, []).append(record.makespan)
    return {label: mean(values) for label, values in by_label.items()}, records


class TestAgentSweepDirection:
    """Conflict-proportional neighborhood budgets beat a shared pool."""

    @pytest.mark.parametrize("grid,agents", [("random-32-32-20", 100), ("empty-32-32", 300)])
    def test_cpb_beats_shared(self, grid, agents):
        """Test mean capped makespan of LNS2-CPB against LNS2-Shared."""
        means, _ = _mean_makespans(grid, agents, ["lns2:cpb", "lns2:shared"])
        assert means["lns2:cpb"] < means["lns2:shared"]

    def test_hybrid_beats_pibt(self):
        """Test LNS2(CPB)+PIBT against PIBT alone on the room grid."""
        means, _ = _mean_makespans("room-32-32-4", 150, ["lns2+pibt:cpb", "pibt"])
        assert means["lns2+pibt:cpb"] < means["pibt"]

    def test_results_are_byte_identical(self):
        """Test that a repeated sweep writes the same CSV."""
        _, first = _mean_makespans("random-32-32-20", 100, ["lns2:cpb", "lns2:shared"])
        _, second = _mean_makespans("random-32-32-20", 100, ["lns2:cpb", "lns2:shared"])
        assert write_results(first) == write_results(second)

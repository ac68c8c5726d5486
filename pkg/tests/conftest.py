"""Pytest configuration and fixtures."""

import numpy as np
import pytest

from src.config.settings import Settings, reset_settings
from src.core.domain import GridMap
from tests.fixtures.layouts import make_instance


@pytest.fixture(autouse=True)
def clean_settings(monkeypatch):
    """Isolate tests from RTMAPF_* variables of the calling shell and from the settings cache."""
    for name in ("RTMAPF_LOG_LEVEL", "RTMAPF_WINDOW", "RTMAPF_MAKESPAN_CAP", "RTMAPF_WORKERS"):
        monkeypatch.delenv(name, raising=False)
    reset_settings()
    yield
    reset_settings()


@pytest.fixture
def mock_settings():
    """Settings with small defaults for testing."""
    return Settings(log_level="DEBUG", window=2, makespan_cap=30, instances_per_cell=2)


@pytest.fixture
def empty_grid():
    """Obstacle-free 5x5 grid."""
    return GridMap.empty(5, 5, name="empty-5-5")


@pytest.fixture
def open_grid():
    """Obstacle-free 8x8 grid."""
    return GridMap.empty(8, 8, name="empty-8-8")


@pytest.fixture
def walled_grid():
    """5x5 grid whose middle column is a wall with a single gap at the bottom."""
    return GridMap.from_rows([
        "..@..",
        "..@..",
        "..@..",
        "..@..",
        ".....",
    ], name="walled")


@pytest.fixture
def rng():
    return np.random.default_rng(7)


@pytest.fixture
def swap_instance(empty_grid):
    """Two agents that want to trade places along row 0."""
    return make_instance(empty_grid, [((0, 0), (0, 4)), ((0, 4), (0, 0))], budget=500, window=2)


MAP_TEXT = "\n".join([
    "type octile",
    "height 4",
    "width 6",
    "map",
    "......",
    ".@@...",
    "......",
    "...T..",
]) + "\n"

SCEN_TEXT = "\n".join([
    "version 1",
    "0\ttiny.map\t6\t4\t0\t0\t5\t0\t5.00000000",
    "0\ttiny.map\t6\t4\t5\t2\t0\t2\t5.00000000",
    "0\ttiny.map\t6\t4\t0\t3\t5\t3\t5.00000000",
]) + "\n"


@pytest.fixture
def map_text():
    """A 6x4 octile map with three blocked cells."""
    return MAP_TEXT


@pytest.fixture
def scen_text():
    """Three agents on the map of `map_text`."""
    return SCEN_TEXT


@pytest.fixture
def benchmark_dir(tmp_path):
    """Benchmark directory with one grid and two scenario files in the MovingAI layout."""
    (tmp_path / "tiny.map").write_text(MAP_TEXT, encoding="utf-8")
    scen_dir = tmp_path / "scen-random"
    scen_dir.mkdir()
    for index in (1, 2):
        (scen_dir / f"tiny-random-{index}.scen").write_text(SCEN_TEXT, encoding="utf-8")
    return tmp_path

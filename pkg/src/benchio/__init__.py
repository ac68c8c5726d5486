"""Benchmark map/scenario parsing and results serialization."""

from src.benchio.maps import load_map, parse_map, serialize_map
from src.benchio.scenarios import ScenarioEntry, load_scenario, parse_scen, parse_scen_entries
from src.benchio.results import (
    RunRecord,
    aggregate_csv,
    aggregate_frame,
    cactus_data,
    cactus_frame,
    read_results,
    records_frame,
    write_results,
)

__all__ = [
    "load_map",
    "parse_map",
    "serialize_map",
    "ScenarioEntry",
    "load_scenario",
    "parse_scen",
    "parse_scen_entries",
    "RunRecord",
    "aggregate_csv",
    "aggregate_frame",
    "cactus_data",
    "cactus_frame",
    "read_results",
    "records_frame",
    "write_results",
]

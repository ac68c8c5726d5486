"""Experiment specs, presets, the sweep harness and reports."""

from src.experiments.spec import ExperimentSpec, SweepCell, build_spec, load_spec_file, parse_spec_values
from src.experiments.presets import PRESETS, get_preset, is_preset
from src.experiments.harness import (
    RunTask,
    build_tasks,
    resolve_map_path,
    resolve_scen_path,
    run_experiment,
    run_task,
    run_tasks,
)
from src.experiments.report import aggregate_table, plot_cactus, write_report

__all__ = [
    "ExperimentSpec",
    "SweepCell",
    "build_spec",
    "load_spec_file",
    "parse_spec_values",
    "PRESETS",
    "get_preset",
    "is_preset",
    "RunTask",
    "build_tasks",
    "resolve_map_path",
    "resolve_scen_path",
    "run_experiment",
    "run_task",
    "run_tasks",
    "aggregate_table",
    "plot_cactus",
    "write_report",
]

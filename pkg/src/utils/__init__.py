"""Utilities module."""

from src.utils.logging import setup_logging, get_logger
from src.utils.exceptions import (
    RTMapfError,
    ConfigurationError,
    InvalidInstanceError,
    BenchmarkParseError,
    MapParseError,
    ScenarioParseError,
    ResultsParseError,
    BenchmarkFileError,
    SearchError,
    NoPathError,
    BudgetExhaustedError,
    BudgetOverrunError,
)

__all__ = [
    "setup_logging",
    "get_logger",
    "RTMapfError",
    "ConfigurationError",
    "InvalidInstanceError",
    "BenchmarkParseError",
    "MapParseError",
    "ScenarioParseError",
    "ResultsParseError",
    "BenchmarkFileError",
    "SearchError",
    "NoPathError",
    "BudgetExhaustedError",
    "BudgetOverrunError",
]

"""Custom exception classes for the real-time MAPF toolkit."""

from typing import Optional


class RTMapfError(Exception):
    """Base exception for all toolkit errors."""
    pass


class ConfigurationError(RTMapfError):
    """Raised when there's a configuration error (bad knobs, h < w, invalid specs)."""
    pass


class InvalidInstanceError(RTMapfError, ValueError):
    """Raised when a grid, path or instance violates a domain invariant."""
    pass


class BenchmarkParseError(RTMapfError):
    """Base exception for malformed benchmark or results files."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class MapParseError(BenchmarkParseError):
    """Raised when a .map file does not follow the octile map grammar."""
    pass


class ScenarioParseError(BenchmarkParseError):
    """Raised when a .scen file is malformed or inconsistent with its map."""
    pass


class ResultsParseError(BenchmarkParseError):
    """Raised when a results CSV cannot be read back."""
    pass


class BenchmarkFileError(RTMapfError):
    """Raised when a map or scenario file is missing or unreadable."""
    pass


class SearchError(RTMapfError):
    """Base exception for single-agent search failures."""

    def __init__(self, message: str, expansions: int = 0):
        self.expansions = expansions
        super().__init__(message)


class NoPathError(SearchError):
    """Raised when no path exists under the constraints within the time cap."""
    pass


class BudgetExhaustedError(SearchError):
    """Raised when a search runs out of its expansion allowance."""
    pass


class BudgetOverrunError(RTMapfError):
    """Raised when something tries to charge a meter beyond its ceiling."""
    pass

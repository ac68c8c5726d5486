"""Toolkit configuration management using Pydantic settings."""

from pathlib import Path
from typing import Optional

from pydantic_settings import BaseSettings, SettingsConfigDict

from src.core.constants import BenchConfig, Lns2Config, LoggingConfig, RuntimeConfig
from src.utils.exceptions import ConfigurationError


class Settings(BaseSettings):
    """Toolkit settings loaded from RTMAPF_* environment variables or a .env file."""

    log_level: str = LoggingConfig.DEFAULT_LEVEL
    benchmark_dir: Path = Path("benchmarks")

    # Episode defaults
    makespan_cap: int = RuntimeConfig.MAKESPAN_CAP
    window: int = RuntimeConfig.WINDOW
    horizon_factor: int = RuntimeConfig.HORIZON_FACTOR

    # Planner defaults
    budget_multiplier: float = BenchConfig.BUDGET_MULTIPLIER
    nb_size: int = Lns2Config.NEIGHBORHOOD_SIZE
    p_conflict: float = Lns2Config.P_CONFLICT

    # Harness defaults
    instances_per_cell: int = BenchConfig.INSTANCES_PER_CELL
    workers: int = 1

    model_config = SettingsConfigDict(
        env_prefix="RTMAPF_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    def validate_values(self) -> None:
        """Validate that numeric knobs are in range."""
        positive = {
            "makespan_cap": self.makespan_cap,
            "window": self.window,
            "horizon_factor": self.horizon_factor,
            "budget_multiplier": self.budget_multiplier,
            "nb_size": self.nb_size,
            "instances_per_cell": self.instances_per_cell,
            "workers": self.workers,
        }
        for name, value in positive.items():
            if value <= 0:
                raise ConfigurationError(f"RTMAPF_{name.upper()} must be positive, got {value}")
        if not 0.0 <= self.p_conflict <= 1.0:
            raise ConfigurationError(f"RTMAPF_P_CONFLICT must be in [0, 1], got {self.p_conflict}")

    def default_horizon(self, window: int) -> int:
        """Planning horizon used when none is given explicitly."""
        return self.horizon_factor * window


# Global settings instance
_settings: Optional[Settings] = None


def get_settings() -> Settings:
    """Get or create the global settings instance."""
    global _settings
    if _settings is None:
        _settings = Settings()
        _settings.validate_values()
    return _settings


def reset_settings() -> None:
    """Drop the cached settings so the next get_settings() re-reads the environment."""
    global _settings
    _settings = None

"""Logging configuration and setup."""

import logging
import sys
from typing import Optional, TextIO

from src.core.constants import LoggingConfig
from src.utils.exceptions import ConfigurationError


def setup_logging(
    level: str = LoggingConfig.DEFAULT_LEVEL,
    suppress_third_party: bool = True,
    stream: Optional[TextIO] = None,
) -> None:
    """
    Configure toolkit-wide logging.

    Log records go to stderr by default so that CSV written to stdout by the
    CLI stays machine-readable.

    Args:
        level: Logging level (DEBUG, INFO, WARNING, ERROR, CRITICAL)
        suppress_third_party: Whether to raise plotting-library loggers to ERROR
        stream: Destination stream (defaults to stderr)

    Raises:
        ConfigurationError: If the level name is unknown
    """
    numeric_level = logging.getLevelName(level.upper())
    if not isinstance(numeric_level, int):
        raise ConfigurationError(f"Unknown log level: {level}")

    logging.basicConfig(
        level=numeric_level,
        format=LoggingConfig.LOG_FORMAT,
        datefmt=LoggingConfig.DATE_FORMAT,
        stream=stream or sys.stderr,
        force=True,
    )

    if suppress_third_party:
        for logger_name in LoggingConfig.THIRD_PARTY_LOGGERS:
            logging.getLogger(logger_name).setLevel(logging.ERROR)


def get_logger(name: str) -> logging.Logger:
    """
    Get a logger instance for a module.

    Args:
        name: Logger name (typically __name__)

    Returns:
        Logger instance
    """
    return logging.getLogger(name)

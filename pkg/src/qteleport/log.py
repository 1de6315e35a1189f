"""Logging configuration for qteleport."""

from __future__ import annotations

import logging


def get_logger(name: str) -> logging.Logger:
    """Get a logger for the given name.

    Args:
        name: The name of the logger, will be prefixed with 'qteleport.'

    Returns:
        A logger instance
    """
    return logging.getLogger(f"qteleport.{name}")


def configure(verbosity: int = 0) -> None:
    """Route package logging to stderr.

    Args:
        verbosity: 0 for warnings, 1 for info, 2 or more for debug output
    """
    level = (logging.WARNING, logging.INFO, logging.DEBUG)[min(verbosity, 2)]
    logging.basicConfig(
        level=level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        datefmt="%Y-%m-%d %H:%M:%S",
    )
    logging.getLogger("qteleport").setLevel(level)

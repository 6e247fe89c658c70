from __future__ import annotations

import logging
import sys
from typing import Optional

import structlog  # type: ignore[import]


def configure_logging(level: str = "WARNING", app_name: Optional[str] = None) -> None:
    """Configure structlog and standard logging.

    Records go to stderr as JSON lines; stdout carries command results only.
    With ``app_name`` every record carries it under the ``app`` key.
    """

    numeric_level = getattr(logging, level.upper(), logging.WARNING)
    logging.basicConfig(level=numeric_level, format="%(message)s", stream=sys.stderr)

    structlog.configure(
        processors=[
            structlog.contextvars.merge_contextvars,
            structlog.processors.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.processors.JSONRenderer(),
        ],
        logger_factory=structlog.PrintLoggerFactory(file=sys.stderr),
        wrapper_class=structlog.make_filtering_bound_logger(numeric_level),
        context_class=dict,
        cache_logger_on_first_use=False,
    )
    if app_name:
        structlog.contextvars.bind_contextvars(app=app_name)


def get_logger(name: Optional[str] = None) -> structlog.stdlib.BoundLogger:
    """Return a structlog bound logger."""

    return structlog.get_logger(name)

"""Logging configuration for the chain ring toolkit."""

import logging
import sys
from typing import Any, Optional

import structlog

from src.config import get_settings


def setup_logging(level: Optional[str] = None, fmt: Optional[str] = None) -> None:
    """Configure structured logging.

    Log lines go to standard error so command output on standard output stays
    machine readable.
    """
    settings = get_settings()
    level = (level or settings.log_level).upper()
    fmt = fmt or settings.log_format

    logging.basicConfig(
        format="%(message)s",
        stream=sys.stderr,
        level=getattr(logging, level, logging.INFO),
        force=True,
    )

    if fmt == "json":
        renderer: Any = structlog.processors.JSONRenderer(sort_keys=True)
        stamp = structlog.processors.TimeStamper(fmt="iso")
    else:
        renderer = ConsoleRenderer(colors=sys.stderr.isatty())
        stamp = structlog.processors.TimeStamper(fmt="%Y-%m-%d %H:%M:%S")

    structlog.configure(
        processors=[
            structlog.stdlib.filter_by_level,
            structlog.stdlib.add_logger_name,
            structlog.stdlib.add_log_level,
            structlog.stdlib.PositionalArgumentsFormatter(),
            stamp,
            structlog.processors.StackInfoRenderer(),
            structlog.processors.format_exc_info,
            structlog.processors.UnicodeDecoder(),
            renderer,
        ],
        context_class=dict,
        logger_factory=structlog.stdlib.LoggerFactory(),
        wrapper_class=structlog.stdlib.BoundLogger,
        cache_logger_on_first_use=False,
    )


class ConsoleRenderer:
    """Single-line console renderer with optional level colors."""

    LEVEL_COLORS = {
        "debug": "\033[36m",
        "info": "\033[32m",
        "warning": "\033[33m",
        "error": "\033[31m",
        "critical": "\033[35m",
    }

    def __init__(self, colors: bool = True):
        self.colors = colors

    def __call__(self, logger, name, event_dict):
        level = event_dict.pop("level", "info")
        timestamp = event_dict.pop("timestamp", "")
        logger_name = event_dict.pop("logger", "")
        event = event_dict.pop("event", "")

        if self.colors:
            color = self.LEVEL_COLORS.get(level.lower(), "")
            level_str = f"{color}{level.upper()}\033[0m"
        else:
            level_str = level.upper()

        line = f"{timestamp} {level_str} {logger_name}: {event}"
        if event_dict:
            context = " ".join(f"{k}={v}" for k, v in sorted(event_dict.items()))
            line = f"{line} {context}"
        return line


def get_logger(name: str) -> Any:
    """Get a configured logger instance."""
    return structlog.get_logger(name)

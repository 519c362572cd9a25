"""
Logger factory.

Status lines keep the [OK] / [WARN] tags used across the code base and are
written to stderr, leaving stdout for tables.
"""
import logging
import sys
from typing import Optional

from src.utils.settings import get_settings

_ROOT = "walkprox"
_configured = False


def configure_logging(level: Optional[str] = None) -> None:
    """
    Configure the toolkit's root logger once.

    Args:
        level: Level name; defaults to Settings.log_level
    """
    global _configured
    root = logging.getLogger(_ROOT)
    root.setLevel((level or get_settings().log_level).upper())
    if not _configured:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter("%(levelname)s %(name)s: %(message)s"))
        root.addHandler(handler)
        root.propagate = False
        _configured = True


def get_logger(name: str) -> logging.Logger:
    """Get a child logger of the toolkit root, e.g. get_logger(__name__)."""
    short = name.rsplit(".", 1)[-1]
    return logging.getLogger(f"{_ROOT}.{short}")

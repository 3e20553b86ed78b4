"""Logging for ris-secrecy (powered by `loguru`_).

The package logger is silent unless configured, so importing the library
never writes to stderr.  Activate it from the environment::

    RIS_SECRECY_LOG_LEVEL=DEBUG ris-secrecy sop-sweep --config sweep.json --out out/

Environment variables
---------------------
``RIS_SECRECY_LOG_LEVEL``
    ``TRACE``, ``DEBUG``, ``INFO``, ``WARNING``, ``ERROR`` or ``CRITICAL``.
    Unset means no output.

``RIS_SECRECY_LOG_FILE``
    Optional log file, rotated at 10 MB and kept for 30 days.

``RIS_SECRECY_LOG_FORMAT``
    ``pretty`` (default) or ``json`` (one serialised record per line).

At DEBUG the contour engine reports offsets, windows and node counts per
refinement level and the integrators report their error estimates; sweeps
log failed grid points at ERROR.
"""

from __future__ import annotations

import os
import sys
from typing import Literal

from loguru import logger

__all__ = ["logger", "setup_logger"]

_NAMESPACE = "ris_secrecy"

# ---------------------------------------------------------------------------
# Format strings
# ---------------------------------------------------------------------------

_PRETTY_FORMAT = (
    "<dim>{time:YYYY-MM-DD HH:mm:ss.SSS}</dim> "
    "<level>{level:<8}</level> "
    "<cyan>{name}</cyan>:<dim>{function}:{line}</dim> "
    "<dim>│</dim> {message}"
)

_FILE_FORMAT = "{time:YYYY-MM-DD HH:mm:ss.SSS} {level:<8} {name}:{function}:{line} │ {message}"


# ---------------------------------------------------------------------------
# Public API
# ---------------------------------------------------------------------------

def setup_logger(
    level: str | None = None,
    *,
    log_file: str | None = None,
    fmt: Literal["pretty", "json"] = "pretty",
) -> None:
    """(Re)configure the ``ris_secrecy`` logger.

    Parameters
    ----------
    level:
        Minimum severity to emit.  ``None`` removes every sink and disables
        the namespace.
    log_file:
        Optional file sink with rotation (10 MB), retention (30 days) and
        gz compression.
    fmt:
        ``"pretty"`` for coloured console output, ``"json"`` for serialised
        records.
    """
    logger.remove()

    if level is None:
        logger.disable(_NAMESPACE)
        return

    logger.enable(_NAMESPACE)
    serialize = fmt == "json"

    logger.add(
        sys.stderr,
        level=level.upper(),
        format=_PRETTY_FORMAT if not serialize else "{message}",
        serialize=serialize,
        colorize=not serialize,
        backtrace=True,
        diagnose=False,
    )

    if log_file:
        logger.add(
            log_file,
            level=level.upper(),
            format=_FILE_FORMAT if not serialize else "{message}",
            serialize=serialize,
            rotation="10 MB",
            retention="30 days",
            compression="gz",
            encoding="utf-8",
            backtrace=True,
            diagnose=False,
        )


# ---------------------------------------------------------------------------
# Module-level initialisation
# ---------------------------------------------------------------------------

logger.remove()

_env_level = os.environ.get("RIS_SECRECY_LOG_LEVEL")
_env_file = os.environ.get("RIS_SECRECY_LOG_FILE")
_env_fmt: Literal["pretty", "json"] = (
    "json" if os.environ.get("RIS_SECRECY_LOG_FORMAT", "").lower() == "json" else "pretty"
)

if _env_level:
    setup_logger(level=_env_level, log_file=_env_file, fmt=_env_fmt)
else:
    logger.disable(_NAMESPACE)

"""Logging setup for the ``drt-moments`` command line.

Importing the package attaches no handler, so library callers only see
records through handlers they install themselves. The command line calls
:func:`configure_logging` once with its ``-v`` count; the ``drt_moments``
logger then writes to stderr, keeping moment tables and CSV on stdout clean.
"""

from __future__ import annotations

import logging
import sys
from typing import Optional
from typing import TextIO

PACKAGE_LOGGER_NAME = "drt_moments"
HANDLER_NAME = "drt_moments.stderr"
LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"

# index is the number of -v flags, capped at the last entry
_VERBOSITY_LEVELS = (logging.WARNING, logging.INFO, logging.DEBUG)


def level_for_verbosity(verbosity: int) -> int:
    """Return the logging level for ``verbosity`` repeated ``-v`` flags.

    No flag keeps warnings and errors, ``-v`` adds progress records and
    ``-vv`` or more enables debug output.

    Raises:
        ValueError: If ``verbosity`` is negative.
    """
    if verbosity < 0:
        raise ValueError(f"verbosity must be >= 0, got {verbosity}")
    return _VERBOSITY_LEVELS[min(verbosity, len(_VERBOSITY_LEVELS) - 1)]


def _package_handler(logger: logging.Logger) -> Optional[logging.Handler]:
    for handler in logger.handlers:
        if handler.get_name() == HANDLER_NAME:
            return handler
    return None


def configure_logging(verbosity: int = 0, stream: Optional[TextIO] = None) -> logging.Logger:
    """Attach the stderr handler to the package logger and set its level.

    Repeated calls replace the package handler, so exactly one is attached
    and it writes to ``stream`` or to the current ``sys.stderr``.

    Args:
        verbosity (int): Number of ``-v`` flags. Defaults to warnings only.
        stream (Optional[TextIO]): Destination; ``None`` means ``sys.stderr``.

    Returns:
        logging.Logger: The ``drt_moments`` logger.
    """
    logger = logging.getLogger(PACKAGE_LOGGER_NAME)
    logger.setLevel(level_for_verbosity(verbosity))
    previous = _package_handler(logger)
    if previous is not None:
        logger.removeHandler(previous)
    handler = logging.StreamHandler(sys.stderr if stream is None else stream)
    handler.set_name(HANDLER_NAME)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    logger.addHandler(handler)
    logger.propagate = False
    return logger


__all__ = ["configure_logging", "level_for_verbosity", "PACKAGE_LOGGER_NAME"]

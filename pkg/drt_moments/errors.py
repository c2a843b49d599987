"""Exception hierarchy and the command wrapper that maps it to exit codes."""

import logging
import sys
from functools import wraps
from typing import Any
from typing import Callable
from typing import TypeVar

from .status import ExitCode

logger = logging.getLogger(__name__)


class MomentError(Exception):
    """Base exception for the package, carrying a message and an exit code."""

    def __init__(self, message: str, code: int = ExitCode.FAILURE):
        super().__init__(message)
        self.code = code
        self.message = message


class InvalidArgumentError(MomentError, ValueError):
    """A caller supplied an argument outside the documented domain."""

    def __init__(self, message: str, code: int = ExitCode.USAGE):
        super().__init__(message, code)


class InternalInconsistencyError(MomentError):
    """An exactness check failed; projections or moments are corrupt."""


class EmptyImageError(MomentError, ValueError):
    """The image has zero total mass, so its centroid is undefined."""


class InvalidPlanError(MomentError, ValueError):
    """A slope plan does not yield a solvable binomial system."""


class PgmParseError(MomentError):
    """A PGM file could not be parsed.

    Attributes:
        offset (int): Byte offset in the file where parsing failed.
    """

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})", ExitCode.FAILURE)
        self.offset = offset


F = TypeVar("F", bound=Callable[..., int])


def handle_exceptions(func: F) -> F:
    """Wrap a command function so package errors become exit codes.

    The wrapped function returns its own exit code on success. A
    :class:`MomentError` is reported on stderr as a single line and its
    ``code`` is returned; ``OSError`` maps to ``FAILURE``. Both are also logged
    at info level for ``-v`` runs. Anything else is logged with its traceback
    and maps to ``FAILURE`` as well.
    """

    @wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> int:
        logger.debug("Executing %s", func.__name__)
        try:
            result = func(*args, **kwargs)
            logger.debug("%s completed with exit code %s", func.__name__, result)
            return result
        except MomentError as exc:
            logger.info("%s failed: %s (code=%s)", func.__name__, exc.message, int(exc.code))
            print(f"error: {exc.message}", file=sys.stderr)
            return int(exc.code)
        except OSError as exc:
            logger.info("%s failed with I/O error: %s", func.__name__, exc)
            print(f"error: {exc}", file=sys.stderr)
            return int(ExitCode.FAILURE)
        except Exception as exc:
            logger.exception("Unhandled exception in %s: %s", func.__name__, exc)
            print("error: internal failure", file=sys.stderr)
            return int(ExitCode.FAILURE)

    return wrapper  # type: ignore


__all__ = [
    "MomentError",
    "InvalidArgumentError",
    "InternalInconsistencyError",
    "EmptyImageError",
    "InvalidPlanError",
    "PgmParseError",
    "handle_exceptions",
]

"""
Exception handling for the command line.

This module maps every failure of a run to an exit code and a JSON error
object, so callers get the same error shape whatever went wrong.
"""

import logging
from typing import Tuple

from src.application.dtos.report_dto import ErrorDto
from src.domain.shared.errors import AccuracyError, DomainError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3


class UsageError(ValueError):
    """Raised by the argument parser instead of exiting."""


def exit_code_for(exc: BaseException) -> int:
    """
    The exit code of a failed run.

    Business rules:
    - domain, pole and accuracy errors are numeric failures (3)
    - other ValueErrors, including argument errors, are usage errors (2)
    - anything else arithmetic is a numeric failure (3)
    """
    if isinstance(exc, (DomainError, AccuracyError, ArithmeticError)):
        return EXIT_NUMERIC
    if isinstance(exc, ValueError):
        return EXIT_USAGE
    return EXIT_NUMERIC


def handle_exception(exc: BaseException) -> Tuple[int, ErrorDto]:
    """
    Convert an exception into its exit code and error object.

    Args:
        exc: The exception that ended the run

    Returns:
        (exit code, ErrorDto)
    """
    code = exit_code_for(exc)
    error = ErrorDto.from_exception(exc)
    logger.error(f"{error.type}: {error.error} (exit {code})")
    return code, error

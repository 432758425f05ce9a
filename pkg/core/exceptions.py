"""
Custom exception classes and handlers
"""

from typing import Any, Dict, Tuple

import structlog

logger = structlog.get_logger(__name__)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CAPACITY = 3
EXIT_INVARIANT = 4


class AppException(Exception):
    """Base application exception"""
    kind = "app"

    def __init__(self, message: str, exit_code: int = EXIT_INVARIANT, **context: Any):
        self.message = message
        self.exit_code = exit_code
        self.context = context
        super().__init__(message)


# ========== INPUT ERRORS (exit 2) ==========

class InputError(AppException):
    """Malformed or inconsistent user input"""
    kind = "input"

    def __init__(self, message: str = "Invalid input", **context: Any):
        super().__init__(message, exit_code=EXIT_INPUT, **context)


class QuiverError(InputError):
    """Quiver structure errors"""
    kind = "quiver"


class DimensionError(InputError):
    """Dimension vector does not fit the quiver"""
    kind = "dimension"


class PotentialError(InputError):
    """Paths, potentials and substitutions"""
    kind = "potential"


class SeriesError(InputError):
    """Character arithmetic preconditions"""
    kind = "series"


class NotTateError(InputError):
    """Requested invariant has no Tate-type character"""
    kind = "not_tate"


class GenericityError(InputError):
    """Stability parameter fails a precondition on d"""
    kind = "genericity"


# ========== CAPACITY ERRORS (exit 3) ==========

class CapacityError(AppException):
    """Oracle enumeration beyond configured caps"""
    kind = "capacity"

    def __init__(self, what: str, required: int, limit: int):
        super().__init__(
            f"{what} requires {required}, limit is {limit}",
            exit_code=EXIT_CAPACITY,
            what=what,
            required=required,
            limit=limit,
        )
        self.required = required
        self.limit = limit


# ========== INVARIANT VIOLATIONS (exit 4) ==========

class InvariantViolation(AppException):
    """An internal consistency check failed"""
    kind = "invariant"

    def __init__(self, message: str = "Invariant violated", **context: Any):
        super().__init__(message, exit_code=EXIT_INVARIANT, **context)


class OracleError(InvariantViolation):
    kind = "oracle"


class StabilityError(InvariantViolation):
    """Interpolation changed after adding a prime"""
    kind = "stability"


class IntegralityError(InvariantViolation):
    """Non-integral or negative coefficients"""
    kind = "integrality"


class CacheError(InvariantViolation):
    """Cached value disagrees with recomputation"""
    kind = "cache"


class CheckFailed(InvariantViolation):
    """A symbolic self-check did not pass"""
    kind = "check_failed"


def error_payload(exc: Exception) -> Dict[str, Any]:
    """Machine-readable error document"""
    if isinstance(exc, AppException):
        body: Dict[str, Any] = {"kind": exc.kind, "detail": exc.message}
        for key, value in exc.context.items():
            body[key] = value if isinstance(value, (int, str, bool, list, dict)) or value is None else str(value)
        return {"error": body}
    return {"error": {"kind": "internal", "detail": str(exc) or type(exc).__name__}}


def handle_exception(exc: Exception) -> Tuple[Dict[str, Any], int]:
    """Log an exception and map it to (payload, exit code)"""
    if isinstance(exc, AppException):
        logger.error("app_exception", kind=exc.kind, detail=exc.message, exit_code=exc.exit_code)
        return error_payload(exc), exc.exit_code
    logger.exception("unhandled_exception", detail=str(exc))
    return error_payload(exc), EXIT_INVARIANT

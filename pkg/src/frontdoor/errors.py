"""Exception types shared across the package."""

from __future__ import annotations

__all__ = [
    "FrontdoorError",
    "GraphError",
    "InvalidQueryError",
    "EstimatorError",
    "OracleLimitError",
]


class FrontdoorError(Exception):
    """Base class for all errors raised by this package."""


class GraphError(FrontdoorError, ValueError):
    """Malformed graph text or inconsistent graph construction.

    Parse-time errors carry the 1-based input line number in ``line``.
    """

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class InvalidQueryError(FrontdoorError, ValueError):
    """A query violates its preconditions (distinct from a NoneExists result)."""


class EstimatorError(FrontdoorError, ValueError):
    """Invalid discrete model, state-space overflow, or an ill-posed estimate."""


class OracleLimitError(FrontdoorError, RuntimeError):
    """A brute-force oracle was asked to exceed its combinatorial guard."""

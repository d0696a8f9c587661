"""Semantic exception types shared across the package.

The CLI maps these onto fixed exit codes (schema 2, domain 3, budget 4),
so library code should raise these rather than bare ValueError wherever a
caller could plausibly want to dispatch on the failure class.
"""

from __future__ import annotations

__all__ = [
    "ScreenLimitsError",
    "DomainError",
    "RangeOverflowError",
    "AlreadyUnreliableError",
    "BracketError",
    "SchemaError",
    "BudgetError",
]


class ScreenLimitsError(Exception):
    """Base class for all package-specific failures."""


class DomainError(ScreenLimitsError, ValueError):
    """An input lies outside the mathematical domain of an operation."""


class RangeOverflowError(DomainError):
    """A derived quantity exceeds the supported numeric range."""


class AlreadyUnreliableError(DomainError):
    """The failure criterion is already met at t = 0; no root to bracket."""


class BracketError(DomainError):
    """The requested root is not bracketed inside the search interval."""


class SchemaError(ScreenLimitsError, ValueError):
    """A scenario or config file violates its declared parameter schema."""


class BudgetError(ScreenLimitsError, RuntimeError):
    """A simulation plan exceeds the configured computational budget."""

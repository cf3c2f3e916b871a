"""Exception types shared across the package.

The CLI maps these to exit codes: precondition-type errors give 1 and
inconsistencies (an outcome contradicting a proven statement) give 2.
"""
from __future__ import annotations


class LinlogError(Exception):
    """Base class for all package errors."""

    exit_code = 1


class DomainError(LinlogError, ValueError):
    """Input outside the domain of an operation."""


class PreconditionError(LinlogError, ValueError):
    """A stated hypothesis of an operation does not hold."""


class UnsupportedError(LinlogError, NotImplementedError):
    """Input is valid in principle but outside the implemented scope."""


class DegenerateError(LinlogError, ValueError):
    """A formula degenerates (for instance a zero exponent denominator)."""


class FactorizationError(LinlogError, ArithmeticError):
    """Trial division did not finish within the configured bound."""


class InconsistencyError(LinlogError):
    """A computed outcome contradicts a proven inequality or identity."""

    exit_code = 2


class InconclusiveError(LinlogError):
    """A check could not be decided within the configured tolerance."""

    exit_code = 3

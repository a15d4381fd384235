"""Exception taxonomy shared across the package.

Two families matter to callers (and to the CLI exit-code mapping):
``ValidationError`` for malformed inputs (bad shapes, broken invariants)
and ``DomainError`` for well-formed requests that are mathematically
infeasible (out-of-range targets, wrong reservoir ordering, infeasible
decompositions). Every instance carries a short machine-readable ``code``.
"""

from __future__ import annotations


class ThermoconeError(Exception):
    """Base class; ``code`` is a stable, machine-readable slug."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code
        self.message = message


class ValidationError(ThermoconeError):
    """Input fails a structural invariant (CLI exit code 2)."""


class DomainError(ThermoconeError):
    """Request cannot be satisfied in this problem domain (CLI exit code 1)."""

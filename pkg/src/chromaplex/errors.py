"""Error taxonomy shared across the package.

``ValueError`` (and subclasses) marks malformed or out-of-contract input.
``BudgetError`` marks a refused computation whose enumeration size exceeds
the configured budget.  ``VerificationError`` marks a cross-check mismatch
between two routes that must agree exactly.
"""

from __future__ import annotations


class BudgetError(RuntimeError):
    """Enumeration would exceed the configured budget; nothing was computed."""


class VerificationError(RuntimeError):
    """Two independently computed values that must agree exactly did not."""


class BadPrimeError(ValueError):
    """A finite-field count was requested at a prime where some intersection
    drops rank; the offending subsystem is reported in the message."""

"""Shared exception types."""

from __future__ import annotations

__all__ = ["FalsificationError", "BudgetExceeded"]


class FalsificationError(AssertionError):
    """A verified mathematical identity failed on a concrete instance.

    Raised when a computation contradicts a statement the library treats as
    a theorem (as opposed to bad input, which raises ValueError). Carries
    enough context in the message to reproduce the counterexample.
    """


class BudgetExceeded(RuntimeError):
    """An exhaustive computation was refused because it exceeds its budget."""

"""Error taxonomy shared across the package.

Three failure modes are kept separate on purpose:

* ``PreconditionError`` -- the caller asked for an object whose existence
  conditions do not hold.  The message always names the violated condition
  so a CLI user can see *which* hypothesis failed.
* ``InfeasibleSplitError`` -- a fair-split request admits no integral
  solution.  For requests built by the detachment engine this never fires;
  it exists for hand-built requests and necessity experiments.
* ``InternalConsistencyError`` -- an identity that is supposed to hold by
  construction failed at runtime.  This is a bug signal, never a user error.
"""

from __future__ import annotations


class HyperdetachError(Exception):
    """Base class for all package errors."""


class DomainError(HyperdetachError):
    """Malformed input: unknown vertex, bad color index, bad JSON, ..."""


class PreconditionError(HyperdetachError):
    """A named existence condition of a constructor is violated."""

    def __init__(self, condition: str, detail: str = ""):
        self.condition = condition
        self.detail = detail
        msg = f"precondition {condition} violated"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class InfeasibleSplitError(HyperdetachError):
    """No integral fair split exists for the given request."""


class InternalConsistencyError(HyperdetachError):
    """An invariant guaranteed by construction failed; this is a bug."""

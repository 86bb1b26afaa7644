"""Exception types shared across the package.

The CLI maps these onto its documented exit codes: PreconditionError -> 2,
SizeGuardError -> 3, SoundnessAlarm -> 4.
"""

from __future__ import annotations


class PreconditionError(ValueError):
    """A documented precondition of an operation was violated."""


class SizeGuardError(RuntimeError):
    """An exact routine refused an instance larger than its size guard."""


class SoundnessAlarm(RuntimeError):
    """An internal cross-check failed; results must not be trusted."""

"""Exception hierarchy shared across the package.

Every error raised by the library derives from :class:`DyftError`, so callers
(and the HTTP service) can map failures onto a small set of categories:
bad inputs, desk-scale limits (guard / envelope), and series non-convergence.
"""

from __future__ import annotations


class DyftError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(DyftError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class SizeMismatchError(DyftError, ValueError):
    """Two sequences that must have matching lengths do not."""


class GammaOverflowError(DyftError, OverflowError):
    """Gamma argument beyond the double-precision overflow threshold (171)."""


class GuardExceededError(DyftError):
    """A series argument magnitude exceeds the configured guard.

    Signals that the requested evaluation is outside the configured
    desk-scale region: shrink the transform size or raise the guard
    (accepting the extended-precision cost).
    """

    def __init__(self, message: str, *, magnitude: float, guard: float,
                 n: int | None = None, k: int | None = None):
        super().__init__(message)
        self.magnitude = magnitude
        self.guard = guard
        self.n = n
        self.k = k


class ConvergenceError(DyftError):
    """The series did not terminate within the configured term budget."""


class EnvelopeError(DyftError):
    """Transform size exceeds the desk-scale cap for the given order."""

    def __init__(self, message: str, *, size: int, limit: int, alpha: float):
        super().__init__(message)
        self.size = size
        self.limit = limit
        self.alpha = alpha


class PlanMismatchError(DyftError, ValueError):
    """A transform plan does not match the data it is applied to."""


class ExtensionModeError(DyftError, ValueError):
    """An operation requires a different signal extension mode."""


class SignalFormatError(DyftError, ValueError):
    """A signal/spectrum file or its metadata sidecar failed to parse."""

"""Shared exception types.

Every error condition named by the public contracts maps to one class here,
so callers (and the CLI exit-code logic) can dispatch on type alone.
"""

from __future__ import annotations


class MonodegError(Exception):
    """Base class for all package errors."""


class DimensionMismatch(MonodegError, ValueError):
    """Two objects that must share a dimension do not."""


class NotUnimodular(MonodegError, ValueError):
    """Operation needs |det| = 1; the dual degree sequence is undefined otherwise."""


class RankDeficient(MonodegError, ValueError):
    """Analysis entry points require a nonsingular integer matrix."""


class WindowTooShort(MonodegError, ValueError):
    """Not enough sequence terms for the requested search bounds."""


class MatrixParseError(MonodegError, ValueError):
    """Raised by the CLI matrix parser; ``reason`` is one of
    PARSE_ERROR, NOT_SQUARE, EMPTY."""

    def __init__(self, reason: str, message: str):
        self.reason = reason
        super().__init__(message)


class UnresolvedCertification(MonodegError):
    """A certified numeric decision hit its refinement cap.

    Never treated as an answer: callers surface it as an UNKNOWN verdict or
    (under --strict) a dedicated exit code.
    """

"""Exception hierarchy.

The CLI maps these onto exit codes: data/format problems exit 2, tolerance
and convergence failures exit 1.
"""

from __future__ import annotations


class PairtomoError(Exception):
    """Base class for all package errors."""


class NonPhysicalStateError(PairtomoError):
    """A state failed a physicality requirement; carries the report."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class TomographyDataError(PairtomoError):
    """Measurement set is incomplete, inconsistent, or malformed."""


class InputFormatError(PairtomoError):
    """A CSV/JSON input file could not be parsed."""


class ConvergenceError(PairtomoError):
    """Optimizer exhausted its budget; carries the best iterate found."""

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class DecompositionError(PairtomoError):
    """Invalid decomposition request (degenerate member, bad weights)."""


class FitDataError(PairtomoError):
    """Fit input violates a precondition (range, count, identifiability)."""

"""Exception hierarchy shared by every module.

Input problems raise subclasses of :class:`ValueError`; certification and
tolerance breaches raise subclasses of :class:`ArithmeticError`. The CLI maps
the two families onto exit codes 1 and 2.
"""

import warnings


class QBlobError(Exception):
    """Base class for all package errors."""


class DimensionError(QBlobError, ValueError):
    """Matrix or vector has the wrong shape."""


class DomainError(QBlobError, ValueError):
    """Input lies outside the domain of an operation (not SPD, not symplectic, ...)."""


class NumericalError(QBlobError, ArithmeticError):
    """A result failed its post-condition certification."""


class SingularityError(NumericalError):
    """A matrix that should be invertible is numerically singular."""


class AccuracyError(NumericalError):
    """Accumulated round-off exceeded the allowed drift."""


class TruncationWarning(UserWarning):
    """A sampled function has not decayed at the edge of its grid."""


def warn_truncation(msg):
    warnings.warn(msg, TruncationWarning, stacklevel=3)

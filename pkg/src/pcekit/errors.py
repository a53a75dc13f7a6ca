"""Exception types shared across the package."""

from __future__ import annotations


class PceError(Exception):
    """Base class for all domain errors raised by this package."""


class DimensionMismatchError(PceError):
    """Operands live on different qubit counts."""


class CapacityError(PceError):
    """Requested object exceeds a hard size limit (qubit count or item count)."""


class TracePreservationError(PceError):
    """The map does not fix the normalization component (tau at the zero index)."""


class NotAChannelError(PceError):
    """A completely positive channel was required but the map is not one."""


class InvalidStabilizerSetError(PceError):
    """Index set is not a maximal commuting set closed under componentwise addition."""

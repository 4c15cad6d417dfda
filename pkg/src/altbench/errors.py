"""Shared exception types."""


class AltbenchError(Exception):
    """Base class for all library errors."""


class CapExceeded(AltbenchError):
    """A big-integer result would exceed the configured bit cap."""


class DomainError(AltbenchError):
    """An argument is outside a function's mathematical domain."""


class MalformedConfig(AltbenchError):
    """A machine configuration does not fit its machine description."""


class NotAPath(AltbenchError):
    """A configuration sequence violates the successor relation."""


class DoesNotFit(AltbenchError):
    """A configuration cannot be encoded at the requested word length."""


class NotInC(AltbenchError):
    """A word is not a valid fixed-length configuration word."""


class BadParameters(AltbenchError):
    """Constructed-instance parameters violate a stated constraint."""


class ArityMismatch(AltbenchError):
    """An input tuple has the wrong number of components."""


class ResourceLimit(AltbenchError):
    """An enumeration would exceed the configured search limits."""


class ShapeMismatch(AltbenchError):
    """A tiling's shape does not match the system and grid side."""


class FormatError(AltbenchError):
    """An input file or flag value cannot be parsed."""

"""Exception types shared across the toolkit.

Decode problems and verification failures are kept strictly apart:
malformed input raises :class:`DecodeError`, while a well-formed but
invalid signature simply makes the verify functions return ``False``.
"""


class MdbvError(Exception):
    """Base class for all errors raised by this package."""


class ParameterGenerationError(MdbvError):
    """Bounded search for group parameters (or a base point) ran out of attempts."""


class HashToPointError(MdbvError):
    """Map-to-point exceeded its retry budget; the group parameters are broken."""


class InvalidIdentityError(MdbvError, ValueError):
    """A vehicle identity failed validation (e.g. empty)."""


class AggregationError(MdbvError, ValueError):
    """Aggregation over an empty or inconsistent signature collection."""


class DecodeError(MdbvError, ValueError):
    """Malformed serialized input. ``field`` names the offending element."""

    def __init__(self, message, field=None):
        self.field = field
        super().__init__(message if field is None else f"{field}: {message}")


class SimulationStateError(MdbvError, ValueError):
    """Illegal vehicle join/leave transition in the role simulation."""

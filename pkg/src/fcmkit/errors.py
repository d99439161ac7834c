"""Exception types shared across the toolkit.

Every library-raised error derives from FcmError so callers (CLI, service)
can map failure classes onto exit codes / HTTP statuses in one place.
"""


class FcmError(Exception):
    """Base class for all toolkit errors."""


class InputRangeError(FcmError):
    """A numeric argument fell outside its documented domain."""


class ConfigurationError(FcmError):
    """Invalid weights, term sets, formats, or other setup values."""


class DegenerateInputError(FcmError):
    """Structurally valid input on which the operation is undefined."""


class ParseError(FcmError):
    """A file cell or token could not be interpreted."""

    def __init__(self, message: str, row: int | None = None, col: int | None = None):
        if row is not None:
            message = f"{message} (row {row}, col {col})"
        super().__init__(message)
        self.row = row
        self.col = col


class ShapeError(FcmError):
    """Matrix or vector dimensions do not line up."""


class ValidationError(FcmError):
    """A model invariant was violated (self-loop, out-of-range weight, ...)."""


class ConsistencyError(FcmError):
    """Reference to a node or model that does not exist."""


class HierarchyError(FcmError):
    """A condensation hierarchy is malformed or does not cover a model."""


class InvalidPairError(FcmError):
    """A group pair operation was asked for an intra-group pair."""


class PipelineError(FcmError):
    """A pipeline stage is missing one of its required inputs."""


class UsageError(FcmError):
    """An operation was called in a state it does not support."""

"""Error types shared across the package.

The CLI maps these onto its exit-code contract: UsageError (and its
subclasses) exit 2, CapacityError exits 3.
"""


class UsageError(ValueError):
    """A precondition on arguments was violated."""


class FormatError(UsageError):
    """Malformed input text; carries a byte/line offset when known."""

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (at offset {offset})"
        super().__init__(message)
        self.offset = offset


class CapacityError(RuntimeError):
    """The request exceeds the bounds the implementation guarantees."""

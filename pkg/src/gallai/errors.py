"""Exception types shared across the package."""


class GallaiError(Exception):
    """Base class for errors raised by this package."""


class Graph6Error(GallaiError, ValueError):
    """Malformed graph6 record; ``offset`` is the byte position of the defect."""

    def __init__(self, message: str, offset: int = 0):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class UnsupportedFormatError(Graph6Error):
    """Record is a recognizable non-graph6 format (sparse6, digraph6)."""


class CapExceededError(GallaiError):
    """An exact search exceeded its node, result-count, or time budget."""


class PreconditionError(GallaiError, ValueError):
    """Operation called on input that violates its stated precondition."""

"""Shared exception types."""

from __future__ import annotations


class LimitExceededError(ValueError):
    """An operation was asked to run beyond its configured size limit.

    Raised before any expensive work starts, so oversized requests fail fast
    instead of hanging.  The message names the limit so callers know which
    knob to raise.
    """

    def __init__(self, what: str, value: int, limit_name: str, limit: int):
        self.what = what
        self.value = value
        self.limit_name = limit_name
        self.limit = limit
        super().__init__(
            f"{what} = {value} exceeds {limit_name} = {limit}; "
            f"pass a higher limit explicitly if you really want this "
            f"(cost grows exponentially)"
        )


class Graph6ParseError(ValueError):
    """Malformed graph6 input.  ``offset`` is the byte position of the defect."""

    def __init__(self, message: str, offset: int):
        self.offset = offset
        super().__init__(f"{message} (byte offset {offset})")


class EdgeListParseError(ValueError):
    """Malformed JSON edge-list input."""

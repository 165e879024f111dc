"""Shared exception types."""


class ResourceLimitError(RuntimeError):
    """An input exceeds the desk-scale guards of a brute-force routine."""

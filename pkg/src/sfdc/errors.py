"""Shared error types."""


class SizeLimitError(ValueError):
    """A size parameter exceeds the configured desk-scale cap."""

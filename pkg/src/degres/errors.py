"""Error types shared across the package."""


class ValidationError(ValueError):
    """Raised when an input violates a documented contract.

    The message always names the offending field or value so CLI users can
    fix their input without reading source.
    """


class IoError(OSError):
    """Raised for file-level failures (missing files, unreadable payloads)."""

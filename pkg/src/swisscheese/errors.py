"""Exception types raised across the package."""


class SwissCheeseError(Exception):
    """Base class for all package errors."""


class ValidationError(SwissCheeseError, ValueError):
    """An object violates one of its defining conditions."""


class ColorMismatch(ValidationError):
    """Operadic composition attempted between incompatible colors."""


class BoundExceeded(SwissCheeseError):
    """A requested enumeration or window exceeds its configured budget."""


class WindowError(SwissCheeseError):
    """A truncated complex is not closed under its differential."""

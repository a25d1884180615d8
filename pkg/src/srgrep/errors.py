"""Exception hierarchy shared by all modules."""


class SrgError(Exception):
    """Base class for every error raised by this package."""


class InputError(SrgError, ValueError):
    """Malformed or out-of-range input."""


class ResourceLimit(SrgError):
    """A search exceeded its configured node budget."""

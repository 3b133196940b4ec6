class SignrepError(Exception):
    """Base class."""


class InvalidInput(SignrepError, ValueError):
    pass


class ResourceLimit(SignrepError):
    """A configured cap (domain size, pivots, search budget) was exceeded."""


class VerificationFailure(SignrepError):
    """An exact check on a produced object did not hold."""

"""Exception hierarchy shared by every module."""


class TropicalHassettError(Exception):
    """Base class for errors raised by this package."""


class InputError(TropicalHassettError, ValueError):
    """Malformed or out-of-range input (bad index, unparsable weights, ...)."""


class DomainError(TropicalHassettError, ValueError):
    """Input is well formed but outside the hypotheses of the operation."""


class CapacityError(TropicalHassettError, RuntimeError):
    """A configured size cap was exceeded; the result would be truncated."""

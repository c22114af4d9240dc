"""Exception types raised by majorkit."""


class MajorkitError(ValueError):
    """Base class for input and precondition errors."""


class ShapeError(MajorkitError):
    """Operands have incompatible dimensions."""


class PreconditionError(MajorkitError):
    """An operation was called on input outside its domain."""


class NotMajorizedError(PreconditionError):
    """A witness was requested for a relation that does not hold."""


class ParseError(MajorkitError):
    """Malformed textual input (rational, matrix or operator)."""


class UnsupportedError(MajorkitError):
    """Requested combination of options is not supported."""

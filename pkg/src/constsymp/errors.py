"""Exception types shared by every module."""


class ConstSympError(Exception):
    """Base class for all library errors."""


class DimensionError(ConstSympError, ValueError):
    """Shapes or ambient dimensions do not line up."""


class PreconditionError(ConstSympError, ValueError):
    """An input violates the documented precondition of an operation.

    ``witness`` carries a concrete counterexample when one is available
    (a vector, a pair of basis indices, ...).
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class InvariantError(ConstSympError):
    """Two independent computations that must agree did not."""

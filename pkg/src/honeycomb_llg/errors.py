"""Exception hierarchy shared by every module."""


class LatticeError(Exception):
    """Base class for all package errors."""


class CoordinateError(LatticeError, ValueError):
    """Coordinates that do not name a honeycomb site or hexagon."""


class GeometryError(LatticeError, ValueError):
    """A direction that is not a bond at the given site."""


class ContractError(LatticeError, ValueError):
    """Caller violated an operation precondition."""


class BudgetExceeded(LatticeError):
    """A step or search budget ran out before the requested result."""

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class InternalError(LatticeError):
    """A guard that should be unreachable fired."""

"""Exception hierarchy shared by every module."""


class CSpecError(Exception):
    """Base class for library errors."""


class InputError(CSpecError, ValueError):
    """Malformed input: bad indices, violated parameter constraints, parse errors."""


class AlgebraError(CSpecError, ArithmeticError):
    """An exact algebraic operation cannot be carried out (e.g. inexact division)."""


class ContractError(CSpecError):
    """A precondition of an operation does not hold for the supplied object."""


class CapabilityError(CSpecError):
    """The request exceeds a size limit of the exhaustive algorithms."""


class InternalError(CSpecError):
    """A self-check failed. This indicates a bug, never bad input."""

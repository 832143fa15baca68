"""Exception hierarchy shared by every module."""


class ZassenhausError(Exception):
    """Base class for all errors raised by this package."""


class ContractError(ZassenhausError, ValueError):
    """A precondition on the arguments was violated."""


class InvertibilityError(ContractError, ZeroDivisionError):
    """A power series with zero constant term was inverted."""


class UnsupportedFamilyError(ContractError):
    """The operation is not defined for this group family."""


class DataError(ZassenhausError, ArithmeticError):
    """Input data is internally inconsistent (e.g. a non-integral w_n)."""


class ResourceError(ZassenhausError, RuntimeError):
    """An enumeration exceeded its size budget."""

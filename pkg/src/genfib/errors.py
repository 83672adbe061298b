"""Exception types shared across the package."""


class GenFibError(Exception):
    """Base class for all package errors."""


class PreconditionError(GenFibError, ValueError):
    """An argument violates an operation's stated precondition."""


class RankUndefinedError(GenFibError, ArithmeticError):
    """The rank modulo m does not exist (some prime factor of m divides t)."""


class InfiniteValuationError(GenFibError, ArithmeticError):
    """Valuation of zero was requested."""


class ZeroTermError(GenFibError, ArithmeticError):
    """A sequence term that must be nonzero is zero."""


class NonContractingError(GenFibError, ArithmeticError):
    """Tail terms could not be certified to decay geometrically."""


class UndecidedFloorError(GenFibError, ArithmeticError):
    """The floor of an inverse tail sum could not be decided within the term cap."""

    def __init__(self, message: str, lower_floor: int, upper_floor: int, terms: int):
        super().__init__(message)
        self.lower_floor = lower_floor
        self.upper_floor = upper_floor
        self.terms = terms

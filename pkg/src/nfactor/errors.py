"""Exception hierarchy shared by every nfactor module."""


class NFactorError(Exception):
    """Base class for all library errors."""


class EmptyPattern(NFactorError, ValueError):
    pass


class BadBase(NFactorError, ValueError):
    pass


class DigitOutOfRange(NFactorError, ValueError):
    pass


class NegativeLetter(NFactorError, ValueError):
    pass


class UndefinedValue(NFactorError, ValueError):
    """Raised for arguments outside a function's domain (e.g. phi(1))."""


class BudgetExceeded(NFactorError):
    """A prefix or scan budget was exhausted before the computation finished."""


class NonIntegerResult(NFactorError, ArithmeticError):
    """A closed form that must be integral evaluated to a proper fraction."""


class ThresholdViolation(NFactorError, ValueError):
    pass


class UnsupportedSpec(NFactorError, ValueError):
    pass


class BlockClassError(NFactorError, ValueError):
    pass


class NeedsBootstrap(NFactorError, ValueError):
    """A digital closed form was requested without its initial values."""

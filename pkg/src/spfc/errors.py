"""Exception hierarchy shared by all spfc modules."""


class SPFCError(Exception):
    """Base class for every error raised by this package."""


class ParameterError(SPFCError, ValueError):
    """A parameter record or request violates one of its invariants."""


class PoleError(SPFCError, ArithmeticError):
    """The amplitude denominator vanishes for this parameter combination."""


class UndefinedFidelityError(SPFCError, ArithmeticError):
    """Conditional conversion probability requested with no surviving amplitude."""


class DegenerateSystemError(SPFCError, ArithmeticError):
    """The stationary linear system is (numerically) singular."""

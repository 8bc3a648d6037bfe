"""Exception hierarchy shared by the numeric modules."""


class RCFError(Exception):
    """Base class for every error raised by this package."""


class DomainError(RCFError, ValueError):
    """An argument lies outside the domain of the requested function."""


class NonConvergent(RCFError, ArithmeticError):
    """A series, product or continued fraction failed to converge."""


class PrecisionExhausted(RCFError, ArithmeticError):
    """The working precision is too low to resolve the answer; retry higher."""


class Diverged(RCFError, ArithmeticError):
    """Newton iteration left its bracket."""


class NoMatchingRoot(RCFError, ArithmeticError):
    """No root of a polynomial lies close enough to the guiding value."""


class ChainInconsistent(RCFError, ArithmeticError):
    """Two routes that must agree produced different values."""


class UnknownCheck(RCFError, KeyError):
    """The requested check id is not in the catalog."""


class CatalogError(RCFError, ValueError):
    """A catalog entry violates a structural invariant."""

"""Exception hierarchy shared by all evaluators."""


class ConstQError(Exception):
    """Base class for library errors."""


class DomainError(ConstQError, ValueError):
    """An argument lies outside the admissible domain of an operation."""


class RegimeError(DomainError):
    """An asymptotic evaluator was asked for a point outside its validity region."""


class UnsupportedOrderError(DomainError):
    """The requested fractional order is outside what the evaluator supports."""


class GridError(ConstQError, ValueError):
    """Sampled data is not on a usable uniform grid."""


class ConvergenceError(ConstQError, ArithmeticError):
    """A series or quadrature did not reach the requested accuracy."""

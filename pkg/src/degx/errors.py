"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the function."""


class ConvergenceError(ArithmeticError):
    """An iterative or adaptive numerical routine missed its tolerance."""


class RegimeError(ValueError):
    """An asymptotic formula was evaluated outside the regime where it is meaningful.

    The offending values are kept on the exception so callers can report them.
    """

    def __init__(self, message, **values):
        super().__init__(message)
        self.values = values

"""Exception hierarchy."""


class ElComplexError(Exception):
    """Base class for all errors raised by elcauchy."""


class EllipticityViolation(ElComplexError, ValueError):
    """Raised when 4*alpha - beta**2 <= 0."""

    def __init__(self, alpha, beta):
        self.alpha = alpha
        self.beta = beta
        super().__init__(
            f"not elliptic: 4*alpha - beta**2 = {4 * alpha - beta * beta!r} <= 0 "
            f"(alpha={alpha!r}, beta={beta!r})"
        )


class DivisionByZero(ElComplexError, ZeroDivisionError):
    pass


class PoleEvaluation(ElComplexError, ValueError):
    """A kernel was evaluated at its own pole."""


class PoleOutsideDomain(ElComplexError, ValueError):
    pass


class NotStarShaped(ElComplexError, ValueError):
    pass


class NotHolomorphic(ElComplexError, ValueError):
    pass

"""Exception and warning classes shared across the package."""


class PoleError(ArithmeticError):
    """A Gamma argument or a Pochhammer denominator hit a pole."""


class KernelError(ValueError):
    """A K-type lies in the kernel of a quotient module."""


class DominanceError(ValueError):
    """A weight is not dominant (or not integral) for its root system."""


class InvalidTypeError(ValueError):
    """A K-type or L-type violates its parity or dominance constraints."""


class RegimeError(ValueError):
    """A parameter nu lies outside the requested unitary regime."""


class DivergenceDetected(ArithmeticError):
    """A criterion sum was judged divergent.

    The partially filled report is attached as ``report``.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class ConvergenceWarning(RuntimeWarning):
    """Node doubling disagreed by more than the requested tolerance."""

"""Exception types shared across the package."""

from __future__ import annotations


class ConfracError(Exception):
    """Base class for every error this package raises on purpose."""


class AlphaRangeError(ConfracError, ValueError):
    """Fractional order outside the admissible interval (0, 1]."""

    def __init__(self, value: object):
        self.value = value
        super().__init__(f"fractional order must lie in (0, 1], got {value!r}")


class GridError(ConfracError, ValueError):
    """Horizon and step size do not define a uniform grid."""


class DomainError(ConfracError, ValueError):
    """Evaluation or integration requested outside a function's domain."""


class BlowUpError(ConfracError, ArithmeticError):
    """Solver iterate became non-finite or crossed the blow-up bound."""

    def __init__(self, step_index: int, value: float):
        self.step_index = step_index
        self.value = value
        super().__init__(
            f"solution blew up at step {step_index} (value {value!r})"
        )


class OrderUndefinedError(ConfracError, ArithmeticError):
    """Observed errors sit at the rounding floor, so no convergence order exists."""

"""Exception hierarchy shared by all modules."""


class PowerFreeError(Exception):
    """Base class for every error raised by this package."""


class IncompleteModelError(PowerFreeError):
    """An explicit degree list does not reach the requested degree."""

    def __init__(self, x, largest):
        super().__init__(
            f"explicit model only lists degrees up to {largest!r}; "
            f"cannot answer queries at x={x!r}"
        )
        self.x = x
        self.largest = largest


class CapacityError(PowerFreeError):
    """A count or enumeration exceeded its integer or size capacity."""

    def __init__(self, message, depth=None):
        super().__init__(message)
        self.depth = depth


class OracleTooLargeError(CapacityError):
    pass


class TruncationBudgetExceeded(PowerFreeError):
    """The Euler product tail could not be certified within the prime budget."""

    def __init__(self, message, best_bound):
        super().__init__(message)
        self.best_bound = best_bound


class BracketFailure(PowerFreeError):
    pass


class ConvergenceFailure(PowerFreeError):
    def __init__(self, message, bracket):
        super().__init__(message)
        self.bracket = bracket


class ConfigError(PowerFreeError, ValueError):
    pass

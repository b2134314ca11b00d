class BudgetExceeded(RuntimeError):
    """An exponential routine would exceed its configured work budget."""

    def __init__(self, message, stats=None):
        super().__init__(message)
        self.stats = stats


class StrategyFormatError(ValueError):
    pass


class InternalConsistencyError(AssertionError):
    """A combinatorial invariant the construction relies on was violated."""

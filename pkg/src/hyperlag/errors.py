class HyperlagError(Exception):
    pass


class InvalidArgument(HyperlagError, ValueError):
    pass


class PreconditionViolation(HyperlagError, ValueError):
    pass


class DegenerateStart(HyperlagError, ArithmeticError):
    """The weighting gives every edge zero weight, so the growth map is undefined."""


class BudgetExceeded(HyperlagError, RuntimeError):
    """A campaign needs more solver invocations than it was allowed."""

    def __init__(self, required: int, budget: int):
        super().__init__(f"campaign needs {required} solver invocations, budget is {budget}")
        self.required = required
        self.budget = budget

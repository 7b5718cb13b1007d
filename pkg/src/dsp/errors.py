class DspError(Exception):
    pass


class PresentationError(DspError, ValueError):
    """Malformed presentation text. ``line`` is 1-based, or None."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class UnknownGenerator(PresentationError):
    pass


class MalformedExponent(PresentationError):
    pass


class DuplicateGenerator(PresentationError):
    pass


class BudgetExhausted(DspError):
    """A search ran out of its allotted resource.

    ``high_water`` records the peak usage (live cosets, search nodes, ...)
    so callers can tune budgets.
    """

    def __init__(self, message, resource, high_water=None):
        super().__init__(message)
        self.resource = resource
        self.high_water = high_water


class LetterBudgetExceeded(BudgetExhausted):
    def __init__(self, message, high_water=None):
        super().__init__(message, "letter_budget", high_water)


class PreconditionViolated(DspError, ValueError):
    pass


class OrderTooLarge(DspError):
    pass

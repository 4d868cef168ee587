__all__ = (
    "TapeLangException",
    "LimitException",
    "BudgetExhausted",
)


class TapeLangException(Exception):
    """Base exception for all exceptions in this library."""

    def __init__(self, msg):
        super().__init__(msg)
        self.msg = msg


class LimitException(TapeLangException):
    """
    Something exceeded execution limits.
    """

    pass


class BudgetExhausted(LimitException):
    """A pass executed its whole operation budget without yielding an action."""

    def __init__(self, ops: int, resume_index: int):
        super().__init__(f"pass exhausted its budget of {ops} operations without yielding an action")
        self.ops = ops
        self.resume_index = resume_index

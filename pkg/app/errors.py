"""Exception hierarchy shared by every package."""


class ConformalBlocksError(Exception):
    """Base class for all toolkit errors."""


class ContractViolation(ConformalBlocksError, ValueError):
    """A precondition of an operation was violated."""

    def __init__(self, contract: str, message: str) -> None:
        super().__init__(f"[{contract}] {message}")
        self.contract = contract


class IntegralityError(ConformalBlocksError, ArithmeticError):
    """An exact computation produced a non-integer where an integer is required."""


class PrecisionExhausted(IntegralityError):
    """The numeric Verlinde sum did not round within tolerance at any tried precision."""

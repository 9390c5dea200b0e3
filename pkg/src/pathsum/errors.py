"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class SopError(Exception):
    """Base class for all errors raised by pathsum."""


class MissingVariable(SopError, KeyError):
    def __init__(self, var: int) -> None:
        super().__init__(f"assignment has no value for variable y{var}")
        self.var = var


class NonHalfCoefficient(SopError, ValueError):
    pass


class NonDyadicPhase(SopError, ValueError):
    pass


class PolyTooLarge(SopError):
    """A polynomial expansion exceeded the configured monomial cap."""


class ArityMismatch(SopError, ValueError):
    pass


class NotPure(SopError, ValueError):
    pass


class NotInDiscNormalForm(SopError, ValueError):
    pass


class NotFoldable(SopError, ValueError):
    pass


class StrategyError(SopError, ValueError):
    pass


class StepLimitExceeded(SopError):
    def __init__(self, steps: int, term: object) -> None:
        super().__init__(f"rewriting did not terminate within {steps} steps")
        self.steps = steps
        self.term = term


class TooManyVariables(SopError):
    def __init__(self, count: int, cap: int) -> None:
        super().__init__(f"term has {count} variables, above the cap of {cap}")
        self.count = count
        self.cap = cap


class DimensionMismatch(SopError, ValueError):
    pass


class UnsupportedParamExact(SopError, ValueError):
    pass


class DegenerateParam(SopError, ValueError):
    pass


class MalformedInput(SopError, ValueError):
    pass


class CircuitSyntaxError(SopError, ValueError):
    def __init__(self, line: int, message: str) -> None:
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message

from typing import Any, Sequence


class PermtreeError(Exception):
    exit_code = 1


class InvalidInput(PermtreeError, ValueError):
    exit_code = 2


class InvalidPermutation(InvalidInput):
    pass


class ForbiddenPatternOne(InvalidInput):
    def __init__(self):
        super().__init__("the pattern 1 cannot be avoided by any permutation")


class InvalidConfig(InvalidInput):
    pass


class NodeBudgetExceeded(PermtreeError):
    exit_code = 3

    def __init__(self, budget: int):
        super().__init__(f"Node budget of {budget} tree nodes exceeded")
        self.budget = budget


class DepthExhausted(PermtreeError):
    exit_code = 3

    def __init__(self, depth: int, reason: str):
        super().__init__(f"No closed rule set found up to depth {depth}: {reason}")
        self.depth = depth
        self.reason = reason


class Unclassified(PermtreeError):
    exit_code = 4


class VerificationMismatch(PermtreeError):
    exit_code = 5

    def __init__(self, what: str, n: int, expected: Any, actual: Any):
        super().__init__(
            f"{what} disagrees at n={n}: expected {expected}, got {actual}"
        )
        self.what = what
        self.n = n
        self.expected = expected
        self.actual = actual

    @classmethod
    def compare(cls, what: str, expected: Sequence, actual: Sequence, offset: int = 0):
        for n, (e, a) in enumerate(zip(expected, actual), start=offset):
            if e != a:
                raise cls(what, n, e, a)


class NotClosed(PermtreeError):
    pass


class NoFamilyFound(PermtreeError):
    pass


class NonRationalMultiplicity(PermtreeError):
    pass


class SingularSystem(PermtreeError, ZeroDivisionError):
    pass


class PoleAtEvaluationPoint(PermtreeError, ZeroDivisionError):
    pass


class NonUnitDenominator(PermtreeError, ZeroDivisionError):
    pass

"""Exceptions raised by permdist.

Every domain error derives from :class:`PermDistError`, so callers (the CLI in
particular) can separate bad mathematical input from programming errors.
"""


class PermDistError(ValueError):
    """Base class for all domain errors."""


class StrandCountMismatch(PermDistError):
    """Two words over different strand counts were combined."""


class PatternMismatch(PermDistError):
    """The letters at a position do not match the requested relation."""


class NotReduced(PermDistError):
    """A reduced word was required."""


class NotEquivalent(PermDistError):
    """Two words were required to represent the same permutation."""


class Unreachable(PermDistError):
    """Two equivalent words are not connected by braid relations (non-reduced input)."""


class StrandsDoNotCross(PermDistError):
    pass


class IncomparableSequences(PermDistError):
    """Two name sequences are not permutations of one another."""


class ReplayMismatch(PermDistError):
    """A derivation step does not apply to the word it is replayed on."""

    def __init__(self, index: int, message: str):
        super().__init__(f"step {index}: {message}")
        self.index = index


class StateSpaceExceeded(PermDistError):
    pass


class StepBudgetExceeded(PermDistError):
    pass


class Mismatch(PermDistError):
    """An engine count disagrees with a closed-form prediction."""

    def __init__(self, expected, actual, detail: str = ""):
        msg = f"expected {expected}, engine gave {actual}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)
        self.expected = expected
        self.actual = actual

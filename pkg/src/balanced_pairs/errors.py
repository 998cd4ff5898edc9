"""Exception taxonomy shared by all modules.

Every error raised on purpose by this package derives from PosetError, so
callers can distinguish domain failures from plain bugs.
"""

from __future__ import annotations


class PosetError(Exception):
    """Base class for all domain errors."""


class BadIdError(PosetError):
    """An element id is out of range, duplicated, or otherwise unusable."""


class CycleError(PosetError):
    """The requested relation set is not antisymmetric.

    ``witness`` is a list of element ids forming a directed cycle.
    """

    def __init__(self, witness: list[int], message: str | None = None):
        self.witness = list(witness)
        super().__init__(message or f"relation contains a cycle: {self.witness}")


class WouldCycleError(CycleError):
    """Adding the requested pair would contradict the existing order."""


class SizeError(PosetError):
    """The poset is larger than the configured cap for this operation."""


class NotForestError(PosetError):
    """The cover graph contains a cycle.  ``witness`` lists its vertices."""

    def __init__(self, witness: list[int], message: str | None = None):
        self.witness = list(witness)
        super().__init__(message or f"cover graph has a cycle through {self.witness}")


class NotUpwardForestError(PosetError):
    """Some element has more than one lower cover."""


class NotGoodPairError(PosetError):
    """The pair does not satisfy the good-pair conditions."""


class EmptyChainError(PosetError):
    """The good pair is of the critical kind: its certificate chain is empty."""


class NotSemiorderError(PosetError):
    """The poset contains an induced 2+2 or 3+1."""


class IsChainError(PosetError):
    """The operation is meaningless on a totally ordered poset."""


class PreconditionFailedError(PosetError):
    """A documented precondition of the called operation does not hold."""


class HypothesisViolatedError(PosetError):
    """A structural fact promised by the theory failed to hold; caller bug."""


class TheoremViolatedError(PosetError):
    """A verified mathematical guarantee failed at runtime.  Hard failure."""


class AlgorithmStuckError(PosetError):
    """The constructive search ran out of cases.

    ``state`` carries a dump of the search state for diagnosis.
    """

    def __init__(self, message: str, state: dict[str, object] | None = None):
        self.state = dict(state or {})
        super().__init__(message)


class ParseError(PosetError):
    """Input text is not a valid poset description."""

    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")

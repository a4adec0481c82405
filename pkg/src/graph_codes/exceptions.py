"""Custom exceptions for graph erasure codes."""

from typing import Sequence, Tuple


class GraphCodeError(Exception):
    """Base exception for graph code errors."""
    pass


class FieldError(GraphCodeError):
    """Raised when a finite field cannot be built or an element is out of range."""
    pass


class FieldDivisionError(FieldError, ZeroDivisionError):
    """Raised when inverting the zero element."""
    pass


class InvalidParametersError(GraphCodeError, ValueError):
    """Raised when code parameters (n, rho, node indices) are out of range."""
    pass


class GraphFormatError(GraphCodeError, ValueError):
    """Raised when a graph or information file is malformed."""
    pass


class ErasurePatternError(GraphCodeError, ValueError):
    """Raised when the Unknown cells do not match the declared failed nodes."""
    pass


class ConfigurationError(GraphCodeError):
    """Raised when environment configuration is invalid."""
    pass


class EncodingError(GraphCodeError):
    """Raised when information cannot be completed to a codeword."""
    pass


class DecodingError(GraphCodeError):
    """Base exception for decode failures."""
    pass


class NotUniquelyDecodableError(DecodingError):
    """Raised when a linear system has more than one solution."""
    pass


class InconsistentSystemError(DecodingError):
    """Raised when a linear system has no solution."""
    pass


class ErasureBudgetExceededError(DecodingError):
    """Raised when more positions or nodes are erased than the code corrects."""
    pass


class NotACodewordError(DecodingError):
    """Raised when the Known labels are not consistent with any codeword."""
    pass


class PeelingStalledError(DecodingError):
    """Raised when no constraint has exactly one Unknown edge left."""

    def __init__(self, unknown: Sequence[Tuple[int, int]]):
        self.unknown = tuple(unknown)
        super().__init__(f"peeling stalled with {len(self.unknown)} unknown cells")


class SchedulerDeadlockError(DecodingError):
    """Raised when every unfinished decoding loop is waiting on an Unknown cell."""

    def __init__(self, waiting: Sequence[str]):
        self.waiting = tuple(waiting)
        super().__init__("all decoding loops are waiting: " + ", ".join(self.waiting))


class CoverWeightMismatchError(GraphCodeError):
    """Raised when the matching cover weight disagrees with the brute-force count."""

    def __init__(self, matching: int, brute_force: int):
        self.matching = matching
        self.brute_force = brute_force
        super().__init__(f"matching gives cover weight {matching}, brute force {brute_force}")

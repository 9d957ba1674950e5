"""Exceptions raised by cstarinfo"""


class AlgebraMismatchError(ValueError):
    """Operands belong to different algebras (dimension or factor algebra)."""


class DomainError(ValueError):
    """A scalar function was applied outside of its domain."""


class GuardExceededError(ValueError):
    """A desk-scale enumeration guard was exceeded.

    Attributes:
        bits (float): log2 of the requested enumeration size
        limit (int): the configured limit in bits
    """

    def __init__(self, bits: float, limit: int):
        self.bits = bits
        self.limit = limit
        super().__init__(f'Enumeration of 2^{bits:.2f} strings exceeds the guard of 2^{limit}; '
                         'pass guard_override=True to proceed')


class NotConvergedError(RuntimeError):
    """An iterative solver stopped at `max_iter` before reaching its tolerance.

    Attributes:
        gap (float): the last gap between the upper and lower bound
        iterations (int): number of iterations performed
    """

    def __init__(self, gap: float, iterations: int):
        self.gap = gap
        self.iterations = iterations
        super().__init__(f'No convergence after {iterations} iterations (gap {gap:.3e})')


class UselessChannelError(ValueError):
    """The requested operation is meaningless for a useless (rank 1) channel."""

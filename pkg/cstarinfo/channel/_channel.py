import math
from functools import reduce
from typing import Dict, Sequence

import numpy as np

from ..algebra import AtomicAlgebra, Element, allclose, is_positive
from ..algebra._algebra import _check_same
from ..probability import State
from ..utils import get_settings, check_enumeration


class Channel:
    """Discrete memoryless channel, the unital positive map C: Y -> X with
    C(y_j) = sum_i C(y_j|x_i) x_i.

    The matrix is stored input-major: row i holds the output distribution for input
    x_i, so it is the transpose of the column-stochastic matrix of the map.

    Attributes:
        matrix (np.ndarray): read-only row-stochastic array of shape (input_dim, output_dim)

    Examples:
        >>> from cstarinfo.channel import Channel
        >>> c = Channel([[0.9, 0.1], [0.2, 0.8]])
        >>> c.input_dim, c.output_dim
        (2, 2)
    """
    __slots__ = ('matrix',)

    def __init__(self, matrix: Sequence[Sequence[float]]):
        matrix = np.array(matrix, dtype=float)
        if matrix.ndim != 2 or matrix.size == 0:
            raise ValueError(f'Channel matrix must be a non-empty 2D array, got shape {matrix.shape}')
        tau = get_settings().tau_eq
        if not np.all(np.isfinite(matrix)) or np.any(matrix < -tau):
            raise ValueError('Channel matrix entries must be non-negative')
        if np.any(np.abs(matrix.sum(axis=1) - 1.0) > tau):
            raise ValueError('Channel matrix must be row stochastic')
        matrix.flags.writeable = False
        object.__setattr__(self, 'matrix', matrix)

    def __setattr__(self, name, value):
        raise AttributeError('Channel is immutable')

    @property
    def input_dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def output_dim(self) -> int:
        return self.matrix.shape[1]

    @property
    def input_algebra(self) -> AtomicAlgebra:
        return AtomicAlgebra(self.input_dim)

    @property
    def output_algebra(self) -> AtomicAlgebra:
        return AtomicAlgebra(self.output_dim)

    def power(self, k: int, guard_override: bool = False) -> 'Channel':
        """k-fold Kronecker power C^(k), the channel on strings of length k."""
        if int(k) != k or k < 1:
            raise ValueError(f'k must be a positive integer, got {k}')
        check_enumeration(k * (math.log2(self.input_dim) + math.log2(self.output_dim)), guard_override)
        return Channel(reduce(np.kron, [self.matrix] * k))

    def __repr__(self):
        return f'Channel(input_dim={self.input_dim}, output_dim={self.output_dim})'

    def __eq__(self, other):
        return isinstance(other, Channel) and np.array_equal(self.matrix, other.matrix)

    def __hash__(self):
        return hash(self.matrix.tobytes())

    def to_dict(self) -> Dict:
        """JSON form `{"input_dim": m, "output_dim": n, "matrix": [[...], ...]}`."""
        return {'input_dim': self.input_dim, 'output_dim': self.output_dim, 'matrix': self.matrix.tolist()}

    @classmethod
    def from_dict(cls, data: Dict) -> 'Channel':
        channel = cls(data['matrix'])
        if (channel.input_dim, channel.output_dim) != (data.get('input_dim', channel.input_dim),
                                                       data.get('output_dim', channel.output_dim)):
            raise ValueError('Declared dimensions do not match the channel matrix')
        return channel


def bsc(p: float) -> Channel:
    """Binary symmetric channel with crossover probability p.

    Examples:
        >>> from cstarinfo.channel import bsc
        >>> bsc(0.1).matrix.tolist()
        [[0.9, 0.1], [0.1, 0.9]]
    """
    if not 0 <= p <= 1:
        raise ValueError(f'Crossover probability must lie in [0, 1], got {p}')
    return Channel([[1 - p, p], [p, 1 - p]])


def bec(p: float) -> Channel:
    """Binary erasure channel; outputs are 0, erasure, 1."""
    if not 0 <= p <= 1:
        raise ValueError(f'Erasure probability must lie in [0, 1], got {p}')
    return Channel([[1 - p, p, 0], [0, p, 1 - p]])


def identity(d: int) -> Channel:
    """Noiseless channel on d symbols."""
    return Channel(np.eye(int(d)))


def useless(row: Sequence[float], m: int = 2) -> Channel:
    """Channel whose m input rows all equal `row` (rank 1)."""
    return Channel(np.tile(np.asarray(row, dtype=float), (int(m), 1)))


def apply_channel(c: Channel, y: Element) -> Element:
    """Image C(y) in the input algebra X of an element y of the output algebra Y.

    Examples:
        >>> from cstarinfo.algebra import Element
        >>> from cstarinfo.channel import apply_channel, bsc
        >>> apply_channel(bsc(0.1), Element.identity(2)).coeffs.real.tolist()
        [1.0, 1.0]
    """
    _check_same(c.output_algebra, y.algebra)
    return Element(c.input_algebra, c.matrix @ y.coeffs)


def push_state(c: Channel, omega: State) -> State:
    """Output distribution q_j = sum_i omega_i C(y_j|x_i), the state omega o C on Y.

    Examples:
        >>> from cstarinfo.channel import push_state, bsc
        >>> from cstarinfo.probability import State
        >>> push_state(bsc(0.1), State(2, [1, 0])).weights.tolist()
        [0.9, 0.1]
    """
    _check_same(c.input_algebra, omega.algebra)
    return State(c.output_algebra, omega.weights @ c.matrix)


def is_unital(c: Channel) -> bool:
    """C(1) = 1."""
    return allclose(apply_channel(c, Element.identity(c.output_dim)), Element.identity(c.input_dim))


def maps_positive(c: Channel) -> bool:
    """C maps every atom of Y, hence every positive element, to a positive element of X."""
    return all(is_positive(apply_channel(c, Element.basis(c.output_dim, j))) for j in range(c.output_dim))

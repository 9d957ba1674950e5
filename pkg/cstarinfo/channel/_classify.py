import logging
from dataclasses import dataclass
from typing import Optional, Tuple, Union

import numpy as np
from scipy.linalg import svdvals
from typing_extensions import Literal

from ..algebra import AtomicAlgebra, Element
from ..algebra._algebra import _check_same
from ..probability import State, independence_test
from ..utils import get_settings
from ._channel import Channel
from ._joint import joint

log = logging.getLogger(__name__)


class LosslessChannel:
    """Channel whose output columns are each supported on at most one input row.

    `partition[j]` is the input index whose decision block d_i contains output j.
    Rows are renormalized on their blocks; a row whose block is empty stays zero
    and marks the decoder as degenerate.

    Attributes:
        matrix (np.ndarray): read-only array of shape (input_dim, output_dim)
        partition (tuple): input index per output index
        degenerate (bool): some decision block is empty

    Examples:
        >>> from cstarinfo.channel import LosslessChannel
        >>> L = LosslessChannel([[1, 0, 0], [0, 0.5, 0.5]], (0, 1, 1))
        >>> L.blocks()
        [(0,), (1, 2)]
    """
    __slots__ = ('matrix', 'partition', 'degenerate')

    def __init__(self, matrix, partition):
        matrix = np.array(matrix, dtype=float)
        partition = tuple(int(i) for i in partition)
        if matrix.ndim != 2 or len(partition) != matrix.shape[1]:
            raise ValueError('The partition must assign every output index to one input')
        if any(not 0 <= i < matrix.shape[0] for i in partition):
            raise ValueError('Partition entries must be input indices')
        tau = get_settings().tau_eq
        outside = np.ones_like(matrix, dtype=bool)
        outside[list(partition), np.arange(matrix.shape[1])] = False
        if np.any(np.abs(matrix[outside]) > tau) or np.any(matrix < -tau):
            raise ValueError('A lossless channel is supported on its decision blocks only')
        sums = matrix.sum(axis=1)
        occupied = np.bincount(partition, minlength=matrix.shape[0]) > 0
        if np.any(np.abs(sums[occupied] - 1) > tau) or np.any(np.abs(sums[~occupied]) > tau):
            raise ValueError('Rows must be normalized on their decision blocks')
        matrix.flags.writeable = False
        object.__setattr__(self, 'matrix', matrix)
        object.__setattr__(self, 'partition', partition)
        object.__setattr__(self, 'degenerate', bool(not np.all(occupied)))

    def __setattr__(self, name, value):
        raise AttributeError('LosslessChannel is immutable')

    @property
    def input_dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def output_dim(self) -> int:
        return self.matrix.shape[1]

    def blocks(self):
        """Decision blocks d_i, one tuple of output indices per input."""
        return [tuple(j for j, owner in enumerate(self.partition) if owner == i) for i in range(self.input_dim)]

    def as_channel(self) -> Channel:
        """The decoder as an ordinary [cstarinfo.channel.Channel][] (non-degenerate decoders only)."""
        if self.degenerate:
            raise ValueError('A degenerate decoder has empty rows and is not a channel')
        return Channel(self.matrix)

    def __repr__(self):
        return f'LosslessChannel(input_dim={self.input_dim}, output_dim={self.output_dim}, degenerate={self.degenerate})'


@dataclass(frozen=True)
class Classification:
    """Result of [cstarinfo.channel.classify][].

    Attributes:
        kind (str): `lossless`, `useless` or `generic`
        partition (tuple or None): for lossless channels the input index owning each
            output index, -1 for outputs no active input reaches
        rank (int): numerical rank of the (active rows of the) matrix
    """
    kind: Literal['lossless', 'useless', 'generic']
    partition: Optional[Tuple[int, ...]] = None
    rank: int = 0

    @property
    def unreached(self) -> Tuple[int, ...]:
        return tuple(j for j, i in enumerate(self.partition or ()) if i < 0)

    def to_dict(self):
        return {'kind': self.kind, 'partition': None if self.partition is None else list(self.partition),
                'rank': self.rank}


def numerical_rank(matrix: np.ndarray) -> int:
    """Number of singular values above `tau_rank` times the largest one."""
    s = svdvals(np.asarray(matrix, dtype=float))
    if s.size == 0 or s[0] <= 0:
        return 0
    return int(np.sum(s > get_settings().tau_rank * s[0]))


def omega_c_independent(c: Channel, omega: Optional[State] = None) -> bool:
    """Input and output algebras are independent in the joint state Omega_C.

    The input algebra is generated by the projections onto the pairs (x_i, *), the
    output algebra by those onto (*, y_j). A uniform input is used when omega is None.
    """
    omega = State.uniform(c.input_dim) if omega is None else omega
    joint_state = joint(c, omega).joint_state.as_state()
    m, n = c.input_dim, c.output_dim
    pairs = np.arange(m * n).reshape(m, n)
    inputs = [Element.projection(m * n, pairs[i].tolist()) for i in range(m)]
    outputs = [Element.projection(m * n, pairs[:, j].tolist()) for j in range(n)]
    return independence_test(inputs, outputs, joint_state)[0]


def classify(c: Union[Channel, LosslessChannel], omega: Optional[State] = None) -> Classification:
    """Classifies a channel as lossless, useless or generic.

    Lossless: every output column has exactly one input row with C[i][j] > tau_eq
    (columns without any are allowed and reported as unreached). When omega is
    given, inputs of zero weight are left out of the column analysis. Useless: the
    matrix has numerical rank 1; the verdict is cross-checked against the
    independence of input and output in the joint state. Lossless wins when both
    apply (single active input).

    Examples:
        >>> import numpy as np
        >>> from cstarinfo.channel import classify, bsc, identity, useless
        >>> classify(identity(3)).partition
        (0, 1, 2)
        >>> classify(useless([0.3, 0.7])).kind, classify(bsc(0.1)).kind
        ('useless', 'generic')

    Args:
        c (Channel or LosslessChannel): the channel
        omega (State): optional input state

    Returns:
        [cstarinfo.channel.Classification][]

    Raises:
        AlgebraMismatchError: omega does not live on the input algebra
    """
    if omega is not None:
        _check_same(AtomicAlgebra(c.input_dim), omega.algebra)
    matrix = np.asarray(c.matrix, dtype=float)
    tau = get_settings().tau_eq
    active = np.ones(matrix.shape[0], dtype=bool) if omega is None else omega.weights > tau
    rows = np.flatnonzero(active)
    support = matrix[rows] > tau
    rank = numerical_rank(matrix[rows])

    per_column = support.sum(axis=0)
    if np.all(per_column <= 1):
        owners = np.where(per_column == 1, rows[support.argmax(axis=0)], -1)
        return Classification('lossless', tuple(int(i) for i in owners), rank)

    kind = 'useless' if rank == 1 else 'generic'
    if isinstance(c, Channel):
        independent = omega_c_independent(c, omega)
        if independent != (kind == 'useless'):
            log.warning('Rank test (%s) disagrees with the independence test (%s)', kind, independent)
    return Classification(kind, None, rank)

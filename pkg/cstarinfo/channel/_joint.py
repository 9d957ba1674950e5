import logging
import math
from functools import reduce
from typing import Dict, NamedTuple, Union

import numpy as np

from ..algebra import AtomicAlgebra, Element, TensorElement, tensor_product
from ..algebra._algebra import _check_same
from ..probability import State, ProductState
from ..utils import get_settings, check_enumeration
from ._channel import Channel, push_state

log = logging.getLogger(__name__)


class JointState:
    """Joint state Omega_C^k of input strings and output strings.

    Attributes:
        weights (np.ndarray): read-only array of shape (m**k, n**k), entry
            [x-string, y-string] = C^(k)(y|x) omega^k(x)
        input_state (State): the single-letter input state omega
        level (int): block length k
    """
    __slots__ = ('weights', 'input_state', 'level')

    def __init__(self, weights: np.ndarray, input_state: State, level: int = 1):
        weights = np.array(weights, dtype=float)
        if weights.ndim != 2 or weights.shape[0] != input_state.dim ** level:
            raise ValueError(f'Joint weights of shape {weights.shape} do not match level {level}')
        tau = get_settings().tau_eq
        if abs(weights.sum() - 1) > tau or np.any(weights < -tau):
            raise ValueError('Joint weights must form a probability distribution')
        weights.flags.writeable = False
        object.__setattr__(self, 'weights', weights)
        object.__setattr__(self, 'input_state', input_state)
        object.__setattr__(self, 'level', int(level))

    def __setattr__(self, name, value):
        raise AttributeError('JointState is immutable')

    def input_marginal(self) -> np.ndarray:
        return self.weights.sum(axis=1)

    def output_marginal(self) -> np.ndarray:
        return self.weights.sum(axis=0)

    def as_state(self) -> State:
        """The joint state on the algebra of (input string, output string) pairs, input-major."""
        return State(self.weights.size, self.weights.ravel())

    def __repr__(self):
        return f'JointState(shape={self.weights.shape}, level={self.level})'

    def to_dict(self) -> Dict:
        return {'level': self.level, 'input_state': self.input_state.to_dict(), 'weights': self.weights.tolist()}


class JointOutput(NamedTuple):
    joint_state: JointState
    channel_output: TensorElement
    joint_output: TensorElement


def pair_algebra(c: Channel) -> AtomicAlgebra:
    """Factor algebra of pairs (x_i, y_j), atom index i * output_dim + j."""
    return AtomicAlgebra(c.input_dim * c.output_dim)


def _guard(c, k: int, guard_override: bool) -> None:
    if int(k) != k or k < 1:
        raise ValueError(f'Level must be a positive integer, got {k}')
    check_enumeration(k * (math.log2(c.input_dim) + math.log2(c.output_dim)), guard_override)


def _tensor_power(x: Element, k: int) -> TensorElement:
    power = TensorElement.from_element(x)
    for _ in range(k - 1):
        power = tensor_product(power, x)
    return power


def channel_output(c: Channel, k: int = 1, guard_override: bool = False) -> TensorElement:
    """Level-k channel output O^k_C = sum over output strings y of y x C^(k)(y).

    Each tensor factor is a pair algebra (see `pair_algebra`) whose atom (x_i, y_j)
    carries the coefficient C(y_j|x_i); the k-fold product keeps input and output
    letters of the same position in one factor. Lossless decoders are accepted too.

    Examples:
        >>> from cstarinfo.channel import bsc, channel_output
        >>> O = channel_output(bsc(0.1))
        >>> O.level, sorted(c.real for c in O.terms.values())
        (1, [0.1, 0.1, 0.9, 0.9])
    """
    _guard(c, k, guard_override)
    O = Element(pair_algebra(c), np.asarray(c.matrix, dtype=float).ravel())
    return _tensor_power(O, int(k))


def joint(c: Channel, omega: State, k: int = 1, guard_override: bool = False) -> JointOutput:
    """Joint state, channel output and joint output J at level k.

    The joint output has the joint state weights as coefficients,
    J(x_i, y_j) = C(y_j|x_i) omega(x_i), raised to the k-fold tensor power.

    Examples:
        >>> from cstarinfo.channel import bsc, joint
        >>> from cstarinfo.probability import State
        >>> result = joint(bsc(0.1), State.uniform(2))
        >>> result.joint_state.weights.tolist()
        [[0.45, 0.05], [0.05, 0.45]]

    Args:
        c (Channel): the channel
        omega (State): input state on X
        k (int): block length
        guard_override (bool): lift the enumeration guard

    Returns:
        joint_state (JointState): weights over (input string, output string)
        channel_output (TensorElement): O^k_C
        joint_output (TensorElement): J^k

    Raises:
        GuardExceededError: k (log2 m + log2 n) exceeds the enumeration guard
    """
    _check_same(c.input_algebra, omega.algebra)
    _guard(c, k, guard_override)
    J = omega.weights[:, None] * c.matrix
    weights = reduce(np.kron, [J] * int(k))
    log.debug('Joint state at level %d with %d entries', k, weights.size)
    J_element = Element(pair_algebra(c), J.ravel())
    joint_output = _tensor_power(J_element, int(k))
    return JointOutput(JointState(weights, omega, k), channel_output(c, k, guard_override=True), joint_output)


def output_state(c: Channel, omega: State, k: int = 1, guard_override: bool = False) -> Union[State, np.ndarray]:
    """Output source at level k: the state omega^k o C^(k) on output strings.

    Level 1 returns a [cstarinfo.probability.State][]; higher levels return the
    dense weights over all n**k output strings, equal to the k-fold product of
    the level-1 output state.

    Examples:
        >>> from cstarinfo.channel import bsc, output_state
        >>> from cstarinfo.probability import State
        >>> output_state(bsc(0.1), State(2, [1, 0])).weights.tolist()
        [0.9, 0.1]
    """
    if k == 1:
        return push_state(c, omega)
    if int(k) != k or k < 1:
        raise ValueError(f'Level must be a positive integer, got {k}')
    return ProductState.power(push_state(c, omega)).dense(int(k), guard_override=guard_override)

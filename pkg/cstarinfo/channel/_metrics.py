import logging
import math
from typing import NamedTuple

import numpy as np
from scipy.special import rel_entr

from ..information import entropy, entropy_bits
from ..probability import State
from ..utils import NotConvergedError
from ._channel import Channel, push_state
from ._joint import joint

log = logging.getLogger(__name__)


class InfoMetrics(NamedTuple):
    H_X: float
    H_Y: float
    H_X_given_Y: float
    I_XY: float


class CapacityResult(NamedTuple):
    capacity: float
    optimal_input: State


def info_metrics(c: Channel, omega: State) -> InfoMetrics:
    """Input and output entropies, equivocation and mutual information in bits.

    H(X|Y) = sum_j q_j H(posterior given y_j), the posterior being the column j of
    the joint state divided by q_j; I(X, Y) = H(X) - H(X|Y).

    Examples:
        >>> from cstarinfo.channel import info_metrics, identity
        >>> from cstarinfo.probability import State
        >>> info_metrics(identity(2), State.uniform(2))
        InfoMetrics(H_X=1.0, H_Y=1.0, H_X_given_Y=0.0, I_XY=1.0)
    """
    weights = joint(c, omega).joint_state.weights
    q = weights.sum(axis=0)
    H_X_given_Y = 0.0
    for j in np.flatnonzero(q > 0):
        H_X_given_Y += q[j] * entropy_bits(weights[:, j] / q[j])
    H_X = entropy(omega)
    H_Y = entropy(push_state(c, omega))
    return InfoMetrics(H_X, H_Y, float(H_X_given_Y), float(H_X - H_X_given_Y))


def _divergences(matrix: np.ndarray, q: np.ndarray) -> np.ndarray:
    """D(C(.|x_i) || q) in bits for every input row."""
    with np.errstate(divide='ignore'):
        return rel_entr(matrix, q[None, :]).sum(axis=1) / math.log(2)


def capacity(c: Channel, tol: float = 1e-9, max_iter: int = 10_000) -> CapacityResult:
    """Channel capacity max_omega I(X, Y) by Blahut-Arimoto iteration.

    Starting from the uniform input, every step reweighs p_i by 2**D_i, with D_i the
    divergence of row i from the current output distribution. The capacity lies
    between log2 sum_i p_i 2**D_i and max_i D_i; iteration stops when this gap drops
    below `tol`.

    Examples:
        >>> from cstarinfo.channel import capacity, bsc, identity
        >>> C, p = capacity(identity(2))
        >>> round(C, 12), p.weights.tolist()
        (1.0, [0.5, 0.5])
        >>> round(capacity(bsc(0.11)).capacity, 4)
        0.5

    Args:
        c (Channel): the channel
        tol (float): stop when the upper and lower bound are closer than this
        max_iter (int): maximal number of updates

    Returns:
        capacity (float): mutual information at the returned input, in bits
        optimal_input (State): the maximizing input state

    Raises:
        NotConvergedError: the gap is still above `tol` after `max_iter` updates
    """
    if tol <= 0:
        raise ValueError(f'tol must be positive, got {tol}')
    matrix = np.asarray(c.matrix, dtype=float)
    p = np.full(c.input_dim, 1 / c.input_dim)
    gap = math.inf
    for iteration in range(max_iter + 1):
        D = _divergences(matrix, p @ matrix)
        upper = float(np.max(D))
        lower = math.log2(float(np.dot(p, np.exp2(D))))
        gap = upper - lower
        if gap < tol:
            log.debug('Capacity converged after %d iterations, gap %.3e', iteration, gap)
            return CapacityResult(max(0.0, float(np.dot(p, D))), State(c.input_dim, p))
        if iteration == max_iter:
            break
        p = p * np.exp2(D)
        p = p / p.sum()
    raise NotConvergedError(gap, max_iter)

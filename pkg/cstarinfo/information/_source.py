from dataclasses import dataclass
from typing import Union

import numpy as np
from scipy.special import entr

from ..algebra import AtomicAlgebra, Element, functional_calculus
from ..algebra._algebra import _as_algebra, _check_same
from ..probability import State, evaluate


@dataclass(frozen=True)
class Source:
    """Source (B, omega): an alphabet algebra B and a state on it.

    Attributes:
        algebra (AtomicAlgebra): alphabet algebra; its atoms are the letters
        state (State): letter distribution

    Examples:
        >>> from cstarinfo.information import Source
        >>> Source.from_weights([0.25, 0.75]).algebra.dim
        2
    """
    algebra: AtomicAlgebra
    state: State

    def __post_init__(self):
        algebra = _as_algebra(self.algebra)
        _check_same(algebra, self.state.algebra)
        object.__setattr__(self, 'algebra', algebra)

    @classmethod
    def from_weights(cls, weights, labels=None) -> 'Source':
        weights = list(weights)
        algebra = AtomicAlgebra(len(weights), labels=labels)
        return cls(algebra, State(algebra, weights))

    @property
    def dim(self) -> int:
        return self.algebra.dim


def _state(source: Union[Source, State]) -> State:
    return source.state if isinstance(source, Source) else source


def source_output(source: Union[Source, State]) -> Element:
    """Instantaneous output O_omega = sum_i omega(x_i) x_i.

    Examples:
        >>> from cstarinfo.information import Source, source_output
        >>> source_output(Source.from_weights([0.25, 0.75])).coeffs.real.tolist()
        [0.25, 0.75]
    """
    omega = _state(source)
    return Element(omega.algebra, omega.weights)


def entropy(source: Union[Source, State]) -> float:
    """Entropy H = -omega(log2 O_omega) in bits, with 0 log 0 = 0.

    Examples:
        >>> from cstarinfo.information import entropy
        >>> from cstarinfo.probability import State
        >>> entropy(State.uniform(2)), entropy(State(2, [1, 0]))
        (1.0, 0.0)
        >>> round(entropy(State(2, [0.8, 0.2])), 6)
        0.721928
    """
    omega = _state(source)
    log_output = functional_calculus(source_output(omega), 'log2', domain_check=False)
    return max(0.0, float(-evaluate(omega, log_output).real))


def entropy_bits(weights: np.ndarray) -> float:
    """-sum p log2 p of a weight vector (any shape), with 0 log 0 = 0."""
    return max(0.0, float(entr(np.asarray(weights, dtype=float)).sum() / np.log(2)))

import math
from functools import reduce
from typing import Dict, Iterable, Optional, Sequence, Tuple, Union

import numpy as np

from ..algebra import AtomicAlgebra, Element, TensorElement
from ..algebra._algebra import _as_algebra
from ..utils import get_settings, check_enumeration, AlgebraMismatchError


class State:
    """State (positive unital functional) on an atomic algebra, stored as its weights
    p_i = omega(x_i).

    Attributes:
        algebra (AtomicAlgebra): algebra the state acts on
        weights (np.ndarray): read-only probability vector, shape (dim,)

    Examples:
        >>> from cstarinfo.probability import State
        >>> from cstarinfo.algebra import Element
        >>> omega = State(2, [0.3, 0.7])
        >>> round(omega(Element(2, [2, 4])).real, 12)
        3.4
    """
    __slots__ = ('algebra', 'weights')

    def __init__(self, algebra: Union[AtomicAlgebra, int], weights: Sequence[float]):
        algebra = _as_algebra(algebra)
        weights = np.array(weights, dtype=float)
        if weights.shape != (algebra.dim,):
            raise ValueError(f'Expected {algebra.dim} weights, got shape {weights.shape}')
        tau = get_settings().tau_eq
        if not np.all(np.isfinite(weights)) or np.any(weights < -tau):
            raise ValueError('State weights must be non-negative')
        if abs(weights.sum() - 1.0) > tau:
            raise ValueError(f'State weights must sum to 1, got {weights.sum()}')
        weights.flags.writeable = False
        object.__setattr__(self, 'algebra', algebra)
        object.__setattr__(self, 'weights', weights)

    def __setattr__(self, name, value):
        raise AttributeError('State is immutable')

    @classmethod
    def uniform(cls, algebra: Union[AtomicAlgebra, int]) -> 'State':
        algebra = _as_algebra(algebra)
        return cls(algebra, np.full(algebra.dim, 1.0 / algebra.dim))

    @classmethod
    def point_mass(cls, algebra: Union[AtomicAlgebra, int], i: int) -> 'State':
        """The pure state omega_i with omega_i(x_j) = delta_ij."""
        algebra = _as_algebra(algebra)
        algebra.check_index(i)
        weights = np.zeros(algebra.dim)
        weights[i] = 1.0
        return cls(algebra, weights)

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def __call__(self, x: Union[Element, TensorElement]) -> complex:
        return evaluate(self, x)

    def __repr__(self):
        return f'State(dim={self.dim}, weights={self.weights.tolist()})'

    def to_dict(self) -> Dict:
        """JSON form `{"dim": d, "weights": [...]}`."""
        return {'dim': self.dim, 'weights': self.weights.tolist()}

    @classmethod
    def from_dict(cls, data: Dict) -> 'State':
        return cls(int(data['dim']), data['weights'])


class ProductState:
    """Infinite product state omega_1 x omega_2 x ... on the tensor algebra.

    Positions beyond the explicit `factors` use `tail`. A product state evaluates a
    basis string as the finite product of its factor weights.

    Attributes:
        factors (tuple): factor states at positions 1, 2, ...
        tail (State): factor state of every later position

    Examples:
        >>> from cstarinfo.probability import State, ProductState
        >>> from cstarinfo.algebra import Element, tensor_product
        >>> Omega = ProductState.power(State.uniform(2))
        >>> Omega(tensor_product(Element.basis(2, 0), Element.basis(2, 1))).real
        0.25
    """
    __slots__ = ('factors', 'tail')

    def __init__(self, factors: Sequence[State] = (), tail: Optional[State] = None):
        factors = tuple(factors)
        if tail is None:
            if not factors:
                raise ValueError('A product state needs at least one factor or a tail state')
            tail = factors[-1]
        for state in factors:
            if state.dim != tail.dim:
                raise AlgebraMismatchError('All factor states must act on algebras of the same dimension')
        object.__setattr__(self, 'factors', factors)
        object.__setattr__(self, 'tail', tail)

    def __setattr__(self, name, value):
        raise AttributeError('ProductState is immutable')

    @classmethod
    def power(cls, state: State) -> 'ProductState':
        """The i.i.d. product state omega x omega x ..."""
        return cls((), tail=state)

    @property
    def dim(self) -> int:
        return self.tail.dim

    def factor(self, position: int) -> State:
        """Factor state at a 1-based position."""
        if position < 1:
            raise ValueError(f'Positions are 1-based, got {position}')
        return self.factors[position - 1] if position <= len(self.factors) else self.tail

    def __call__(self, x: Union[Element, TensorElement]) -> complex:
        return evaluate(self, x)

    def dense(self, level: int, guard_override: bool = False) -> np.ndarray:
        """Weights of the product state over all dim**level strings, position 1 most significant."""
        check_enumeration(level * math.log2(self.dim), guard_override)
        return reduce(np.kron, (self.factor(p).weights for p in range(1, level + 1)), np.ones(1))

    def __repr__(self):
        return f'ProductState(factors={len(self.factors)}, tail={self.tail!r})'


AnyState = Union[State, ProductState]


def evaluate(omega: AnyState, x: Union[Element, TensorElement]) -> complex:
    """Evaluates a state or a product state.

    For an element, sum_i p_i a_i. For a tensor element, the sum over terms of the
    coefficient times the product of factor weights at the explicit positions;
    identity positions contribute 1. A plain state on a tensor element acts as
    its i.i.d. product state.

    Examples:
        >>> from cstarinfo.probability import State, evaluate
        >>> from cstarinfo.algebra import Element
        >>> evaluate(State(3, [0.2, 0.3, 0.5]), Element.identity(3)).real
        1.0

    Raises:
        AlgebraMismatchError: the state and the element live on different algebras
    """
    if isinstance(x, TensorElement):
        product = ProductState.power(omega) if isinstance(omega, State) else omega
        if product.dim != x.dim:
            raise AlgebraMismatchError(f'State of dimension {product.dim} on an element of dimension {x.dim}')
        total = 0j
        for key, c in x.terms.items():
            weight = 1.0
            for p, i in key.pairs:
                weight *= product.factor(p).weights[i]
            total += c * weight
        return total
    state = omega.factor(1) if isinstance(omega, ProductState) else omega
    if not state.algebra.compatible(x.algebra):
        raise AlgebraMismatchError(f'State of dimension {state.dim} on an element of dimension {x.dim}')
    return complex(np.dot(state.weights, x.coeffs))


def pure_check(omega: State) -> bool:
    """A state is pure iff it is a point mass, i.e. one weight equals 1 within `tau_eq`.

    Examples:
        >>> from cstarinfo.probability import State, pure_check
        >>> pure_check(State(3, [1, 0, 0])), pure_check(State(2, [0.5, 0.5]))
        (True, False)
    """
    return bool(np.sum(omega.weights >= 1.0 - get_settings().tau_eq) == 1)


def is_multiplicative(omega: State, pairs: Optional[Iterable[Tuple[Element, Element]]] = None) -> bool:
    """Checks omega(xy) = omega(x) omega(y) over `pairs` (default: all pairs of atoms)."""
    if pairs is None:
        basis = [Element.basis(omega.algebra, i) for i in range(omega.dim)]
        pairs = [(x, y) for x in basis for y in basis]
    tau = get_settings().tau_eq
    return all(abs(evaluate(omega, x * y) - evaluate(omega, x) * evaluate(omega, y)) <= tau for x, y in pairs)


def dual_functional(algebra: Union[AtomicAlgebra, int], i: int) -> State:
    """The dual functional omega_i with omega_i(x_j) = delta_ij."""
    return State.point_mass(algebra, i)


def trace(x: Union[Element, TensorElement]) -> complex:
    """Trace tr = omega_1 + ... + omega_d, the sum of all dual functionals.

    On a tensor element of level k every atomic string of length k is counted, so a
    term supported on s positions contributes its coefficient times d**(k - s).

    Examples:
        >>> from cstarinfo.probability import trace
        >>> from cstarinfo.algebra import Element, embed_at
        >>> trace(Element.projection(4, [0, 3])).real
        2.0
        >>> trace(embed_at(Element.basis(2, 0), 3)).real
        4.0
    """
    if isinstance(x, Element):
        return complex(np.sum(x.coeffs))
    return sum((c * x.dim ** (x.level - len(key)) for key, c in x.terms.items()), 0j)

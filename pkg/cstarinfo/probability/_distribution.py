from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Dict, List, Mapping, Sequence, Tuple, Union

import numpy as np

from ..algebra import Element, is_self_adjoint
from ..algebra._algebra import _check_same
from ..utils import get_settings, DomainError
from ._states import State
from ._subalgebra import _cluster

Value = Union[float, Tuple[float, ...]]


@dataclass(frozen=True)
class Distribution:
    """Finite distribution t -> f(t) of one observable (scalar atoms) or of a
    sequence of observables (tuple atoms).

    Attributes:
        atoms (Mapping): value -> probability mass, iterated in increasing value order
        source (str): free-form description of where the distribution comes from

    Examples:
        >>> from cstarinfo.probability import Distribution
        >>> d = Distribution({3.0: 0.8, 2.0: 0.2})
        >>> list(d.atoms)
        [2.0, 3.0]
        >>> d.cdf(2.5)
        0.2
    """
    atoms: Mapping[Value, float]
    source: str = field(default='', compare=False)

    def __post_init__(self):
        tau = get_settings().tau_eq
        atoms = {self._key(t): float(p) for t, p in self.atoms.items()}
        if any(p < -tau for p in atoms.values()):
            raise ValueError('Masses must be non-negative')
        if abs(sum(atoms.values()) - 1.0) > tau:
            raise ValueError(f'Masses must sum to 1, got {sum(atoms.values())}')
        object.__setattr__(self, 'atoms', MappingProxyType(dict(sorted(atoms.items()))))

    @staticmethod
    def _key(t) -> Value:
        return tuple(float(v) for v in t) if isinstance(t, (tuple, list, np.ndarray)) else float(t)

    @property
    def values(self) -> List[Value]:
        return list(self.atoms)

    @property
    def masses(self) -> np.ndarray:
        return np.array(list(self.atoms.values()))

    def cdf(self, t: Value) -> float:
        """Total mass of the atoms with value <= t (componentwise for tuple atoms)."""
        tau = get_settings().tau_eq
        t = np.atleast_1d(np.asarray(t, dtype=float))
        return float(sum(p for value, p in self.atoms.items() if np.all(np.atleast_1d(value) <= t + tau)))

    def expectation(self, f=lambda v: v) -> float:
        """Sum of f(t) f_S(t) over scalar atoms."""
        return float(sum(f(t) * p for t, p in self.atoms.items()))

    def moment(self, k: int, center: float = 0.0) -> float:
        """Absolute moment sum |t - center|**k f_S(t) of a scalar distribution."""
        return self.expectation(lambda t: abs(t - center) ** k)

    def tail(self, center: float, eps: float) -> float:
        """Mass of the atoms with |t - center| > eps (boundary within `tau_eq` excluded)."""
        tau = get_settings().tau_eq
        return float(sum(p for t, p in self.atoms.items() if abs(t - center) > eps + tau))

    def to_dict(self) -> Dict:
        """JSON form `{"atoms": [{"t": ..., "p": ...}, ...]}` sorted by value."""
        return {'atoms': [{'t': list(t) if isinstance(t, tuple) else t, 'p': p} for t, p in self.atoms.items()]}

    @classmethod
    def from_dict(cls, data: Dict) -> 'Distribution':
        return cls({cls._key(atom['t']): atom['p'] for atom in data['atoms']})


def _as_sequence(S: Union[Element, Sequence[Element]]) -> List[Element]:
    S = [S] if isinstance(S, Element) else list(S)
    if not S:
        raise ValueError('At least one observable is needed')
    for x in S:
        _check_same(S[0].algebra, x.algebra)
        if not is_self_adjoint(x):
            raise DomainError('Observables must be self-adjoint')
    return S


def annihilator_projection(S: Union[Element, Sequence[Element]], t: Union[float, Sequence[float]]) -> Element:
    """Projection J_S onto the atoms where every x in S takes its target value.

    J_S is the identity of the subalgebra annihilating {t_i 1 - x_i}, i.e. the
    indicator of the event x_i = t_i for all i.

    Examples:
        >>> from cstarinfo.algebra import Element
        >>> from cstarinfo.probability import annihilator_projection
        >>> annihilator_projection(Element(3, [2, 3, 3]), 3).coeffs.real.tolist()
        [0.0, 1.0, 1.0]
    """
    S = _as_sequence(S)
    t = np.atleast_1d(np.asarray(t, dtype=float))
    if t.shape != (len(S),):
        raise ValueError(f'Expected {len(S)} target values, got {t.size}')
    rows = np.array([x.coeffs.real for x in S]).T
    mask = np.all(np.abs(rows - t) <= get_settings().tau_eq, axis=1)
    return Element(S[0].algebra, mask.astype(float))


def distribution_of(S: Union[Element, Sequence[Element]], omega: State) -> Distribution:
    """omega-distribution of a self-adjoint element or a sequence of them.

    Atoms are grouped by their coefficient tuples (equal within `tau_eq`); the mass of
    a value is omega(J_S) for its annihilator projection.

    Examples:
        >>> from cstarinfo.algebra import Element
        >>> from cstarinfo.probability import State, distribution_of
        >>> d = distribution_of(Element(3, [2, 3, 3]), State(3, [0.2, 0.3, 0.5]))
        >>> [(t, round(p, 12)) for t, p in d.atoms.items()]
        [(2.0, 0.2), (3.0, 0.8)]

    Args:
        S (Element or sequence of Element): observables; tuple-valued atoms for a sequence
        omega (State): state on their algebra

    Returns:
        The [cstarinfo.probability.Distribution][] of S
    """
    single = isinstance(S, Element)
    S = _as_sequence(S)
    _check_same(S[0].algebra, omega.algebra)
    rows = np.array([x.coeffs.real for x in S]).T
    atoms = {}
    for group in _cluster(rows, get_settings().tau_eq):
        value = rows[group[0]]
        key = float(value[0]) if single else tuple(float(v) for v in value)
        atoms[key] = float(omega.weights[group].sum())
    return Distribution(atoms, source=f'{len(S)} observable(s) on dim {omega.dim}')


def cdf(distribution: Distribution, t: Value) -> float:
    return distribution.cdf(t)


def prob_interval(x: Element, a: float, b: float, omega: State) -> float:
    """omega of the projection onto the atoms with a <= coefficient <= b.

    Examples:
        >>> from cstarinfo.algebra import Element
        >>> from cstarinfo.probability import State, prob_interval
        >>> round(prob_interval(Element(3, [2, 3, 3]), 2.5, 3.5, State(3, [0.2, 0.3, 0.5])), 12)
        0.8
    """
    (x,) = _as_sequence(x)
    _check_same(x.algebra, omega.algebra)
    tau = get_settings().tau_eq
    values = x.coeffs.real
    mask = (values >= a - tau) & (values <= b + tau)
    return float(omega.weights[mask].sum())


def group_values(values: np.ndarray, masses: np.ndarray, source: str = '') -> Distribution:
    """Distribution of scalar `values` carrying `masses`, merging values within `tau_eq`."""
    order = np.argsort(values, kind='stable')
    values, masses = np.asarray(values)[order], np.asarray(masses)[order]
    tau = get_settings().tau_eq
    atoms: Dict[float, float] = {}
    current = None
    for v, p in zip(values, masses):
        if current is None or v - current > tau:
            current = float(v)
            atoms[current] = 0.0
        atoms[current] += float(p)
    return Distribution(atoms, source=source)

import logging
import warnings
from typing import Dict, Iterator, NamedTuple, Optional, Tuple

import numpy as np
from typing_extensions import Literal

from ..algebra import Element, is_self_adjoint, sum_embedded, truncate_to_level
from ..algebra._algebra import _check_same
from ..utils import get_settings, DomainError
from ._distribution import Distribution, group_values
from ._states import State, ProductState

log = logging.getLogger(__name__)

MAX_MOMENT_ORDER = 8
# reduced lattice spans beyond this many cells per atom use the atom-wise convolution
LATTICE_CELLS_PER_ATOM = 64


def coordinate_observable(omega: State) -> Element:
    """Default observable with coefficients 0, 1, ..., d-1."""
    return Element.from_function(omega.algebra, float)


def _observable(omega: State, observable: Optional[Element]) -> np.ndarray:
    x = coordinate_observable(omega) if observable is None else observable
    _check_same(omega.algebra, x.algebra)
    if not is_self_adjoint(x):
        raise DomainError('The observable must be self-adjoint')
    return x.coeffs.real


def _check_n(n: int) -> None:
    if int(n) != n or n < 1:
        raise ValueError(f'n must be a positive integer, got {n}')


def _support(values: np.ndarray, weights: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    positive = weights > 0
    return values[positive], weights[positive]


class _Lattice(NamedTuple):
    low: int
    step: int
    cells: np.ndarray


def _lattice(values: np.ndarray) -> Optional[_Lattice]:
    """Values low + step * cells with small integer cells, or None.

    The step is the gcd of the integer offsets, so (0, 20000) becomes the cells {0, 1}.
    """
    integers = np.round(values)
    if not np.all(np.abs(values - integers) <= get_settings().tau_eq):
        return None
    integers = integers.astype(np.int64)
    low = int(integers.min())
    offsets = integers - low
    step = int(np.gcd.reduce(offsets)) or 1
    cells = offsets // step
    if cells.max() > LATTICE_CELLS_PER_ATOM * values.size:
        return None
    return _Lattice(low, step, cells)


def _lattice_sums(lattice: _Lattice, weights: np.ndarray) -> Iterator[Tuple[np.ndarray, np.ndarray]]:
    """Yields (means, pmf) of the sample mean of n i.i.d. copies for n = 1, 2, ...

    The sample mean takes the value means[j] with probability pmf[j].
    """
    base = np.zeros(int(lattice.cells.max()) + 1)
    np.add.at(base, lattice.cells, weights)
    pmf = np.ones(1)
    n = 0
    while True:
        n += 1
        pmf = np.convolve(pmf, base)
        yield (n * lattice.low + lattice.step * np.arange(pmf.size)) / n, pmf


def _pushforward(values: np.ndarray, weights: np.ndarray, n: int) -> Distribution:
    values, weights = _support(values, weights)
    lattice = _lattice(values)
    if lattice is not None:
        sums = _lattice_sums(lattice, weights)
        for _ in range(n):
            means, pmf = next(sums)
        support = pmf > 0
        return Distribution(dict(zip(means[support].tolist(), pmf[support].tolist())), source=f'sample mean, n={n}')

    sums: Dict[float, float] = {0.0: 1.0}
    for _ in range(n):
        step: Dict[float, float] = {}
        for s, p in sums.items():
            for v, w in zip(values, weights):
                key = round(s + v, 12)
                step[key] = step.get(key, 0.0) + p * w
        sums = step
    keys = np.array(list(sums))
    return group_values(keys / n, np.array(list(sums.values())), source=f'sample mean, n={n}')


def _dense(omega: State, x: Element, n: int, guard_override: bool) -> Distribution:
    s = sum_embedded(x, n).scale(1.0 / n)
    values = truncate_to_level(s, n, guard_override=guard_override).real
    masses = ProductState.power(omega).dense(n, guard_override=guard_override)
    return group_values(values, masses, source=f'sample mean (dense), n={n}')


def sample_mean_distribution(omega: State, n: int, observable: Optional[Element] = None,
                             method: Literal['pushforward', 'dense'] = 'pushforward',
                             guard_override: bool = False) -> Distribution:
    """Distribution of s_n = (x^_1 + ... + x^_n)/n under the product state of omega.

    The `pushforward` method convolves the distribution of x n times (on the integer
    lattice when x has integer coefficients). The `dense` method builds s_n as a
    tensor element, expands it over all dim**n strings and weighs every string with
    the product state; it is guarded and meant for small n.

    Examples:
        >>> from cstarinfo.probability import State, sample_mean_distribution
        >>> d = sample_mean_distribution(State.uniform(2), 2)
        >>> [(t, p) for t, p in d.atoms.items()]
        [(0.0, 0.25), (0.5, 0.5), (1.0, 0.25)]

    Args:
        omega (State): factor state
        n (int): number of copies
        observable (Element): self-adjoint element of the factor algebra, default coordinate element
        method (str): `pushforward` or `dense`
        guard_override (bool): lift the enumeration guard of the dense method

    Returns:
        The [cstarinfo.probability.Distribution][] of s_n
    """
    _check_n(n)
    values = _observable(omega, observable)
    if method == 'pushforward':
        return _pushforward(values, omega.weights, n)
    if method == 'dense':
        x = coordinate_observable(omega) if observable is None else observable
        return _dense(omega, x, n, guard_override)
    raise ValueError('Invalid method')


def lln_moment(omega: State, n: int, k: int = 2, observable: Optional[Element] = None) -> float:
    """Absolute central moment Omega_n(|s_n - mu|**k) of the sample mean, mu = omega(x).

    Computed from the pushforward distribution of s_n. Odd orders are computed the
    same way but flagged with a warning.

    Examples:
        >>> from cstarinfo.algebra import Element
        >>> from cstarinfo.probability import State, lln_moment
        >>> round(lln_moment(State.uniform(2), 10, 2, Element(2, [0, 1])), 12)
        0.025

    Args:
        omega (State): factor state
        n (int): number of copies, n >= 1
        k (int): moment order, 1 <= k <= 8
        observable (Element): default coordinate element

    Returns:
        moment (float)
    """
    _check_n(n)
    if int(k) != k or not 1 <= k <= MAX_MOMENT_ORDER:
        raise ValueError(f'Moment order must be an integer in [1, {MAX_MOMENT_ORDER}], got {k}')
    if k % 2:
        warnings.warn(f'Odd absolute moment (k={k}) computed from the distribution of the sample mean')
    values = _observable(omega, observable)
    mu = float(np.dot(omega.weights, values))
    return sample_mean_distribution(omega, n, observable).moment(int(k), mu)


def chebyshev_tail(omega: State, n: int, eps: float, observable: Optional[Element] = None) -> float:
    """Exact tail probability P(|s_n - mu| > eps) of the sample mean.

    Examples:
        >>> from cstarinfo.probability import State, chebyshev_tail
        >>> chebyshev_tail(State.uniform(2), 2, 0.25)
        0.5
    """
    if eps <= 0:
        raise ValueError(f'eps must be positive, got {eps}')
    _check_n(n)
    values = _observable(omega, observable)
    mu = float(np.dot(omega.weights, values))
    return sample_mean_distribution(omega, n, observable).tail(mu, eps)


def chebyshev_bound(omega: State, n: int, eps: float, observable: Optional[Element] = None) -> float:
    """Chebyshev bound Omega_n(|s_n - mu|**2) / eps**2 on the tail probability."""
    if eps <= 0:
        raise ValueError(f'eps must be positive, got {eps}')
    return lln_moment(omega, n, 2, observable) / eps ** 2


def chebyshev_threshold(omega: State, eps: float, n_max: int = 500,
                        observable: Optional[Element] = None) -> Optional[int]:
    """Smallest n <= n_max with P(|s_n - mu| > eps) < eps, or None when the scan finds none."""
    if eps <= 0:
        raise ValueError(f'eps must be positive, got {eps}')
    values = _observable(omega, observable)
    mu = float(np.dot(omega.weights, values))
    tau = get_settings().tau_eq
    lattice = _lattice(_support(values, omega.weights)[0])
    if lattice is None:
        for n in range(1, n_max + 1):
            if chebyshev_tail(omega, n, eps, observable) < eps:
                return n
        return None
    sums = _lattice_sums(lattice, _support(values, omega.weights)[1])
    for n in range(1, n_max + 1):
        means, pmf = next(sums)
        if pmf[np.abs(means - mu) > eps + tau].sum() < eps:
            log.debug('Tail below %g from n=%d', eps, n)
            return n
    return None

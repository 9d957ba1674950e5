import itertools
import logging
import math
from dataclasses import dataclass, asdict
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.special import comb
from typing_extensions import Literal

from ..algebra import MultiIndex, TensorElement, functional_calculus, sum_embedded, truncate_to_level
from ..probability import State, ProductState
from ..utils import get_settings, check_enumeration
from ._source import Source, _state, entropy, source_output

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class TypicalSetReport:
    """Summary of the typical set at block length n.

    Attributes:
        n (int): block length
        eps (float): typicality tolerance
        H (float): entropy in bits per symbol
        count (int): number of typical strings, tr(Q)
        prob_mass (float): product-state measure of Q
        lower_bound (float): (1 - eps) 2**(n (H - eps))
        upper_bound (float): 2**(n (H + eps))
        mass_ok (bool): prob_mass > 1 - eps
        upper_ok (bool): count <= upper_bound
        lower_ok (bool): count >= lower_bound
        count_ok (bool): both count bounds hold
    """
    n: int
    eps: float
    H: float
    count: int
    prob_mass: float
    lower_bound: float
    upper_bound: float
    mass_ok: bool
    upper_ok: bool
    lower_ok: bool
    count_ok: bool

    def to_dict(self) -> Dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict) -> 'TypicalSetReport':
        return cls(**data)


def _check(n: int, eps: float) -> None:
    if int(n) != n or n < 1:
        raise ValueError(f'Block length must be a positive integer, got {n}')
    if eps <= 0:
        raise ValueError(f'eps must be positive, got {eps}')


def _typical_mask(source: Union[Source, State], n: int, eps: float,
                  guard_override: bool) -> Tuple[np.ndarray, np.ndarray, float]:
    """Typical strings of length n among all dim**n, their product-state weights and H."""
    omega = _state(source)
    H = entropy(omega)
    check_enumeration(n * math.log2(omega.dim), guard_override)
    log_output = functional_calculus(source_output(omega), 'log2', domain_check=False)
    log_prob = truncate_to_level(sum_embedded(log_output, n), n, guard_override=guard_override).real
    weights = ProductState.power(omega).dense(n, guard_override=guard_override)
    tau = get_settings().tau_eq
    mask = (weights > 0) & (np.abs(-log_prob / n - H) <= eps + tau)
    return mask, weights, H


def _types(omega: State, n: int, eps: float, H: float) -> Tuple[int, float]:
    """Count and mass of the typical set, summed over letter-count classes."""
    tau = get_settings().tau_eq
    p = omega.weights
    log_p = np.zeros_like(p)
    log_p[p > 0] = np.log2(p[p > 0])
    count, mass = 0, 0.0
    for cut in itertools.combinations(range(n + omega.dim - 1), omega.dim - 1):
        counts = np.diff((-1,) + cut + (n + omega.dim - 1,)) - 1
        if np.any(counts[p <= 0] > 0):
            continue
        if abs(-float(np.dot(counts, log_p)) / n - H) > eps + tau:
            continue
        multiplicity = 1
        remaining = n
        for c in counts:
            multiplicity *= int(comb(remaining, int(c), exact=True))
            remaining -= int(c)
        count += multiplicity
        mass += multiplicity * float(np.prod(p ** counts))
    return count, mass


def _report(n: int, eps: float, H: float, count: int, mass: float) -> TypicalSetReport:
    lower = (1 - eps) * 2.0 ** (n * (H - eps))
    upper = 2.0 ** (n * (H + eps))
    tau = get_settings().tau_eq
    upper_ok = count <= upper * (1 + tau)
    lower_ok = count >= lower * (1 - tau)
    return TypicalSetReport(n=int(n), eps=float(eps), H=H, count=int(count), prob_mass=float(min(mass, 1.0)),
                            lower_bound=lower, upper_bound=upper, mass_ok=bool(mass > 1 - eps),
                            upper_ok=bool(upper_ok), lower_ok=bool(lower_ok), count_ok=bool(upper_ok and lower_ok))


def aep_typical_set(source: Union[Source, State], n: int, eps: float,
                    method: Literal['enumerate', 'types'] = 'enumerate',
                    guard_override: bool = False) -> TypicalSetReport:
    """Typical set of block length n and its trace bounds.

    A string is typical when |-(1/n) log2 Omega_n(string) - H| <= eps; only strings
    of positive probability qualify. The `enumerate` method builds the tensor element
    sum_k (log2 O_omega)^_k, expands it over all dim**n strings (guarded) and weighs
    them with the product state. The `types` method sums over letter-count classes
    instead and is not guarded.

    Examples:
        >>> from cstarinfo.information import Source, aep_typical_set
        >>> report = aep_typical_set(Source.from_weights([0.5, 0.5]), 6, 0.1)
        >>> report.count, report.prob_mass
        (64, 1.0)
        >>> aep_typical_set(Source.from_weights([1, 0]), 5, 0.1).count
        1

    Args:
        source (Source or State): the source
        n (int): block length
        eps (float): typicality tolerance, eps > 0
        method (str): `enumerate` or `types`
        guard_override (bool): lift the enumeration guard

    Returns:
        [cstarinfo.information.TypicalSetReport][]

    Raises:
        GuardExceededError: n log2(dim) exceeds the enumeration guard
    """
    _check(n, eps)
    omega = _state(source)
    if method == 'enumerate':
        mask, weights, H = _typical_mask(omega, n, eps, guard_override)
        count, mass = int(mask.sum()), float(weights[mask].sum())
    elif method == 'types':
        H = entropy(omega)
        count, mass = _types(omega, n, eps, H)
    else:
        raise ValueError('Invalid method')
    log.debug('n=%d: %d typical strings carrying mass %.6f', n, count, mass)
    return _report(n, eps, H, count, mass)


def aep_projection(source: Union[Source, State], n: int, eps: float, guard_override: bool = False) -> TensorElement:
    """The projection Q, sum of the typical string projections, as a level-n tensor element.

    Examples:
        >>> from cstarinfo.information import Source, aep_projection
        >>> Q = aep_projection(Source.from_weights([0.5, 0.5]), 3, 0.1)
        >>> len(Q.terms), Q.level
        (8, 3)
    """
    _check(n, eps)
    omega = _state(source)
    mask, _, _ = _typical_mask(omega, n, eps, guard_override)
    strings = np.argwhere(mask.reshape((omega.dim,) * n))
    return TensorElement(omega.algebra, {MultiIndex.string(s): 1.0 for s in strings.tolist()}, level=n)


def aep_sweep(source: Union[Source, State], ns: Iterable[int], eps: float,
              method: Literal['enumerate', 'types'] = 'enumerate',
              guard_override: bool = False) -> List[TypicalSetReport]:
    """One [cstarinfo.information.TypicalSetReport][] per block length."""
    return [aep_typical_set(source, n, eps, method=method, guard_override=guard_override) for n in ns]


def mass_threshold(reports: Sequence[TypicalSetReport]) -> Optional[int]:
    """Smallest n0 among the reports such that every report with n >= n0 has `mass_ok`.

    Returns None when the report of the largest n fails.
    """
    threshold = None
    for report in sorted(reports, key=lambda r: r.n, reverse=True):
        if not report.mass_ok:
            break
        threshold = report.n
    return threshold

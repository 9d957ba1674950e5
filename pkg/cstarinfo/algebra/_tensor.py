import math
from types import MappingProxyType
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from ..utils import get_settings, check_enumeration, AlgebraMismatchError
from ._algebra import AtomicAlgebra, Element, _as_algebra, distinct_values


class MultiIndex:
    """Finite-support basis string of the infinite tensor product.

    Stores the explicit (position, basis index) pairs; every position that is
    not listed carries the identity factor. Positions are 1-based, basis indices
    0-based.

    Examples:
        >>> from cstarinfo.algebra import MultiIndex
        >>> m = MultiIndex({3: 1, 1: 0})
        >>> m.pairs
        ((1, 0), (3, 1))
        >>> m.level
        3
    """
    __slots__ = ('pairs', '_hash')

    def __init__(self, entries: Union[Mapping[int, int], Iterable[Tuple[int, int]], None] = None):
        items = list(entries.items()) if isinstance(entries, Mapping) else list(entries or [])
        positions = [int(p) for p, _ in items]
        if len(set(positions)) != len(positions):
            raise ValueError(f'Position collision in multi-index {items}')
        pairs = tuple(sorted((int(p), int(i)) for p, i in items))
        for p, i in pairs:
            if p < 1:
                raise ValueError(f'Factor positions are 1-based, got {p}')
            if i < 0:
                raise ValueError(f'Basis indices are non-negative, got {i}')
        object.__setattr__(self, 'pairs', pairs)
        object.__setattr__(self, '_hash', hash(pairs))

    def __setattr__(self, name, value):
        raise AttributeError('MultiIndex is immutable')

    @classmethod
    def string(cls, indices: Sequence[int], start: int = 1) -> 'MultiIndex':
        """Basis string with `indices` at consecutive positions starting at `start`."""
        return cls((start + offset, i) for offset, i in enumerate(indices))

    @property
    def positions(self) -> Tuple[int, ...]:
        return tuple(p for p, _ in self.pairs)

    @property
    def level(self) -> int:
        return self.pairs[-1][0] if self.pairs else 0

    def get(self, position: int) -> Optional[int]:
        for p, i in self.pairs:
            if p == position:
                return i
        return None

    def shift(self, offset: int) -> 'MultiIndex':
        return MultiIndex((p + offset, i) for p, i in self.pairs)

    def merge(self, other: 'MultiIndex') -> Optional['MultiIndex']:
        """Product of two basis strings, or None when they are orthogonal.

        Factorwise x_i 1 = x_i and x_i x_j = delta_ij x_i.
        """
        merged = dict(self.pairs)
        for p, i in other.pairs:
            if merged.setdefault(p, i) != i:
                return None
        return MultiIndex(merged)

    def __eq__(self, other):
        return isinstance(other, MultiIndex) and self.pairs == other.pairs

    def __lt__(self, other):
        return self.pairs < other.pairs

    def __hash__(self):
        return self._hash

    def __len__(self):
        return len(self.pairs)

    def __repr__(self):
        return f'MultiIndex({dict(self.pairs)})'


class TensorElement:
    """Finitely supported element of the infinite tensor product of one factor algebra.

    The element is a sparse map from [cstarinfo.algebra.MultiIndex][] to complex
    coefficients. Coefficients below `tau_zero` are dropped, so the zero element has
    an empty term map. `level` is at least the largest explicit position; it may be
    larger, in which case the trailing positions carry identity factors.

    Attributes:
        factor_algebra (AtomicAlgebra): the algebra A of every factor
        terms (Mapping[MultiIndex, complex]): read-only sparse coefficients
        level (int): number of factors the element is considered at

    Examples:
        >>> from cstarinfo.algebra import TensorElement, MultiIndex
        >>> a = TensorElement(2, {MultiIndex({1: 0, 2: 1}): 1.0})
        >>> b = TensorElement(2, {MultiIndex({1: 0, 2: 0}): 1.0})
        >>> len((a * b).terms)
        0
    """
    __slots__ = ('factor_algebra', 'terms', 'level')
    __array_ufunc__ = None

    def __init__(self, factor_algebra: Union[AtomicAlgebra, int],
                 terms: Mapping[Union[MultiIndex, Mapping[int, int]], complex],
                 level: Optional[int] = None):
        factor_algebra = _as_algebra(factor_algebra)
        tau_zero = get_settings().tau_zero
        canonical: Dict[MultiIndex, complex] = {}
        for key, c in terms.items():
            index = key if isinstance(key, MultiIndex) else MultiIndex(key)
            for _, i in index.pairs:
                factor_algebra.check_index(i)
            canonical[index] = canonical.get(index, 0j) + complex(c)
        canonical = {k: c for k, c in canonical.items() if abs(c) >= tau_zero}
        support_level = max((k.level for k in canonical), default=0)
        if level is None:
            level = support_level
        elif level < support_level:
            raise ValueError(f'Level {level} is below the support level {support_level}')
        object.__setattr__(self, 'factor_algebra', factor_algebra)
        object.__setattr__(self, 'terms', MappingProxyType(canonical))
        object.__setattr__(self, 'level', int(level))

    def __setattr__(self, name, value):
        raise AttributeError('TensorElement is immutable')

    @classmethod
    def scalar(cls, factor_algebra: Union[AtomicAlgebra, int], c: complex = 1.0, level: int = 0) -> 'TensorElement':
        """c times the identity, considered at `level`."""
        return cls(factor_algebra, {MultiIndex(): c}, level=level)

    @classmethod
    def from_element(cls, x: Element, position: int = 1) -> 'TensorElement':
        """Embeds x as 1 x ... x x x 1 x ... with x at `position`."""
        return cls(x.algebra, {MultiIndex({position: i}): c for i, c in enumerate(x.coeffs)}, level=position)

    @classmethod
    def string(cls, factor_algebra: Union[AtomicAlgebra, int], indices: Sequence[int], c: complex = 1.0) -> 'TensorElement':
        """The atomic string x_(i_1) x ... x x_(i_k) (times `c`)."""
        return cls(factor_algebra, {MultiIndex.string(indices): c}, level=len(indices))

    @property
    def dim(self) -> int:
        return self.factor_algebra.dim

    @property
    def support_level(self) -> int:
        return max((k.level for k in self.terms), default=0)

    def explicit_positions(self) -> Tuple[int, ...]:
        """Positions carrying a non-identity factor in at least one term."""
        return tuple(sorted({p for key in self.terms for p in key.positions}))

    def _check(self, other: 'TensorElement') -> None:
        if not self.factor_algebra.compatible(other.factor_algebra):
            raise AlgebraMismatchError(f'Factor algebras of dimension {self.dim} and {other.dim} do not match')

    def add(self, other: 'TensorElement') -> 'TensorElement':
        self._check(other)
        terms = dict(self.terms)
        for key, c in other.terms.items():
            terms[key] = terms.get(key, 0j) + c
        return TensorElement(self.factor_algebra, terms, level=max(self.level, other.level))

    def scale(self, c: complex) -> 'TensorElement':
        return TensorElement(self.factor_algebra, {k: c * v for k, v in self.terms.items()}, level=self.level)

    def sub(self, other: 'TensorElement') -> 'TensorElement':
        return self.add(other.scale(-1))

    def mul(self, other: 'TensorElement') -> 'TensorElement':
        """Factorwise product of every pair of terms, then re-sparsified."""
        self._check(other)
        terms: Dict[MultiIndex, complex] = {}
        for key_a, c_a in self.terms.items():
            for key_b, c_b in other.terms.items():
                key = key_a.merge(key_b)
                if key is not None:
                    terms[key] = terms.get(key, 0j) + c_a * c_b
        return TensorElement(self.factor_algebra, terms, level=max(self.level, other.level))

    def star(self) -> 'TensorElement':
        return TensorElement(self.factor_algebra, {k: c.conjugate() for k, c in self.terms.items()}, level=self.level)

    def _coerce(self, other) -> Optional['TensorElement']:
        if isinstance(other, TensorElement):
            return other
        if isinstance(other, Element):
            return TensorElement.from_element(other)
        if isinstance(other, (int, float, complex, np.number)):
            return TensorElement.scalar(self.factor_algebra, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is None else self.add(other)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is None else self.sub(other)

    def __rsub__(self, other):
        other = self._coerce(other)
        return NotImplemented if other is None else other.sub(self)

    def __mul__(self, other):
        if isinstance(other, (int, float, complex, np.number)):
            return self.scale(other)
        other = self._coerce(other)
        return NotImplemented if other is None else self.mul(other)

    def __rmul__(self, other):
        if isinstance(other, (int, float, complex, np.number)):
            return self.scale(other)
        other = self._coerce(other)
        return NotImplemented if other is None else other.mul(self)

    def __neg__(self):
        return self.scale(-1)

    def __repr__(self):
        return f'TensorElement(dim={self.dim}, level={self.level}, terms={len(self.terms)})'

    def expand(self, positions: Optional[Sequence[int]] = None, guard_override: bool = False) -> np.ndarray:
        """Dense coefficients over the atomic strings of `positions`.

        Returns an array of shape (dim,) * len(positions) whose axis `a` runs over the
        basis index at `positions[a]`. Terms with a factor at a position outside of
        `positions` are rejected.
        """
        positions = self.explicit_positions() if positions is None else tuple(positions)
        check_enumeration(len(positions) * math.log2(self.dim), guard_override)
        axis = {p: a for a, p in enumerate(positions)}
        dense = np.zeros((self.dim,) * len(positions), dtype=complex)
        for key, c in self.terms.items():
            index: List = [slice(None)] * len(positions)
            for p, i in key.pairs:
                if p not in axis:
                    raise ValueError(f'Position {p} of the element is not among the expanded positions')
                index[axis[p]] = i
            dense[tuple(index)] += c
        return dense

    def expansion_values(self, guard_override: bool = False) -> np.ndarray:
        """Coefficients of the full atomic expansion, one per distinct string pattern.

        Only positions carrying a factor matter; the values at the remaining positions
        of the level repeat, so the set of values equals that of all dim**level strings.
        """
        return self.expand(guard_override=guard_override).ravel()

    def spectrum(self) -> List[complex]:
        return distinct_values(self.expansion_values())

    def norm(self) -> float:
        values = self.expansion_values()
        return float(np.max(np.abs(values))) if values.size else 0.0

    def to_dict(self) -> Dict:
        """JSON form `{"dim": d, "level": k, "terms": [{"idx": {"1": 0}, "c": [re, im]}, ...]}`."""
        return {
            'dim': self.dim,
            'level': self.level,
            'terms': [{'idx': {str(p): i for p, i in key.pairs}, 'c': [c.real, c.imag]}
                      for key, c in sorted(self.terms.items())],
        }

    @classmethod
    def from_dict(cls, data: Dict) -> 'TensorElement':
        terms = {}
        for term in data['terms']:
            key = MultiIndex({int(p): int(i) for p, i in term['idx'].items()})
            c = term['c']
            terms[key] = terms.get(key, 0j) + (complex(*c) if isinstance(c, (list, tuple)) else complex(c))
        return cls(int(data['dim']), terms, level=data.get('level'))

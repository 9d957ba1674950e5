from dataclasses import dataclass
from numbers import Number
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..utils import get_settings, AlgebraMismatchError


@dataclass(frozen=True)
class AtomicAlgebra:
    """Finite-dimensional abelian C*-algebra described by its complete atomic basis.

    The basis {x_0, ..., x_(dim-1)} satisfies x_i* = x_i, x_i x_j = delta_ij x_i,
    ||x_i|| = 1 and sum_i x_i = 1, so an algebra is fully determined by its dimension.

    Attributes:
        dim (int): number of atoms
        labels (tuple): optional alphabet, one distinct symbol string per atom

    Examples:
        >>> from cstarinfo.algebra import AtomicAlgebra
        >>> A = AtomicAlgebra(2, labels=('0', '1'))
        >>> A.dim
        2
        >>> A.label(1)
        '1'
    """
    dim: int
    labels: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        if int(self.dim) != self.dim or self.dim < 1:
            raise ValueError(f'Algebra dimension must be a positive integer, got {self.dim}')
        if self.labels is not None:
            labels = tuple(str(label) for label in self.labels)
            if len(labels) != self.dim:
                raise ValueError(f'Expected {self.dim} labels, got {len(labels)}')
            if len(set(labels)) != len(labels):
                raise ValueError('Atom labels must be distinct')
            object.__setattr__(self, 'labels', labels)

    def label(self, i: int) -> str:
        """Returns the symbol of atom `i` (its index when the algebra has no labels)."""
        self.check_index(i)
        return self.labels[i] if self.labels is not None else str(i)

    def check_index(self, i: int) -> None:
        if not 0 <= i < self.dim:
            raise ValueError(f'Basis index {i} out of range for an algebra of dimension {self.dim}')

    def compatible(self, other: 'AtomicAlgebra') -> bool:
        """Algebras are interchangeable when their dimensions agree."""
        return self.dim == other.dim


def _as_algebra(algebra: Union[AtomicAlgebra, int]) -> AtomicAlgebra:
    return algebra if isinstance(algebra, AtomicAlgebra) else AtomicAlgebra(int(algebra))


def _check_same(a: AtomicAlgebra, b: AtomicAlgebra) -> None:
    if not a.compatible(b):
        raise AlgebraMismatchError(f'Algebras of dimension {a.dim} and {b.dim} do not match')


def distinct_values(values: np.ndarray, tau: Optional[float] = None) -> List[complex]:
    """Collapses `values` into representatives that differ by more than `tau`.

    Values are visited in lexicographic (real, imag) order and each one joins the
    last representative when it lies within `tau` of it.
    """
    tau = get_settings().tau_eq if tau is None else tau
    unique = np.unique(np.asarray(values, dtype=complex).ravel())
    representatives: List[complex] = []
    for value in unique:
        if not representatives or abs(value - representatives[-1]) > tau:
            representatives.append(complex(value))
    return representatives


class Element:
    """Element x = sum_i a_i x_i of an [cstarinfo.algebra.AtomicAlgebra][], stored as its
    coefficient vector in the atomic basis.

    Elements are immutable; the coefficient array is read-only.

    Attributes:
        algebra (AtomicAlgebra): algebra the element belongs to
        coeffs (np.ndarray): complex coefficients a_i, shape (dim,)

    Examples:
        >>> from cstarinfo.algebra import Element
        >>> x = Element(2, [1, 0])
        >>> (x * x).coeffs.real.tolist()
        [1.0, 0.0]
        >>> Element(2, [1+1j, 2]).star().coeffs.tolist()
        [(1-1j), (2-0j)]
    """
    __slots__ = ('algebra', 'coeffs')
    __array_ufunc__ = None

    def __init__(self, algebra: Union[AtomicAlgebra, int], coeffs: Sequence[complex]):
        algebra = _as_algebra(algebra)
        coeffs = np.array(coeffs, dtype=complex)
        if coeffs.shape != (algebra.dim,):
            raise ValueError(f'Expected {algebra.dim} coefficients, got shape {coeffs.shape}')
        coeffs.flags.writeable = False
        object.__setattr__(self, 'algebra', algebra)
        object.__setattr__(self, 'coeffs', coeffs)

    def __setattr__(self, name, value):
        raise AttributeError('Element is immutable')

    @classmethod
    def identity(cls, algebra: Union[AtomicAlgebra, int]) -> 'Element':
        """The unit 1 = sum_i x_i."""
        algebra = _as_algebra(algebra)
        return cls(algebra, np.ones(algebra.dim))

    @classmethod
    def zero(cls, algebra: Union[AtomicAlgebra, int]) -> 'Element':
        algebra = _as_algebra(algebra)
        return cls(algebra, np.zeros(algebra.dim))

    @classmethod
    def basis(cls, algebra: Union[AtomicAlgebra, int], i: int) -> 'Element':
        """The atomic projection x_i."""
        algebra = _as_algebra(algebra)
        algebra.check_index(i)
        coeffs = np.zeros(algebra.dim)
        coeffs[i] = 1.0
        return cls(algebra, coeffs)

    @classmethod
    def projection(cls, algebra: Union[AtomicAlgebra, int], indices) -> 'Element':
        """Sum of the atomic projections listed in `indices`."""
        algebra = _as_algebra(algebra)
        coeffs = np.zeros(algebra.dim)
        for i in indices:
            algebra.check_index(i)
            coeffs[i] = 1.0
        return cls(algebra, coeffs)

    @classmethod
    def from_function(cls, algebra: Union[AtomicAlgebra, int], f) -> 'Element':
        """The element sum_i f(i) x_i, e.g. the coordinate element for `f = lambda i: i`."""
        algebra = _as_algebra(algebra)
        return cls(algebra, [f(i) for i in range(algebra.dim)])

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def real(self) -> np.ndarray:
        return self.coeffs.real

    def add(self, other: 'Element') -> 'Element':
        _check_same(self.algebra, other.algebra)
        return Element(self.algebra, self.coeffs + other.coeffs)

    def sub(self, other: 'Element') -> 'Element':
        _check_same(self.algebra, other.algebra)
        return Element(self.algebra, self.coeffs - other.coeffs)

    def scale(self, c: complex) -> 'Element':
        return Element(self.algebra, c * self.coeffs)

    def mul(self, other: 'Element') -> 'Element':
        """Product in the atomic basis: x_i x_j = delta_ij x_i, hence coefficientwise."""
        _check_same(self.algebra, other.algebra)
        return Element(self.algebra, self.coeffs * other.coeffs)

    def star(self) -> 'Element':
        return Element(self.algebra, np.conj(self.coeffs))

    def __add__(self, other):
        if isinstance(other, Element):
            return self.add(other)
        if isinstance(other, Number):
            return self.add(Element.identity(self.algebra).scale(other))
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Element):
            return self.sub(other)
        if isinstance(other, Number):
            return self.sub(Element.identity(self.algebra).scale(other))
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, Number):
            return Element.identity(self.algebra).scale(other).sub(self)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, Element):
            return self.mul(other)
        if isinstance(other, Number):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Number):
            return self.scale(other)
        return NotImplemented

    def __neg__(self):
        return self.scale(-1)

    def __repr__(self):
        return f'Element(dim={self.dim}, coeffs={self.coeffs.tolist()})'

    def to_dict(self) -> Dict:
        """JSON form `{"dim": d, "coeffs": [[re, im], ...]}`."""
        return {'dim': self.dim, 'coeffs': [[float(c.real), float(c.imag)] for c in self.coeffs]}

    @classmethod
    def from_dict(cls, data: Dict) -> 'Element':
        coeffs = [complex(*c) if isinstance(c, (list, tuple)) else complex(c) for c in data['coeffs']]
        return cls(int(data['dim']), coeffs)

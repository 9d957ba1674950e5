import logging
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..algebra import AtomicAlgebra, Element, is_self_adjoint
from ..algebra._algebra import _as_algebra, _check_same
from ..utils import get_settings, DomainError
from ._states import State

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Subalgebra:
    """Unital subalgebra of an atomic algebra, described by a partition of the atoms.

    The block projections P_b = sum_(i in b) x_i form the atomic basis of the
    subalgebra. Blocks are ordered by their smallest atom.

    Attributes:
        parent (AtomicAlgebra): the algebra the subalgebra lives in
        blocks (tuple): partition of `range(parent.dim)` into sorted, non-empty tuples

    Examples:
        >>> from cstarinfo.probability import Subalgebra
        >>> Subalgebra(3, [[2], [0, 1]]).blocks
        ((0, 1), (2,))
    """
    parent: AtomicAlgebra
    blocks: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        parent = _as_algebra(self.parent)
        blocks = tuple(sorted(tuple(sorted(int(i) for i in block)) for block in self.blocks))
        atoms = [i for block in blocks for i in block]
        if any(len(block) == 0 for block in blocks):
            raise ValueError('Blocks must be non-empty')
        if sorted(atoms) != list(range(parent.dim)):
            raise ValueError(f'Blocks must partition the {parent.dim} atoms of the parent algebra')
        object.__setattr__(self, 'parent', parent)
        object.__setattr__(self, 'blocks', blocks)

    @property
    def dim(self) -> int:
        return len(self.blocks)

    def block_projections(self) -> List[Element]:
        return [Element.projection(self.parent, block) for block in self.blocks]

    def block_of(self, i: int) -> int:
        """Index of the block holding atom `i`."""
        for b, block in enumerate(self.blocks):
            if i in block:
                return b
        raise ValueError(f'Atom {i} is not in the parent algebra')

    def contains(self, x: Element) -> bool:
        """True when `x` is constant on every block."""
        tau = get_settings().tau_eq
        return all(np.max(np.abs(x.coeffs[list(block)] - x.coeffs[block[0]])) <= tau for block in self.blocks)

    def join(self, other: 'Subalgebra') -> 'Subalgebra':
        """Subalgebra generated by both subalgebras: the common refinement of the partitions."""
        _check_same(self.parent, other.parent)
        cells = {}
        for i in range(self.parent.dim):
            cells.setdefault((self.block_of(i), other.block_of(i)), []).append(i)
        return Subalgebra(self.parent, list(cells.values()))

    def restrict(self, omega: State) -> State:
        """Restriction of `omega` to the subalgebra, as a state on its block projections."""
        _check_same(self.parent, omega.algebra)
        return State(len(self.blocks), [omega.weights[list(block)].sum() for block in self.blocks])


def _cluster(rows: np.ndarray, tau: float) -> List[List[int]]:
    """Groups row indices whose rows agree with a representative within `tau` (sup norm)."""
    groups: List[List[int]] = []
    representatives: List[np.ndarray] = []
    for i, row in enumerate(rows):
        for group, rep in zip(groups, representatives):
            if np.max(np.abs(row - rep), initial=0.0) <= tau:
                group.append(i)
                break
        else:
            groups.append([i])
            representatives.append(row)
    return groups


def generated_subalgebra(S: Iterable[Element], algebra: Optional[Union[AtomicAlgebra, int]] = None) -> Subalgebra:
    """Smallest unital subalgebra A(S) containing the self-adjoint elements `S`.

    Atoms i and j share a block iff every generator has equal i-th and j-th
    coefficients (within `tau_eq`).

    Examples:
        >>> from cstarinfo.algebra import Element
        >>> from cstarinfo.probability import generated_subalgebra
        >>> generated_subalgebra([Element(3, [1, 1, 2])]).blocks
        ((0, 1), (2,))
        >>> generated_subalgebra([], algebra=3).blocks
        ((0, 1, 2),)

    Args:
        S (iterable of Element): generators
        algebra (AtomicAlgebra or int): parent algebra, required when `S` is empty

    Raises:
        DomainError: a generator is not self-adjoint
    """
    S = list(S)
    if algebra is None:
        if not S:
            raise ValueError('The parent algebra is needed for an empty generating set')
        algebra = S[0].algebra
    algebra = _as_algebra(algebra)
    for x in S:
        _check_same(algebra, x.algebra)
        if not is_self_adjoint(x):
            raise DomainError('Generators of a subalgebra must be self-adjoint')
    rows = np.array([x.coeffs.real for x in S]).T if S else np.zeros((algebra.dim, 0))
    groups = _cluster(rows, get_settings().tau_eq)
    log.debug('%d generators span %d blocks', len(S), len(groups))
    return Subalgebra(algebra, groups)


def as_subalgebra(S: Union[Subalgebra, Iterable[Element]], algebra: Optional[AtomicAlgebra] = None) -> Subalgebra:
    return S if isinstance(S, Subalgebra) else generated_subalgebra(S, algebra)

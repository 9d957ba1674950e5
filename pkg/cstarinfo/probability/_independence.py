import itertools
import logging
from functools import reduce
from typing import Iterable, Optional, Sequence, Tuple, Union

from ..algebra import Element
from ..utils import get_settings
from ._states import State, evaluate
from ._subalgebra import Subalgebra, as_subalgebra

log = logging.getLogger(__name__)

Generators = Union[Subalgebra, Iterable[Element]]


def uncorrelated(x: Element, y: Element, omega: State) -> bool:
    """x and y are uncorrelated in omega when omega(xy) = omega(x) omega(y) within `tau_eq`."""
    return abs(evaluate(omega, x * y) - evaluate(omega, x) * evaluate(omega, y)) <= get_settings().tau_eq


def independence_test(S1: Generators, S2: Generators, omega: State) -> Tuple[bool, Optional[Tuple[Element, Element]]]:
    """Tests whether the subalgebras generated by `S1` and `S2` are independent in `omega`.

    Independence holds iff every pair of block projections (P, Q) is uncorrelated,
    i.e. omega restricted to the joint partition is the product of its marginals.
    Bilinearity extends this to all pairs of subalgebra elements.

    Examples:
        >>> from cstarinfo.algebra import Element
        >>> from cstarinfo.probability import State, independence_test
        >>> first = [Element.projection(4, [0, 1])]
        >>> second = [Element.projection(4, [0, 2])]
        >>> independence_test(first, second, State.uniform(4))[0]
        True
        >>> independent, (P, Q) = independence_test(first, second, State(4, [0.5, 0, 0, 0.5]))
        >>> independent
        False

    Args:
        S1, S2 (Subalgebra or iterable of Element): generating sets or subalgebras
        omega (State): state on the common algebra

    Returns:
        independent (bool): verdict
        witness (tuple or None): the first violating pair of block projections (P, Q), scanning
            the blocks of `S1` in the outer loop and those of `S2` in the inner loop, each
            ordered by smallest atom. Any violating pair proves dependence.
    """
    A1 = as_subalgebra(S1, omega.algebra)
    A2 = as_subalgebra(S2, omega.algebra)
    return mutual_independence_test([A1, A2], omega)


def mutual_independence_test(sets: Sequence[Generators], omega: State) -> Tuple[bool, Optional[Tuple[Element, ...]]]:
    """Mutual independence of several subalgebras: omega(P_1 ... P_m) = omega(P_1) ... omega(P_m)
    for every choice of block projections, one per subalgebra.

    Returns:
        independent (bool): verdict
        witness (tuple or None): the first violating tuple of block projections in
            lexicographic order of the block indices (blocks ordered by smallest atom)
    """
    tau = get_settings().tau_eq
    subalgebras = [as_subalgebra(S, omega.algebra) for S in sets]
    projections = [A.block_projections() for A in subalgebras]
    marginals = [[evaluate(omega, P).real for P in Ps] for Ps in projections]
    for choice in itertools.product(*[range(len(Ps)) for Ps in projections]):
        chosen = [projections[a][b] for a, b in enumerate(choice)]
        joint = evaluate(omega, reduce(lambda x, y: x * y, chosen)).real
        product = 1.0
        for a, b in enumerate(choice):
            product *= marginals[a][b]
        if abs(joint - product) > tau:
            log.debug('Independence fails at blocks %s: %g != %g', choice, joint, product)
            return False, tuple(chosen)
    return True, None

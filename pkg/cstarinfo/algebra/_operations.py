import logging
from typing import Callable, Dict, List, Optional, Set, Tuple, Union

import numpy as np
from typing_extensions import Literal

from ..utils import get_settings, AlgebraMismatchError, DomainError
from ._algebra import Element, distinct_values
from ._tensor import MultiIndex, TensorElement

log = logging.getLogger(__name__)

AnyElement = Union[Element, TensorElement]


def _align(a: AnyElement, b: AnyElement) -> Tuple[AnyElement, AnyElement]:
    if isinstance(a, Element) and isinstance(b, Element):
        return a, b
    a = TensorElement.from_element(a) if isinstance(a, Element) else a
    b = TensorElement.from_element(b) if isinstance(b, Element) else b
    if not a.factor_algebra.compatible(b.factor_algebra):
        raise AlgebraMismatchError(f'Factor algebras of dimension {a.dim} and {b.dim} do not match')
    return a, b


def arithmetic(a: AnyElement, b: Optional[AnyElement] = None,
               op: Literal['add', 'sub', 'scale', 'mul', 'star'] = 'add', c: complex = 1.0) -> AnyElement:
    """Algebra operations on elements and tensor elements.

    Examples:
        >>> from cstarinfo.algebra import Element, arithmetic
        >>> arithmetic(Element(2, [1, 0]), Element(2, [1, 0]), op='mul').coeffs.real.tolist()
        [1.0, 0.0]
        >>> arithmetic(Element(2, [1, 2]), op='scale', c=3).coeffs.real.tolist()
        [3.0, 6.0]

    Args:
        a (Element or TensorElement): first operand
        b (Element or TensorElement): second operand, unused by `scale` and `star`
        op (str): `add`, `sub`, `scale`, `mul` or `star`
        c (complex): scale factor used by `scale`

    Returns:
        The result, a TensorElement as soon as one operand is a tensor element

    Raises:
        AlgebraMismatchError: operands with different (factor) algebras
    """
    if op == 'scale':
        return a.scale(c)
    if op == 'star':
        return a.star()
    if op not in ('add', 'sub', 'mul'):
        raise ValueError(f'Invalid operation {op!r}')
    if b is None:
        raise ValueError(f'Operation {op!r} needs two operands')
    a, b = _align(a, b)
    return getattr(a, op)(b)


def _values(x: AnyElement) -> np.ndarray:
    return x.coeffs if isinstance(x, Element) else x.expansion_values()


def norm_and_spectrum(x: AnyElement) -> Tuple[float, Set[complex]]:
    """Sup norm and spectrum Sp(x) = {a_i} of the atomic expansion.

    Examples:
        >>> from cstarinfo.algebra import Element, norm_and_spectrum
        >>> norm, spectrum = norm_and_spectrum(Element(2, [2, 3]))
        >>> norm
        3.0
        >>> sorted(s.real for s in spectrum)
        [2.0, 3.0]

    Returns:
        norm (float): max |a_i|
        spectrum (set): distinct coefficients, merged within `tau_eq`
    """
    values = _values(x)
    norm = float(np.max(np.abs(values))) if values.size else 0.0
    return norm, set(distinct_values(values))


def norm(x: AnyElement) -> float:
    return norm_and_spectrum(x)[0]


def spectrum(x: AnyElement) -> Set[complex]:
    return norm_and_spectrum(x)[1]


def allclose(a: AnyElement, b: AnyElement, tau: Optional[float] = None) -> bool:
    """True when `a - b` has norm at most `tau` (default `tau_eq`)."""
    tau = get_settings().tau_eq if tau is None else tau
    return norm(arithmetic(a, b, op='sub')) <= tau


def is_self_adjoint(x: Element) -> bool:
    return bool(np.all(np.abs(x.coeffs.imag) <= get_settings().tau_eq))


def is_positive(x: Element) -> bool:
    return is_self_adjoint(x) and bool(np.all(x.coeffs.real >= -get_settings().tau_eq))


def is_projection(x: Element) -> bool:
    """Self-adjoint with p^2 = p, i.e. every coefficient is 0 or 1."""
    tau = get_settings().tau_eq
    return is_self_adjoint(x) and bool(np.all(np.abs(x.coeffs * x.coeffs - x.coeffs) <= tau))


def leq(x: Element, y: Element) -> bool:
    """Partial order of the algebra: x <= y iff y - x is positive."""
    return is_positive(y - x)


def sqrt(x: Element) -> Element:
    """Unique positive square root of a positive element."""
    if not is_positive(x):
        raise DomainError('Square root requires a positive element')
    return Element(x.algebra, np.sqrt(np.clip(x.coeffs.real, 0.0, None)))


def absolute(x: Element) -> Element:
    """|x| = sqrt(x^2) of a self-adjoint element."""
    if not is_self_adjoint(x):
        raise DomainError('|x| requires a self-adjoint element')
    return Element(x.algebra, np.abs(x.coeffs.real))


def pos_neg_parts(x: Element) -> Tuple[Element, Element]:
    """Positive and negative parts x+ = (|x| + x)/2 and x- = (|x| - x)/2."""
    magnitude = absolute(x)
    real = Element(x.algebra, x.coeffs.real)
    return (magnitude + real).scale(0.5), (magnitude - real).scale(0.5)


_POSITIVITY = {
    'is_self_adjoint': is_self_adjoint,
    'is_positive': is_positive,
    'is_projection': is_projection,
    'sqrt': sqrt,
    'abs': absolute,
    'pos_neg_parts': pos_neg_parts,
}


def positivity_toolkit(x: Element, want: Literal['is_self_adjoint', 'is_positive', 'is_projection',
                                                  'sqrt', 'abs', 'pos_neg_parts']):
    """Order-theoretic queries and constructions on a single-factor element.

    Examples:
        >>> from cstarinfo.algebra import Element, positivity_toolkit
        >>> positivity_toolkit(Element(3, [1, 0, 1]), 'is_projection')
        True
        >>> positivity_toolkit(Element(2, [4, 9]), 'sqrt').coeffs.real.tolist()
        [2.0, 3.0]
        >>> plus, minus = positivity_toolkit(Element(2, [3, -2]), 'pos_neg_parts')
        >>> plus.coeffs.real.tolist(), minus.coeffs.real.tolist()
        ([3.0, 0.0], [0.0, 2.0])

    Args:
        x (Element): element to inspect
        want (str): `is_self_adjoint`, `is_positive`, `is_projection`, `sqrt`, `abs` or `pos_neg_parts`

    Returns:
        A boolean for the predicates, an Element for `sqrt` and `abs`, a pair of Elements
        for `pos_neg_parts`
    """
    if want not in _POSITIVITY:
        raise ValueError(f'Invalid query {want!r}')
    return _POSITIVITY[want](x)


def _log_extended(base: float) -> Callable[[np.ndarray], np.ndarray]:
    def f(values):
        real = values.real
        out = np.zeros_like(real)
        positive = real > 0
        out[positive] = np.log(real[positive]) / np.log(base)
        return out
    return f


# name: (function, domain predicate, real domain)
_NAMED_FUNCTIONS: Dict[str, Tuple[Callable, Optional[Callable], bool]] = {
    'exp': (np.exp, None, False),
    'log': (_log_extended(np.e), lambda v: v.real > 0, True),
    'log2': (_log_extended(2.0), lambda v: v.real > 0, True),
    'sqrt': (lambda v: np.sqrt(np.clip(v.real, 0.0, None)), lambda v: v.real >= -get_settings().tau_eq, True),
    'abs': (np.abs, None, False),
    'square': (np.square, None, False),
}


def _apply(f: Callable, values: np.ndarray) -> np.ndarray:
    try:
        out = np.asarray(f(values), dtype=complex)
        if out.shape == values.shape:
            return out
    except (TypeError, ValueError):
        pass
    return np.array([f(v) for v in values.ravel()], dtype=complex).reshape(values.shape)


def functional_calculus(x: AnyElement, f: Union[str, Callable], domain_check: bool = True,
                        domain: Optional[Callable[[np.ndarray], np.ndarray]] = None,
                        real_domain: bool = False) -> AnyElement:
    """Applies a scalar function coefficientwise over the full atomic expansion, f(x) = sum_i f(a_i) x_i.

    Named functions are `exp`, `log`, `log2`, `sqrt`, `abs` and `square`. The logarithms
    follow the extended convention: with `domain_check` off every non-positive coefficient
    is mapped to 0.

    Examples:
        >>> from cstarinfo.algebra import Element, functional_calculus
        >>> functional_calculus(Element(3, [1, 2, 4]), 'log2').coeffs.real.tolist()
        [0.0, 1.0, 2.0]
        >>> functional_calculus(Element(2, [0, 0.5]), 'log2', domain_check=False).coeffs.real.tolist()
        [0.0, -1.0]

    Args:
        x (Element or TensorElement): argument
        f (str or callable): named function or a vectorizable scalar function
        domain_check (bool): reject coefficients outside of the function's domain
        domain (callable): for custom `f`, a predicate returning a boolean mask of admissible values
        real_domain (bool): for custom `f`, whether `x` must be self-adjoint

    Returns:
        f(x), of the same kind as `x`

    Raises:
        DomainError: a coefficient lies outside of the domain while `domain_check` is on
    """
    if isinstance(f, str):
        if f not in _NAMED_FUNCTIONS:
            raise ValueError(f'Unknown function {f!r}')
        func, domain, real_domain = _NAMED_FUNCTIONS[f]
    else:
        func = f

    if isinstance(x, TensorElement):
        positions = x.explicit_positions()
        values = x.expand(positions)
    else:
        values = x.coeffs

    if domain_check:
        tau = get_settings().tau_eq
        if real_domain and np.any(np.abs(values.imag) > tau):
            raise DomainError('Function with a real domain applied to a non-self-adjoint element')
        if domain is not None and not np.all(domain(values)):
            raise DomainError('Coefficient outside of the function domain')

    out = _apply(func, values)
    if isinstance(x, Element):
        return Element(x.algebra, out)

    terms = {}
    for index in np.ndindex(*out.shape):
        terms[MultiIndex(zip(positions, index))] = out[index]
    return TensorElement(x.factor_algebra, terms, level=x.level)


def _as_tensor(x: AnyElement) -> TensorElement:
    return TensorElement.from_element(x) if isinstance(x, Element) else x


def tensor_product(a: AnyElement, b: AnyElement) -> TensorElement:
    """a x b: b's positions are shifted past a's level.

    Examples:
        >>> from cstarinfo.algebra import Element, tensor_product
        >>> t = tensor_product(Element.basis(2, 0), Element.basis(2, 1))
        >>> [(key.pairs, c.real) for key, c in t.terms.items()]
        [(((1, 0), (2, 1)), 1.0)]
    """
    a, b = _align(_as_tensor(a), _as_tensor(b))
    terms: Dict[MultiIndex, complex] = {}
    for key_a, c_a in a.terms.items():
        for key_b, c_b in b.terms.items():
            key = MultiIndex(key_a.pairs + key_b.shift(a.level).pairs)
            terms[key] = terms.get(key, 0j) + c_a * c_b
    return TensorElement(a.factor_algebra, terms, level=a.level + b.level)


def embed_at(x: AnyElement, k: int) -> TensorElement:
    """The k-th signal x^_k = 1 x ... x 1 x x x 1 x ... with x at position k."""
    if k < 1:
        raise ValueError(f'Positions are 1-based, got {k}')
    x = _as_tensor(x)
    if x.support_level > 1:
        raise ValueError('embed_at requires a level-1 operand')
    terms = {MultiIndex((k, i) for _, i in key.pairs): c for key, c in x.terms.items()}
    return TensorElement(x.factor_algebra, terms, level=k)


def truncate_to_level(x: AnyElement, k: int, guard_override: bool = False) -> np.ndarray:
    """Dense coefficient vector of length dim**k over the atomic strings of length k.

    Strings are ordered lexicographically with position 1 most significant.

    Examples:
        >>> from cstarinfo.algebra import Element, embed_at, truncate_to_level
        >>> truncate_to_level(embed_at(Element.basis(2, 0), 2), 2).real.tolist()
        [1.0, 0.0, 1.0, 0.0]
    """
    x = _as_tensor(x)
    if k < x.support_level:
        raise ValueError(f'Level {k} is below the support level {x.support_level} of the element')
    return x.expand(range(1, k + 1), guard_override=guard_override).ravel()


_TENSOR_OPS = ('tensor_product', 'embed_at', 'truncate_to_level')


def tensor_ops(a: AnyElement, b: Optional[AnyElement] = None,
               op: Literal['tensor_product', 'embed_at', 'truncate_to_level'] = 'tensor_product',
               k: Optional[int] = None):
    """Dispatches to [cstarinfo.algebra.tensor_product][], [cstarinfo.algebra.embed_at][]
    and [cstarinfo.algebra.truncate_to_level][].

    Args:
        a (Element or TensorElement): first operand
        b (Element or TensorElement): second operand of `tensor_product`
        op (str): `tensor_product`, `embed_at` or `truncate_to_level`
        k (int): position for `embed_at`, level for `truncate_to_level`
    """
    if op not in _TENSOR_OPS:
        raise ValueError(f'Invalid operation {op!r}')
    if op == 'tensor_product':
        if b is None:
            raise ValueError('tensor_product needs two operands')
        return tensor_product(a, b)
    if k is None:
        raise ValueError(f'{op} needs k')
    return embed_at(a, k) if op == 'embed_at' else truncate_to_level(a, k)


def sum_embedded(x: Element, n: int) -> TensorElement:
    """x^_1 + ... + x^_n, the sum of n embedded copies of a single-factor element."""
    total = TensorElement.scalar(x.algebra, 0.0, level=n)
    for k in range(1, n + 1):
        total = total.add(embed_at(x, k))
    log.debug('Embedded sum of %d copies has %d terms', n, len(total.terms))
    return total


def string_values(x: Element, n: int) -> np.ndarray:
    """Dense values of x^_1 + ... + x^_n over all dim**n strings (no guard; callers check)."""
    values = np.zeros(1, dtype=complex)
    for _ in range(n):
        values = np.add.outer(values, x.coeffs).ravel()
    return values


def product_values(x: Element, n: int) -> np.ndarray:
    """Dense coefficients of x x x x ... x x (n factors) over all dim**n strings."""
    values = np.ones(1, dtype=complex)
    for _ in range(n):
        values = np.multiply.outer(values, x.coeffs).ravel()
    return values

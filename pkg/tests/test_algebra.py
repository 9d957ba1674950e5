import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from cstarinfo.algebra import (AtomicAlgebra, Element, arithmetic, norm_and_spectrum, norm, spectrum,
                               positivity_toolkit, functional_calculus, is_positive, leq, distinct_values)
from cstarinfo.utils import AlgebraMismatchError, DomainError


finite = st.floats(min_value=-10, max_value=10, allow_nan=False, allow_infinity=False)


@st.composite
def complex_elements(draw, min_dim=2, max_dim=8):
    dim = draw(st.integers(min_dim, max_dim))
    re = draw(arrays(np.float64, dim, elements=finite))
    im = draw(arrays(np.float64, dim, elements=finite))
    return Element(dim, re + 1j * im)


@st.composite
def real_elements(draw, min_dim=2, max_dim=8):
    dim = draw(st.integers(min_dim, max_dim))
    return Element(dim, draw(arrays(np.float64, dim, elements=finite)))


@st.composite
def integer_elements(draw, min_dim=2, max_dim=8):
    dim = draw(st.integers(min_dim, max_dim))
    return Element(dim, draw(st.lists(st.integers(-5, 5), min_size=dim, max_size=dim)))


def test_atomic_algebra():
    A = AtomicAlgebra(3, labels=('a', 'b', 'c'))
    assert A.label(2) == 'c'
    assert AtomicAlgebra(4).label(3) == '3'

    # 1 - raises ValueError on invalid dimension or labels
    with pytest.raises(ValueError):
        AtomicAlgebra(0)
    with pytest.raises(ValueError):
        AtomicAlgebra(2, labels=('a', 'a'))
    with pytest.raises(ValueError):
        AtomicAlgebra(2, labels=('a',))


def test_arithmetic():
    x = Element(2, [1, 0])
    assert (arithmetic(x, x, op='mul').coeffs == [1, 0]).all()
    assert arithmetic(Element(2, [1 + 1j, 2]), op='star').coeffs.tolist() == [1 - 1j, 2]
    assert arithmetic(Element(2, [1, 2]), Element(2, [3, 4]), op='add').coeffs.real.tolist() == [4, 6]
    assert arithmetic(Element(2, [1, 2]), Element(2, [3, 4]), op='sub').coeffs.real.tolist() == [-2, -2]
    assert (Element(2, [1, 2]) + 1).coeffs.real.tolist() == [2, 3]

    # 1 - algebra mismatch
    with pytest.raises(AlgebraMismatchError):
        arithmetic(Element(2, [1, 0]), Element(3, [1, 0, 0]), op='add')

    # 2 - raises ValueError for an unknown operation
    with pytest.raises(ValueError):
        arithmetic(x, x, op='div')

    # 3 - elements are immutable
    with pytest.raises(AttributeError):
        x.coeffs = np.zeros(2)
    with pytest.raises(ValueError):
        x.coeffs[0] = 5


def test_atomic_basis_relations():
    for dim in range(1, 7):
        basis = [Element.basis(dim, i) for i in range(dim)]
        total = Element.zero(dim)
        for i, e_i in enumerate(basis):
            assert np.array_equal(e_i.star().coeffs, e_i.coeffs)
            assert norm(e_i) == 1.0
            for j, e_j in enumerate(basis):
                expected = e_i.coeffs if i == j else np.zeros(dim)
                assert np.array_equal((e_i * e_j).coeffs, expected)
            total = total + e_i
        assert np.array_equal(total.coeffs, Element.identity(dim).coeffs)


def test_norm_and_spectrum():
    n, sp = norm_and_spectrum(Element(2, [2, 3]))
    assert n == 3
    assert sp == {2, 3}

    n, sp = norm_and_spectrum(Element.identity(4))
    assert n == 1
    assert sp == {1}

    # 1 - values within tau_eq are one spectral value
    assert len(spectrum(Element(3, [1, 1 + 1e-12, 2]))) == 2
    assert len(distinct_values([0, 1e-3, 2e-3], tau=1.5e-3)) == 2


def test_positivity_toolkit():
    assert positivity_toolkit(Element(2, [4, 9]), 'sqrt').coeffs.real.tolist() == [2, 3]

    plus, minus = positivity_toolkit(Element(2, [3, -2]), 'pos_neg_parts')
    assert plus.coeffs.real.tolist() == [3, 0]
    assert minus.coeffs.real.tolist() == [0, 2]

    assert positivity_toolkit(Element(3, [1, 0, 1]), 'is_projection')
    assert not positivity_toolkit(Element(2, [1, 0.5]), 'is_projection')
    assert positivity_toolkit(Element(2, [1, -1e-12]), 'is_positive')
    assert not positivity_toolkit(Element(2, [1, 1j]), 'is_self_adjoint')
    assert positivity_toolkit(Element(2, [-1, 2]), 'abs').coeffs.real.tolist() == [1, 2]

    # 1 - partial order
    assert leq(Element(2, [1, 2]), Element(2, [1, 3]))
    assert not leq(Element(2, [1, 2]), Element(2, [0, 3]))

    # 2 - domain errors
    with pytest.raises(DomainError):
        positivity_toolkit(Element(2, [1, -1]), 'sqrt')
    with pytest.raises(DomainError):
        positivity_toolkit(Element(2, [1, 1j]), 'abs')
    with pytest.raises(ValueError):
        positivity_toolkit(Element(2, [1, 1]), 'inverse')


def test_functional_calculus():
    assert np.allclose(functional_calculus(Element(2, [0, 1]), 'exp').coeffs, [1, np.e])
    assert functional_calculus(Element(3, [1, 2, 4]), 'log2').coeffs.real.tolist() == [0, 1, 2]

    p = Element.projection(3, [0, 2])
    assert norm(functional_calculus(p, lambda v: v * v - v)) == 0

    # 1 - extended log maps zero to zero with the domain check off
    assert functional_calculus(Element(2, [0, 0.5]), 'log2', domain_check=False).coeffs.real.tolist() == [0, -1]

    # 2 - domain violations
    with pytest.raises(DomainError):
        functional_calculus(Element(2, [-1, 2]), 'log2')
    with pytest.raises(DomainError):
        functional_calculus(Element(2, [0, 2]), 'log')
    with pytest.raises(DomainError):
        functional_calculus(Element(2, [1j, 2]), 'sqrt')
    with pytest.raises(ValueError):
        functional_calculus(Element(2, [1, 2]), 'tan')


def test_element_json():
    x = Element(2, [1 + 2j, 3])
    assert x.to_dict() == {'dim': 2, 'coeffs': [[1.0, 2.0], [3.0, 0.0]]}
    assert np.array_equal(Element.from_dict(x.to_dict()).coeffs, x.coeffs)


@settings(max_examples=1000, deadline=None, derandomize=True)
@given(complex_elements())
def test_c_star_identity(x):
    assert abs(norm(x * x.star()) - norm(x) ** 2) <= 1e-9 * max(1.0, norm(x) ** 2)


@settings(max_examples=300, deadline=None, derandomize=True)
@given(integer_elements())
def test_spectral_mapping(x):
    def poly(v):
        return v * v * v - 2 * v + 1

    mapped = spectrum(functional_calculus(x, poly))
    assert mapped == {poly(s.real) for s in spectrum(x)}


@settings(max_examples=1000, deadline=None, derandomize=True)
@given(real_elements())
def test_pos_neg_parts(x):
    plus, minus = positivity_toolkit(x, 'pos_neg_parts')
    assert np.allclose((plus - minus).coeffs, x.coeffs, atol=1e-9)
    assert norm(plus * minus) <= 1e-9
    assert is_positive(plus) and is_positive(minus)
    assert np.allclose((plus + minus).coeffs, positivity_toolkit(x, 'abs').coeffs, atol=1e-9)

import itertools

import numpy as np
import pytest

from cstarinfo.algebra import Element
from cstarinfo.probability import (State, Subalgebra, generated_subalgebra, independence_test,
                                   mutual_independence_test, uncorrelated, evaluate)
from cstarinfo.utils import DomainError


def factor_projections(a, b):
    first = [Element.projection(a * b, [r * b + c for c in range(b)]) for r in range(a)]
    second = [Element.projection(a * b, [r * b + c for r in range(a)]) for c in range(b)]
    return first, second


def factorizes(weights, a, b, tau=1e-9):
    joint = np.asarray(weights).reshape(a, b)
    return bool(np.all(np.abs(joint - np.outer(joint.sum(axis=1), joint.sum(axis=0))) <= tau))


def test_generated_subalgebra():
    assert generated_subalgebra([Element(3, [1, 1, 2])]).blocks == ((0, 1), (2,))
    assert generated_subalgebra([], algebra=4).blocks == ((0, 1, 2, 3),)
    A = generated_subalgebra([Element(4, [1, 1, 2, 2]), Element(4, [1, 3, 1, 3])])
    assert A.blocks == ((0,), (1,), (2,), (3,))

    # 1 - block projections satisfy the atomic basis relations
    A = generated_subalgebra([Element(5, [1, 2, 1, 3, 2])])
    Ps = A.block_projections()
    assert np.array_equal(sum(P.coeffs for P in Ps), np.ones(5))
    for P, Q in itertools.product(Ps, Ps):
        assert np.array_equal((P * Q).coeffs, P.coeffs if P is Q else np.zeros(5))

    # 2 - join and restriction
    B = generated_subalgebra([Element(5, [0, 0, 0, 1, 1])])
    assert A.join(B).blocks == ((0, 2), (1,), (3,), (4,))
    assert np.allclose(A.restrict(State.uniform(5)).weights, [0.4, 0.4, 0.2])
    assert A.contains(Element(5, [7, 8, 7, 9, 8]))
    assert not A.contains(Element(5, [7, 8, 6, 9, 8]))

    # 3 - errors
    with pytest.raises(DomainError):
        generated_subalgebra([Element(2, [1j, 0])])
    with pytest.raises(ValueError):
        generated_subalgebra([])
    with pytest.raises(ValueError):
        Subalgebra(3, [[0, 1], [1, 2]])


def test_independence_examples():
    first, second = factor_projections(2, 2)
    product = State(4, np.kron([0.3, 0.7], [0.6, 0.4]))
    assert independence_test(first, second, product) == (True, None)

    independent, witness = independence_test(first, second, State(4, [0.5, 0, 0, 0.5]))
    assert not independent
    P, Q = witness
    omega = State(4, [0.5, 0, 0, 0.5])
    assert abs(evaluate(omega, P * Q) - evaluate(omega, P) * evaluate(omega, Q)) > 0.2
    assert P.coeffs.real.tolist() == [1, 1, 0, 0] and Q.coeffs.real.tolist() == [1, 0, 1, 0]

    # 1 - the later pair (P_1, Q_2) violates factorization as well
    assert abs(evaluate(omega, first[0] * second[1]) - evaluate(omega, first[0]) * evaluate(omega, second[1])) > 0.2

    # 2 - the scalar subalgebra is independent of everything
    assert independence_test(first, [Element.identity(4)], State(4, [0.1, 0.2, 0.3, 0.4]))[0]

    # 3 - mutual independence of three binary factors
    a, b, c = [0.2, 0.8], [0.5, 0.5], [0.9, 0.1]
    omega = State(8, np.kron(np.kron(a, b), c))
    bits = [[Element(8, [(i >> shift) & 1 for i in range(8)])] for shift in (2, 1, 0)]
    assert mutual_independence_test(bits, omega)[0]
    assert not mutual_independence_test(bits, State(8, [0.5, 0, 0, 0, 0, 0, 0, 0.5]))[0]

    assert uncorrelated(Element(4, [1, 1, 0, 0]), Element(4, [1, 0, 1, 0]), State.uniform(4))


@pytest.mark.parametrize('a,b', [(2, 2), (2, 3)])
def test_independence_iff_factorization(a, b):
    first, second = factor_projections(a, b)
    grid = [0.0, 0.25, 0.5, 0.75, 1.0]

    # 1 - exhaustive grid of product states and of their perturbations
    candidates = []
    for p in grid:
        for q in itertools.product(grid, repeat=b):
            if sum(q) == 0:
                continue
            marginal_a = np.array([p, 1 - p])
            marginal_b = np.array(q) / sum(q)
            weights = np.kron(marginal_a, marginal_b)
            candidates.append(weights)
            shifted = weights.copy()
            shifted[0] += 0.05
            shifted[-1] += 0.05
            candidates.append(shifted / shifted.sum())

    # 2 - random states and random product states
    rng = np.random.default_rng(0)
    for _ in range(1000):
        candidates.append(rng.dirichlet(np.ones(a * b)))
        candidates.append(np.kron(rng.dirichlet(np.ones(a)), rng.dirichlet(np.ones(b))))

    for weights in candidates:
        omega = State(a * b, weights)
        assert independence_test(first, second, omega)[0] == factorizes(omega.weights, a, b)

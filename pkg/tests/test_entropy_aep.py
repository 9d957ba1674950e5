import numpy as np
import pytest
from scipy.special import entr

from cstarinfo.algebra import Element, TensorElement, allclose, tensor_product
from cstarinfo.information import (Source, source_output, entropy, aep_typical_set, aep_projection, aep_sweep,
                                   mass_threshold, TypicalSetReport)
from cstarinfo.probability import State, ProductState, evaluate, pure_check, trace
from cstarinfo.utils import GuardExceededError


def test_source_output():
    source = Source.from_weights([0.25, 0.75])
    output = source_output(source)
    assert output.coeffs.real.tolist() == [0.25, 0.75]
    assert abs(evaluate(source.state, output) - 0.625) <= 1e-12

    pure = State.point_mass(3, 1)
    assert pure_check(pure)
    assert source_output(pure).coeffs.real.tolist() == [0, 1, 0]

    with pytest.raises(ValueError):
        Source(3, State.uniform(2))


def test_entropy():
    assert entropy(State.uniform(2)) == 1.0
    assert entropy(State(2, [1, 0])) == 0.0
    assert abs(entropy(State(2, [0.8, 0.2])) - 0.7219280948873623) <= 1e-12

    # 1 - matches scipy and stays within [0, log2 d]
    rng = np.random.default_rng(3)
    for _ in range(500):
        dim = int(rng.integers(1, 9))
        weights = rng.dirichlet(np.ones(dim))
        if rng.random() < 0.3:
            weights[rng.integers(dim)] = 0
            weights = weights / weights.sum() if weights.sum() > 0 else np.eye(dim)[0]
        H = entropy(State(dim, weights))
        assert abs(H - entr(weights).sum() / np.log(2)) <= 1e-12
        assert -1e-12 <= H <= np.log2(dim) + 1e-12
    for dim in range(1, 9):
        assert abs(entropy(State.uniform(dim)) - np.log2(dim)) <= 1e-12


def test_aep_examples():
    for n in range(1, 11):
        report = aep_typical_set(Source.from_weights([0.5, 0.5]), n, 0.1)
        assert report.count == 2 ** n
        assert report.prob_mass == 1.0
        assert report.mass_ok and report.count_ok

    report = aep_typical_set(Source.from_weights([1, 0]), 5, 0.1)
    assert report.count == 1
    assert report.prob_mass == 1.0

    # 1 - errors
    with pytest.raises(GuardExceededError):
        aep_typical_set(Source.from_weights([0.9, 0.1]), 30, 0.1)
    with pytest.raises(ValueError):
        aep_typical_set(Source.from_weights([0.9, 0.1]), 4, 0)
    with pytest.raises(ValueError):
        aep_typical_set(Source.from_weights([0.9, 0.1]), 4, 0.1, method='sample')

    assert TypicalSetReport.from_dict(report.to_dict()) == report


def test_aep_bounds():
    source = Source.from_weights([0.9, 0.1])
    enumerated = aep_sweep(source, range(1, 21), 0.2)
    by_types = aep_sweep(source, range(1, 21), 0.2, method='types')
    for a, b in zip(enumerated, by_types):
        assert a.count == b.count
        assert abs(a.prob_mass - b.prob_mass) <= 1e-12
        assert a.upper_ok

    # 1 - at n = 20 the typical mass is still about 0.75
    assert abs(enumerated[-1].prob_mass - 0.7455) <= 1e-3
    assert mass_threshold(enumerated) is None

    # 2 - past the threshold the mass exceeds 1 - eps and the lower count bound holds
    reports = aep_sweep(source, range(1, 61), 0.2, method='types')
    n0 = mass_threshold(reports)
    assert n0 is not None and 20 < n0 <= 60
    for report in reports:
        assert report.upper_ok
        if report.n >= n0:
            assert report.mass_ok and report.lower_ok


def test_aep_projection():
    source = Source.from_weights([0.7, 0.3])
    n, eps = 8, 0.15
    Q = aep_projection(source, n, eps)
    report = aep_typical_set(source, n, eps)

    assert allclose(Q * Q, Q)
    assert abs(trace(Q) - report.count) <= 1e-9
    assert abs(evaluate(ProductState.power(source.state), Q) - report.prob_mass) <= 1e-12

    # 1 - Q commutes with the n-fold output
    output = source_output(source)
    product = output
    for _ in range(n - 1):
        product = tensor_product(product, output)
    assert allclose(Q * product, product * Q)

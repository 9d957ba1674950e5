import itertools

import numpy as np
import pytest

from cstarinfo.algebra import Element, truncate_to_level
from cstarinfo.channel import (Channel, bsc, bec, identity, useless, apply_channel, push_state, is_unital,
                               maps_positive, joint, channel_output, output_state, classify, omega_c_independent,
                               info_metrics, LosslessChannel, numerical_rank, JointState)
from cstarinfo.probability import State, evaluate
from cstarinfo.utils import AlgebraMismatchError, GuardExceededError, settings


def random_channel(rng, m, n):
    return Channel(rng.dirichlet(np.ones(n), size=m))


def grid_channels(m, n, steps):
    rows = [np.array(row) / steps for row in itertools.product(range(steps + 1), repeat=n) if sum(row) == steps]
    for choice in itertools.product(range(len(rows)), repeat=m):
        yield Channel([rows[i] for i in choice])


def test_channel():
    c = Channel([[0.9, 0.1], [0.2, 0.8]])
    assert c.input_dim == 2 and c.output_dim == 2
    assert Channel.from_dict(c.to_dict()) == c
    assert bec(0.2).output_dim == 3
    assert useless([0.3, 0.7], 3).matrix.tolist() == [[0.3, 0.7]] * 3
    assert np.allclose(bsc(0.1).power(2).matrix.sum(axis=1), 1)
    assert bsc(0.1).power(2).matrix[0, 3] == pytest.approx(0.01)

    # 1 - matrix must be row stochastic and non-negative
    with pytest.raises(ValueError):
        Channel([[0.5, 0.4], [0, 1]])
    with pytest.raises(ValueError):
        Channel([[1.5, -0.5], [0, 1]])
    with pytest.raises(ValueError):
        Channel([0.5, 0.5])
    with pytest.raises(ValueError):
        bsc(1.2)
    with pytest.raises(ValueError):
        Channel.from_dict({'input_dim': 3, 'output_dim': 2, 'matrix': [[1, 0], [0, 1]]})

    # 2 - immutable
    with pytest.raises(AttributeError):
        c.matrix = np.eye(2)
    with pytest.raises(ValueError):
        c.matrix[0, 0] = 0.5


def test_apply_channel():
    omega = State(3, [0.2, 0.3, 0.5])
    for j in range(3):
        assert apply_channel(identity(3), Element.basis(3, j)).coeffs.tolist() == Element.basis(3, j).coeffs.tolist()
    assert push_state(identity(3), omega).weights.tolist() == omega.weights.tolist()
    assert np.allclose(push_state(bsc(0.1), State.uniform(2)).weights, [0.5, 0.5])
    assert np.allclose(push_state(bsc(0.1), State(2, [1, 0])).weights, [0.9, 0.1])

    # 1 - dimension mismatch
    with pytest.raises(AlgebraMismatchError):
        apply_channel(bsc(0.1), Element.identity(3))
    with pytest.raises(AlgebraMismatchError):
        push_state(bec(0.1), State.uniform(3))

    # 2 - unital, positive and dual to push_state
    rng = np.random.default_rng(0)
    for _ in range(500):
        m, n = rng.integers(1, 6, size=2)
        c = random_channel(rng, m, n)
        assert is_unital(c) and maps_positive(c)
        y = Element(n, rng.random(n))
        assert np.all(apply_channel(c, y).coeffs.real >= 0)
        omega = State(m, rng.dirichlet(np.ones(m)))
        y = Element(n, rng.normal(size=n) + 1j * rng.normal(size=n))
        assert abs(evaluate(push_state(c, omega), y) - evaluate(omega, apply_channel(c, y))) <= 1e-12


def test_joint():
    result = joint(bsc(0.1), State.uniform(2))
    assert np.allclose(result.joint_state.weights, [[0.45, 0.05], [0.05, 0.45]])
    assert np.allclose(truncate_to_level(result.joint_output, 1), result.joint_state.weights.ravel())
    assert np.allclose(truncate_to_level(result.channel_output, 1), bsc(0.1).matrix.ravel())

    omega = State(3, [0.2, 0.3, 0.5])
    assert np.allclose(joint(identity(3), omega).joint_state.weights, np.diag(omega.weights))

    # 1 - memoryless factorization and marginals at level 2
    rng = np.random.default_rng(1)
    for _ in range(50):
        m, n = rng.integers(1, 4, size=2)
        c = random_channel(rng, m, n)
        omega = State(m, rng.dirichlet(np.ones(m)))
        J = joint(c, omega).joint_state.weights
        level2 = joint(c, omega, 2)
        W = level2.joint_state.weights.reshape(m, m, n, n)
        for i1, i2, j1, j2 in itertools.product(range(m), range(m), range(n), range(n)):
            assert abs(W[i1, i2, j1, j2] - J[i1, j1] * J[i2, j2]) <= 1e-15
        assert abs(J.sum() - 1) <= 1e-12
        assert np.allclose(J.sum(axis=1), omega.weights, atol=1e-15)
        assert np.allclose(level2.joint_state.input_marginal(), np.kron(omega.weights, omega.weights))
        assert np.allclose(level2.joint_state.output_marginal(), output_state(c, omega, 2))

        # 2 - the joint output carries the joint weights in the pair basis
        dense = truncate_to_level(level2.joint_output, 2).real.reshape(m, n, m, n)
        assert np.allclose(dense.transpose(0, 2, 1, 3).reshape(m * m, n * n), level2.joint_state.weights)

    # 3 - guard
    with pytest.raises(GuardExceededError):
        joint(bsc(0.1), State.uniform(2), 13)
    with pytest.raises(GuardExceededError):
        channel_output(bsc(0.1), 13)
    with pytest.raises(ValueError):
        joint(bsc(0.1), State.uniform(2), 0)


def test_classify_examples():
    result = classify(identity(3))
    assert result.kind == 'lossless'
    assert result.partition == (0, 1, 2)
    assert result.unreached == ()
    assert classify(useless([0.3, 0.7])).kind == 'useless'
    assert classify(bsc(0.1)).kind == 'generic'
    assert classify(bec(0.2)).kind == 'generic'
    assert classify(bec(0.0)).partition == (0, -1, 1)
    assert classify(bec(0.0)).unreached == (1,)
    assert numerical_rank(bsc(0.1).matrix) == 2

    # 1 - zero-weight inputs leave the column analysis when a state is given
    c = Channel([[0.5, 0.5, 0], [0, 0.5, 0.5], [1, 0, 0]])
    assert classify(c).kind == 'generic'
    assert classify(c, State(3, [0, 1, 0])).partition == (-1, 1, 1)

    # 2 - decoders are lossless
    L = LosslessChannel([[1, 0, 0], [0, 0.5, 0.5]], (0, 1, 1))
    assert classify(L).kind == 'lossless'
    assert not L.degenerate
    assert classify(L.as_channel()).partition == (0, 1, 1)
    degenerate = LosslessChannel([[0.25, 0.25, 0.25, 0.25], [0, 0, 0, 0]], (0, 0, 0, 0))
    assert degenerate.degenerate
    with pytest.raises(ValueError):
        degenerate.as_channel()
    with pytest.raises(ValueError):
        LosslessChannel([[1, 0], [0.5, 0.5]], (0, 1))

    # 3 - the state must live on the input algebra
    with pytest.raises(AlgebraMismatchError):
        classify(bsc(0.1), State(3, [0.2, 0.3, 0.5]))
    with pytest.raises(AlgebraMismatchError):
        classify(L, State.uniform(3))


@pytest.mark.parametrize('m,n,steps', [(2, 2, 4), (2, 3, 2), (3, 2, 4), (3, 3, 2), (2, 4, 2)])
def test_classify_grid(m, n, steps):
    uniform = State.uniform(m)
    for c in grid_channels(m, n, steps):
        kind = classify(c).kind
        I = info_metrics(c, uniform).I_XY
        assert I >= -1e-12
        if kind == 'lossless':
            assert info_metrics(c, uniform).H_X_given_Y == 0
            continue
        useless_ = kind == 'useless'
        assert omega_c_independent(c) == useless_
        assert (abs(I) <= 1e-8) == useless_
        assert (numerical_rank(c.matrix) == 1) == useless_


def test_classify_random_4x4():
    rng = np.random.default_rng(4)
    rows = np.array([[1, 0, 0, 0], [0.5, 0.5, 0, 0], [0.25, 0.25, 0.25, 0.25], [0, 0, 0.5, 0.5], [0, 0, 0, 1]])
    for _ in range(300):
        c = Channel(rows[rng.integers(len(rows), size=4)])
        kind = classify(c).kind
        if kind != 'lossless':
            assert omega_c_independent(c) == (kind == 'useless')
            assert (abs(info_metrics(c, State.uniform(4)).I_XY) <= 1e-8) == (kind == 'useless')


def test_lossless_conservation():
    rng = np.random.default_rng(6)
    for _ in range(200):
        m = int(rng.integers(1, 5))
        n = int(rng.integers(m, 8))
        owners = np.concatenate([np.arange(m), rng.integers(m, size=n - m)])
        rng.shuffle(owners)
        matrix = np.zeros((m, n))
        for i in range(m):
            block = owners == i
            matrix[i, block] = rng.dirichlet(np.ones(block.sum()))
        c = Channel(matrix)
        assert classify(c).kind == 'lossless'
        assert classify(c).partition == tuple(owners.tolist())
        omega = State(m, rng.dirichlet(np.ones(m)))
        metrics = info_metrics(c, omega)
        assert abs(metrics.H_X_given_Y) <= 1e-12
        assert abs(metrics.I_XY - metrics.H_X) <= 1e-12


def test_joint_state_tolerance():
    weights = np.array([[0.45, 0.05], [0.05, 0.45 + 1e-7]])
    with pytest.raises(ValueError):
        JointState(weights, State.uniform(2))

    # 1 - the tolerance follows the active settings
    with settings(tau_eq=1e-6):
        assert JointState(weights, State.uniform(2)).weights.shape == (2, 2)
        with pytest.raises(ValueError):
            JointState([[0.5, 0.5 + 1e-5], [0, 0]], State.uniform(2))

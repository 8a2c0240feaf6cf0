import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from comomab.core import (
    Action,
    ActionSet,
    action_mean,
    dominates,
    incomparable,
    super_dominates,
    weakly_dominates,
)
from comomab.exceptions import ConfigError, DimensionError


@pytest.mark.parametrize(
    "u, v, expected",
    [((2, 2), (1, 1), True), ((2, 1), (1, 2), False), ((1, 1), (1, 1), True)],
)
def test_weakly_dominates(u, v, expected):
    assert weakly_dominates(u, v) is expected


@pytest.mark.parametrize(
    "u, v, expected",
    [((2, 1), (1, 1), True), ((1, 1), (1, 1), False), ((1, 2), (2, 1), False)],
)
def test_dominates(u, v, expected):
    assert dominates(u, v) is expected


@pytest.mark.parametrize(
    "u, v, expected",
    [((2, 2), (1, 1), True), ((2, 1), (1, 1), False), ((1, 2), (2, 1), False)],
)
def test_super_dominates(u, v, expected):
    assert super_dominates(u, v) is expected


@pytest.mark.parametrize(
    "u, v, expected",
    [((2, 1), (1, 2), True), ((1, 1), (1, 1), True), ((1, 1), (2, 2), False)],
)
def test_incomparable(u, v, expected):
    assert incomparable(u, v) is expected


@pytest.mark.parametrize("fn", [weakly_dominates, dominates, super_dominates, incomparable])
def test_dimension_mismatch(fn):
    with pytest.raises(DimensionError):
        fn((1, 2), (1, 2, 3))


def test_action_mean_examples():
    means = [(0.3, 0.7), (0.2, 0.1), (0.3, 0.4)]
    assert np.allclose(action_mean(Action({0: 1.0}, 3), means), (0.3, 0.7))
    assert np.allclose(action_mean(Action({1: 1, 2: 1}, 3), means), (0.5, 0.5))
    assert np.allclose(action_mean(Action({0: 2.0}, 1), [(0.5, 0.25)]), (1.0, 0.5))


def test_action_mean_errors():
    with pytest.raises(DimensionError):
        action_mean(Action({0: 1.0}, 2), [(0.1, 0.2)])
    with pytest.raises(ConfigError):
        Action({3: 1.0}, 2)


def test_action_drops_zero_weights_and_sorts():
    a = Action({2: 1.0, 0: 0.0, 1: 0.5}, 3)
    assert a.support == (1, 2)
    assert a.weights == {1: 0.5, 2: 1.0}
    with pytest.raises(ConfigError):
        Action({0: 0.0}, 1)
    with pytest.raises(ConfigError):
        Action({0: -1.0}, 1)


def test_action_set_constants():
    aset = ActionSet([Action({0: 1, 1: 2.5}, 3), Action({2: 1}, 3)], 3, 2)
    assert aset.L == 2
    assert aset.a_max == 2.5
    assert [c.tolist() for c in aset.covering] == [[0], [0], [1]]
    with pytest.raises(ConfigError):
        ActionSet([Action({0: 1}, 3)], 3, 2)  # arms 1, 2 never played


vec = st.integers(1, 4).flatmap(
    lambda d: st.tuples(
        *[arrays(float, d, elements=st.sampled_from([0.0, 0.25, 0.5, 1.0])) for _ in range(3)]
    )
)


@given(vec)
def test_dominance_chain(uvw):
    u, v, _ = uvw
    if super_dominates(u, v):
        assert dominates(u, v)
    if dominates(u, v):
        assert weakly_dominates(u, v)


@given(vec)
def test_super_dominance_order_properties(uvw):
    u, v, w = uvw
    assert not super_dominates(u, u)
    assert incomparable(u, u)
    assert incomparable(u, v) == incomparable(v, u)
    if super_dominates(u, v) and super_dominates(v, w):
        assert super_dominates(u, w)


@given(st.floats(-5, 5), st.floats(-5, 5))
def test_scalar_order_recovered(x, y):
    assert super_dominates([x], [y]) == (y < x)


@given(
    arrays(float, (4, 3), elements=st.floats(0, 1)),
    arrays(float, 4, elements=st.floats(0, 3)),
    arrays(float, 4, elements=st.floats(0, 3)),
)
def test_action_mean_linear(means, wa, wb):
    wa[0] += 1.0
    wb[1] += 1.0
    a, b, ab = Action.from_dense(wa), Action.from_dense(wb), Action.from_dense(wa + wb)
    assert np.allclose(action_mean(ab, means), action_mean(a, means) + action_mean(b, means))

import pytest

from partition_topology.engine.combinatorics import PointedComposition, PointedIntegerPartition
from partition_topology.engine.errors import InvalidInputError, NotKnapsackError, NotRepresentableError
from partition_topology.engine.knapsack import (
    epsilon,
    expected_mobius,
    generating_compositions,
    is_knapsack,
    kappa,
    kappa_table,
    knapsack_partitions,
    type_in_filter,
    v_set,
    w_set,
)


def C(*parts):
    return PointedComposition(parts)


@pytest.mark.parametrize(
    "lam, expected",
    [
        ((1, 1, 3, 7), True),
        ((2, 2, 2), True),
        ((), True),
        ((5, 3, 3, 2, 1, 1, 1), False),
        ((2, 1, 1), False),
        ((3, 2, 1), False),
        ((2, 1), True),
    ],
)
def test_is_knapsack(lam, expected):
    assert is_knapsack(lam) is expected


def test_kappa():
    assert kappa((1, 1, 3, 7), 4) == 1
    assert kappa((1, 1, 3, 7), 10) == 3
    assert kappa((2, 1), 2) == 2
    assert kappa_table((2, 1)) == {1: 1, 2: 2, 3: 1}


def test_kappa_rejects_values_outside_the_sum_domain():
    with pytest.raises(NotRepresentableError):
        kappa((1, 1, 3, 7), 6)
    with pytest.raises(NotKnapsackError):
        kappa((2, 1, 1), 2)


def test_v_set_small_example():
    assert v_set((2, 1), 1) == [C(1, 2, 1), C(2, 1, 1), C(3, 1)]
    assert v_set((3,), 2) == [C(3, 2)]


def test_v_set_uses_distinct_values_only():
    v = v_set((1, 1, 3, 7), 0)
    assert C(4, 8, 0) in v
    assert C(2, 10, 0) not in v
    # 4 = 2 + 2 repeats a value, so it is not a block
    assert v_set((2, 2), 1) == [C(2, 2, 1)]


def test_v_set_rejects_bad_input():
    with pytest.raises(NotKnapsackError):
        v_set((2, 1, 1), 1)
    with pytest.raises(InvalidInputError):
        v_set((2, 1), -1)


def test_epsilon():
    assert epsilon(C(3, 1), (2, 1), 1) == C(2, 1, 1)
    assert epsilon(C(2, 1, 1), (2, 1), 1) == C(2, 1, 1)
    assert epsilon(C(1, 2, 1), (2, 1), 1) == C(1, 2, 1)
    assert epsilon(C(4, 8, 0), (1, 1, 3, 7), 0) == C(3, 1, 7, 1, 0)
    with pytest.raises(InvalidInputError):
        epsilon(C(1, 1, 2), (2, 1), 1)


def test_w_set_signs():
    assert w_set(C(3, 1), (2, 1), 1) == [(C(2, 1, 1), 1), (C(1, 2, 1), -1)]
    assert w_set(C(2, 1, 1), (2, 1), 1) == [(C(2, 1, 1), 1)]
    # epsilon(d) always comes first with sign +1
    first, sign = w_set(C(4, 8, 0), (1, 1, 3, 7), 0)[0]
    assert (first, sign) == (C(3, 1, 7, 1, 0), 1)
    assert len(w_set(C(4, 8, 0), (1, 1, 3, 7), 0)) == 4


def test_generating_compositions():
    assert generating_compositions((2, 1), 1) == [C(1, 2, 1), C(2, 1, 1)]
    assert generating_compositions((1, 1), 0) == [C(1, 1, 0)]


def test_expected_mobius():
    assert expected_mobius((2, 1), 1) == -11
    assert expected_mobius((), 3) == -1


def test_knapsack_partitions_of_three():
    found = knapsack_partitions(3)
    assert len(found) == 7
    assert found[0] == PointedIntegerPartition((), 3)
    assert PointedIntegerPartition((2, 1), 0) in found
    assert all(pi.n == 3 for pi in found)
    assert all(pi.m >= 1 for pi in knapsack_partitions(3, min_m=1))


def test_type_in_filter():
    assert type_in_filter((2, 1), 1, (2, 1), 1)
    assert type_in_filter((2, 1), 1, (3,), 1)
    assert type_in_filter((2, 1), 1, (), 4)
    assert type_in_filter((2, 1), 1, (2,), 2)
    assert not type_in_filter((2, 1), 1, (1, 1, 1), 1)
    assert not type_in_filter((2, 1), 1, (4,), 0)

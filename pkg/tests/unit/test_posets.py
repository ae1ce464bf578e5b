from itertools import combinations

import pytest

from partition_topology.engine.complexes import reduced_homology
from partition_topology.engine.errors import InvalidInputError
from partition_topology.engine.posets import BOTTOM, TOP, FinitePoset, hall_check


def boolean_lattice(n: int) -> FinitePoset:
    subsets = [frozenset(s) for r in range(n + 1) for s in combinations(range(1, n + 1), r)]
    return FinitePoset.from_order(subsets, lambda x, y: x <= y, label=lambda s: "".join(map(str, sorted(s))) or "0")


def bowtie() -> FinitePoset:
    return FinitePoset(["a", "b", "c", "d"], [("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")])


def test_boolean_lattice_mobius():
    assert boolean_lattice(2).mobius() == 1
    assert boolean_lattice(3).mobius() == -1


def test_from_order_keeps_only_covers():
    b3 = boolean_lattice(3)
    assert len(b3.covers()) == 12
    assert b3.is_transitively_reduced()
    assert b3.bottom() == frozenset()
    assert b3.top() == frozenset({1, 2, 3})


def test_hall_check_on_boolean_lattice():
    assert hall_check(boolean_lattice(3)) == (-1, -1)


def test_hall_check_needs_bounds():
    with pytest.raises(InvalidInputError):
        hall_check(bowtie())


def test_bowtie_is_not_a_lattice():
    check = bowtie().with_bottom().with_top().is_lattice()
    assert not check.is_lattice
    assert check.operation == "join"
    assert check.witness == ("a", "b")


def test_boolean_lattice_is_a_lattice():
    b2 = boolean_lattice(2)
    assert b2.is_lattice().is_lattice
    assert b2.join(frozenset({1}), frozenset({2})) == frozenset({1, 2})
    assert b2.meet(frozenset({1}), frozenset({2})) == frozenset()


def test_with_bottom_and_top_labels():
    p = bowtie().with_bottom().with_top()
    assert p.bottom() == BOTTOM
    assert p.top() == TOP
    assert p.to_json()["elements"][0] == BOTTOM
    assert p.mobius() == -1


def test_chain_mobius_vanishes_past_length_one():
    chain = FinitePoset.from_order([1, 2, 3], lambda x, y: x <= y)
    assert chain.covers() == [(1, 2), (2, 3)]
    assert chain.mobius() == 0
    assert chain.rank_function() == {1: 0, 2: 1, 3: 2}


def test_cycle_in_covers_is_rejected():
    with pytest.raises(InvalidInputError):
        FinitePoset([1, 2], [(1, 2), (2, 1)])


def test_mobius_needs_bounds():
    with pytest.raises(InvalidInputError):
        bowtie().mobius()


def test_interval_and_without():
    b3 = boolean_lattice(3)
    assert len(b3.interval(frozenset({1}), frozenset({1, 2, 3}))) == 4
    assert len(b3.without([frozenset(), frozenset({1, 2, 3})])) == 6


def test_order_complex_of_proper_part_is_a_circle():
    b3 = boolean_lattice(3)
    proper = b3.without([b3.bottom(), b3.top()])
    k = proper.order_complex()
    assert k.f_vector() == [1, 6, 6]
    assert reduced_homology(k).is_sphere(1)

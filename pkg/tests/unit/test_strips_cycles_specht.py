import pytest

from partition_topology.engine.combinatorics import (
    Permutation,
    PointedComposition,
    beta,
    compositions,
    interval_decomposition,
    permutations_with_descent_composition,
)
from partition_topology.engine.complexes import reduced_homology
from partition_topology.engine.errors import InvalidInputError, TheoremViolation
from partition_topology.engine.knapsack import epsilon
from partition_topology.engine.ordered import ChainElement, OrderedSetPartition, boundary, sigma
from partition_topology.engine.cycles import (
    build_Sigma_alpha,
    build_Sigma_alpha_d,
    column_stabilizer,
    column_stabilizer_leq,
    cycle_g_alpha,
    cycle_g_alpha_d,
    polytabloid,
    psi,
    row_stabilizer_geq,
)
from partition_topology.engine.specht import (
    group_action_closure,
    is_split,
    knapsack_action_closure,
    knapsack_labels,
    polytabloid_matches_cycle,
    psi_equivariance,
    psi_image_check,
    verify_cycle_basis,
    verify_knapsack_cycle_basis,
)
from partition_topology.engine.strips import (
    Tabloid,
    border_strip,
    count_standard_tableaux,
    facet_of_tabloid,
    permutation_of_tableau,
    tableau_of_permutation,
    tabloid_of_facet,
    tabloid_of_tableau,
)


def C(*parts):
    return PointedComposition(parts)


def P(text):
    return Permutation.parse(text)


def T(text):
    return OrderedSetPartition.parse(text)


# -- strips -----------------------------------------------------------------------


def test_border_strip_rows_and_columns():
    strip = border_strip(C(2, 1))
    assert strip.rows() == [(1, 2), (3,)]
    assert strip.columns() == [(1,), (2, 3)]
    assert strip.is_border_strip()

    column = border_strip(C(1, 1, 1))
    assert column.columns() == [(1, 2, 3)]
    assert column.rows() == [(1,), (2,), (3,)]

    assert border_strip(C(4)).rows() == [(1, 2, 3, 4)]


def test_border_strip_matches_interval_decomposition():
    for c in compositions(5):
        strip = border_strip(c)
        intervals = interval_decomposition(c)
        assert strip.is_border_strip()
        assert [(r[0], r[-1]) for r in strip.rows()] == list(intervals.rows)
        assert [(k[0], k[-1]) for k in strip.columns()] == list(intervals.columns)


def test_border_strip_needs_a_positive_last_part():
    with pytest.raises(InvalidInputError):
        border_strip(C(2, 0))


def test_standard_tableaux_are_counted_by_beta():
    for c in compositions(4):
        assert count_standard_tableaux(border_strip(c)) == beta(c), str(c)
    assert count_standard_tableaux(border_strip(C(1, 2, 1))) == 5


def test_tableau_tabloid_and_facet():
    alpha = P("2143")
    t = tableau_of_permutation(alpha, C(1, 2, 1))
    s = tabloid_of_tableau(t)

    assert permutation_of_tableau(t) == alpha
    assert s.row_sets == (frozenset({2}), frozenset({1, 4}), frozenset({3}))
    assert facet_of_tabloid(s) == sigma(alpha, C(1, 2, 1))
    assert tabloid_of_facet(facet_of_tabloid(s), C(1, 2, 1)) == s
    assert s.reading() == alpha


def test_tabloid_validation():
    strip = border_strip(C(2, 1))
    with pytest.raises(InvalidInputError):
        Tabloid.of(strip, [[1], [2, 3]])
    with pytest.raises(InvalidInputError):
        tabloid_of_facet(T("1-23"), C(2, 1))
    with pytest.raises(InvalidInputError):
        tableau_of_permutation(P("21"), C(2, 1))


# -- cycles -----------------------------------------------------------------------


def test_g_alpha_for_2143():
    g = cycle_g_alpha(P("2143"), C(1, 2, 1))
    expected = ChainElement({T("2-14-3"): 1, T("1-24-3"): -1, T("2-13-4"): -1, T("1-23-4"): 1})

    assert g == expected
    assert not boundary(g)
    assert len(column_stabilizer(C(1, 2, 1))) == 4


def test_g_alpha_of_a_single_row_is_the_empty_face():
    g = cycle_g_alpha(P("123"), C(3))
    assert g == ChainElement({T("123"): 1})
    assert g.dimension == -1


def test_g_alpha_cycles_for_n4():
    for c in compositions(4):
        for alpha in permutations_with_descent_composition(c):
            assert not boundary(cycle_g_alpha(alpha, c)), f"{alpha} {c}"


def test_sigma_alpha_is_a_sphere():
    assert reduced_homology(build_Sigma_alpha(P("2143"), C(1, 2, 1))).is_sphere(1)
    # a single column: the permutahedron boundary
    assert reduced_homology(build_Sigma_alpha(P("321"), C(1, 1, 1))).is_sphere(1)


def test_stabilizers_and_weak_order():
    for c in compositions(4):
        for alpha in permutations_with_descent_composition(c):
            assert column_stabilizer_leq(alpha, c) is None
            assert row_stabilizer_geq(alpha, c) is None


def test_g_alpha_d_has_its_critical_cell_with_sign_one():
    for alpha, d in knapsack_labels((2, 1), 1):
        g = cycle_g_alpha_d(alpha, d, (2, 1), 1)
        assert g[sigma(alpha, epsilon(d, (2, 1), 1))] == 1
        assert not boundary(g)


def test_g_alpha_d_needs_a_positive_pointed_part():
    with pytest.raises(InvalidInputError):
        cycle_g_alpha_d(P("12"), C(1, 1, 0), (1, 1), 0)


def test_sigma_alpha_d_is_a_sphere():
    k = build_Sigma_alpha_d(P("1342"), C(3, 1), (2, 1), 1)
    assert reduced_homology(k).is_sphere(1)


# -- bases and the group action -------------------------------------------------------


def test_cycle_basis_of_delta():
    report = verify_cycle_basis(C(1, 2, 1))
    assert (report.labels, report.rank, report.betti) == (5, 5, 5)
    assert verify_cycle_basis(C(3)).rank == 1
    with pytest.raises(InvalidInputError):
        verify_cycle_basis(C(1, 0))


def test_cycle_basis_of_lambda():
    report = verify_knapsack_cycle_basis((2, 1), 1)
    assert (report.labels, report.rank, report.betti) == (11, 11, 11)
    with pytest.raises(InvalidInputError):
        verify_knapsack_cycle_basis((2, 1), 0)


def test_group_action_closure():
    report = group_action_closure(C(1, 2, 1))
    assert report.rank == 5
    assert report.standard_tableaux == 5
    assert report.generators == 3
    assert knapsack_action_closure((2, 1), 1).rank == 11


# -- polytabloids and Psi ---------------------------------------------------------------


def test_polytabloid_is_g_alpha():
    t = tableau_of_permutation(P("2143"), C(1, 2, 1))
    assert polytabloid(t) == cycle_g_alpha(P("2143"), C(1, 2, 1))
    for c in compositions(4):
        for alpha in permutations_with_descent_composition(c):
            assert polytabloid_matches_cycle(alpha, c)


def test_psi_of_a_tabloid():
    s = Tabloid.of(border_strip(C(3, 1)), [[1, 2, 3], [4]])
    assert psi(s, (2, 1), 1) == ChainElement({T("12-3-4"): 1, T("1-23-4"): -1})


def test_psi_on_unsplit_shapes():
    d = C(2, 1, 1)
    assert not is_split(d, (2, 1), 1)
    assert psi_image_check((2, 1), 1, d).holds
    assert psi_equivariance((2, 1), 1, d).holds


def test_psi_on_split_shapes_is_not_term_by_term():
    d = C(3, 1)
    assert is_split(d, (2, 1), 1)
    report = psi_image_check((2, 1), 1, d)
    assert not report.holds
    assert "1342" in {m["alpha"] for m in report.mismatches}


def test_theorem_violation_carries_a_witness():
    e = TheoremViolation("claim", "message", {"x": 1})
    assert str(e) == "claim: message"
    assert e.witness == {"x": 1}

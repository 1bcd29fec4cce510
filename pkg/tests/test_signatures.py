import pytest
from hypothesis import given, settings, strategies as st
from sympy import Poly

from neighborly.constants import ComponentType, DeletionRule
from neighborly.errors import BudgetExceededError, NotAdmissibleError, ValidationError
from neighborly.partitions import NeighborlyPartition, decompose, enumerate_neighborly
from neighborly.signatures import (
    X,
    Component,
    build_graph,
    chain_covering_polynomial,
    chain_generating_closed_form,
    chain_generating_function,
    chain_poly,
    chain_sign,
    classify_components,
    component_signature_product,
    deleted_positions,
    is_admissible,
    prune,
    sig_multiset,
    sign,
    sign_via_pruned,
    signature_bruteforce,
    signature_closed,
    signature_product,
)

FOUR_COMPONENTS = NeighborlyPartition((2, 4, 5, 6, 7, 10, 12, 13, 14), (2, 4, 6, 10, 14))
SEVEN = NeighborlyPartition((1, 2, 3, 4, 5, 6, 7), (1, 3, 6))


def test_chain_poly_examples():
    assert chain_poly(1) == Poly(X, X)
    assert chain_poly(3) == Poly(X**2 + X**3, X)
    assert chain_poly(5) == Poly(X**3 + 3 * X**4 + X**5, X)


def test_chain_sign_pattern():
    assert [chain_sign(n) for n in range(1, 7)] == [-1, 1, 0, -1, 1, 0]
    for n in range(1, 40):
        assert chain_poly(n).eval(-1) == chain_sign(n)


def test_chain_poly_matches_brute_force():
    for n in range(1, 9):
        assert chain_covering_polynomial(n) == chain_poly(n)


def test_chain_generating_function_closed_form():
    assert chain_generating_function(10) == chain_generating_closed_form(10)


def test_chain_poly_rejects_empty_chain():
    with pytest.raises(ValidationError):
        chain_poly(0)


def test_build_graph_example_components():
    g = build_graph(FOUR_COMPONENTS)
    assert g.components == (
        Component(2, 2, (2,)),
        Component(4, 7, (4, 6)),
        Component(10, 10, (10,)),
        Component(12, 14, (14,)),
    )
    assert sig_multiset(g).elements == (1, 1, 1, 4, 2, 1, 1, 3, 1)
    assert not is_admissible(FOUR_COMPONENTS)


def test_build_graph_hanging_edges():
    g = build_graph(NeighborlyPartition((1, 2, 3, 6, 8, 9, 14), (3, 6, 8, 9, 14)))
    assert len(g.components) == 4
    assert g.s == 5
    assert g.total_edges == 2 + 1 + 5


def test_smallest_component():
    c = Component(4, 4, (4,))
    assert c.vertex_count == 2
    assert c.edge_count == 1
    assert component_signature_product(c) == -1


def test_component_sig():
    assert Component(1, 7, (3, 6, 7)).sig() == [3, 5, 3, 1]
    assert Component(1, 2).sig() == [1]


@pytest.mark.parametrize(
    "component, expected",
    [
        (Component(1, 7, (3, 6, 7)), 0),
        (Component(2, 3, (3,)), 1),
        (Component(5, 5, (5,)), -1),
    ],
)
def test_component_signature_product(component, expected):
    assert component_signature_product(component) == expected


def test_path_signature_is_zero():
    g = build_graph(NeighborlyPartition((1, 2, 3, 4)))
    assert signature_bruteforce(g) == 0
    assert signature_closed(g)[0] == 0


@pytest.mark.parametrize(
    "np, expected",
    [
        (NeighborlyPartition((2, 3), (3,)), 1),
        (NeighborlyPartition((1, 2, 3), (2,)), -1),
        (NeighborlyPartition((1, 3), (1, 3)), 1),
        (NeighborlyPartition((4,), (4,)), -1),
        (NeighborlyPartition(()), 1),
    ],
)
def test_sign_examples(np, expected):
    assert sign(np) == expected
    assert sign_via_pruned(np) == expected


def test_sign_of_non_admissible_raises():
    with pytest.raises(NotAdmissibleError):
        sign(NeighborlyPartition((1, 2, 3, 4)))


def test_signature_diagnostics():
    value, diagnostics = signature_closed(build_graph(NeighborlyPartition((1, 2, 3), (2,))))
    assert value == -1
    assert (diagnostics.t, diagnostics.s, diagnostics.zero_flag) == (0, 1, False)


def test_bruteforce_edge_cap():
    g = build_graph(NeighborlyPartition((1, 2, 3, 4, 5)))
    with pytest.raises(BudgetExceededError):
        signature_bruteforce(g, edge_cap=3)


def test_oracles_agree_exhaustively():
    for np in enumerate_neighborly(14):
        g = build_graph(np)
        brute = signature_bruteforce(g)
        assert signature_closed(g)[0] == brute, np
        assert signature_product(g) == brute, np


@pytest.mark.parametrize(
    "length, rule, expected",
    [
        (1, DeletionRule.LITERAL, []),
        (2, DeletionRule.LITERAL, []),
        (5, DeletionRule.LITERAL, [3]),
        (8, DeletionRule.LITERAL, [3, 6]),
        (4, DeletionRule.LITERAL, [2]),
        (4, DeletionRule.EXAMPLE, [3]),
        (7, DeletionRule.LITERAL, [3, 5]),
        (7, DeletionRule.EXAMPLE, [3, 5]),
        (10, DeletionRule.LITERAL, [3, 5, 8]),
        (10, DeletionRule.EXAMPLE, [3, 6, 8]),
    ],
)
def test_deleted_positions(length, rule, expected):
    assert deleted_positions(length, rule) == expected


def test_deleted_positions_rejects_multiples_of_three():
    with pytest.raises(NotAdmissibleError):
        deleted_positions(6)


def test_prune_example_literal_rule():
    pruned = prune(build_graph(SEVEN), DeletionRule.LITERAL)
    assert [c.length for c in pruned.chains] == [1, 4, 5, 2]
    assert [c.kept for c in pruned.chains] == [1, 3, 4, 2]
    assert pruned.edge_count == 7
    assert classify_components(pruned) == [
        ComponentType.PAIR,
        ComponentType.STEP_PAIR_STEP,
        ComponentType.STEP_PAIR_STEP,
    ]


def test_prune_example_rule_from_worked_example():
    pruned = prune(build_graph(SEVEN), DeletionRule.EXAMPLE)
    assert pruned.edge_count == 7
    assert classify_components(pruned) == [
        ComponentType.PAIR_STEP,
        ComponentType.PAIR_STEP,
        ComponentType.STEP_PAIR_STEP,
    ]


def test_rules_disagree_on_first_component_of_four_edge_chain():
    g = build_graph(decompose((1, 1, 2, 3, 3)))
    assert classify_components(prune(g, DeletionRule.LITERAL))[0] is ComponentType.PAIR
    assert classify_components(prune(g, DeletionRule.EXAMPLE))[0] is ComponentType.PAIR_STEP


def test_small_prunes():
    assert classify_components(prune(build_graph(NeighborlyPartition((4,), (4,))))) == [
        ComponentType.PAIR
    ]
    assert classify_components(prune(build_graph(NeighborlyPartition((1, 2))))) == [
        ComponentType.STEP
    ]


def test_pruned_parity_is_the_sign_under_both_rules():
    for np in enumerate_neighborly(16):
        if not is_admissible(np):
            continue
        for rule in DeletionRule:
            assert sign_via_pruned(np, rule) == sign(np), (np, rule)


@settings(max_examples=50, deadline=None)
@given(
    st.sampled_from([c for np in enumerate_neighborly(12) for c in build_graph(np).components]),
    st.integers(min_value=0, max_value=40),
)
def test_component_signature_is_shift_invariant(component, offset):
    shifted = component.shifted(offset)
    assert shifted.sig() == component.sig()
    assert component_signature_product(shifted) == component_signature_product(component)


def test_repeated_parts_of_admissible_partitions_are_two_apart():
    for np in enumerate_neighborly(20):
        if is_admissible(np):
            assert all(b - a >= 2 for a, b in zip(np.mu2, np.mu2[1:])), np


def test_kept_edges_per_chain_follow_the_length_mod_three():
    for np in enumerate_neighborly(25):
        if not is_admissible(np):
            continue
        g = build_graph(np)
        for rule in DeletionRule:
            for chain in prune(g, rule).chains:
                assert chain.kept % 2 == (1 if chain.length % 3 == 1 else 0), (np, rule, chain)


def test_component_edges_from_chain_lengths():
    for np in enumerate_neighborly(20):
        g = build_graph(np)
        for c in g.components:
            expected = sum(c.sig()) - c.s if c.s else c.n - c.k
            assert c.edge_count == expected, (np, c)
        assert g.total_edges == g.to_networkx().number_of_edges()


def test_diagnostics_count_every_chain():
    for np in enumerate_neighborly(12):
        g = build_graph(np)
        _, diagnostics = signature_closed(g)
        assert diagnostics.size == len(sig_multiset(g)), np
        assert diagnostics.zero_flag == (diagnostics.count_zero > 0)

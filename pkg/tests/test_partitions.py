from collections import Counter
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st
from sympy.utilities.iterables import partitions

from neighborly.errors import BudgetExceededError, ValidationError
from neighborly.partitions import (
    NeighborlyPartition,
    Run,
    decompose,
    enumerate_neighborly,
    is_neighborly,
    isolated_parts,
    runs,
)


def test_decompose_splits_repeated_parts():
    np = decompose((1, 1, 2, 3, 3))
    assert np.mu1 == (1, 2, 3)
    assert np.mu2 == (1, 3)
    assert np.weight == 10
    assert np.part_count == 5
    assert str(np) == "1,2,3/1,3"


@pytest.mark.parametrize(
    "parts, expected",
    [
        ((), True),
        ((1, 1), True),
        ((1, 2), True),
        ((1, 3), False),
        ((1, 1, 1), False),
        ((1, 2, 2, 3), True),
        ((2, 4, 4), False),
    ],
)
def test_is_neighborly(parts, expected):
    assert is_neighborly(parts) is expected


@pytest.mark.parametrize(
    "mu1, mu2",
    [
        ((1, 3), ()),
        ((1,), (2,)),
        ((2, 1), ()),
        ((1, 1), ()),
        ((0, 1), ()),
    ],
)
def test_invalid_partitions_are_rejected(mu1, mu2):
    with pytest.raises(ValidationError):
        NeighborlyPartition(mu1, mu2)


def test_decompose_rejects_triples():
    with pytest.raises(ValidationError):
        decompose((2, 2, 2))


def test_isolated_parts():
    assert isolated_parts((1, 2, 3, 6, 8, 9, 14)) == [6, 14]


def test_runs():
    np = NeighborlyPartition((1, 2, 3, 6, 8, 9, 14), (3, 6, 8, 9, 14))
    assert runs(np) == [Run(1, 3), Run(6, 6), Run(8, 9), Run(14, 14)]


def test_enumeration_order_small():
    found = [str(np) for np in enumerate_neighborly(4)]
    assert found == ["/", "1/1", "1,2/", "1,2/1", "2/2"]


def test_enumeration_of_weight_zero_is_the_empty_partition():
    assert list(enumerate_neighborly(0)) == [NeighborlyPartition((), ())]


def test_enumeration_matches_independent_partition_generator():
    by_weight = Counter(np.weight for np in enumerate_neighborly(16))
    for n in range(1, 17):
        expected = 0
        for p in partitions(n):
            parts = sorted(Counter(p).elements())
            if is_neighborly(parts):
                expected += 1
        assert by_weight[n] == expected, n


def test_enumeration_has_no_duplicates():
    found = list(enumerate_neighborly(18))
    assert len(found) == len(set(found))


def test_enumeration_budget_is_checked_before_anything_is_yielded():
    with pytest.raises(BudgetExceededError):
        next(enumerate_neighborly(10, max_count=3))


def test_enumeration_rejects_negative_weight():
    with pytest.raises(ValidationError):
        list(enumerate_neighborly(-1))



def _candidates(max_weight: int):
    """Every (mu1, mu2) with mu1 distinct, mu2 a subset of mu1 and total weight in range."""
    for size in range(max_weight + 1):
        for mu1 in combinations(range(1, max_weight + 1), size):
            if sum(mu1) > max_weight:
                continue
            for k in range(len(mu1) + 1):
                for mu2 in combinations(mu1, k):
                    if sum(mu1) + sum(mu2) <= max_weight:
                        yield mu1, mu2


def test_structural_form_agrees_with_is_neighborly():
    checked = 0
    for mu1, mu2 in _candidates(12):
        parts = tuple(sorted(mu1 + mu2))
        try:
            NeighborlyPartition(mu1, mu2)
            accepted = True
        except ValidationError:
            accepted = False
        assert accepted == is_neighborly(parts), (mu1, mu2)
        checked += 1
    assert checked > len(list(enumerate_neighborly(12)))


def test_isolated_parts_are_always_repeated():
    for np in enumerate_neighborly(20):
        assert set(isolated_parts(np.mu1)) <= set(np.mu2), np

@settings(max_examples=60, deadline=None)
@given(st.sampled_from(list(enumerate_neighborly(14))))
def test_decompose_inverts_the_part_list(np):
    assert decompose(np.parts.parts) == np
    assert len(np.parts) == np.part_count

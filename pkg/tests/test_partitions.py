from collections import Counter
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hecke_irred.partitions import (
    Partition,
    conjugate,
    contents,
    hook_exponent_set,
    hook_multiset,
    hook_product,
    partitions_of,
    probe_hook_sets,
    standard_tableaux,
)

partitions = st.integers(0, 10).flatmap(lambda n: st.sampled_from(list(partitions_of(n))))


def P(*parts):
    return Partition(parts)


def test_conjugate_examples():
    assert conjugate(P(2, 1)) == P(2, 1)
    assert conjugate(P(3, 1)) == P(2, 1, 1)
    assert conjugate(P()) == P()


def test_hook_multiset_examples():
    assert hook_multiset(P(2, 1)) == Counter({1: 2, 3: 1})
    assert hook_multiset(P(1)) == Counter({1: 1})
    for m in range(1, 7):
        assert hook_multiset(P(m)) == Counter(range(1, m + 1))


def test_hook_exponent_set_examples():
    assert hook_exponent_set(P(2, 1), "literal").exponents == {3, 1, -1}
    assert hook_exponent_set(P(2, 1), "positive").exponents == {3, 1}
    assert hook_exponent_set(P(1), "literal").exponents == {1}
    assert hook_exponent_set(P(1), "positive").exponents == {1}
    assert hook_exponent_set(P()).exponents == frozenset()


def test_contents_examples():
    assert contents(P(1)) == {(1, 1): 0}
    assert contents(P(2, 1)) == {(1, 1): 0, (1, 2): 1, (2, 1): -1}
    assert sorted(contents(P(3)).values()) == [0, 1, 2]


def test_rejects_bad_parts():
    with pytest.raises(ValueError):
        P(1, 2)
    with pytest.raises(ValueError):
        P(2, 0)


def test_parse():
    assert Partition.parse("3,1") == P(3, 1)
    assert Partition.parse("") == P()
    assert str(P(3, 1)) == "3,1"


def test_partition_counts():
    assert [sum(1 for _ in partitions_of(n)) for n in range(9)] == [1, 1, 2, 3, 5, 7, 11, 15, 22]


@given(partitions)
def test_conjugate_involution(lam):
    assert conjugate(conjugate(lam)) == lam


@given(partitions)
def test_hooks_count_and_divide(lam):
    assert sum(hook_multiset(lam).values()) == lam.size
    assert factorial(lam.size) % hook_product(lam) == 0
    # hook length formula
    assert len(standard_tableaux(lam)) == factorial(lam.size) // hook_product(lam)


@given(partitions)
def test_positive_mode_is_positive(lam):
    assert all(e > 0 for e in hook_exponent_set(lam, "positive").exponents)


@given(partitions)
def test_positive_set_inside_literal(lam):
    # every diagram hook also appears in the full grid
    assert hook_exponent_set(lam, "positive").exponents <= hook_exponent_set(lam, "literal").exponents


def test_probe_finds_smallest_disagreement():
    bad = probe_hook_sets(5)
    assert P(3, 1, 1) in bad
    assert all(lam.size >= 5 for lam in bad)
    lit = hook_exponent_set(P(3, 1, 1), "literal").symmetric()
    pos = hook_exponent_set(P(3, 1, 1), "positive").symmetric()
    assert lit - pos == {3, -3}


def test_probe_agrees_for_small_shapes():
    assert probe_hook_sets(4) == []

import itertools
from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hecke_irred.hecke_oracle import character, evaluation_module, weight_exponents
from hecke_irred.multisegments import (
    ColumnSet,
    EvaluationPoint,
    Multisegment,
    Segment,
    degree_and_dimvector,
    elementary_moves,
    evaluation_multisegment,
    flag_minors,
    hook_criterion,
    multisegments_of_weight,
    parse_multisegment,
    segment_less,
    weakly_separated,
    weight_classes,
    zel_leq,
)
from hecke_irred.partitions import Partition

S = Segment
M = parse_multisegment


def test_degree_and_dimvector():
    assert degree_and_dimvector(M("[1,2]")) == (2, {1: 1, 2: 1})
    assert degree_and_dimvector(M("[1,1]+[2,2]")) == (2, {1: 1, 2: 1})
    assert degree_and_dimvector(M("2[0,0]")) == (2, {0: 2})


def test_segment_order():
    assert segment_less(S(1, 2), S(3, 3))
    assert segment_less(S(1, 3), S(2, 3))
    assert not segment_less(S(1, 2), S(1, 2))


def test_segment_rejects_reversed():
    with pytest.raises(ValueError):
        S(3, 2)


def test_text_and_json_round_trip():
    m = M("[1,2]+2[0,0]+[-1,3]")
    assert M(str(m)) == m
    assert Multisegment.from_json(m.to_json()) == m
    assert M("") == Multisegment()


def test_elementary_moves_examples():
    assert elementary_moves(M("[1,1]+[2,2]")) == {M("[1,2]")}
    assert elementary_moves(M("[1,2]+[2,3]")) == {M("[1,3]+[2,2]")}
    assert elementary_moves(M("[0,0]+[2,2]")) == set()


def test_zel_leq_examples():
    m = M("[1,1]+[2,2]")
    assert zel_leq(m, m)
    assert zel_leq(m, M("[1,2]"))
    assert not zel_leq(M("[1,2]"), m)
    # different weights are incomparable
    assert not zel_leq(M("[1,1]"), M("[2,2]"))


CLASSES = [multisegments_of_weight(dv) for dv in weight_classes(5, range(1, 4))]


@pytest.mark.parametrize("cls", CLASSES, ids=lambda c: str(c[0]))
def test_zel_leq_partial_order(cls):
    for a in cls:
        assert zel_leq(a, a)
    for a, b in itertools.product(cls, repeat=2):
        if a != b and zel_leq(a, b):
            assert not zel_leq(b, a)
    for a, b, c in itertools.product(cls, repeat=3):
        if zel_leq(a, b) and zel_leq(b, c):
            assert zel_leq(a, c)


@pytest.mark.parametrize("cls", CLASSES, ids=lambda c: str(c[0]))
def test_moves_preserve_weight(cls):
    for m in cls:
        for n in elementary_moves(m):
            assert degree_and_dimvector(n) == degree_and_dimvector(m)


def test_weight_class_sizes():
    # Kostant partition counts for A_2
    assert len(multisegments_of_weight({1: 1, 2: 1})) == 2
    assert len(multisegments_of_weight({1: 2, 2: 1})) == 2
    assert len(multisegments_of_weight({1: 1, 2: 1, 3: 1})) == 4


def test_evaluation_multisegment_examples():
    assert evaluation_multisegment(Partition((1,)), 0) == M("[0,0]")
    assert evaluation_multisegment(EvaluationPoint(Partition((2, 1)), 0)) == M("[0,1]+[-1,-1]")
    assert evaluation_multisegment(Partition((3,)), 5) == M("[5,7]")


@pytest.mark.parametrize("parts", [(1,), (2,), (1, 1), (2, 1), (1, 1, 1), (3,)])
@pytest.mark.parametrize("a", [0, 2])
def test_evaluation_multisegment_matches_spectrum(parts, a):
    lam = Partition(parts)
    u = Fraction(3)
    mod = evaluation_module(lam, u**a, u)
    contents = Counter()
    for w, mult in character(mod).items():
        contents.update({e: mult for e in weight_exponents(w, u)})
    seg_points = Counter(evaluation_multisegment(lam, a).dimvector())
    # each y_i eigenvalue u^c appears once per standard tableau
    ntab = mod.dim
    assert contents == Counter({p: c * ntab for p, c in seg_points.items()})


@pytest.mark.parametrize("k", [1, 2, 3])
def test_single_column_gives_points(k):
    m = evaluation_multisegment(Partition((1,) * k), 4)
    assert all(len(s) == 1 for s in m.segments())
    assert sorted(s.i for s in m.segments()) == list(range(4 - k + 1, 5))


def CS(xs, N=4):
    return ColumnSet(frozenset(xs), N)


def test_weak_separation_examples():
    assert weakly_separated(CS({1, 2}), CS({1, 3}))
    assert not weakly_separated(CS({1, 3}), CS({2, 4}))
    assert weakly_separated(CS({2, 3}), CS({2, 3}))


def test_weak_separation_needs_same_rank():
    with pytest.raises(ValueError):
        weakly_separated(CS({1}, 3), CS({1}, 4))


def test_column_set_bounds():
    with pytest.raises(ValueError):
        CS({5}, 4)


subsets = st.sets(st.integers(1, 6), max_size=6).map(lambda s: CS(s, 6))


@given(subsets, subsets)
def test_weak_separation_symmetric(A, B):
    assert weakly_separated(A, B) == weakly_separated(B, A)


@given(subsets, subsets)
def test_nested_sets_are_separated(A, B):
    if A.J <= B.J or B.J <= A.J:
        assert weakly_separated(A, B)


def test_flag_minor_count():
    # 2^N subsets minus the N+1 initial intervals
    assert [len(flag_minors(N)) for N in range(2, 6)] == [2 ** N - N - 1 for N in range(2, 6)]


def test_hook_criterion_examples():
    one = Partition((1,))
    v = hook_criterion(one, [0, 1])
    assert not v.simple and v.violations == ((0, 1, 1),)
    assert hook_criterion(one, [0, 2]).simple
    assert hook_criterion(Partition((2, 1)), [0, 2]).simple
    assert not hook_criterion(Partition((2, 1)), [0, 3]).simple


@given(st.integers(-20, 20))
def test_hook_criterion_single_point(a):
    assert hook_criterion(Partition((3, 2, 1)), [a]).simple

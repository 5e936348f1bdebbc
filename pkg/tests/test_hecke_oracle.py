from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hecke_irred import linalg as la
from hecke_irred.hecke_oracle import (
    FiniteModule,
    HeckeParams,
    RelationError,
    burnside_is_simple,
    burnside_span_dim,
    character,
    check_relations,
    composition_factors,
    evaluation_module,
    evaluation_product,
    find_submodule,
    induce,
    seminormal_rep,
    standard_module,
)
from hecke_irred.grothendieck import expand_standard
from hecke_irred.multisegments import parse_multisegment
from hecke_irred.partitions import Partition, partitions_of

U = Fraction(3)
P = lambda *p: Partition(p)
M_ = parse_multisegment


def test_params_guard():
    with pytest.raises(ValueError):
        HeckeParams(2, Fraction(-1))
    with pytest.raises(ValueError):
        HeckeParams(0)
    with pytest.raises(ValueError):
        HeckeParams(2, Fraction(0))


def test_seminormal_small():
    assert seminormal_rep(P(2), U).T[0].to_Matrix().tolist() == [[U]]
    assert seminormal_rep(P(1, 1), U).T[0].to_Matrix().tolist() == [[-1]]
    t = seminormal_rep(P(2, 1), U).T[0].to_Matrix()
    assert sorted(t.eigenvals()) == [-1, 3]


@pytest.mark.parametrize("lam", [L for n in range(1, 6) for L in partitions_of(n)], ids=str)
def test_seminormal_relations(lam):
    check_relations(seminormal_rep(lam, U))


def test_relation_check_catches_errors():
    bad = FiniteModule(2, U, (la.dm([[2]]).to_sparse(),))
    with pytest.raises(RelationError):
        check_relations(bad)


def test_evaluation_spectra():
    z = Fraction(5)
    assert set(character(evaluation_module(P(1), z, U))) == {(z,)}
    assert set(character(evaluation_module(P(2), z, U))) == {(z, z * U)}
    assert set(character(evaluation_module(P(1, 1), z, U))) == {(z, z / U)}


def test_evaluation_rejects_zero():
    with pytest.raises(ValueError):
        evaluation_module(P(1), 0, U)


def test_induce_dimensions():
    a, b = evaluation_module(P(1), 2, U), evaluation_module(P(1), 7, U)
    assert induce(a, b).dim == 2
    c, d = evaluation_module(P(2), 2, U), evaluation_module(P(2), 7, U)
    assert induce(c, d).dim == 6
    e = evaluation_module(P(2, 1), 1, U)
    assert induce(e, a).dim == 4 * 2


def test_induce_spectrum_two_points():
    z1, z2 = Fraction(2), Fraction(7)
    M = induce(evaluation_module(P(1), z1, U), evaluation_module(P(1), z2, U))
    assert set(character(M)) == {(z1, z2), (z2, z1)}


zs = st.fractions(min_value=Fraction(-20), max_value=Fraction(20), max_denominator=5).filter(lambda x: x != 0)


@settings(max_examples=15)
@given(zs, zs)
def test_cross_relation(z1, z2):
    # T y_2 = y_1 T + (u - 1) y_2, a consequence of T y_1 T = u y_2 and the quadratic relation
    M = induce(evaluation_module(P(1), z1, U), evaluation_module(P(1), z2, U))
    T, (y1, y2) = M.T[0].to_dense(), [y.to_dense() for y in M.Y]
    assert la.mat_eq(T * y2, y1 * T + y2 * la.qq(U - 1))


@settings(max_examples=10)
@given(zs, zs)
def test_induced_relations_hold(z1, z2):
    M = induce(evaluation_module(P(2), z1, U), evaluation_module(P(1), z2, U))
    check_relations(M)
    assert M.dim == 3


def test_burnside_examples():
    assert not burnside_is_simple(evaluation_product(P(1), [1, 3], U))
    assert burnside_is_simple(evaluation_product(P(1), [1, 9], U))
    assert burnside_span_dim(evaluation_product(P(1), [1, 9], U)) == 4
    assert burnside_is_simple(evaluation_module(P(3), 4, U))


@pytest.mark.parametrize("lam", [L for n in range(1, 5) for L in partitions_of(n)], ids=str)
def test_evaluation_modules_simple(lam):
    assert burnside_is_simple(evaluation_module(lam, Fraction(2), U))


def test_norton_agrees_with_span():
    for pts in ([1, 3], [1, 9], [1, 27]):
        M = evaluation_product(P(2), pts, U)
        assert find_submodule(M).simple == (burnside_span_dim(M) == M.dim**2)


def test_composition_factors_examples():
    M = evaluation_product(P(1), [1, 3], U)
    assert composition_factors(M) == Counter({M_("[0,1]"): 1, M_("[0,0]+[1,1]"): 1})
    assert composition_factors(evaluation_module(P(2, 1), 1, U)) == Counter({M_("[0,1]+[-1,-1]"): 1})


@pytest.mark.parametrize("m", ["[0,0]+[1,1]", "[0,1]+[1,1]", "[0,0]+[1,1]+[2,2]", "[0,0]+[0,1]"])
def test_standard_modules_match_k(m):
    m = M_(m)
    assert dict(composition_factors(standard_module(m))) == expand_standard(m)

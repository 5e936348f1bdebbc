from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hecke_irred import linalg as la
from hecke_irred.partitions import Partition
from hecke_irred.rmatrix import (
    DegeneracyError,
    ModuleRelationError,
    QAffineParams,
    check_module,
    fundamental_eval_module,
    fused_module,
    rcheck_solve,
    sample_points,
    singularity_scan,
    tensor,
    weyl_dimension,
    yang_baxter_check,
)

V = Fraction(2)
P = lambda *p: Partition(p)


def test_params_guard():
    with pytest.raises(ValueError):
        QAffineParams(1)
    with pytest.raises(ValueError):
        QAffineParams(2, Fraction(-1))
    assert QAffineParams(3, V).u == 4


def test_fundamental_n2():
    M = fundamental_eval_module(2, V, Fraction(5))
    assert M.e[1].to_Matrix().tolist() == [[0, 1], [0, 0]]
    assert M.e[0].to_Matrix().tolist() == [[0, 0], [5, 0]]
    assert M.f[0].to_Matrix().tolist() == [[0, Fraction(1, 5)], [0, 0]]
    assert sorted(M.k[1].to_Matrix().diagonal()) == [Fraction(1, 2), 2]


def test_fundamental_rejects_zero():
    with pytest.raises(ValueError):
        fundamental_eval_module(2, V, 0)


def test_relation_check_catches_errors():
    M = fundamental_eval_module(3, V, Fraction(2))
    M.e[1] = M.e[1] * 2 + la.eye(3)
    with pytest.raises(ModuleRelationError):
        check_module(M)


@pytest.mark.parametrize("N", [2, 3])
def test_tensor_relations(N):
    check_module(tensor(fundamental_eval_module(N, V, Fraction(3)), fundamental_eval_module(N, V, Fraction(7, 2))))


@pytest.mark.parametrize("parts,N,dim", [((1,), 3, 3), ((2,), 2, 3), ((1, 1), 3, 3), ((2,), 3, 6), ((2, 1), 3, 8)])
def test_fused_dimensions(parts, N, dim):
    lam = Partition(parts)
    assert weyl_dimension(lam, N) == dim
    assert fused_module(lam, N, V, Fraction(5)).dim == dim


def test_fused_too_many_rows():
    with pytest.raises(ValueError):
        fused_module(P(1, 1, 1), 2, V)


def test_rcheck_at_one_is_identity():
    R = rcheck_solve(P(1), 2, V, Fraction(1))
    assert la.mat_eq(R, la.eye(4))


def test_rcheck_two_eigenvalues():
    R = rcheck_solve(P(1), 2, V, Fraction(3)).to_Matrix()
    ev = R.eigenvals()
    assert ev.get(1) == 3 and len(ev) == 2


@settings(max_examples=20)
@given(st.fractions(min_value=Fraction(1, 7), max_value=Fraction(50), max_denominator=7))
def test_rcheck_unique_at_generic_points(z):
    # only z = u^{+-1} are special for the vector representation
    if z not in (Fraction(4), Fraction(1, 4)):
        R = rcheck_solve(P(1), 2, V, z)
        assert R.to_list()[0][0] == 1
        assert R.det() != 0


def test_rcheck_at_special_points():
    # z = u: the intertwiner survives but is singular; z = 1/u: a pole
    assert rcheck_solve(P(1), 2, V, Fraction(4)).det() == 0
    with pytest.raises(DegeneracyError):
        rcheck_solve(P(1), 2, V, Fraction(1, 4))


def test_sample_points_avoid_powers():
    pts = sample_points(20, Fraction(4))
    assert len(set(pts)) == 20
    assert all(p != Fraction(4) ** k for p in pts for k in range(-12, 13))


def test_yang_baxter_vector():
    assert yang_baxter_check(P(1), 2, [Fraction(3), Fraction(7), Fraction(11, 2)], V)
    assert yang_baxter_check(P(1), 3, [Fraction(5), Fraction(2, 3), Fraction(13)], V)


def test_scan_vector_n2():
    rep = singularity_scan(P(1), 2, V)
    assert rep.contained and rep.held_out_ok
    exps = {p["u_exponent"] for p in rep.poles} | {z["u_exponent"] for z in rep.zeros}
    assert exps <= {1, -1}
    js = rep.to_json()
    for key in ("lambda", "N", "v", "poles", "zeros", "contained"):
        assert key in js


@pytest.mark.slow
def test_scan_symmetric_square():
    rep = singularity_scan(P(2), 2, V)
    assert rep.contained
    exps = {p["u_exponent"] for p in rep.poles} | {z["u_exponent"] for z in rep.zeros}
    assert exps <= {1, -1, 2, -2}

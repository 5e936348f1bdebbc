"""Acceptance gate.  Each criterion prints one PASS/FAIL line (also repeated in
the terminal summary).  Two criteria are known to fail as literally stated and
are marked strict xfail; the reasons are in the test bodies."""

import pytest

from conftest import ACCEPTANCE
from hecke_irred import suites
from hecke_irred.partitions import Partition

LOG = suites.CoefficientLog()
FEEDS = set()


def report(k: int, ok: bool, detail: str = ""):
    verdict = "PASS" if ok else "FAIL"
    ACCEPTANCE[k] = (verdict, detail)
    print(f"criterion {k}: {verdict}  {detail}")


TRIPLE_SHAPES = [Partition(p) for p in [(1,), (2,), (1, 1), (2, 1)]]


def test_criterion_1_triple_agreement():
    res = suites.triple_agreement(TRIPLE_SHAPES, a_max=5, log=LOG)
    FEEDS.add(1)
    report(1, res["ok"], f"{res['cases']} cases, {len(res['failures'])} disagreements, {res['seconds']:.0f}s")
    assert res["cases"] == 24
    assert res["ok"], res["failures"]


def test_criterion_2_kmatrix_gate():
    res = suites.kmatrix_gate(max_degree=4, N=4)
    report(2, res["ok"], f"{res['cases']} standard modules, {res['seconds']:.0f}s")
    assert res["ok"], res["failures"]


def test_criterion_3_flag_minor_pairs():
    res = suites.flag_minor_equivalence(4, log=LOG)
    FEEDS.add(3)
    report(3, res["ok"], f"{res['cases']} pairs in windows 2..4")
    assert res["ok"], res["failures"]


def test_criterion_4_flag_minor_triples():
    res = suites.triple_flag_products(6, log=LOG)
    FEEDS.add(4)
    report(4, res["ok"], f"{res['cases']} triples in window 6")
    assert res["cases"] > 0
    assert res["ok"], res["failures"]


@pytest.mark.xfail(
    strict=True,
    reason="the segment coproduct and the matrix coproduct agree only after exchanging tensor legs",
)
def test_criterion_5_bialgebra():
    res = suites.bialgebra(5)
    bad = [k for k, v in res["literal"].items() if not v]
    report(5, res["ok"], f"literal mismatch on {bad}; flipped identity holds: {res['flipped_ok']}")
    assert res["flipped_ok"]
    assert res["ok"]


def test_criterion_6_positivity():
    # runs after 1, 3 and 4 (file order) and audits every coefficient they produced
    ok = FEEDS == {1, 3, 4} and LOG.values and LOG.all_nonnegative_integers
    report(6, bool(ok), f"{len(LOG.values)} coefficients from criteria {sorted(FEEDS)}")
    assert FEEDS == {1, 3, 4}
    assert LOG.all_nonnegative_integers


def test_criterion_7_rmatrix_containment():
    res = suites.rmatrix_containment()
    detail = "; ".join(
        f"({r['lambda']}),N={r['N']}: poles {[p['u_exponent'] for p in r['poles']]} zeros {[z['u_exponent'] for z in r['zeros']]}"
        for r in res["rows"]
    )
    report(7, res["ok"], detail)
    assert res["cases"] == 5
    assert res["ok"], res["rows"]


@pytest.mark.xfail(
    strict=True,
    reason="the literal grid reaches values that are not hook lengths, first at shape 3,1,1",
)
def test_criterion_8_hook_set_probe():
    res = suites.hook_probe(12)
    first = res["counterexamples"][0] if res["counterexamples"] else None
    report(8, res["ok"], f"{len(res['counterexamples'])} of {res['cases']} shapes differ; first {first}")
    assert res["ok"]


def test_criterion_8_counterexamples_are_reported():
    res = suites.hook_probe(12)
    assert res["counterexamples"], "the probe must surface disagreements"
    first = res["counterexamples"][0]
    assert first["lambda"] == "3,1,1"
    assert first["extra"] == [-3, 3]

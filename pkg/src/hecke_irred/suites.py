"""Verification grids shared by the CLI, the scripts and the acceptance tests.

Each suite returns a plain dict with an ``ok`` flag, the number of cases and
the list of disagreements, so callers can print or serialise it directly.
"""

from __future__ import annotations

import itertools
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from . import grothendieck as gr
from . import hecke_oracle as ho
from .multisegments import (
    EvaluationPoint,
    column_set,
    evaluation_multisegment,
    flag_minor_multisegment,
    flag_minors,
    hook_criterion,
    weakly_separated,
    weight_classes,
    zel_leq,
)
from .partitions import Partition, hook_exponent_set, partitions_of, probe_hook_sets
from .uqn_canonical import canonical_K


def workers() -> int:
    return max(1, int(os.environ.get("HECKE_IRRED_WORKERS", "1")))


@dataclass
class CoefficientLog:
    """Every product_expand coefficient seen by the suites (positivity audit)."""

    values: list = field(default_factory=list)

    def record(self, expansion: dict):
        self.values.extend(expansion.values())

    @property
    def all_nonnegative_integers(self) -> bool:
        return all(c >= 0 and Fraction(c).denominator == 1 for c in self.values)


def _triple_case(args):
    lam, a, u = args
    L = Partition(lam)
    hook = hook_criterion(L, [0, a]).simple
    rep = gr.is_simple_product([evaluation_multisegment(L, 0), evaluation_multisegment(L, a)])
    burn, dim = ho.is_simple_evaluation_product(L, [0, a], u)
    return {
        "lambda": str(L),
        "a": a,
        "hook": hook,
        "product": rep.simple,
        "burnside": burn,
        "dim": dim,
        "expected": a not in hook_exponent_set(L),
        "expansion": {str(k): int(v) for k, v in rep.expansion.items()},
    }


def triple_agreement(
    partitions: Iterable[Partition], a_max: int = 5, u=Fraction(3), log: CoefficientLog | None = None
) -> dict:
    """hook_criterion = is_simple_product = burnside_is_simple on S_lam(1) x S_lam(u^a)."""
    t0 = time.time()
    jobs = [(tuple(L.parts), a, Fraction(u)) for L in partitions for a in range(a_max + 1)]
    if workers() > 1:
        with ProcessPoolExecutor(max_workers=workers()) as ex:
            rows = list(ex.map(_triple_case, jobs))
    else:
        rows = [_triple_case(j) for j in jobs]
    bad = [r for r in rows if not (r["hook"] == r["product"] == r["burnside"] == r["expected"])]
    if log is not None:
        for r in rows:
            log.record(r["expansion"])
    return {"suite": "triple", "cases": len(rows), "failures": bad, "ok": not bad, "rows": rows, "seconds": time.time() - t0}


def kmatrix_gate(max_degree: int = 4, N: int = 4) -> dict:
    """K(1) against composition multiplicities of standard modules, plus
    unitriangularity and q N[q] off-diagonal entries, on letters 1..N-1."""
    t0 = time.time()
    bad = []
    cases = 0
    for dv in weight_classes(max_degree, range(1, N)):
        K = canonical_K(None, dv)
        K1 = K.at_q1()
        for i, m in enumerate(K.index):
            for j, n in enumerate(K.index):
                x = K.entries[i][j]
                if i == j and x != 1:
                    bad.append({"m": str(m), "issue": "diagonal entry is not 1"})
                if i != j and x:
                    if not zel_leq(m, n):
                        bad.append({"m": str(m), "n": str(n), "issue": "entry outside the order"})
                    if any(e <= 0 or c < 0 for e, c in x.items()):
                        bad.append({"m": str(m), "n": str(n), "issue": f"entry {x} not in qN[q]"})
            factors = ho.composition_factors(ho.standard_module(m))
            row = {K.index[j]: K1[i][j] for j in range(len(K.index)) if K1[i][j]}
            cases += 1
            if dict(factors) != row:
                bad.append({"m": str(m), "issue": "multiplicities differ", "K": str(row), "module": str(dict(factors))})
    return {"suite": "kgate", "cases": cases, "failures": bad, "ok": not bad, "seconds": time.time() - t0}


def flag_minor_equivalence(N_max: int = 4, log: CoefficientLog | None = None) -> dict:
    """is_simple_product(pair) iff weakly_separated(column sets), windows 2..N_max."""
    t0 = time.time()
    bad = []
    cases = 0
    for N in range(2, N_max + 1):
        for A, B in itertools.combinations_with_replacement(flag_minors(N), 2):
            rep = gr.is_simple_product([flag_minor_multisegment(A), flag_minor_multisegment(B)])
            if log is not None:
                log.record(rep.expansion)
            ws = weakly_separated(A, B)
            cases += 1
            if rep.simple != ws:
                bad.append({"N": N, "A": str(A), "B": str(B), "simple": rep.simple, "weakly_separated": ws})
    return {"suite": "flag", "cases": cases, "failures": bad, "ok": not bad, "seconds": time.time() - t0}


def triple_flag_products(N: int = 6, log: CoefficientLog | None = None) -> dict:
    """G*(lam,a1) G*(lam,a2) G*(lam,a3) single-term iff no |a_i - a_j| in E_lam,
    for lam in {(1), (2)} and every in-window triple."""
    t0 = time.time()
    bad = []
    cases = 0
    for lam in (Partition((1,)), Partition((2,))):
        lo, hi = len(lam), N - lam[0]
        for trip in itertools.combinations_with_replacement(range(lo, hi + 1), 3):
            ms = [flag_minor_multisegment(column_set(EvaluationPoint(lam, a), N)) for a in trip]
            rep = gr.is_simple_product(ms)
            if log is not None:
                log.record(rep.expansion)
            hook = hook_criterion(lam, list(trip)).simple
            cases += 1
            if rep.simple != hook:
                bad.append({"lambda": str(lam), "points": list(trip), "simple": rep.simple, "hook": hook})
    return {"suite": "triples", "cases": cases, "failures": bad, "ok": not bad, "seconds": time.time() - t0}


def bialgebra(N: int = 5) -> dict:
    rep = gr.bialgebra_check(N)
    out = rep.to_json()
    out.update({"suite": "bialgebra", "ok": rep.literal_ok, "cases": len(rep.literal)})
    return out


def hook_probe(max_size: int = 12) -> dict:
    """Literal grid versus diagram hooks; counterexamples are listed, never dropped."""
    bad = probe_hook_sets(max_size)
    report = []
    for lam in bad:
        lit = sorted(hook_exponent_set(lam, "literal").symmetric())
        pos = sorted(hook_exponent_set(lam, "positive").symmetric())
        report.append({"lambda": str(lam), "literal": lit, "positive": pos, "extra": sorted(set(lit) - set(pos))})
    total = sum(1 for n in range(max_size + 1) for _ in partitions_of(n))
    return {"suite": "hooks", "cases": total, "counterexamples": report, "ok": not report}


RMATRIX_CASES = [((1,), 2), ((1,), 3), ((2,), 2), ((1, 1), 2), ((1, 1), 3)]


def rmatrix_containment(cases=RMATRIX_CASES, v=Fraction(2)) -> dict:
    from .rmatrix import singularity_scan

    t0 = time.time()
    rows = []
    for lam, N in cases:
        rep = singularity_scan(Partition(lam), N, v)
        rows.append(rep.to_json())
    ok = all(r["contained"] and r["held_out_ok"] for r in rows)
    return {"suite": "rmatrix", "cases": len(rows), "rows": rows, "ok": ok, "seconds": time.time() - t0}


SUITES = {
    "triple": lambda n: triple_agreement([L for k in range(1, n + 1) for L in partitions_of(k)]),
    "kgate": lambda n: kmatrix_gate(max_degree=min(n, 4) if n else 4),
    "flag": lambda n: flag_minor_equivalence(n),
    "triples": lambda n: triple_flag_products(max(n, 3)),
    "bialgebra": lambda n: bialgebra(n),
    "hooks": lambda n: hook_probe(n),
    "rmatrix": lambda n: rmatrix_containment(),
}

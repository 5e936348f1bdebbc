"""The Grothendieck ring side at q = 1.

Classes of standard modules become commutative monomials t_m, simple modules
become dual canonical elements G*(m), and simplicity of an induction product
of simples is read off the number of terms in the product of their G*.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .exact_arith import eval_q1
from .multisegments import Multisegment, Segment
from .uqn_canonical import KMatrix, canonical_K, dual_coeffs


class PositivityError(ArithmeticError):
    """A product of dual canonical elements produced a negative coefficient."""


class PolyA:
    """Polynomial in the commuting variables t_{j+1,i}, monomials labelled by
    multisegments (t_m = prod t_{j+1,i}^{m_ij})."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Multisegment, object] | None = None):
        self.terms = {m: Fraction(c) for m, c in (terms or {}).items() if c}

    @classmethod
    def one(cls) -> "PolyA":
        return cls({Multisegment(): 1})

    def __add__(self, other: "PolyA") -> "PolyA":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return PolyA(out)

    def __sub__(self, other: "PolyA") -> "PolyA":
        return self + other.scale(-1)

    def scale(self, c) -> "PolyA":
        return PolyA({m: x * c for m, x in self.terms.items()})

    def __mul__(self, other: "PolyA") -> "PolyA":
        out: dict = {}
        for m, a in self.terms.items():
            for n, b in other.terms.items():
                k = m + n
                out[k] = out.get(k, 0) + a * b
        return PolyA(out)

    def __eq__(self, other):
        return isinstance(other, PolyA) and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return "PolyA(" + ", ".join(f"{c}*t[{m}]" for m, c in sorted(self.terms.items())) + ")"


def phi_standard(m: Multisegment) -> PolyA:
    return PolyA({m: 1})


def t_variable(j: int, i: int) -> PolyA:
    """t_{j,i} (j > i), the image of the segment module L_[i, j-1]."""
    if j <= i:
        raise ValueError("need j > i")
    return phi_standard(Multisegment([Segment(i, j - 1)]))


def _kmatrix(m: Multisegment) -> KMatrix:
    return canonical_K(None, m.dimvector())


def dual_poly(m: Multisegment) -> PolyA:
    """G*(m) at q = 1: row m of K^-1 on the t-monomials."""
    if not m:
        return PolyA.one()
    K = _kmatrix(m)
    inv = dual_coeffs(K)
    i = K.index.index(m)
    return PolyA({n: eval_q1(inv[i][j]) for j, n in enumerate(K.index)})


def expand_standard(m: Multisegment) -> dict[Multisegment, int]:
    """[M_m] = sum_n K_mn(1) [L_n]."""
    if not m:
        return {m: 1}
    K = _kmatrix(m)
    i = K.index.index(m)
    return {n: int(eval_q1(K.entries[i][j])) for j, n in enumerate(K.index) if K.entries[i][j]}


def _total(ms: Sequence[Multisegment]) -> Multisegment:
    out = Multisegment()
    for m in ms:
        out = out + m
    return out


def re_expand(P: PolyA, weight_rep: Multisegment) -> dict[Multisegment, Fraction]:
    """Write P on the basis {G*(p)} by repeatedly removing the leading term.

    G*(p) = t_p + (terms t_n with p strictly below n), so the term of P that
    is lowest in a linear extension of the order is always a leading term."""
    if not P:
        return {}
    K = _kmatrix(weight_rep) if weight_rep else None
    order = K.index if K is not None else [Multisegment()]
    rank = {m: k for k, m in enumerate(order)}
    P = PolyA(P.terms)
    out: dict[Multisegment, Fraction] = {}
    while P:
        lead = min(P.terms, key=lambda m: rank[m])
        c = P.terms[lead]
        out[lead] = c
        P = P - dual_poly(lead).scale(c)
    return out


def product_expand(ms: Sequence[Multisegment], check_positive: bool = True) -> dict[Multisegment, Fraction]:
    """Coefficients of G*(m_1)...G*(m_k) on the dual canonical basis."""
    P = PolyA.one()
    for m in ms:
        P = P * dual_poly(m)
    out = re_expand(P, _total(ms))
    if check_positive:
        bad = {p: c for p, c in out.items() if c < 0 or c.denominator != 1}
        if bad:
            raise PositivityError(f"non-positive coefficients in product of {[str(m) for m in ms]}: {bad}")
    return out


@dataclass
class ProductReport:
    inputs: list[Multisegment]
    simple: bool
    expansion: dict[Multisegment, Fraction]

    def to_json(self) -> dict:
        return {
            "inputs": [str(m) for m in self.inputs],
            "simple": self.simple,
            "expansion": [
                {"multisegment": str(p), "coeff": int(c) if c.denominator == 1 else str(c)}
                for p, c in sorted(self.expansion.items())
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def is_simple_product(ms: Sequence[Multisegment]) -> ProductReport:
    """Simple iff the product expands to exactly one dual canonical element
    with coefficient 1 (at q = 1; positivity makes this faithful)."""
    ex = product_expand(ms)
    simple = len(ex) == 1 and next(iter(ex.values())) == 1
    return ProductReport(list(ms), simple, ex)


# ---------------------------------------------------------------------------
# coproducts
# ---------------------------------------------------------------------------

Tensor = dict  # (Multisegment, Multisegment) -> int


def restriction_coproduct(seg: Segment) -> Counter:
    """c[L_[i,j]] as a multiset of pairs of multisegments (empty = unit)."""
    E = Multisegment()
    out = Counter({(E, Multisegment([seg])): 1, (Multisegment([seg]), E): 1})
    for k in range(seg.i, seg.j):
        out[(Multisegment([Segment(seg.i, k)]), Multisegment([Segment(k + 1, seg.j)]))] += 1
    return out


def matrix_coproduct(j: int, i: int) -> Counter:
    """delta t_{j,i} = t_{j,i} x 1 + sum_{i<k<j} t_{j,k} x t_{k,i} + 1 x t_{j,i},
    each t written as its multisegment."""
    E = Multisegment()
    var = lambda a, b: Multisegment([Segment(b, a - 1)])  # t_{a,b}
    out = Counter({(var(j, i), E): 1, (E, var(j, i)): 1})
    for k in range(i + 1, j):
        out[(var(j, k), var(k, i))] += 1
    return out


def _phi_tensor(c: Counter) -> Counter:
    """(Phi x Phi) on a combination of [L_a] x [L_b]; for single segments
    Phi[L] is one t-variable, checked through dual_poly."""
    out: Counter = Counter()
    for (a, b), mult in c.items():
        pa, pb = dual_poly(a), dual_poly(b)
        for ma, ca in pa.terms.items():
            for mb, cb in pb.terms.items():
                out[(ma, mb)] += int(ca * cb) * mult
    return +out


@dataclass
class BialgebraReport:
    N: int
    literal: dict[str, bool]
    flipped: dict[str, bool]

    @property
    def literal_ok(self) -> bool:
        return all(self.literal.values())

    @property
    def flipped_ok(self) -> bool:
        return all(self.flipped.values())

    def to_json(self) -> dict:
        return {
            "N": self.N,
            "literal": self.literal,
            "literal_ok": self.literal_ok,
            "flipped": self.flipped,
            "flipped_ok": self.flipped_ok,
        }


def bialgebra_check(N: int) -> BialgebraReport:
    """Compare (Phi x Phi) c and delta Phi on each segment [i,j] with
    1 <= i <= j <= N-1 (Phi[L_[i,j]] = t_{j+1,i}).

    ``literal`` compares the two sides as written; ``flipped`` compares
    (Phi x Phi) c with the opposite coproduct (tensor legs exchanged)."""
    literal, flipped = {}, {}
    for i in range(1, N):
        for j in range(i, N):
            seg = Segment(i, j)
            lhs = _phi_tensor(restriction_coproduct(seg))
            rhs = matrix_coproduct(j + 1, i)
            rhs_op = Counter({(b, a): c for (a, b), c in rhs.items()})
            literal[str(seg)] = lhs == rhs
            flipped[str(seg)] = lhs == rhs_op
    return BialgebraReport(N, literal, flipped)

"""U_q(n^-) of type A on a finite window, PBW monomials and the canonical basis.

Elements are handled in two coordinates:

* the free algebra on the Chevalley generators f_1..f_{N-1} (words -> Laurent
  coefficients), where the bar involution is simply q -> q^-1 on coefficients;
* the quantum shuffle algebra, through the algebra map Psi sending f_i to the
  one-letter word (i).  Psi kills exactly the quantum Serre ideal for generic q,
  so two elements of U_q(n^-) are equal iff their shuffle images agree.

The second fact is not taken on trust: ``weight_basis`` computes the Serre
ideal weight space directly and ``check_shuffle_embedding`` compares ranks.
"""

from __future__ import annotations

import json
import logging
from collections import Counter, defaultdict
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import linalg as la
from .exact_arith import ONE, ZERO, Laurent, bar, eval_q1, format_laurent
from .multisegments import (
    Multisegment,
    Segment,
    linear_extension,
    multisegments_of_weight,
    pbw_key,
    zel_leq,
)

log = logging.getLogger(__name__)

Word = tuple[int, ...]
FreeElement = dict  # Word -> Laurent

# q is specialised to this value when only ranks are needed (mod MODULUS)
Q0 = 2
ROOT_SIGN = 1  # E_[i,j] = f_j E_[i,j-1] - q^ROOT_SIGN E_[i,j-1] f_j


class ConventionError(ArithmeticError):
    """A structural gate (dimension, triangularity, positivity) failed."""


class ResourceError(ValueError):
    pass


@dataclass(frozen=True)
class Window:
    N: int
    D: int = 8

    def __post_init__(self):
        if self.N < 2 or self.D < 1:
            raise ValueError("need N >= 2 and D >= 1")

    @property
    def letters(self) -> range:
        return range(1, self.N)


Weight = tuple  # sorted tuple of (letter, count)


def as_weight(nu: Mapping[int, int] | Iterable[tuple[int, int]]) -> Weight:
    items = nu.items() if isinstance(nu, Mapping) else nu
    return tuple(sorted((int(a), int(c)) for a, c in items if c))


def weight_of_word(w: Word) -> Weight:
    return as_weight(Counter(w))


def pairing(a: int, b: int) -> int:
    if a == b:
        return 2
    return -1 if abs(a - b) == 1 else 0


def words_of_weight(nu: Weight) -> list[Word]:
    letters = [a for a, c in nu for _ in range(c)]
    return sorted(set(permutations(letters)))


# ---------------------------------------------------------------------------
# free algebra
# ---------------------------------------------------------------------------


def free_add(a: FreeElement, b: FreeElement, scale: Laurent = ONE) -> FreeElement:
    out = dict(a)
    for w, c in b.items():
        v = out.get(w, ZERO) + c * scale
        if v:
            out[w] = v
        else:
            out.pop(w, None)
    return out


def free_mul(a: FreeElement, b: FreeElement) -> FreeElement:
    out: dict = {}
    for w1, c1 in a.items():
        for w2, c2 in b.items():
            w = w1 + w2
            out[w] = out.get(w, ZERO) + c1 * c2
    return {w: c for w, c in out.items() if c}


def free_scale(a: FreeElement, c: Laurent) -> FreeElement:
    return {w: x * c for w, x in a.items() if x * c}


def bar_element(x: FreeElement) -> FreeElement:
    """Fix each word, conjugate coefficients q -> q^-1."""
    return {w: bar(c) for w, c in x.items()}


def generator(i: int) -> FreeElement:
    return {(i,): ONE}


def serre_relators(letters: Sequence[int]) -> list[FreeElement]:
    rels = []
    two = Laurent.q_int(2)
    for i in letters:
        for j in letters:
            if abs(i - j) == 1:
                rels.append({(i, i, j): ONE, (i, j, i): -two, (j, i, i): ONE})
            elif abs(i - j) > 1 and i < j:
                rels.append({(i, j): ONE, (j, i): -ONE})
    return rels


def root_vector(seg: Segment, sign: int = ROOT_SIGN) -> FreeElement:
    """E_[i,j] = f_j E_[i,j-1] - q^sign E_[i,j-1] f_j."""
    x = generator(seg.i)
    for k in range(seg.i + 1, seg.j + 1):
        g = generator(k)
        x = free_add(free_mul(g, x), free_mul(x, g), -Laurent.monomial(sign))
    return x


def pbw_factors(m: Multisegment) -> list[tuple[Segment, int]]:
    return sorted(m.items(), key=lambda t: pbw_key(t[0]))


def divided_power_scalar(m: Multisegment) -> Laurent:
    d = ONE
    for _, k in m.items():
        d = d * Laurent.q_factorial(k)
    return d


def pbw_free_numerator(m: Multisegment, sign: int = ROOT_SIGN) -> FreeElement:
    """Ordered product of root vectors; E_m is this divided by divided_power_scalar(m)."""
    x: FreeElement = {(): ONE}
    for seg, k in pbw_factors(m):
        r = root_vector(seg, sign)
        for _ in range(k):
            x = free_mul(x, r)
    return x


def _check_window(m: Multisegment, window: Window | None):
    if window is None:
        return
    for s in m.segments():
        if s.i < 1 or s.j > window.N - 1:
            raise ValueError(f"segment {s} is outside the window 1..{window.N - 1}")


def pbw_expand(m: Multisegment, window: Window | None = None, sign: int = ROOT_SIGN) -> dict:
    """E_m in the free algebra, coefficients in Q(q) (divided powers)."""
    _check_window(m, window)
    num = pbw_free_numerator(m, sign)
    d = divided_power_scalar(m).to_ratfun()
    return {w: c.to_ratfun() / d for w, c in num.items()}


# ---------------------------------------------------------------------------
# quantum shuffle algebra
# ---------------------------------------------------------------------------


@lru_cache(maxsize=1 << 16)
def shuffle_words(u: Word, v: Word) -> tuple[tuple[Word, int], ...]:
    """u * v as (word, exponent of q) pairs; a letter b of v placed before a
    letter a of u contributes -(a, b)."""
    if not u:
        return ((v, 0),)
    if not v:
        return ((u, 0),)
    out = []
    # last letter of the result comes from u or from v
    pen = -sum(pairing(u[-1], b) for b in v)
    for w, e in shuffle_words(u[:-1], v):
        out.append((w + (u[-1],), e + pen))
    for w, e in shuffle_words(u, v[:-1]):
        out.append((w + (v[-1],), e))
    return tuple(out)


def shuffle_product(x: Mapping[Word, Laurent], y: Mapping[Word, Laurent]) -> dict:
    out: dict = defaultdict(lambda: ZERO)
    for u, a in x.items():
        for v, b in y.items():
            ab = a * b
            for w, e in shuffle_words(u, v):
                out[w] = out[w] + ab.shift(e)
    return {w: c for w, c in out.items() if c}


@lru_cache(maxsize=1 << 14)
def psi_word(w: Word) -> tuple[tuple[Word, Laurent], ...]:
    """Psi(f_w1 ... f_wk) = (w1) * ... * (wk)."""
    if len(w) <= 1:
        return ((w, ONE),)
    prev = dict(psi_word(w[:-1]))
    return tuple(sorted(shuffle_product(prev, {(w[-1],): ONE}).items()))


def psi(x: Mapping[Word, Laurent]) -> dict:
    out: dict = defaultdict(lambda: ZERO)
    for w, c in x.items():
        for v, d in psi_word(w):
            out[v] = out[v] + c * d
    return {w: c for w, c in out.items() if c}


# ---------------------------------------------------------------------------
# weight spaces
# ---------------------------------------------------------------------------


def _modp_laurent(x: Laurent, q0: int = Q0, p: int = la.MODULUS) -> int:
    s = 0
    for e, c in x.items():
        s += c * pow(q0, e, p)
    return s % p


def serre_ideal_rank(nu: Weight, q0: int = Q0) -> tuple[int, list[Word]]:
    """Rank (at q = q0, mod p) of the Serre ideal in the weight space of nu,
    plus complement words (non-pivot columns of the ideal's echelon form)."""
    words = words_of_weight(nu)
    index = {w: k for k, w in enumerate(words)}
    letters = [a for a, _ in nu]
    ech = la.ModpEchelon(len(words))
    nu_c = Counter(dict(nu))
    for s in serre_relators(letters):
        sw = Counter(next(iter(s)))
        rest = nu_c - sw
        if any(nu_c[a] < sw[a] for a in sw):
            continue
        rest_letters = sorted(rest.elements())
        for full in set(permutations(rest_letters)):
            for cut in range(len(full) + 1):
                x, y = full[:cut], full[cut:]
                vec = np.zeros(len(words), dtype=np.int64)
                for w, c in s.items():
                    vec[index[x + w + y]] = _modp_laurent(c, q0)
                ech.add(vec)
    piv = set(ech.pivots)
    return len(ech), [w for k, w in enumerate(words) if k not in piv]


def weight_basis(window: Window, nu) -> list[Word]:
    """Words whose images form a basis of U_q(n^-)_nu (free algebra modulo the
    quantum Serre ideal); the count equals the Kostant partition number."""
    nu = as_weight(nu)
    deg = sum(c for _, c in nu)
    if deg > window.D:
        raise ResourceError(f"weight of degree {deg} exceeds the window bound {window.D}")
    if any(a < 1 or a > window.N - 1 for a, _ in nu):
        raise ValueError("weight is outside the window")
    _, basis = serre_ideal_rank(nu)
    return basis


def kostant_count(nu) -> int:
    return len(multisegments_of_weight(dict(as_weight(nu))))


def shuffle_rank(nu, q0: int = Q0) -> int:
    """Rank of Psi on the weight space (mod p at q = q0)."""
    nu = as_weight(nu)
    words = words_of_weight(nu)
    ech = la.ModpEchelon(len(words))
    index = {w: k for k, w in enumerate(words)}
    for w in words:
        vec = np.zeros(len(words), dtype=np.int64)
        for v, c in psi_word(w):
            vec[index[v]] = _modp_laurent(c, q0)
        ech.add(vec)
    return len(ech)


def check_shuffle_embedding(nu) -> dict:
    """Psi kills the Serre relators, and its rank on the weight space equals
    the dimension of the quotient by the Serre ideal."""
    nu = as_weight(nu)
    kills = all(not psi(s) for s in serre_relators([a for a, _ in nu]))
    quotient = len(words_of_weight(nu)) - serre_ideal_rank(nu)[0]
    rank = shuffle_rank(nu)
    return {
        "kills_serre": kills,
        "quotient_dim": quotient,
        "shuffle_rank": rank,
        "kostant": kostant_count(nu),
        "ok": kills and quotient == rank == kostant_count(nu),
    }


# ---------------------------------------------------------------------------
# PBW and bar in shuffle coordinates
# ---------------------------------------------------------------------------


def psi_pbw(m: Multisegment, sign: int = ROOT_SIGN) -> dict:
    """Psi(E_m): Laurent coefficients (the divided power quotient is exact)."""
    x: dict = {(): ONE}
    for seg, k in pbw_factors(m):
        r = psi(root_vector(seg, sign))
        for _ in range(k):
            x = shuffle_product(x, r)
    d = divided_power_scalar(m)
    return {w: c.exact_div(d) for w, c in x.items()}


def psi_bar_pbw(m: Multisegment, sign: int = ROOT_SIGN) -> dict:
    """Psi(bar(E_m)); bar acts on the free algebra, D_m is bar-invariant."""
    num = bar_element(pbw_free_numerator(m, sign))
    d = divided_power_scalar(m)
    return {w: c.exact_div(d) for w, c in psi(num).items()}


def _solve_triangular(cols: list[dict], rhs: list[dict], words: list[Word]):
    """Express each rhs in terms of cols, using leading words for elimination.

    Returns coefficient lists (one per rhs) or None if the leading words of
    cols are not distinct (caller falls back to general elimination)."""
    n = len(cols)
    for chooser in (max, min):
        leads = [chooser(c) for c in cols]
        if len(set(leads)) != n:
            continue
        order = sorted(range(n), key=lambda k: leads[k], reverse=chooser is max)
        # check triangularity: the lead of col k does not occur in cols earlier in order
        ok = True
        for a, ka in enumerate(order):
            for kb in order[a + 1 :]:
                if leads[ka] in cols[kb]:
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            continue
        sols = []
        for r in rhs:
            r = dict(r)
            coeffs = [ZERO] * n
            for k in order:
                w = leads[k]
                c = r.get(w, ZERO)
                if not c:
                    continue
                x = c.exact_div(cols[k][w])
                coeffs[k] = x
                for v, d in cols[k].items():
                    nv = r.get(v, ZERO) - x * d
                    if nv:
                        r[v] = nv
                    else:
                        r.pop(v, None)
            if r:
                raise ConventionError("right-hand side is not in the span of the PBW monomials")
            sols.append(coeffs)
        return sols
    return None


def _solve_general(cols: list[dict], rhs: list[dict], words: list[Word]):
    """Gaussian elimination over Q(q) on a square subsystem, verified on all words."""
    n = len(cols)
    # choose independent rows at q = Q0
    mat = np.array([[_modp_laurent(c.get(w, ZERO)) for c in cols] for w in words], dtype=np.int64)
    ech = la.ModpEchelon(n)
    rows = []
    for k, w in enumerate(words):
        if ech.add(mat[k].copy()) is not None:
            rows.append(w)
        if len(rows) == n:
            break
    if len(rows) != n:
        raise ConventionError("PBW monomials are linearly dependent")
    A = [[c.get(w, ZERO).to_ratfun() for c in cols] for w in rows]
    B = [[r.get(w, ZERO).to_ratfun() for r in rhs] for w in rows]
    # forward elimination
    for col in range(n):
        piv = next(r for r in range(col, n) if not A[r][col].is_zero())
        A[col], A[piv] = A[piv], A[col]
        B[col], B[piv] = B[piv], B[col]
        inv = A[col][col].inverse()
        A[col] = [x * inv for x in A[col]]
        B[col] = [x * inv for x in B[col]]
        for r in range(n):
            if r != col and not A[r][col].is_zero():
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
                B[r] = [x - f * y for x, y in zip(B[r], B[col])]
    sols = []
    for j, r in enumerate(rhs):
        coeffs = [B[k][j].to_laurent() for k in range(n)]
        check = {}
        for k, c in enumerate(coeffs):
            check = free_add(check, cols[k], c)
        if check != {w: v for w, v in r.items() if v}:
            raise ConventionError("general solve does not reproduce the right-hand side")
        sols.append(coeffs)
    return sols


def solve_in_pbw(index: list[Multisegment], targets: list[dict], sign: int = ROOT_SIGN):
    cols = [psi_pbw(m, sign) for m in index]
    words = sorted({w for c in cols for w in c})
    sols = _solve_triangular(cols, targets, words)
    if sols is None:
        log.info("falling back to general elimination")
        sols = _solve_general(cols, targets, words)
    return sols


# ---------------------------------------------------------------------------
# K matrices
# ---------------------------------------------------------------------------


@dataclass
class KMatrix:
    """K[m][n] with G(n) = sum_m K[m][n] E_m over one weight."""

    weight: Weight
    index: list[Multisegment]
    entries: list[list[Laurent]]

    def __post_init__(self):
        self._pos = {m: k for k, m in enumerate(self.index)}

    def __getitem__(self, mn: tuple[Multisegment, Multisegment]) -> Laurent:
        m, n = mn
        return self.entries[self._pos[m]][self._pos[n]]

    def at_q1(self) -> list[list[int]]:
        return [[int(eval_q1(x)) for x in row] for row in self.entries]

    def column(self, n: Multisegment) -> dict[Multisegment, Laurent]:
        j = self._pos[n]
        return {m: self.entries[i][j] for i, m in enumerate(self.index) if self.entries[i][j]}

    def to_json(self) -> dict:
        return {
            "weight": [[a, c] for a, c in self.weight],
            "index": [str(m) for m in self.index],
            "entries": [[format_laurent(x) for x in row] for row in self.entries],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def bar_matrix(index: list[Multisegment], sign: int = ROOT_SIGN) -> list[list[Laurent]]:
    """A with bar(E_n) = sum_m A[m][n] E_m."""
    targets = [psi_bar_pbw(n, sign) for n in index]
    sols = solve_in_pbw(index, targets, sign)
    k = len(index)
    return [[sols[j][i] for j in range(k)] for i in range(k)]


def _positive_part(x: Laurent) -> Laurent:
    return Laurent({e: c for e, c in x.items() if e > 0})


def lusztig_triangular(index: list[Multisegment], A: list[list[Laurent]]) -> list[list[Laurent]]:
    """Unique K, unitriangular for the degeneration order with off-diagonal
    entries in qZ[q], such that every column is bar-invariant: K = A bar(K)."""
    n = len(index)
    pos = {m: k for k, m in enumerate(index)}
    for i, m in enumerate(index):
        if A[i][i] != ONE:
            raise ConventionError(f"bar matrix is not unitriangular at {m}")
        for j, p in enumerate(index):
            if i != j and A[i][j] and not zel_leq(m, p):
                raise ConventionError(f"bar matrix has an entry outside the order at ({m}, {p})")
    order = linear_extension(index)  # m <= n implies m first
    K = [[ZERO] * n for _ in range(n)]
    for col_m in order:
        j = pos[col_m]
        K[j][j] = ONE
        for row_m in reversed(order):
            i = pos[row_m]
            if i == j or not zel_leq(row_m, col_m):
                continue
            r = ZERO
            for p in index:
                k = pos[p]
                if k == i or not K[k][j] or not A[i][k]:
                    continue
                r = r + A[i][k] * bar(K[k][j])
            if r.coeff(0) or r + bar(r):
                raise ConventionError(f"bar-invariance defect at ({row_m}, {col_m}) is not antisymmetric: {r}")
            K[i][j] = _positive_part(r)
    return K


def _translate(nu: Weight) -> tuple[Weight, int]:
    lo = min(a for a, _ in nu)
    shift = 1 - lo
    return tuple((a + shift, c) for a, c in nu), shift


def _components(nu: Weight) -> list[Weight]:
    comps: list[list] = []
    for a, c in nu:
        if comps and comps[-1][-1][0] == a - 1:
            comps[-1].append((a, c))
        else:
            comps.append([(a, c)])
    return [tuple(x) for x in comps]


@lru_cache(maxsize=None)
def _canonical_K_connected(nu: Weight) -> KMatrix:
    index = linear_extension(multisegments_of_weight(dict(nu)))
    A = bar_matrix(index)
    K = lusztig_triangular(index, A)
    return KMatrix(nu, index, K)


def canonical_K(window: Window | None, nu) -> KMatrix:
    """K-matrix of the weight nu: columns are canonical basis elements on PBW.

    Weights are translated to start at letter 1 (K is translation invariant)
    and split along gaps in the support, where K factors as a tensor product."""
    nu = as_weight(nu)
    if window is not None:
        deg = sum(c for _, c in nu)
        if deg > window.D:
            raise ResourceError(f"weight of degree {deg} exceeds the window bound {window.D}")
    if not nu:
        return KMatrix(nu, [Multisegment()], [[ONE]])
    parts = []
    for comp in _components(nu):
        t, shift = _translate(comp)
        K = _canonical_K_connected(t)
        parts.append((K, -shift))
    # tensor product over components
    index = [Multisegment()]
    entries = [[ONE]]
    for K, shift in parts:
        sub = [m.shift(shift) for m in K.index]
        new_index = [a + b for a in index for b in sub]
        d = len(sub)
        new_entries = [[ZERO] * len(new_index) for _ in new_index]
        for i1 in range(len(index)):
            for i2 in range(d):
                for j1 in range(len(index)):
                    for j2 in range(d):
                        x = entries[i1][j1]
                        y = K.entries[i2][j2]
                        if x and y:
                            new_entries[i1 * d + i2][j1 * d + j2] = x * y
        index, entries = new_index, new_entries
    # present in a linear extension of the order
    order = linear_extension(index)
    pos = {m: k for k, m in enumerate(index)}
    ent = [[entries[pos[a]][pos[b]] for b in order] for a in order]
    return KMatrix(nu, order, ent)


def dual_coeffs(K: KMatrix) -> list[list[Laurent]]:
    """K^-1 (unitriangular inverse); row m gives G*(m) on the t-monomials."""
    n = len(K.index)
    order = list(range(n))  # index is a linear extension: K is upper triangular
    inv = [[ZERO] * n for _ in range(n)]
    for j in reversed(order):
        inv[j][j] = ONE
        for i in range(j - 1, -1, -1):
            s = ZERO
            for k in range(i + 1, j + 1):
                if K.entries[i][k] and inv[k][j]:
                    s = s + K.entries[i][k] * inv[k][j]
            inv[i][j] = -s
    return inv


def canonical_element(n: Multisegment, window: Window | None = None) -> dict:
    """G(n) in shuffle coordinates (for bar-invariance checks)."""
    K = canonical_K(window, n.dimvector())
    out: dict = {}
    for m, c in K.column(n).items():
        out = free_add(out, psi_pbw(m), c)
    return out


def is_bar_invariant(n: Multisegment) -> bool:
    """bar(G(n)) == G(n), compared through Psi."""
    K = canonical_K(None, n.dimvector())
    lhs: dict = {}
    rhs: dict = {}
    for m, c in K.column(n).items():
        lhs = free_add(lhs, psi_pbw(m), c)
        rhs = free_add(rhs, psi_bar_pbw(m), bar(c))
    return lhs == rhs

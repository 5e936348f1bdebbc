"""Explicit modules over the affine Hecke algebra of GL(n).

Generators T_1..T_{n-1}, y_1..y_n with

    braid relations,  (T_i - u)(T_i + 1) = 0,  y_i y_j = y_j y_i,
    y_j T_i = T_i y_j (j != i, i+1),  T_i y_i T_i = u y_{i+1}.

u is a fixed rational (not a root of unity).  Modules are given by exact
rational matrices; every constructor re-verifies all relations.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from . import linalg as la
from .multisegments import Multisegment, Segment, multisegments_of_weight
from .partitions import Partition, standard_tableaux

log = logging.getLogger(__name__)

ROOT_OF_UNITY_BOUND = 24


class RelationError(ArithmeticError):
    """A constructed module violates a defining relation."""


class IdentificationError(LookupError):
    def __init__(self, message: str, candidates=()):
        super().__init__(message)
        self.candidates = list(candidates)


@dataclass(frozen=True)
class HeckeParams:
    n: int
    u: Fraction = Fraction(3)

    def __post_init__(self):
        u = Fraction(self.u)
        object.__setattr__(self, "u", u)
        if self.n < 1:
            raise ValueError("n must be positive")
        check_parameter(u)


def check_parameter(u: Fraction) -> None:
    if u == 0:
        raise ValueError("u must be nonzero")
    for k in range(1, ROOT_OF_UNITY_BOUND + 1):
        if u**k == 1:
            raise ValueError(f"u = {u} is a root of unity (u^{k} = 1)")


Weight = tuple  # tuple of Fractions, eigenvalues of y_1..y_n


@dataclass(frozen=True, eq=False)
class FiniteModule:
    """Matrices for T_1..T_{n-1} and (optionally) y_1..y_n."""

    n: int
    u: Fraction
    T: tuple[DomainMatrix, ...]
    Y: tuple[DomainMatrix, ...] = ()
    weight_candidates: frozenset = field(default_factory=frozenset)
    label: str = ""

    @property
    def dim(self) -> int:
        if self.T:
            return self.T[0].shape[0]
        if self.Y:
            return self.Y[0].shape[0]
        return 1

    @property
    def affine(self) -> bool:
        return bool(self.Y)

    def generators(self) -> list[DomainMatrix]:
        return list(self.T) + list(self.Y)

    def check_relations(self) -> None:
        check_relations(self)


def _sparse(entries: dict[tuple[int, int], object], d: int) -> DomainMatrix:
    return la.from_dict(entries, (d, d)).to_sparse()


def check_relations(M: FiniteModule) -> None:
    """Verify every defining relation exactly; raise RelationError on failure."""
    u = la.qq(M.u)
    d = M.dim
    I = la.eye(d).to_sparse()
    T, Y = [t.to_sparse() for t in M.T], [y.to_sparse() for y in M.Y]
    eq = la.mat_eq

    def fail(msg):
        raise RelationError(f"{M.label or 'module'}: {msg}")

    for i, t in enumerate(T, start=1):
        if not eq((t - I * u) * (t + I), la.zeros(d, d)):
            fail(f"quadratic relation fails for T_{i}")
    for i in range(len(T) - 1):
        a, b = T[i], T[i + 1]
        if not eq(a * b * a, b * a * b):
            fail(f"braid relation fails for T_{i + 1}, T_{i + 2}")
    for i, j in combinations(range(len(T)), 2):
        if j - i > 1 and not eq(T[i] * T[j], T[j] * T[i]):
            fail(f"T_{i + 1} and T_{j + 1} do not commute")
    if not Y:
        return
    if len(Y) != M.n:
        fail("wrong number of y generators")
    for i, j in combinations(range(len(Y)), 2):
        if not eq(Y[i] * Y[j], Y[j] * Y[i]):
            fail(f"y_{i + 1} and y_{j + 1} do not commute")
    for i, t in enumerate(T, start=1):
        for j, y in enumerate(Y, start=1):
            if j not in (i, i + 1) and not eq(y * t, t * y):
                fail(f"y_{j} and T_{i} do not commute")
        if not eq(t * Y[i - 1] * t, Y[i] * u):
            fail(f"T_{i} y_{i} T_{i} != u y_{i + 1}")


# ---------------------------------------------------------------------------
# seminormal and evaluation modules
# ---------------------------------------------------------------------------


def _positions(tab) -> dict[int, tuple[int, int]]:
    return {x: (r, c) for r, row in enumerate(tab, start=1) for c, x in enumerate(row, start=1)}


def _content(pos, k: int) -> int:
    r, c = pos[k]
    return c - r


def _swap(tab, i: int):
    return tuple(tuple(i + 1 if x == i else i if x == i + 1 else x for x in row) for row in tab)


def seminormal_rep(lam: Partition, u=Fraction(3)) -> FiniteModule:
    """Simple module S_lam of the finite Hecke algebra on standard tableaux.

    For a tableau t with r = content(i+1) - content(i):
        T_i v_t = (u-1)/(1-u^-r) v_t + (off-diagonal to s_i t),
    off-diagonal coefficient 1 when i sits in a higher row than i+1 in t and
    a_t a_s + u on the way back, so each 2x2 block satisfies the quadratic.
    """
    u = Fraction(u)
    check_parameter(u)
    tabs = standard_tableaux(lam)
    index = {t: k for k, t in enumerate(tabs)}
    n, d = lam.size, len(tabs)
    pos = [_positions(t) for t in tabs]

    def diag(k: int, i: int) -> Fraction:
        r = _content(pos[k], i + 1) - _content(pos[k], i)
        return (u - 1) / (1 - u ** (-r))

    Ts = []
    for i in range(1, n):
        entries: dict[tuple[int, int], Fraction] = {}
        for k, t in enumerate(tabs):
            entries[(k, k)] = diag(k, i)
            s = _swap(t, i)
            if s in index:
                ks = index[s]
                if pos[k][i][0] < pos[k][i + 1][0]:
                    coeff = Fraction(1)
                else:
                    coeff = diag(k, i) * diag(ks, i) + u
                # column k is the image of v_t
                entries[(ks, k)] = coeff
        Ts.append(_sparse(entries, d))
    M = FiniteModule(n=n, u=u, T=tuple(Ts), label=f"S_{lam}")
    check_relations(M)
    return M


def tableau_weights(lam: Partition, z, u) -> list[Weight]:
    z, u = Fraction(z), Fraction(u)
    out = []
    for t in standard_tableaux(lam):
        pos = _positions(t)
        out.append(tuple(z * u ** _content(pos, k) for k in range(1, lam.size + 1)))
    return out


def evaluation_module(lam: Partition, z, u=Fraction(3)) -> FiniteModule:
    """S_lam(z): y_1 = z, y_{i+1} = u^-1 T_i y_i T_i."""
    z, u = Fraction(z), Fraction(u)
    if z == 0:
        raise ValueError("evaluation point must be nonzero")
    base = seminormal_rep(lam, u)
    d, n = base.dim, lam.size
    Ys = [la.scalar(d, z).to_sparse()]
    uinv = la.qq(1 / u)
    for i in range(1, n):
        t = base.T[i - 1]
        Ys.append((t * Ys[-1] * t) * uinv)
    M = FiniteModule(
        n=n,
        u=u,
        T=base.T,
        Y=tuple(Ys),
        weight_candidates=frozenset(tableau_weights(lam, z, u)),
        label=f"S_{lam}({z})",
    )
    check_relations(M)
    return M


def segment_module(seg: Segment, u=Fraction(3)) -> FiniteModule:
    """L_[i,j]: one-dimensional, T = u, y_k = u^(i+k-1)."""
    u = Fraction(u)
    return evaluation_module(Partition((len(seg),)), u**seg.i, u)


# ---------------------------------------------------------------------------
# induction
# ---------------------------------------------------------------------------


def _coset_reps(n1: int, n2: int) -> list[tuple[int, ...]]:
    """Minimal length representatives of S_n / (S_n1 x S_n2) in one-line form,
    sorted by length."""
    n = n1 + n2
    reps = []
    for first in combinations(range(1, n + 1), n1):
        rest = [x for x in range(1, n + 1) if x not in first]
        reps.append(tuple(first) + tuple(rest))

    def length(w):
        return sum(1 for a in range(n) for b in range(a + 1, n) if w[a] > w[b])

    return sorted(reps, key=lambda w: (length(w), w))


def _kron(a: DomainMatrix, b: DomainMatrix) -> dict[tuple[int, int], object]:
    db = b.shape[0]
    out = {}
    for (i, j), x in a.to_dok().items():
        for (k, l), y in b.to_dok().items():
            out[(i * db + k, j * db + l)] = x * y
    return out


def induce(M1: FiniteModule, M2: FiniteModule) -> FiniteModule:
    """M1 ⊙ M2, basis T_w ⊗ (v ⊗ w) over minimal coset representatives."""
    if M1.u != M2.u:
        raise ValueError("modules have different parameters")
    u = la.qq(M1.u)
    n1, n2 = M1.n, M2.n
    n = n1 + n2
    d1, d2 = M1.dim, M2.dim
    db = d1 * d2
    reps = _coset_reps(n1, n2)
    widx = {w: k for k, w in enumerate(reps)}
    D = len(reps) * db
    I1 = la.eye(d1)
    I2 = la.eye(d2)

    # parabolic generators on M1 ⊗ M2
    def par_T(j: int) -> dict:
        if j < n1:
            return _kron(M1.T[j - 1], I2)
        return _kron(I1, M2.T[j - n1 - 1])

    def par_Y(j: int) -> dict:
        if j <= n1:
            return _kron(M1.Y[j - 1], I2)
        return _kron(I1, M2.Y[j - n1 - 1])

    par_T_cache = {j: par_T(j) for j in range(1, n) if j != n1}

    # T_i action
    Ts = []
    for i in range(1, n):
        entries: dict[tuple[int, int], object] = {}

        def add(r, c, x):
            entries[(r, c)] = entries.get((r, c), QQ(0)) + x

        for w in reps:
            inv = {v: p for p, v in enumerate(w)}
            sw = tuple(i + 1 if x == i else i if x == i + 1 else x for x in w)
            k = widx[w]
            if sw in widx:
                ks = widx[sw]
                if inv[i] < inv[i + 1]:  # length goes up
                    for b in range(db):
                        add(ks * db + b, k * db + b, QQ(1))
                else:
                    for b in range(db):
                        add(k * db + b, k * db + b, u - 1)
                        add(ks * db + b, k * db + b, u)
            else:
                j = min(inv[i], inv[i + 1]) + 1  # s_i w = w s_j
                for (r, c), x in par_T_cache[j].items():
                    add(k * db + r, k * db + c, x)
        Ts.append(_sparse(entries, D))

    # y_j action, column by column, following coset representatives by length
    Tl = [t.to_list() for t in Ts]
    cols: list[list[list]] = [[None] * D for _ in range(n)]  # cols[j][column] = vector
    par_Y_dicts = [par_Y(j) for j in range(1, n + 1)]
    for w in reps:
        k = widx[w]
        if k == 0:
            for j in range(n):
                for b in range(db):
                    v = [QQ(0)] * D
                    for (r, c), x in par_Y_dicts[j].items():
                        if c == b:
                            v[r] += x
                    cols[j][b] = v
            continue
        inv = {v: p for p, v in enumerate(w)}
        # left descent: i+1 appears before i
        i = next(i for i in range(1, n) if inv[i + 1] < inv[i])
        sw = tuple(i + 1 if x == i else i if x == i + 1 else x for x in w)
        kp = widx[sw]
        T = Tl[i - 1]

        def apply_T(vec):
            return [sum((a * b for a, b in zip(row, vec) if a and b), QQ(0)) for row in T]

        for b in range(db):
            src = kp * db + b
            for j in range(1, n + 1):
                if j == i + 1:
                    v = apply_T(cols[i - 1][src])
                    extra = cols[i][src]
                    v = [x + (u - 1) * e for x, e in zip(v, extra)]
                elif j == i:
                    v = apply_T(cols[i][src])
                    extra = cols[i][src]
                    v = [x - (u - 1) * e for x, e in zip(v, extra)]
                else:
                    v = apply_T(cols[j - 1][src])
                cols[j - 1][k * db + b] = v
    Ys = []
    for j in range(n):
        entries = {(r, c): x for c, col in enumerate(cols[j]) for r, x in enumerate(col) if x}
        Ys.append(_sparse(entries, D))

    cands = frozenset(
        tuple(_shuffle_weight(w, a, b, n1))
        for w in reps
        for a in (M1.weight_candidates or [None])
        for b in (M2.weight_candidates or [None])
        if a is not None and b is not None
    )
    M = FiniteModule(
        n=n,
        u=M1.u,
        T=tuple(Ts),
        Y=tuple(Ys),
        weight_candidates=cands,
        label=f"({M1.label} ⊙ {M2.label})",
    )
    check_relations(M)
    return M


def _shuffle_weight(w, a, b, n1):
    # vector T_w ⊗ (v_a ⊗ v_b) has leading weight with y_{w(p)} = (a+b)[p]
    out = [None] * len(w)
    ab = tuple(a) + tuple(b)
    for p, val in enumerate(w):
        out[val - 1] = ab[p]
    return out


def induce_many(mods: Sequence[FiniteModule]) -> FiniteModule:
    out = mods[0]
    for m in mods[1:]:
        out = induce(out, m)
    return out


def standard_module(m: Multisegment, u=Fraction(3)) -> FiniteModule:
    """M_m: induction product of the segment modules (segments in sorted order)."""
    segs = m.segments()
    if not segs:
        raise ValueError("empty multisegment")
    return induce_many([segment_module(s, u) for s in segs])


def evaluation_product(lam: Partition, zs: Sequence, u=Fraction(3)) -> FiniteModule:
    return induce_many([evaluation_module(lam, z, u) for z in zs])


# ---------------------------------------------------------------------------
# weights
# ---------------------------------------------------------------------------


def _generic_coeffs(n: int) -> list[int]:
    return [7**j + 3 * j + 1 for j in range(n)]


def joint_eigenspace(M: FiniteModule, w: Weight) -> DomainMatrix:
    """Rows span {v : y_j v = w_j v for all j}."""
    d = M.dim
    stack = None
    for y, x in zip(M.Y, w):
        a = (y.to_dense() - la.scalar(d, x)).to_dense()
        stack = a if stack is None else stack.vstack(a)
    return la.kernel(stack)


def _gen_kernel_dim(a: DomainMatrix) -> int:
    """Dimension of the generalised kernel of a square matrix."""
    d = a.shape[0]
    p = a.to_dense()
    prev = -1
    cur = d - la.rank(p)
    while cur != prev and cur < d:
        prev = cur
        p = p * p
        cur = d - la.rank(p)
    return cur


def character(M: FiniteModule) -> Counter:
    """Multiset of generalised joint y-weights (weight -> multiplicity)."""
    d = M.dim
    cands = sorted(M.weight_candidates)
    if not cands:
        raise ValueError("module carries no weight candidates")
    coeffs = _generic_coeffs(M.n)
    vals = {}
    for w in cands:
        s = sum(c * x for c, x in zip(coeffs, w))
        vals.setdefault(s, []).append(w)
    if any(len(v) > 1 for v in vals.values()):
        raise ArithmeticError("generic combination does not separate candidate weights")
    Y = None
    for c, y in zip(coeffs, M.Y):
        Y = y.to_dense() * la.qq(c) if Y is None else Y + y.to_dense() * la.qq(c)
    out: Counter = Counter()
    total = 0
    for s, (w,) in vals.items():
        k = _gen_kernel_dim(Y - la.scalar(d, s))
        if k:
            out[w] = k
            total += k
        if total == d:
            break
    if total != d:
        raise ArithmeticError("weights of the module are not among its candidates")
    return out


def weight_exponents(w: Weight, u: Fraction) -> tuple[int, ...]:
    """Integer k_j with w_j = u^k_j."""
    out = []
    for x in w:
        k = _log_u(Fraction(x), Fraction(u))
        if k is None:
            raise ValueError(f"{x} is not a power of {u}")
        out.append(k)
    return tuple(out)


def _log_u(x: Fraction, u: Fraction, bound: int = 200) -> int | None:
    if x == 1:
        return 0
    for k in range(1, bound):
        if u**k == x:
            return k
        if u ** (-k) == x:
            return -k
    return None


# ---------------------------------------------------------------------------
# simplicity and composition series
# ---------------------------------------------------------------------------

BURNSIDE_EXACT_DIM = 12


def burnside_span_dim(M: FiniteModule, modular: bool = False) -> int:
    """Dimension of the algebra spanned by all products of the generators."""
    d = M.dim
    gens = M.generators()
    if modular:
        import numpy as np

        gm = [la.to_modp(g) for g in gens]
        ech = la.ModpEchelon(d * d)
        queue = [np.eye(d, dtype=np.int64)]
        seen_rank = 0
        while queue:
            x = queue.pop()
            if ech.add(x.reshape(-1)) is None:
                continue
            seen_rank += 1
            if seen_rank == d * d:
                break
            for g in gm:
                queue.append(g.dot(x) % ech.p)
        return len(ech)
    ech = la.Echelon(d * d)
    glists = [g.to_dense() for g in gens]
    queue = [la.eye(d)]
    while queue:
        x = queue.pop()
        if not ech.add(x.to_list_flat()):
            continue
        if len(ech) == d * d:
            break
        for g in glists:
            queue.append(g * x)
    return len(ech)


@dataclass
class SimplicityCertificate:
    simple: bool
    method: str
    submodule: DomainMatrix | None = None  # columns span a proper submodule


def _combo(M: FiniteModule, w: Weight, coeffs) -> DomainMatrix:
    d = M.dim
    a = None
    for c, y, x in zip(coeffs, M.Y, w):
        term = (y.to_dense() - la.scalar(d, x)) * la.qq(c)
        a = term if a is None else a + term
    return a


def _spin_full(gens_exact, gens_modp, v) -> tuple[bool, la.Echelon | None]:
    d = len(v)
    try:
        if la.spin_modp(gens_modp, la.vec_modp(v)) == d:
            return True, None
    except ZeroDivisionError:
        pass
    ech = la.spin(gens_exact, v)
    return len(ech) == d, ech


def find_submodule(M: FiniteModule) -> SimplicityCertificate:
    """Decide simplicity; when not simple, also return a proper submodule.

    Uses Norton's criterion with elements a = sum_j c_j (y_j - w_j): if ker a is
    a line spanned by v, M is simple iff v generates M and a kernel vector of
    a^T generates the dual.  Falls back to the Burnside span for small modules.
    """
    d = M.dim
    if d == 1:
        return SimplicityCertificate(True, "dimension one")
    gens = [g.to_dense() for g in M.generators()]
    gens_t = [g.transpose() for g in gens]
    gens_p = [la.to_modp(g) for g in gens]
    gens_tp = [g.T.copy() for g in gens_p]
    coeffs = _generic_coeffs(M.n)
    cands = sorted(M.weight_candidates)
    kernels = []
    for w in cands:
        K = joint_eigenspace(M, w)
        if K.shape[0] == 0:
            continue
        kernels.append((K.shape[0], w, K))
    kernels.sort(key=lambda t: t[0])
    for kdim, w, K in kernels:
        vecs = K.to_list()
        for v in vecs:
            full, ech = _spin_full(gens, gens_p, v)
            if not full:
                cols = la.from_columns(ech.rows, d)
                return SimplicityCertificate(False, "spin", cols)
        if kdim != 1:
            continue
        a = _combo(M, w, coeffs)
        if la.kernel(a).shape[0] != 1:
            continue
        (wt,) = la.kernel(a.transpose()).to_list()
        full, ech = _spin_full(gens_t, gens_tp, wt)
        if full:
            return SimplicityCertificate(True, "norton")
        # annihilator of a proper submodule of the dual is a proper submodule
        ann = la.kernel(la.dm(ech.rows, d))
        return SimplicityCertificate(False, "dual spin", ann.transpose())
    if d <= 30:
        full = burnside_span_dim(M, modular=d > BURNSIDE_EXACT_DIM) == d * d
        if full:
            return SimplicityCertificate(True, "burnside")
    raise RuntimeError(f"could not decide simplicity of {M.label} (dim {d})")


def burnside_is_simple(M: FiniteModule) -> bool:
    """Simple iff the generators span the full matrix algebra.

    The span is computed directly for dim <= BURNSIDE_EXACT_DIM; larger modules
    go through the Norton certificate, which decides the same predicate."""
    if M.dim <= BURNSIDE_EXACT_DIM:
        return burnside_span_dim(M) == M.dim**2
    return find_submodule(M).simple


def sub_and_quotient(M: FiniteModule, cols: DomainMatrix) -> tuple[FiniteModule, FiniteModule]:
    gens = [g.to_dense() for g in M.generators()]
    k = len(M.T)
    sub = la.restrict(gens, cols)
    quo = la.quotient(gens, cols)

    def build(ms, tag):
        return FiniteModule(
            n=M.n,
            u=M.u,
            T=tuple(m.to_sparse() for m in ms[:k]),
            Y=tuple(m.to_sparse() for m in ms[k:]),
            weight_candidates=M.weight_candidates,
            label=f"{tag}({M.label})",
        )

    return build(sub, "sub"), build(quo, "quo")


def composition_series(M: FiniteModule, max_dim: int = 120) -> list[FiniteModule]:
    """Simple subquotients of M (bottom to top)."""
    if M.dim > max_dim:
        raise ValueError(f"module of dimension {M.dim} exceeds the bound {max_dim}")
    cert = find_submodule(M)
    if cert.simple:
        return [M]
    sub, quo = sub_and_quotient(M, cert.submodule)
    return composition_series(sub, max_dim) + composition_series(quo, max_dim)


def zelevinsky_word(m: Multisegment) -> tuple[int, ...]:
    """Weight of L_m obtained by Frobenius reciprocity from the standard module
    with segments in decreasing order of their start (each segment increasing)."""
    segs = sorted(m.segments(), key=lambda s: (-s.i, -s.j))
    return tuple(p for s in segs for p in s.points())


def identify(S: FiniteModule) -> Multisegment:
    """Multisegment of a simple module, read off from its lexicographically
    largest weight."""
    ch = character(S)
    exps = {weight_exponents(w, S.u): mult for w, mult in ch.items()}
    top = max(exps)
    dv = Counter(top)
    hits = [m for m in multisegments_of_weight(dv) if zelevinsky_word(m) == top]
    if len(hits) != 1:
        raise IdentificationError(f"cannot identify simple module with top weight {top}", hits)
    return hits[0]


def composition_factors(M: FiniteModule, max_dim: int = 120) -> Counter:
    """Multiset of multisegments labelling the composition factors of M."""
    return Counter(identify(S) for S in composition_series(M, max_dim))


def is_simple_evaluation_product(lam: Partition, exps: Sequence[int], u=Fraction(3)) -> tuple[bool, int]:
    """Burnside verdict for S_lam(u^a_1) ⊙ ... ⊙ S_lam(u^a_m); returns (simple, dim)."""
    u = Fraction(u)
    M = evaluation_product(lam, [u**a for a in exps], u)
    return burnside_is_simple(M), M.dim

"""Evaluation modules of U_v(affine sl_N) and their trigonometric R-matrices.

Conventions (all checked exactly at every sample point):

* Chevalley generators e_i, f_i, k_i for i = 0..N-1 with the cyclic Cartan
  matrix (a_01 = -2 when N = 2), relations k e_j k^-1 = v^{a_ij} e_j,
  [e_i, f_j] = delta_ij (k_i - k_i^-1)/(v - v^-1), and q-Serre relations;
* coproduct  e -> e x 1 + k x e,  f -> f x k^-1 + 1 x f,  k -> k x k;
* on the vector representation V(z): e_0 = z E_{N,1}, f_0 = z^-1 E_{1,N}.

Fused modules V_lam(z) are cut out of tensor products of vector
representations at content-shifted points.  The intertwiner
R(z1/z2): V_lam(z1) x V_lam(z2) -> V_lam(z2) x V_lam(z1) is normalised so
that it fixes highest x highest.
"""

from __future__ import annotations

import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from . import linalg as la
from .exact_arith import Poly, ReconstructionError, rational_reconstruct
from .partitions import Partition, hook_exponent_set, standard_tableaux

log = logging.getLogger(__name__)


class ModuleRelationError(ArithmeticError):
    pass


class DegeneracyError(ArithmeticError):
    """The intertwiner space at a sample point is not one-dimensional."""

    def __init__(self, message: str, z, dim: int):
        super().__init__(message)
        self.z = z
        self.dim = dim


@dataclass(frozen=True)
class QAffineParams:
    N: int
    v: Fraction = Fraction(2)

    def __post_init__(self):
        object.__setattr__(self, "v", Fraction(self.v))
        if self.N < 2:
            raise ValueError("N must be at least 2")
        if self.v == 0 or any(self.v**k == 1 for k in range(1, 25)):
            raise ValueError(f"v = {self.v} is zero or a root of unity")

    @property
    def u(self) -> Fraction:
        return self.v**2


@dataclass
class EvalModule:
    N: int
    v: Fraction
    z: Fraction | None
    e: list[DomainMatrix]  # index 0..N-1, 0 is affine
    f: list[DomainMatrix]
    k: list[DomainMatrix]
    kinv: list[DomainMatrix]
    label: str = ""

    @property
    def dim(self) -> int:
        return self.e[0].shape[0]

    def generators(self) -> list[DomainMatrix]:
        return self.e + self.f + self.k


def cartan(N: int, i: int, j: int) -> int:
    if N == 2:
        return 2 if i == j else -2
    if i == j:
        return 2
    return -1 if (i - j) % N in (1, N - 1) else 0


def _qint(n: int, v: Fraction) -> Fraction:
    return sum((v ** (n - 1 - 2 * k) for k in range(n)), Fraction(0))


def _qbinom(n: int, r: int, v: Fraction) -> Fraction:
    num = Fraction(1)
    for k in range(r):
        num *= _qint(n - k, v) / _qint(k + 1, v)
    return num


def _diag(vals) -> DomainMatrix:
    d = len(vals)
    return la.from_dict({(a, a): x for a, x in enumerate(vals)}, (d, d))


def _unit(N: int, a: int, b: int, c=1) -> DomainMatrix:
    return la.from_dict({(a, b): c}, (N, N))


def fundamental_eval_module(N: int, v=Fraction(2), z=Fraction(1)) -> EvalModule:
    v, z = Fraction(v), Fraction(z)
    if z == 0:
        raise ValueError("spectral parameter must be nonzero")
    e = [_unit(N, N - 1, 0, z)] + [_unit(N, i - 1, i) for i in range(1, N)]
    f = [_unit(N, 0, N - 1, 1 / z)] + [_unit(N, i, i - 1) for i in range(1, N)]

    def kdiag(i, sgn):
        a, b = (i - 1, i) if i else (N - 1, 0)
        vals = [Fraction(1)] * N
        vals[a] *= v**sgn
        vals[b] *= v ** (-sgn)
        return _diag(vals)

    M = EvalModule(N, v, z, e, f, [kdiag(i, 1) for i in range(N)], [kdiag(i, -1) for i in range(N)], f"V({z})")
    check_module(M)
    return M


def _kron(a: DomainMatrix, b: DomainMatrix) -> DomainMatrix:
    ra, ca = a.shape
    rb, cb = b.shape
    out = {}
    bd = b.to_dok()
    for (i, j), x in a.to_dok().items():
        for (k, l), y in bd.items():
            out[(i * rb + k, j * cb + l)] = x * y
    return la.from_dict(out, (ra * rb, ca * cb))


def tensor(M1: EvalModule, M2: EvalModule) -> EvalModule:
    I1, I2 = la.eye(M1.dim), la.eye(M2.dim)
    e = [_kron(a, I2) + _kron(k, b) for a, b, k in zip(M1.e, M2.e, M1.k)]
    f = [_kron(a, ki) + _kron(I1, b) for a, b, ki in zip(M1.f, M2.f, M2.kinv)]
    k = [_kron(a, b) for a, b in zip(M1.k, M2.k)]
    kinv = [_kron(a, b) for a, b in zip(M1.kinv, M2.kinv)]
    return EvalModule(M1.N, M1.v, None, e, f, k, kinv, f"{M1.label}x{M2.label}")


def check_module(M: EvalModule) -> None:
    N, v = M.N, M.v
    d = M.dim
    I = la.eye(d)
    eq = la.mat_eq

    def fail(msg):
        raise ModuleRelationError(f"{M.label}: {msg}")

    for i in range(N):
        if not eq(M.k[i] * M.kinv[i], I):
            fail(f"k_{i} k_{i}^-1 != 1")
        for j in range(N):
            if not eq(M.k[i] * M.k[j], M.k[j] * M.k[i]):
                fail("k's do not commute")
            a = cartan(N, i, j)
            s = la.qq(v**a)
            if not eq(M.k[i] * M.e[j] * M.kinv[i], M.e[j] * s):
                fail(f"k_{i} e_{j} relation")
            if not eq(M.k[i] * M.f[j] * M.kinv[i], M.f[j] * la.qq(v ** (-a))):
                fail(f"k_{i} f_{j} relation")
            comm = M.e[i] * M.f[j] - M.f[j] * M.e[i]
            target = (M.k[i] - M.kinv[i]) * la.qq(1 / (v - 1 / v)) if i == j else la.zeros(d, d)
            if not eq(comm, target):
                fail(f"[e_{i}, f_{j}] relation")
            if i != j:
                r = 1 - a
                for X in (M.e, M.f):
                    tot = la.zeros(d, d)
                    for s_ in range(r + 1):
                        c = (-1) ** s_ * _qbinom(r, s_, v)
                        term = _mpow(X[i], r - s_, d) * X[j] * _mpow(X[i], s_, d)
                        tot = tot + term * la.qq(c)
                    if not eq(tot, la.zeros(d, d)):
                        fail(f"Serre relation ({i}, {j})")
    prod = I
    for k in M.k:
        prod = prod * k
    if not eq(prod, I):
        fail("k_0 k_1 ... k_{N-1} != 1")


def _mpow(m: DomainMatrix, n: int, d: int) -> DomainMatrix:
    out = la.eye(d)
    for _ in range(n):
        out = out * m
    return out


# ---------------------------------------------------------------------------
# fusion
# ---------------------------------------------------------------------------


def weyl_dimension(lam: Partition, N: int) -> int:
    parts = list(lam.parts) + [0] * (N - len(lam))
    num, den = 1, 1
    for i in range(N):
        for j in range(i + 1, N):
            num *= parts[i] - parts[j] + j - i
            den *= j - i
    return num // den


def _highest_vectors(M: EvalModule, lam: Partition) -> DomainMatrix:
    """Rows span vectors of gl_N weight lam killed by e_1..e_{N-1}."""
    N, v = M.N, M.v
    parts = list(lam.parts) + [0] * (N - len(lam))
    stack = None
    for i in range(1, N):
        blocks = [M.e[i], M.k[i] - la.scalar(M.dim, v ** (parts[i - 1] - parts[i]))]
        for b in blocks:
            stack = b if stack is None else stack.vstack(b)
    return la.kernel(stack)


def _finite_spin(M: EvalModule, v0: list) -> list[list]:
    """Deterministic basis of the finite submodule generated by v0 under
    f_1..f_{N-1}: breadth-first in the order of generators."""
    ech = la.Echelon(M.dim)
    fl = [M.f[i].to_list() for i in range(1, M.N)]
    out = []
    queue = [list(v0)]
    while queue:
        w = queue.pop(0)
        if not ech.add(w):
            continue
        out.append(w)
        for rows in fl:
            queue.append([sum((a * b for a, b in zip(row, w) if a and b), QQ(0)) for row in rows])
    return out


def _affine_highest_vectors(M: EvalModule, hw: list[list]) -> list[list]:
    """Highest vectors v in span(hw) generating an affine submodule with the
    same finite part: e_0 v must lie in the finite span of v and f_0 v = 0.

    e_0 shifts the finite weight by -theta, so only f-words using each of
    f_1..f_{N-1} once can reach e_0 v.  The conditions are bilinear in the
    coordinates of v and the word coefficients; sympy solves them exactly."""
    import itertools

    import sympy as sp

    k = len(hw)
    H = [sp.Matrix([la.to_fraction(x) for x in row]) for row in hw]
    E0, F0 = M.e[0].to_Matrix(), M.f[0].to_Matrix()
    fs = [M.f[i].to_Matrix() for i in range(1, M.N)]
    words = list(itertools.permutations(range(M.N - 1)))
    out = []
    for anchor in range(k):
        ts = sp.symbols(f"t0:{k - 1}") if k > 1 else ()
        cs = sp.symbols(f"c0:{len(words)}")
        others = [H[i] for i in range(k) if i != anchor]
        vec = H[anchor] + sum((t * h for t, h in zip(ts, others)), sp.zeros(M.dim, 1))
        img = sp.zeros(M.dim, 1)
        for c, w in zip(cs, words):
            x = vec
            for i in reversed(w):
                x = fs[i] * x
            img += c * x
        eqs = [e for e in list(E0 * vec - img) + list(F0 * vec) if e != 0]
        for sol in sp.solve(eqs, list(ts) + list(cs), dict=True):
            if any(t not in sol or not sol[t].is_Rational for t in ts):
                continue
            cand = [Fraction(int(x.p), int(x.q)) for x in vec.subs(sol)]
            if cand not in out:
                out.append(cand)
    return [[QQ(x.numerator, x.denominator) for x in c] for c in out]


def _restrict_module(M: EvalModule, basis: list[list], label: str) -> EvalModule:
    cols = la.from_columns(basis, M.dim)
    pieces = la.restrict(M.e + M.f + M.k + M.kinv, cols)
    N = M.N
    return EvalModule(N, M.v, M.z, pieces[:N], pieces[N : 2 * N], pieces[2 * N : 3 * N], pieces[3 * N :], label)


def fused_module(lam: Partition, N: int, v=Fraction(2), z=Fraction(1), sign: int | None = None) -> EvalModule:
    """V_lam(z) inside V(z u^{s c_1}) x ... x V(z u^{s c_n}), contents c_k read
    from the row-reading tableau; the sign s is chosen so that the
    lam-isotypic highest vector generates a module of the Weyl dimension."""
    v, z = Fraction(v), Fraction(z)
    if len(lam) > N:
        raise ValueError("partition has more rows than N")
    if lam.size == 1:
        return fundamental_eval_module(N, v, z)
    u = v**2
    tab = standard_tableaux(lam)[0]  # rows filled in order
    pos = {x: (r, c) for r, row in enumerate(tab, 1) for c, x in enumerate(row, 1)}
    cont = [pos[k][1] - pos[k][0] for k in range(1, lam.size + 1)]
    want = weyl_dimension(lam, N)
    signs = (sign,) if sign is not None else (1, -1)
    for s in signs:
        M = None
        for c in cont:
            F = fundamental_eval_module(N, v, z * u ** (s * c))
            M = F if M is None else tensor(M, F)
        hw = _highest_vectors(M, lam).to_list()
        # with multiplicity, the right highest vector is a special combination
        cands = hw if len(hw) == 1 else hw + _affine_highest_vectors(M, hw)
        for row in cands:
            ech = la.spin(M.e + M.f, row)
            if len(ech) != want:
                continue
            basis = _finite_spin(M, row)
            if len(basis) != want:
                continue
            out = _restrict_module(M, basis, f"V_{lam}({z})")
            check_module(out)
            return out
    raise ModuleRelationError(f"no affine submodule of dimension {want} found for {lam}, N={N}")


# ---------------------------------------------------------------------------
# intertwiners
# ---------------------------------------------------------------------------


def _intertwiner_space(A: EvalModule, B: EvalModule) -> DomainMatrix:
    """Rows of the result are vec(R) (row-major) with R A(x) = B(x) R."""
    d = A.dim
    rows = []
    for a, b in zip(A.generators(), B.generators()):
        # (R a - b R)[i, j] = sum_k R[i,k] a[k,j] - sum_k b[i,k] R[k,j]
        al, bl = a.to_list(), b.to_list()
        for i in range(d):
            for j in range(d):
                row = {}
                for k in range(d):
                    if al[k][j]:
                        row[i * d + k] = row.get(i * d + k, QQ(0)) + al[k][j]
                    if bl[i][k]:
                        row[k * d + j] = row.get(k * d + j, QQ(0)) - bl[i][k]
                if any(row.values()):
                    rows.append(row)
    m = la.from_dict({(r, c): x for r, row in enumerate(rows) for c, x in row.items()}, (len(rows), d * d))
    return la.kernel(m)


def rcheck_solve(lam: Partition, N: int, v=Fraction(2), z=Fraction(3)) -> DomainMatrix:
    """Normalised R(z) : V_lam(z) x V_lam(1) -> V_lam(1) x V_lam(z)."""
    z = Fraction(z)
    V1 = fused_module(lam, N, v, z)
    V2 = fused_module(lam, N, v, Fraction(1))
    A, B = tensor(V1, V2), tensor(V2, V1)
    ker = _intertwiner_space(A, B)
    if ker.shape[0] != 1:
        raise DegeneracyError(f"intertwiner space has dimension {ker.shape[0]} at z = {z}", z, ker.shape[0])
    d = A.dim
    (vec,) = ker.to_list()
    R = la.dm([vec[i * d : (i + 1) * d] for i in range(d)], d)
    top = R.to_list()[0][0]
    if not top:
        raise DegeneracyError(f"R(z) does not fix the highest weight line at z = {z}", z, 1)
    return R * (1 / top)


# ---------------------------------------------------------------------------
# singularity scan
# ---------------------------------------------------------------------------


def sample_points(count: int, avoid: Fraction, start: int = 0) -> list[Fraction]:
    """Deterministic generic rationals away from powers of ``avoid``."""
    pts = []
    k = start
    while len(pts) < count:
        k += 1
        x = Fraction(2 * k + 5, k + 2) + k
        if x != 0 and all(x != avoid**e for e in range(-12, 13)):
            pts.append(x)
    return pts


def _factor_u_powers(p: Poly, u: Fraction, bound: int = 12) -> tuple[list[int], Poly, int]:
    """Strip roots of the form u^k (with multiplicity) and roots at 0.
    Returns (exponents with repetition, leftover polynomial, multiplicity of 0)."""
    exps = []
    zero = 0
    while p.degree > 0 and p.coeffs[0] == 0:
        p = Poly(p.coeffs[1:])
        zero += 1
    changed = True
    while changed and p.degree > 0:
        changed = False
        for k in range(-bound, bound + 1):
            r = u**k
            if p(r) == 0:
                q, rem = p.divmod(Poly([-r, 1]))
                assert rem.is_zero()
                p = q
                exps.append(k)
                changed = True
                break
    return exps, p, zero


@dataclass
class SingularityReport:
    lam: Partition
    N: int
    v: Fraction
    poles: list[dict]
    zeros: list[dict]
    unmatched: list[str]
    contained: bool
    held_out_ok: bool
    degree_bound: int
    normalisation: str = "R(z) fixes highest x highest"
    entries: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "lambda": str(self.lam),
            "N": self.N,
            "v": str(self.v),
            "poles": self.poles,
            "zeros": self.zeros,
            "unmatched": self.unmatched,
            "contained": self.contained,
            "held_out_ok": self.held_out_ok,
            "degree_bound": self.degree_bound,
            "normalisation": self.normalisation,
        }


def _solve_many(lam, N, v, pts, workers: int):
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            return list(ex.map(_solve_one, [(lam, N, v, z) for z in pts]))
    return [_solve_one((lam, N, v, z)) for z in pts]


def _solve_one(args):
    lam, N, v, z = args
    return [[la.to_fraction(x) for x in row] for row in rcheck_solve(lam, N, v, z).to_list()]


def _det(rows: list[list[Fraction]]) -> Fraction:
    return la.to_fraction(la.dm(rows).det())


def singularity_scan(
    lam: Partition,
    N: int,
    v=Fraction(2),
    max_degree: int = 12,
    held_out: int = 5,
    workers: int | None = None,
) -> SingularityReport:
    """Reconstruct R(z) entrywise, collect poles of entries and zeros of det R,
    and match them against u^k with u = v^2."""
    v = Fraction(v)
    u = v**2
    workers = workers or int(os.environ.get("HECKE_IRRED_WORKERS", "1"))
    cache: dict[Fraction, list[list[Fraction]]] = {}

    def samples(pts):
        todo = [z for z in pts if z not in cache]
        for z, R in zip(todo, _solve_many(lam, N, v, todo, workers)):
            cache[z] = R
        return [cache[z] for z in pts]

    for b in range(1, max_degree + 1):
        fit_pts = sample_points(2 * b + 2, u)
        test_pts = sample_points(held_out, u, start=1000 + b)
        Rs = samples(fit_pts)
        d = len(Rs[0])
        try:
            ent = {}
            for i in range(d):
                for j in range(d):
                    ent[(i, j)] = rational_reconstruct([(z, R[i][j]) for z, R in zip(fit_pts, Rs)], b)
            det_b = min(b * d, max_degree * 2)
            det_pts = sample_points(2 * det_b + 2, u, start=2000)
            det_rf = rational_reconstruct([(z, _det(R)) for z, R in zip(det_pts, samples(det_pts))], det_b)
        except ReconstructionError:
            continue
        tests = samples(test_pts)
        ok = all(ent[(i, j)](z) == R[i][j] for z, R in zip(test_pts, tests) for i in range(d) for j in range(d))
        ok = ok and all(det_rf(z) == _det(R) for z, R in zip(test_pts, tests))
        if not ok:
            continue
        return _report(lam, N, v, u, ent, det_rf, b)
    raise ReconstructionError(f"R-matrix entries not reconstructed up to degree {max_degree}")


def _report(lam, N, v, u, ent, det_rf, b) -> SingularityReport:
    allowed = hook_exponent_set(lam, "positive").symmetric()
    poles, zeros, unmatched = {}, {}, []
    for (i, j), rf in ent.items():
        exps, rest, _ = _factor_u_powers(rf.den, u)
        for k in exps:
            poles.setdefault(k, f"R[{i},{j}] = {rf.to_str('z')}")
        if rest.degree > 0:
            unmatched.append(f"pole factor {rest.to_str('z')} of R[{i},{j}]")
    for part, store in ((det_rf.num, zeros), (det_rf.den, poles)):
        exps, rest, _ = _factor_u_powers(part, u)
        for k in exps:
            store.setdefault(k, f"det R = {det_rf.to_str('z')}")
        if rest.degree > 0:
            unmatched.append(f"det factor {rest.to_str('z')}")
    matched = set(poles) | set(zeros)
    contained = not unmatched and matched <= allowed
    fmt = lambda dd: [{"value": str(u**k), "u_exponent": k, "witness": w} for k, w in sorted(dd.items())]
    return SingularityReport(
        lam, N, v, fmt(poles), fmt(zeros), unmatched, contained, True, b, entries=ent
    )


def yang_baxter_check(lam: Partition, N: int, zs: Sequence, v=Fraction(2)) -> bool:
    """R12(z2/z3) R23(z1/z3) R12(z1/z2) == R23(z1/z2) R12(z1/z3) R23(z2/z3)
    on V(z1) x V(z2) x V(z3)."""
    z1, z2, z3 = (Fraction(x) for x in zs)
    R = lambda z: rcheck_solve(lam, N, v, z)
    d = fused_module(lam, N, v).dim
    I = la.eye(d)
    r12 = lambda z: _kron(R(z), I)
    r23 = lambda z: _kron(I, R(z))
    lhs = r12(z2 / z3) * r23(z1 / z3) * r12(z1 / z2)
    rhs = r23(z1 / z2) * r12(z1 / z3) * r23(z2 / z3)
    return la.mat_eq(lhs, rhs)

"""Exact linear algebra over Q, plus a mod-p fast path for spinning.

Dense rational matrices are sympy ``DomainMatrix`` objects over ``QQ`` (gmpy2
rationals underneath).  Vectors passed around between modules are plain lists.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
from sympy import QQ
from sympy.polys.matrices import DomainMatrix

# prime small enough that a length-400 int64 dot product cannot overflow
MODULUS = 134217689


def qq(x) -> "QQ.dtype":
    if isinstance(x, Fraction):
        return QQ(x.numerator, x.denominator)
    return QQ(x)


def to_fraction(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def dm(rows: Sequence[Sequence], ncols: int | None = None) -> DomainMatrix:
    rows = [[qq(x) for x in r] for r in rows]
    nr = len(rows)
    nc = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    return DomainMatrix(rows, (nr, nc), QQ)


def eye(d: int) -> DomainMatrix:
    return DomainMatrix.eye(d, QQ)


def zeros(r: int, c: int) -> DomainMatrix:
    return DomainMatrix.zeros((r, c), QQ)


def scalar(d: int, c) -> DomainMatrix:
    return eye(d) * qq(c) if d else zeros(0, 0)


def from_dict(entries: dict[tuple[int, int], object], shape: tuple[int, int]) -> DomainMatrix:
    dod: dict[int, dict[int, object]] = {}
    for (i, j), v in entries.items():
        v = qq(v)
        if v:
            dod.setdefault(i, {})[j] = v
    return DomainMatrix.from_dod(dod, shape, QQ).to_dense()


def mat_eq(a: DomainMatrix, b: DomainMatrix) -> bool:
    if a.shape != b.shape:
        return False
    return (a.to_sparse() - b.to_sparse()).is_zero_matrix


def nullspace(rows: list[list], ncols: int) -> list[list[Fraction]]:
    """Basis of {x : A x = 0} as lists of Fractions."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    ns = dm(rows, ncols).nullspace()
    return [[to_fraction(x) for x in r] for r in ns.to_list()]


def kernel(m: DomainMatrix) -> DomainMatrix:
    """Matrix whose rows form a basis of the right kernel of ``m``."""
    r, c = m.shape
    if r == 0:
        return eye(c)
    return m.to_dense().nullspace()


def rank(m: DomainMatrix) -> int:
    if 0 in m.shape:
        return 0
    return m.to_dense().rank()


def columns(m: DomainMatrix) -> list[list]:
    return [list(col) for col in zip(*m.to_list())] if m.shape[0] else [[] for _ in range(m.shape[1])]


def from_columns(cols: Sequence[Sequence], d: int) -> DomainMatrix:
    if not cols:
        return zeros(d, 0)
    return dm([list(r) for r in zip(*cols)], len(cols))


def matvec(m: DomainMatrix, v: Sequence) -> list:
    rows = m.to_list()
    return [sum((a * b for a, b in zip(row, v) if a and b), QQ(0)) for row in rows]


class Echelon:
    """Incrementally maintained reduced row echelon basis over Q."""

    def __init__(self, dim: int):
        self.dim = dim
        self.rows: list[list] = []
        self.pivots: list[int] = []
        self.originals: list[list] = []

    def reduce(self, vec: Sequence) -> list:
        v = [qq(x) for x in vec]
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            if c:
                v = [a - c * b for a, b in zip(v, row)]
        return v

    def add(self, vec: Sequence) -> bool:
        v = self.reduce(vec)
        piv = next((i for i, x in enumerate(v) if x), None)
        if piv is None:
            return False
        inv = 1 / v[piv]
        v = [x * inv for x in v]
        # keep fully reduced
        new_rows = []
        for row in self.rows:
            c = row[piv]
            new_rows.append([a - c * b for a, b in zip(row, v)] if c else row)
        self.rows = new_rows + [v]
        self.pivots.append(piv)
        self.originals.append(list(vec))
        return True

    def __len__(self) -> int:
        return len(self.rows)

    def contains(self, vec: Sequence) -> bool:
        return not any(self.reduce(vec))


def _mod_entry(x, p: int) -> int:
    x = qq(x)
    num, den = int(x.numerator), int(x.denominator)
    if den % p == 0:
        raise ZeroDivisionError("denominator divisible by the modulus")
    return num * pow(den, -1, p) % p


def to_modp(m: DomainMatrix, p: int = MODULUS) -> np.ndarray:
    rows = m.to_list()
    return np.array([[_mod_entry(x, p) for x in r] for r in rows], dtype=np.int64).reshape(m.shape)


def vec_modp(v: Sequence, p: int = MODULUS) -> np.ndarray:
    return np.array([_mod_entry(x, p) for x in v], dtype=np.int64)


class ModpEchelon:
    """Reduced echelon basis over GF(p) with numpy int64 rows."""

    def __init__(self, dim: int, p: int = MODULUS):
        self.dim = dim
        self.p = p
        self.basis = np.zeros((0, dim), dtype=np.int64)
        self.pivots: list[int] = []

    def add(self, v: np.ndarray) -> np.ndarray | None:
        p = self.p
        v = v % p
        for row, piv in zip(self.basis, self.pivots):
            c = v[piv]
            if c:
                v = (v - c * row) % p
        nz = np.nonzero(v)[0]
        if len(nz) == 0:
            return None
        piv = int(nz[0])
        v = v * pow(int(v[piv]), -1, p) % p
        if len(self.basis):
            col = self.basis[:, piv].copy()
            self.basis = (self.basis - np.outer(col, v)) % p
        self.basis = np.vstack([self.basis, v])
        self.pivots.append(piv)
        return v

    def __len__(self) -> int:
        return len(self.pivots)


def spin_modp(gens: Iterable[np.ndarray], v: np.ndarray, p: int = MODULUS) -> int:
    """Dimension over GF(p) of the smallest subspace containing v stable under gens."""
    gens = list(gens)
    ech = ModpEchelon(len(v), p)
    queue = [v % p]
    while queue:
        w = queue.pop()
        added = ech.add(w)
        if added is None:
            continue
        if len(ech) == ech.dim:
            break
        for g in gens:
            queue.append(g.dot(added) % p)
    return len(ech)


def spin(gens: Sequence[DomainMatrix], v: Sequence) -> Echelon:
    """Exact submodule generated by v under gens (returned as an echelon basis)."""
    d = len(v)
    ech = Echelon(d)
    lists = [g.to_list() for g in gens]
    queue = [list(v)]
    while queue:
        w = queue.pop()
        if not ech.add(w):
            continue
        if len(ech) == d:
            break
        w = ech.originals[-1]
        for rows in lists:
            queue.append([sum((a * b for a, b in zip(row, w) if a and b), QQ(0)) for row in rows])
    return ech


def independent_rows(m: DomainMatrix) -> list[int]:
    """Indices of a maximal set of linearly independent rows."""
    _, piv = m.transpose().to_dense().rref()
    return list(piv)


def restrict(gens: Sequence[DomainMatrix], basis_cols: DomainMatrix) -> list[DomainMatrix]:
    """Matrices of gens on the invariant subspace spanned by the columns of basis_cols."""
    rows = independent_rows(basis_cols)
    sub = basis_cols.extract(rows, list(range(basis_cols.shape[1])))
    inv = sub.inv()
    out = []
    for g in gens:
        image = g * basis_cols
        x = inv * image.extract(rows, list(range(image.shape[1])))
        if not mat_eq(basis_cols * x, image):
            raise ArithmeticError("subspace is not invariant")
        out.append(x)
    return out


def quotient(gens: Sequence[DomainMatrix], basis_cols: DomainMatrix) -> list[DomainMatrix]:
    """Matrices of gens on V / span(basis_cols) (the subspace must be invariant)."""
    d, k = basis_cols.shape
    used = set(independent_rows(basis_cols))
    extra = [i for i in range(d) if i not in used]
    comp = from_dict({(i, c): 1 for c, i in enumerate(extra)}, (d, len(extra)))
    full = basis_cols.hstack(comp)
    inv = full.inv()
    out = []
    for g in gens:
        conj = inv * g * full
        if any(conj.extract(list(range(k, d)), list(range(k))).to_list_flat()):
            raise ArithmeticError("subspace is not invariant")
        out.append(conj.extract(list(range(k, d)), list(range(k, d))))
    return out

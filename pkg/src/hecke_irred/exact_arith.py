"""Exact arithmetic: Laurent polynomials in q, rational functions, reconstruction.

Everything here is immutable and pure.  Coefficients are Python ints or
``fractions.Fraction``; no floating point is used anywhere.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Iterable, Mapping, Sequence, Union

Number = Union[int, Fraction]


class ReconstructionError(ValueError):
    """Samples are not consistent with any rational function of the given bound."""

    def __init__(self, message: str, point=None, residual=None):
        super().__init__(message)
        self.point = point
        self.residual = residual


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------


class Laurent:
    """Sparse Laurent polynomial in ``q`` with integer coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None):
        clean = {}
        if terms:
            for e, c in terms.items():
                if c:
                    clean[int(e)] = int(c)
        self._terms = clean
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def const(cls, c: int) -> "Laurent":
        return cls({0: c})

    @classmethod
    def monomial(cls, e: int, c: int = 1) -> "Laurent":
        return cls({e: c})

    @classmethod
    def q_int(cls, n: int) -> "Laurent":
        """Balanced quantum integer [n] = (q^n - q^-n)/(q - q^-1)."""
        if n < 0:
            return -cls.q_int(-n)
        return cls({n - 1 - 2 * k: 1 for k in range(n)})

    @classmethod
    def q_factorial(cls, n: int) -> "Laurent":
        out = ONE
        for k in range(1, n + 1):
            out = out * cls.q_int(k)
        return out

    # structure ------------------------------------------------------------
    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def min_exp(self) -> int:
        return min(self._terms) if self._terms else 0

    def max_exp(self) -> int:
        return max(self._terms) if self._terms else 0

    def coeff(self, e: int) -> int:
        return self._terms.get(e, 0)

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    # arithmetic ---------------------------------------------------------
    @staticmethod
    def _coerce(x) -> "Laurent":
        if isinstance(x, Laurent):
            return x
        if isinstance(x, int):
            return Laurent({0: x})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return Laurent(out)

    __radd__ = __add__

    def __neg__(self):
        return Laurent({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return Laurent(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_monomial() or abs(next(iter(self._terms.values()))) != 1:
                raise ValueError("only units ±q^k can be inverted in Z[q,q^-1]")
            ((e, c),) = self._terms.items()
            return Laurent({e * n: c ** (-n)})
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, k: int) -> "Laurent":
        """Multiply by q^k."""
        return Laurent({e + k: c for e, c in self._terms.items()})

    def exact_div(self, other: "Laurent") -> "Laurent":
        """Division that must be exact in Z[q, q^-1]; raises otherwise."""
        if not other:
            raise ZeroDivisionError("division by zero Laurent polynomial")
        a = self.to_poly()
        b = other.to_poly()
        quo, rem = a[0].divmod(b[0])
        if not rem.is_zero() or any(c.denominator != 1 for c in quo.coeffs):
            raise ValueError(f"{self} is not divisible by {other}")
        return Laurent.from_poly(quo, a[1] - b[1])

    def __eq__(self, other):
        if isinstance(other, int):
            other = Laurent.const(other)
        if not isinstance(other, Laurent):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # specialisations ----------------------------------------------------
    def __call__(self, q: Number) -> Fraction:
        q = Fraction(q)
        return sum((Fraction(c) * q**e for e, c in self._terms.items()), Fraction(0))

    def to_poly(self) -> tuple["Poly", int]:
        """Return (p, s) with self = p(q) * q^s and p an ordinary polynomial."""
        if not self._terms:
            return Poly(()), 0
        lo = self.min_exp()
        coeffs = [0] * (self.max_exp() - lo + 1)
        for e, c in self._terms.items():
            coeffs[e - lo] = c
        return Poly(coeffs), lo

    @classmethod
    def from_poly(cls, p: "Poly", shift: int = 0) -> "Laurent":
        terms = {}
        for k, c in enumerate(p.coeffs):
            c = Fraction(c)
            if c.denominator != 1:
                raise ValueError("polynomial has non-integer coefficients")
            terms[k + shift] = int(c)
        return cls(terms)

    def to_ratfun(self) -> "RatFun":
        p, s = self.to_poly()
        if s >= 0:
            return RatFun(p * Poly.x_pow(s), Poly((1,)))
        return RatFun(p, Poly.x_pow(-s))

    # text -----------------------------------------------------------------
    def __str__(self) -> str:
        return format_laurent(self)

    def __repr__(self) -> str:
        return f"Laurent({self})"


ZERO = Laurent()
ONE = Laurent({0: 1})
Q = Laurent({1: 1})


def bar(x: Laurent) -> Laurent:
    """The involution q -> q^-1."""
    return Laurent({-e: c for e, c in x._terms.items()})


def eval_q1(x: Laurent) -> Fraction:
    """Specialisation at q = 1 (sum of coefficients)."""
    return Fraction(sum(x._terms.values()))


def format_laurent(x: Laurent, var: str = "q") -> str:
    if not x:
        return "0"
    parts = []
    for e, c in sorted(x._terms.items()):
        if e == 0:
            mono = ""
        elif e == 1:
            mono = var
        else:
            mono = f"{var}^{e}"
        if mono and abs(c) == 1:
            body = mono
        elif mono:
            body = f"{abs(c)}*{mono}"
        else:
            body = str(abs(c))
        sign = "-" if c < 0 else "+"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


_TERM = re.compile(r"([+-]?)\s*(\d*)\s*\*?\s*(q(?:\^\(?(-?\d+)\)?)?)?")


def parse_laurent(text: str) -> Laurent:
    """Inverse of ``str`` on Laurent polynomials, e.g. ``"q^-1 + 2 - 3*q^2"``."""
    s = text.replace(" ", "")
    if s in ("", "0"):
        return ZERO
    terms: dict[int, int] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse Laurent polynomial {text!r}")
        sign, digits, mono, exp = m.groups()
        if not digits and not mono:
            raise ValueError(f"cannot parse Laurent polynomial {text!r}")
        c = int(digits) if digits else 1
        if sign == "-":
            c = -c
        e = 0
        if mono:
            e = int(exp) if exp is not None else 1
        terms[e] = terms.get(e, 0) + c
        pos = m.end()
    return Laurent(terms)


# ---------------------------------------------------------------------------
# Dense univariate polynomials over Q
# ---------------------------------------------------------------------------


class Poly:
    """Dense polynomial, coefficients low degree first (ints or Fractions)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        cs = [c if isinstance(c, int) else Fraction(c) for c in coeffs]
        cs = [int(c) if isinstance(c, Fraction) and c.denominator == 1 else c for c in cs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def x_pow(cls, k: int) -> "Poly":
        return cls([0] * k + [1])

    @classmethod
    def from_roots(cls, roots: Iterable[Number]) -> "Poly":
        out = cls((1,))
        for r in roots:
            out = out * cls((-Fraction(r), 1))
        return out

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def lc(self) -> Number:
        return self.coeffs[-1] if self.coeffs else 0

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            return Poly([c * other for c in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(())
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = [Fraction(c) for c in self.coeffs]
        d = other.degree
        lc = Fraction(other.lc())
        quo = [Fraction(0)] * max(len(rem) - d, 0)
        for k in range(len(rem) - 1, d - 1, -1):
            c = rem[k] / lc
            if c:
                quo[k - d] = c
                for j, b in enumerate(other.coeffs):
                    rem[k - d + j] -= c * b
        return Poly(quo), Poly(rem[:d] if d > 0 else [])

    def __call__(self, x: Number) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def content(self) -> Fraction:
        """gcd of numerators over lcm of denominators (positive)."""
        if not self.coeffs:
            return Fraction(0)
        fs = [Fraction(c) for c in self.coeffs]
        num = reduce(gcd, (f.numerator for f in fs))
        den = reduce(lambda a, b: a * b // gcd(a, b), (f.denominator for f in fs))
        return Fraction(num, den)

    def primitive(self) -> "Poly":
        c = self.content()
        if not c:
            return self
        if Fraction(self.lc()) < 0:
            c = -c
        return Poly([Fraction(x) / c for x in self.coeffs])

    def derivative(self) -> "Poly":
        return Poly([k * c for k, c in enumerate(self.coeffs)][1:])

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)})"

    def to_str(self, var: str = "z") -> str:
        terms = {k: c for k, c in enumerate(self.coeffs) if c}
        if not terms:
            return "0"
        parts = []
        for k in sorted(terms, reverse=True):
            c = Fraction(terms[k])
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            mag = abs(c)
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = str(mag)
            parts.append(("-" if c < 0 else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Primitive integer gcd (positive leading coefficient)."""
    a, b = a.primitive(), b.primitive()
    while not b.is_zero():
        _, r = a.divmod(b)
        a, b = b, r.primitive()
    if a.is_zero():
        return a
    return a.primitive()


# ---------------------------------------------------------------------------
# Rational functions
# ---------------------------------------------------------------------------


class RatFun:
    """Element of Q(x) in canonical form.

    Canonical form: gcd(num, den) = 1, all coefficients integers with the joint
    content of numerator and denominator removed, and positive leading
    coefficient of the denominator.  Zero is (0, 1).
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None, *, _normal: bool = False):
        if den is None:
            den = Poly((1,))
        if _normal:
            self.num, self.den = num, den
            return
        self.num, self.den = _normalize(num, den)

    @classmethod
    def const(cls, c: Number) -> "RatFun":
        c = Fraction(c)
        return cls(Poly((c.numerator,)), Poly((c.denominator,)))

    @classmethod
    def x(cls) -> "RatFun":
        return cls(Poly((0, 1)))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RatFun.const(other)
        if not isinstance(other, RatFun):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    @staticmethod
    def _lift(x) -> "RatFun":
        if isinstance(x, RatFun):
            return x
        if isinstance(x, (int, Fraction)):
            return RatFun.const(x)
        if isinstance(x, Laurent):
            return x.to_ratfun()
        if isinstance(x, Poly):
            return RatFun(x)
        raise TypeError(f"cannot convert {type(x).__name__} to RatFun")

    def __add__(self, other):
        o = self._lift(other)
        if self.den == o.den:
            return RatFun(self.num + o.num, self.den)
        return RatFun(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFun(-self.num, self.den, _normal=True)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        if self.is_zero() or o.is_zero():
            return RatFun(Poly(()))
        return RatFun(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "RatFun":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero rational function")
        return RatFun(self.den, self.num)

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other):
        return self._lift(other) * self.inverse()

    def __call__(self, x: Number) -> Fraction:
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"pole at {x}")
        return self.num(x) / d

    def to_laurent(self) -> Laurent:
        """Convert to a Laurent polynomial if the denominator is ±c·x^k with c | num."""
        den = self.den.coeffs
        k = len(den) - 1
        if any(den[:-1]):
            raise ValueError(f"{self} is not a Laurent polynomial")
        scale = Fraction(den[-1])
        coeffs = [Fraction(c) / scale for c in self.num.coeffs]
        if any(c.denominator != 1 for c in coeffs):
            raise ValueError(f"{self} has non-integral coefficients")
        return Laurent({i - k: int(c) for i, c in enumerate(coeffs)})

    def to_str(self, var: str = "z") -> str:
        if self.den == Poly((1,)):
            return self.num.to_str(var)
        return f"({self.num.to_str(var)})/({self.den.to_str(var)})"

    def __repr__(self) -> str:
        return f"RatFun({self.to_str('x')})"


def _normalize(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    if num.is_zero():
        return Poly(()), Poly((1,))
    g = poly_gcd(num, den)
    if g.degree > 0:
        num, _ = num.divmod(g)
        den, _ = den.divmod(g)
    # clear denominators jointly, then remove the joint content
    fs = [Fraction(c) for c in num.coeffs + den.coeffs]
    lcm = reduce(lambda a, b: a * b // gcd(a, b), (f.denominator for f in fs))
    ints = [int(f * lcm) for f in fs]
    content = reduce(gcd, ints)
    if den.lc() * 1 < 0:
        content = -content
    ints = [i // content for i in ints]
    n = len(num.coeffs)
    return Poly(ints[:n]), Poly(ints[n:])


def ratfun_normalize(num: Poly | Sequence[Number], den: Poly | Sequence[Number]) -> RatFun:
    """Reduce ``num/den`` to canonical form; raises ZeroDivisionError on den = 0."""
    if not isinstance(num, Poly):
        num = Poly(num)
    if not isinstance(den, Poly):
        den = Poly(den)
    return RatFun(num, den)


# ---------------------------------------------------------------------------
# Rational reconstruction
# ---------------------------------------------------------------------------


def _nullspace_fractions(rows: list[list[Fraction]], ncols: int) -> list[list[Fraction]]:
    from .linalg import nullspace

    return nullspace(rows, ncols)


def rational_reconstruct(
    samples: Sequence[tuple[Number, Number]], degree_bound: int
) -> RatFun:
    """Rational function of numerator/denominator degree <= bound through samples.

    Solves the linearised Cauchy interpolation problem p(x_k) = f_k q(x_k) on
    all samples, reduces the result and re-checks every sample exactly.
    """
    pts = [(Fraction(x), Fraction(y)) for x, y in samples]
    if len({x for x, _ in pts}) != len(pts):
        raise ValueError("sample points must be distinct")
    b = degree_bound
    if len(pts) < 2 * b + 2:
        raise ValueError(f"need at least {2 * b + 2} samples for degree bound {b}")
    # unknowns: p_0..p_b, q_0..q_b
    rows = []
    for x, y in pts:
        powers = [x**k for k in range(b + 1)]
        rows.append(powers + [-y * pw for pw in powers])
    kernel = _nullspace_fractions(rows, 2 * (b + 1))
    if not kernel:
        # least-squares style witness: fit on a prefix, report the first miss
        head = rows[: 2 * b + 1]
        kern = _nullspace_fractions(head, 2 * (b + 1))
        witness = None
        if kern:
            vec = kern[0]
            p, q = Poly(vec[: b + 1]), Poly(vec[b + 1 :])
            for x, y in pts:
                res = p(x) - y * q(x)
                if res:
                    witness = (x, res)
                    break
        raise ReconstructionError(
            "samples are inconsistent with the degree bound",
            point=witness[0] if witness else None,
            residual=witness[1] if witness else None,
        )
    # pick the kernel vector with smallest-degree denominator
    best = None
    for vec in kernel:
        q = Poly(vec[b + 1 :])
        if q.is_zero():
            continue
        if best is None or q.degree < Poly(best[b + 1 :]).degree:
            best = vec
    if best is None:
        raise ReconstructionError("only solutions with vanishing denominator")
    f = RatFun(Poly(best[: b + 1]), Poly(best[b + 1 :]))
    for x, y in pts:
        try:
            val = f(x)
        except ZeroDivisionError:
            raise ReconstructionError("reconstructed function has a pole at a sample", point=x)
        if val != y:
            raise ReconstructionError("reconstruction misses a sample", point=x, residual=val - y)
    return f

"""Segments, multisegments and the combinatorics attached to them.

A segment [i, j] (i <= j) is an interval of integers; a multisegment is a
finite multiset of segments.  Here the degeneration order is oriented so that
the standard module M_m has composition factors L_n exactly for m <= n, i.e.
n is reachable from m by replacing linked pairs with their union and
intersection.
"""

from __future__ import annotations

import re
from collections import Counter, deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Mapping, Sequence

from .partitions import Partition, hook_exponent_set


@dataclass(frozen=True, order=True)
class Segment:
    i: int
    j: int

    def __post_init__(self):
        if self.i > self.j:
            raise ValueError(f"empty segment [{self.i},{self.j}]")

    def __len__(self) -> int:
        return self.j - self.i + 1

    def points(self) -> range:
        return range(self.i, self.j + 1)

    def shift(self, k: int) -> "Segment":
        return Segment(self.i + k, self.j + k)

    def __str__(self) -> str:
        return f"[{self.i},{self.j}]"


def segment_less(s: Segment, t: Segment) -> bool:
    """PBW order: by end point, ties broken by start point."""
    return s.j < t.j or (s.j == t.j and s.i < t.i)


def pbw_key(s: Segment) -> tuple[int, int]:
    return (s.j, s.i)


class Multisegment:
    """Immutable multiset of segments."""

    __slots__ = ("_items", "_hash")

    def __init__(self, segments: Iterable[Segment] | Mapping[Segment, int] = ()):
        if isinstance(segments, Mapping):
            counts = Counter({s: int(m) for s, m in segments.items()})
        else:
            counts = Counter(segments)
        if any(m < 0 for m in counts.values()):
            raise ValueError("negative multiplicity")
        self._items = tuple(sorted((s, m) for s, m in counts.items() if m > 0))
        self._hash = hash(self._items)

    @classmethod
    def of(cls, *pairs: tuple[int, int]) -> "Multisegment":
        return cls(Segment(i, j) for i, j in pairs)

    # container protocol ---------------------------------------------------
    def items(self) -> tuple[tuple[Segment, int], ...]:
        return self._items

    def segments(self) -> list[Segment]:
        """Segments with repetition, in sorted (start, end) order."""
        return [s for s, m in self._items for _ in range(m)]

    def mult(self, s: Segment) -> int:
        return dict(self._items).get(s, 0)

    def __len__(self) -> int:
        return sum(m for _, m in self._items)

    def __bool__(self) -> bool:
        return bool(self._items)

    def __eq__(self, other):
        return isinstance(other, Multisegment) and self._items == other._items

    def __hash__(self):
        return self._hash

    def __lt__(self, other: "Multisegment") -> bool:
        return self._items < other._items

    def __add__(self, other: "Multisegment") -> "Multisegment":
        c = Counter(dict(self._items))
        c.update(dict(other._items))
        return Multisegment(c)

    def shift(self, k: int) -> "Multisegment":
        return Multisegment({s.shift(k): m for s, m in self._items})

    @property
    def degree(self) -> int:
        return sum(len(s) * m for s, m in self._items)

    def dimvector(self) -> dict[int, int]:
        dv: Counter = Counter()
        for s, m in self._items:
            for p in s.points():
                dv[p] += m
        return dict(sorted(dv.items()))

    def support(self) -> tuple[int, int] | None:
        if not self._items:
            return None
        return (min(s.i for s, _ in self._items), max(s.j for s, _ in self._items))

    # text -----------------------------------------------------------------
    def __str__(self) -> str:
        if not self._items:
            return "0"
        return "+".join((f"{m}{s}" if m > 1 else str(s)) for s, m in self._items)

    def __repr__(self) -> str:
        return f"Multisegment({self})"

    def to_json(self) -> list[dict]:
        return [{"i": s.i, "j": s.j, "mult": m} for s, m in self._items]

    @classmethod
    def from_json(cls, data: Sequence[Mapping]) -> "Multisegment":
        return cls({Segment(int(d["i"]), int(d["j"])): int(d.get("mult", 1)) for d in data})


_PIECE = re.compile(r"^\s*(\d*)\s*\[\s*(-?\d+)\s*,\s*(-?\d+)\s*\]\s*$")


def parse_multisegment(text: str) -> Multisegment:
    """Parse "[i,j]+[k,l]+2[p,q]"; "0" or "" is the empty multisegment."""
    text = text.strip()
    if text in ("", "0"):
        return Multisegment()
    counts: Counter = Counter()
    # split on '+' that precede a multiplicity or bracket, not signs inside brackets
    for piece in re.split(r"\+(?=\s*\d*\s*\[)", text):
        m = _PIECE.match(piece)
        if not m:
            raise ValueError(f"cannot parse multisegment piece {piece!r}")
        mult = int(m.group(1)) if m.group(1) else 1
        counts[Segment(int(m.group(2)), int(m.group(3)))] += mult
    return Multisegment(counts)


def degree_and_dimvector(m: Multisegment) -> tuple[int, dict[int, int]]:
    return m.degree, m.dimvector()


# ---------------------------------------------------------------------------
# degeneration order
# ---------------------------------------------------------------------------


def precedes(s: Segment, t: Segment) -> bool:
    """s precedes t: linked with s starting strictly earlier."""
    return s.i < t.i and s.j < t.j and t.i <= s.j + 1


def linked(s: Segment, t: Segment) -> bool:
    return precedes(s, t) or precedes(t, s)


def elementary_moves(m: Multisegment) -> set[Multisegment]:
    """Replace one linked pair by its union and intersection."""
    out = set()
    segs = [s for s, _ in m.items()]
    for a in segs:
        for b in segs:
            if not precedes(a, b):
                continue
            c = Counter(dict(m.items()))
            c[a] -= 1
            c[b] -= 1
            c[Segment(a.i, b.j)] += 1
            if b.i <= a.j:
                c[Segment(b.i, a.j)] += 1
            out.add(Multisegment(c))
    return out


@lru_cache(maxsize=None)
def upper_set(m: Multisegment) -> frozenset[Multisegment]:
    """All n with m <= n (reflexive-transitive closure of elementary moves)."""
    seen = {m}
    queue = deque([m])
    while queue:
        x = queue.popleft()
        for y in elementary_moves(x):
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def zel_leq(m: Multisegment, n: Multisegment) -> bool:
    if m.dimvector() != n.dimvector():
        return False
    return n in upper_set(m)


def multisegments_of_weight(dimvector: Mapping[int, int]) -> list[Multisegment]:
    """Every multisegment with the given dimension vector (point -> count)."""
    dv = {p: c for p, c in dimvector.items() if c}
    out: list[Multisegment] = []

    def rec(rem: dict[int, int], acc: list[Segment]):
        if not rem:
            out.append(Multisegment(acc))
            return
        start = min(rem)
        last = acc[-1] if acc and acc[-1].i == start else None
        end = start
        while rem.get(end, 0) > 0:
            seg = Segment(start, end)
            if last is None or seg >= last:
                nxt = dict(rem)
                for p in seg.points():
                    nxt[p] -= 1
                    if not nxt[p]:
                        del nxt[p]
                rec(nxt, acc + [seg])
            end += 1

    rec(dv, [])
    return sorted(out)


def linear_extension(ms: Sequence[Multisegment]) -> list[Multisegment]:
    """Order a weight class so that m <= n implies m comes first."""
    ms = list(ms)
    ups = {m: upper_set(m) for m in ms}
    # sizes of upper sets strictly decrease along the order
    return sorted(ms, key=lambda m: (-len(ups[m]), m))


# ---------------------------------------------------------------------------
# evaluation modules, flag minors, hook criterion
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EvaluationPoint:
    lam: Partition
    a: int


def evaluation_multisegment(p: EvaluationPoint | Partition, a: int | None = None) -> Multisegment:
    """Row i of lam contributes [a - i + 1, a - i + lam_i]."""
    if isinstance(p, EvaluationPoint):
        lam, a = p.lam, p.a
    else:
        lam = p
    return Multisegment(Segment(a - i + 1, a - i + li) for i, li in enumerate(lam.parts, start=1))


@dataclass(frozen=True)
class ColumnSet:
    """Index set J of the flag minor with rows J and initial columns 1..|J|."""

    J: frozenset[int]
    N: int

    def __post_init__(self):
        J = frozenset(int(x) for x in self.J)
        if any(x < 1 or x > self.N for x in J):
            raise ValueError(f"{sorted(J)} is not inside [1, {self.N}]")
        object.__setattr__(self, "J", J)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, sorted(self.J))) + "}"


def flag_minor_multisegment(c: ColumnSet) -> Multisegment:
    """Leading multisegment of the flag minor Delta_{J,[1..k]} of the lower
    unitriangular matrix (t_{ji}); the entry t_{j+1,i} corresponds to [i, j].
    Row j_r of the minor contributes [r, j_r - 1] (empty when j_r = r)."""
    js = sorted(c.J)
    return Multisegment(Segment(r, j - 1) for r, j in enumerate(js, start=1) if j - 1 >= r)


def column_set(p: EvaluationPoint, N: int) -> ColumnSet:
    """Flag minor realising G*(lam, a) inside the window [1, N].

    Needs a >= len(lam) (all segments start at >= 1) and a + lam_1 <= N."""
    lam, a = p.lam, p.a
    if a < len(lam):
        raise ValueError(f"evaluation point a={a} does not fit the window for {lam}")
    parts = list(lam.parts) + [0] * (a - len(lam))
    J = frozenset(a - i + 1 + li for i, li in enumerate(parts, start=1))
    return ColumnSet(J, N)


def flag_minors(N: int) -> list[ColumnSet]:
    """All flag minors of an N x N lower unitriangular matrix that are not
    identically 1 (i.e. J is not an initial interval)."""
    out = []
    for k in range(1, N + 1):
        for J in combinations(range(1, N + 1), k):
            if J != tuple(range(1, k + 1)):
                out.append(ColumnSet(frozenset(J), N))
    return out


def _split_around(outer: Sequence[int], inner: Sequence[int]) -> bool:
    """Can ``outer`` be written as O' u O'' with O' < inner < O''?"""
    if not inner:
        return True
    lo, hi = min(inner), max(inner)
    return all(x < lo or x > hi for x in outer)


def weakly_separated(A: ColumnSet, B: ColumnSet) -> bool:
    """When |A| <= |B|, the elements of A - B must surround B - A: they split
    as A' < (B - A) < A''.  Symmetrically when |B| <= |A|."""
    if A.N != B.N:
        raise ValueError("column sets live in different ambient ranks")
    a_only = sorted(A.J - B.J)
    b_only = sorted(B.J - A.J)
    if len(A.J) <= len(B.J) and _split_around(a_only, b_only):
        return True
    if len(B.J) <= len(A.J) and _split_around(b_only, a_only):
        return True
    return False


@dataclass(frozen=True)
class HookVerdict:
    simple: bool
    violations: tuple[tuple[int, int, int], ...]


def hook_criterion(lam: Partition, exps: Sequence[int], mode: str = "positive") -> HookVerdict:
    """Simple iff no two evaluation exponents differ by a hook length of lam.

    Violations are reported as (a_i, a_j, |a_i - a_j|) with i < j."""
    hooks = hook_exponent_set(lam, mode)  # type: ignore[arg-type]
    bad = []
    for x in range(len(exps)):
        for y in range(x + 1, len(exps)):
            d = abs(exps[x] - exps[y])
            if d in hooks:
                bad.append((exps[x], exps[y], d))
    return HookVerdict(not bad, tuple(bad))


def weight_classes(max_degree: int, letters: Sequence[int]) -> Iterator[dict[int, int]]:
    """Dimension vectors on the given letters with total degree 1..max_degree."""
    letters = list(letters)

    def rec(k: int, left: int, acc: dict[int, int]):
        if k == len(letters):
            if sum(acc.values()):
                yield dict(acc)
            return
        for c in range(left + 1):
            if c:
                acc[letters[k]] = c
            yield from rec(k + 1, left - c, acc)
            acc.pop(letters[k], None)

    yield from rec(0, max_degree, {})

"""Partitions, hook lengths and the singular exponent sets of a Young diagram."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterator, Literal

Mode = Literal["positive", "literal"]


@dataclass(frozen=True, order=True)
class Partition:
    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"partition parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        text = text.strip().strip("()")
        if not text:
            return cls(())
        return cls(tuple(int(t) for t in text.split(",") if t.strip()))

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    @property
    def size(self) -> int:
        return sum(self.parts)

    def cells(self) -> Iterator[tuple[int, int]]:
        """Cells (row, col), 1-based, row by row."""
        for i, p in enumerate(self.parts, start=1):
            for j in range(1, p + 1):
                yield (i, j)

    def __str__(self) -> str:
        return ",".join(map(str, self.parts))


def conjugate(lam: Partition) -> Partition:
    if not lam.parts:
        return Partition(())
    return Partition(tuple(sum(1 for p in lam.parts if p >= j) for j in range(1, lam.parts[0] + 1)))


def hook_length(lam: Partition, i: int, j: int, conj: Partition | None = None) -> int:
    conj = conj if conj is not None else conjugate(lam)
    return lam.parts[i - 1] - j + conj.parts[j - 1] - i + 1


def hook_multiset(lam: Partition) -> Counter:
    conj = conjugate(lam)
    return Counter(hook_length(lam, i, j, conj) for i, j in lam.cells())


@dataclass(frozen=True)
class HookExponentSet:
    exponents: frozenset[int]
    mode: Mode = "positive"

    def symmetric(self) -> frozenset[int]:
        """Exponents k with u^k in the singular set, i.e. {±e}."""
        return frozenset(s * e for e in self.exponents for s in (1, -1))

    def __contains__(self, e: int) -> bool:
        return e in self.exponents

    def sorted(self, reverse: bool = True) -> list[int]:
        return sorted(self.exponents, reverse=reverse)


def hook_exponent_set(lam: Partition, mode: Mode = "positive") -> HookExponentSet:
    """The set of hook lengths of ``lam``.

    ``literal`` evaluates lam_i + l_j - i - j + 1 over the whole rectangle
    1 <= i <= r, 1 <= j <= k (l = conjugate), which also visits cells outside
    the diagram; ``positive`` restricts to cells of the diagram.
    """
    if mode not in ("positive", "literal"):
        raise ValueError(f"unknown mode {mode!r}")
    conj = conjugate(lam)
    if mode == "positive":
        return HookExponentSet(frozenset(hook_multiset(lam)), mode)
    r, k = len(lam), len(conj)
    vals = {
        lam.parts[i - 1] + conj.parts[j - 1] - i - j + 1
        for i in range(1, r + 1)
        for j in range(1, k + 1)
    }
    return HookExponentSet(frozenset(vals), mode)


def contents(lam: Partition) -> dict[tuple[int, int], int]:
    return {(i, j): j - i for i, j in lam.cells()}


def partitions_of(n: int, max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of n in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield Partition(())
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions_of(n - first, first):
            yield Partition((first,) + rest.parts)


def standard_tableaux(lam: Partition) -> list[tuple[tuple[int, ...], ...]]:
    """Standard Young tableaux of shape lam, entries 1..n, as tuples of rows."""
    n = lam.size
    out = []

    def fill(rows: list[list[int]], k: int):
        if k > n:
            out.append(tuple(tuple(r) for r in rows))
            return
        for i in range(len(lam)):
            if len(rows[i]) < lam.parts[i] and (i == 0 or len(rows[i - 1]) > len(rows[i])):
                rows[i].append(k)
                fill(rows, k + 1)
                rows[i].pop()

    fill([[] for _ in lam.parts], 1)
    return out


def hook_product(lam: Partition) -> int:
    out = 1
    for h, mult in hook_multiset(lam).items():
        out *= h**mult
    return out


def probe_hook_sets(max_size: int) -> list[Partition]:
    """Partitions |lam| <= max_size where the literal and diagram readings of
    the singular set {±e} disagree.  An empty list means they always agree."""
    bad = []
    for n in range(max_size + 1):
        for lam in partitions_of(n):
            lit = hook_exponent_set(lam, "literal").symmetric()
            pos = hook_exponent_set(lam, "positive").symmetric()
            if lit != pos:
                bad.append(lam)
    return bad

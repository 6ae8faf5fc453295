"""Finite monoids given by multiplication tables, and brute-force isomorphism."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence


@dataclass(frozen=True)
class MonoidTable:
    """``table[a][b]`` is the index of a·b; ``identity`` is the unit index."""

    table: tuple
    identity: int

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], identity: int) -> "MonoidTable":
        return cls(tuple(tuple(int(x) for x in r) for r in rows), int(identity))

    def __len__(self):
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def is_associative(self) -> bool:
        n = len(self)
        t = self.table
        return all(t[t[a][b]][c] == t[a][t[b][c]] for a in range(n) for b in range(n) for c in range(n))

    def has_identity(self) -> bool:
        e = self.identity
        return all(self.table[e][a] == a and self.table[a][e] == a for a in range(len(self)))

    @cached_property
    def units(self) -> tuple[int, ...]:
        e = self.identity
        return tuple(a for a in range(len(self))
                     if any(self.table[a][b] == e and self.table[b][a] == e for b in range(len(self))))

    def is_group(self) -> bool:
        return len(self.units) == len(self)

    def inverse(self, a: int) -> int:
        for b in range(len(self)):
            if self.table[a][b] == self.identity and self.table[b][a] == self.identity:
                return b
        raise ValueError(f"element {a} is not a unit")

    def submonoid(self, elements: Sequence[int]) -> "MonoidTable":
        """Restrict to a subset closed under the product (must contain the identity)."""
        idx = {a: k for k, a in enumerate(elements)}
        rows = []
        for a in elements:
            row = []
            for b in elements:
                c = self.table[a][b]
                if c not in idx:
                    raise ValueError("subset is not closed under multiplication")
                row.append(idx[c])
            rows.append(row)
        return MonoidTable.from_rows(rows, idx[self.identity])

    def group_of_units(self) -> "MonoidTable":
        return self.submonoid(self.units)

    def opposite(self) -> "MonoidTable":
        n = len(self)
        return MonoidTable.from_rows([[self.table[b][a] for b in range(n)] for a in range(n)],
                                     self.identity)

    def order(self, a: int) -> int:
        x, k = a, 1
        while x != self.identity:
            x = self.table[x][a]
            k += 1
            if k > len(self) + 1:
                raise ValueError(f"element {a} has no finite order (not a unit)")
        return k


def _invariant(m: MonoidTable, a: int) -> tuple:
    """Isomorphism-invariant fingerprint of an element."""
    sq = m.table[a][a]
    idem = sq == a
    left_fixed = sum(1 for b in range(len(m)) if m.table[a][b] == b)
    right_fixed = sum(1 for b in range(len(m)) if m.table[b][a] == b)
    x = a
    seen = set()
    while x not in seen:
        seen.add(x)
        x = m.table[x][a]
    return (a == m.identity, idem, left_fixed, right_fixed, len(seen))


def find_isomorphism(m: MonoidTable, n: MonoidTable) -> Optional[tuple[int, ...]]:
    """A bijection φ with φ(ab) = φ(a)φ(b) and φ(1) = 1, or None.  Backtracking search."""
    size = len(m)
    if size != len(n):
        return None
    inv_m = [_invariant(m, a) for a in range(size)]
    inv_n = [_invariant(n, a) for a in range(size)]
    if sorted(inv_m) != sorted(inv_n):
        return None
    candidates = [[b for b in range(size) if inv_n[b] == inv_m[a]] for a in range(size)]
    order = sorted(range(size), key=lambda a: len(candidates[a]))
    phi: dict[int, int] = {}
    used: set[int] = set()

    def consistent() -> bool:
        for a, fa in phi.items():
            for b, fb in phi.items():
                c = m.table[a][b]
                if c in phi and phi[c] != n.table[fa][fb]:
                    return False
        return True

    def extend(k: int) -> bool:
        if k == size:
            return True
        a = order[k]
        for b in candidates[a]:
            if b in used:
                continue
            phi[a] = b
            used.add(b)
            if consistent() and extend(k + 1):
                return True
            del phi[a]
            used.discard(b)
        return False

    if not extend(0):
        return None
    return tuple(phi[a] for a in range(size))


def is_isomorphic(m: MonoidTable, n: MonoidTable) -> bool:
    return find_isomorphism(m, n) is not None


def is_anti_isomorphism(m: MonoidTable, n: MonoidTable, phi: Sequence[int]) -> bool:
    return all(phi[m.table[a][b]] == n.table[phi[b]][phi[a]] for a in range(len(m)) for b in range(len(m)))


def is_homomorphism(m: MonoidTable, n: MonoidTable, phi: Sequence[int]) -> bool:
    return all(phi[m.table[a][b]] == n.table[phi[a]][phi[b]] for a in range(len(m)) for b in range(len(m)))


def cyclic_group(n: int) -> MonoidTable:
    return MonoidTable.from_rows([[(a + b) % n for b in range(n)] for a in range(n)], 0)


def symmetric_group(n: int) -> MonoidTable:
    perms = list(itertools.permutations(range(n)))
    idx = {q: k for k, q in enumerate(perms)}
    rows = [[idx[tuple(a[b[i]] for i in range(n))] for b in perms] for a in perms]
    return MonoidTable.from_rows(rows, idx[tuple(range(n))])

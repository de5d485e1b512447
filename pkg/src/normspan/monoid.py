"""Finite commutative monoids with a group acting by monoid automorphisms."""

from __future__ import annotations

from typing import Sequence

from . import gset as gs


class CommutativeGMonoid:
    """Carrier ``0..m-1`` with an addition table, a zero and a ``G``-action.

    ``action`` is a G-set on the carrier; every element must act by a
    monoid automorphism.
    """

    def __init__(self, action: gs.GSet, add: Sequence[Sequence[int]], zero: int = 0, name: str = ""):
        self.action = action
        self.add = tuple(tuple(r) for r in add)
        self.zero = zero
        self.name = name
        self.check()

    @property
    def size(self):
        return self.action.size

    @property
    def group(self):
        return self.action.group

    def check(self):
        m, add, z = self.size, self.add, self.zero
        if len(add) != m or any(len(r) != m for r in add):
            raise ValueError(f"add: table must be {m}x{m}")
        for a in range(m):
            if add[z][a] != a:
                raise ValueError("add: zero is not neutral")
            for b in range(m):
                if add[a][b] != add[b][a]:
                    raise ValueError(f"add: {a}+{b} != {b}+{a}")
                for c in range(m):
                    if add[add[a][b]][c] != add[a][add[b][c]]:
                        raise ValueError(f"add: not associative at ({a},{b},{c})")
        for g, p in self.action.perms.items():
            if p[z] != z:
                raise ValueError(f"action: element {g} moves zero")
            for a in range(m):
                for b in range(m):
                    if p[add[a][b]] != add[p[a]][p[b]]:
                        raise ValueError(f"action: element {g} is not additive")

    def act(self, g: int, x: int) -> int:
        return self.action.perms[g][x]

    def sum(self, xs) -> int:
        s = self.zero
        for x in xs:
            s = self.add[s][x]
        return s

    def times(self, k: int, x: int) -> int:
        return self.sum([x] * k)


def zmod(G, m: int) -> CommutativeGMonoid:
    """``Z/m`` with trivial action."""
    return CommutativeGMonoid(gs.trivial_gset(G.whole, m),
                              [[(a + b) % m for b in range(m)] for a in range(m)], 0, f"Z/{m}")


def zmod_sign(G, m: int, sign) -> CommutativeGMonoid:
    """``Z/m`` where ``g`` acts by multiplication with ``sign(g)`` in {1, -1}."""
    H = G if hasattr(G, "members") else G.whole
    perms = {g: [(sign(g) * x) % m for x in range(m)] for g in H.elements}
    return CommutativeGMonoid(gs.GSet(H, perms, size=m),
                              [[(a + b) % m for b in range(m)] for a in range(m)], 0, f"Z/{m} signed")


def subsets(Y: gs.GSet) -> CommutativeGMonoid:
    """Subsets of a small G-set under union, ``G`` acting by images."""
    n = Y.size
    m = 1 << n
    perms = {}
    for g, p in Y.perms.items():
        row = []
        for s in range(m):
            t = 0
            for i in range(n):
                if s >> i & 1:
                    t |= 1 << p[i]
            row.append(t)
        perms[g] = row
    return CommutativeGMonoid(gs.GSet(Y.acting, perms, size=m),
                              [[a | b for b in range(m)] for a in range(m)], 0, f"subsets({n})")

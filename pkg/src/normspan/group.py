"""Finite groups stored as multiplication tables.

Elements are the integers ``0 .. order-1`` and ``mul[a][b]`` is the product
``a*b``.  Subgroups are interned per group, so two lookups of the same
element set return the same :class:`Subgroup` object.

Conjugation convention: ``conjugate(H, g)`` is ``g^-1 H g`` (written ``H^g``).
An ``H``-set ``A`` twisted by ``g`` becomes an ``H^g``-set on which ``k`` acts
as ``g k g^-1`` acts on ``A``.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Sequence


class FiniteGroup:
    """A finite group given by its full multiplication table."""

    def __init__(self, mul: Sequence[Sequence[int]], names: Sequence[str] | None = None,
                 check: bool = True):
        self.mul = tuple(tuple(int(x) for x in row) for row in mul)
        self.order = n = len(self.mul)
        if n == 0:
            raise ValueError("mul: a group needs at least one element")
        if check:
            for i, row in enumerate(self.mul):
                if len(row) != n:
                    raise ValueError(f"mul: row {i} has length {len(row)}, expected {n}")
                if any(not 0 <= x < n for x in row):
                    raise ValueError(f"mul: row {i} has an entry outside 0..{n - 1}")
        ident = [e for e in range(n) if all(self.mul[e][x] == x == self.mul[x][e] for x in range(n))]
        if not ident:
            raise ValueError("mul: no two-sided identity")
        self.identity = ident[0]
        inv = []
        for a in range(n):
            row = self.mul[a]
            b = row.index(self.identity) if self.identity in row else -1
            if b < 0 or self.mul[b][a] != self.identity:
                raise ValueError(f"mul: element {a} has no two-sided inverse")
            inv.append(b)
        self.inv = tuple(inv)
        if check:
            m = self.mul
            for a, b, c in itertools.product(range(n), repeat=3):
                if m[m[a][b]][c] != m[a][m[b][c]]:
                    raise ValueError(f"mul: not associative at ({a}, {b}, {c})")
        if names is not None:
            if len(names) != n:
                raise ValueError(f"names: expected {n} names, got {len(names)}")
            names = tuple(str(s) for s in names)
        self.names = names
        self._interned: dict[frozenset, Subgroup] = {}
        self._subgroups: list[Subgroup] | None = None
        self._cosets: dict = {}

    @classmethod
    def from_permutations(cls, generators: Iterable[Sequence[int]], degree: int | None = None):
        """Close a set of permutations of ``0..degree-1`` under composition.

        Elements are sorted lexicographically as tuples, so the identity is
        element 0.  The product ``a*b`` is ``a`` after ``b``.
        """
        gens = [tuple(int(x) for x in g) for g in generators]
        if degree is None:
            degree = len(gens[0]) if gens else 0
        for i, g in enumerate(gens):
            if sorted(g) != list(range(degree)):
                raise ValueError(f"generators[{i}]: not a permutation of 0..{degree - 1}")
        ident = tuple(range(degree))
        seen = {ident}
        frontier = [ident]
        while frontier:
            new = []
            for p in frontier:
                for g in gens:
                    q = tuple(g[p[i]] for i in range(degree))
                    if q not in seen:
                        seen.add(q)
                        new.append(q)
            frontier = new
        elts = sorted(seen)
        index = {p: i for i, p in enumerate(elts)}
        mul = [[index[tuple(a[b[i]] for i in range(degree))] for b in elts] for a in elts]
        G = cls(mul, names=[_cycle_string(p) for p in elts], check=False)
        G.permutations = tuple(elts)
        return G

    def __repr__(self):
        return f"FiniteGroup(order={self.order})"

    def __len__(self):
        return self.order

    def __iter__(self):
        return iter(range(self.order))

    def name(self, g: int) -> str:
        return self.names[g] if self.names else str(g)

    def prod(self, *elts: int) -> int:
        out = self.identity
        for g in elts:
            out = self.mul[out][g]
        return out

    def power(self, g: int, k: int) -> int:
        out = self.identity
        for _ in range(k):
            out = self.mul[out][g]
        return out

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = self.mul[x][g]
            k += 1
        return k

    # -- subgroups ---------------------------------------------------------

    def subgroup(self, elements: Iterable[int], check: bool = True) -> "Subgroup":
        key = frozenset(elements)
        H = self._interned.get(key)
        if H is not None:
            return H
        if check:
            if self.identity not in key:
                raise ValueError("subgroup: identity missing")
            m, inv = self.mul, self.inv
            for a in key:
                if inv[a] not in key or any(m[a][b] not in key for b in key):
                    raise ValueError("subgroup: element set is not closed")
        H = Subgroup(self, key)
        self._interned[key] = H
        if self._subgroups is not None:
            H.canonical_id = self._position(H)
        return H

    def generate(self, gens: Iterable[int]) -> "Subgroup":
        """The subgroup generated by ``gens``."""
        elts = {self.identity}
        frontier = [self.identity]
        gens = list(gens)
        while frontier:
            new = []
            for x in frontier:
                for g in gens:
                    y = self.mul[x][g]
                    if y not in elts:
                        elts.add(y)
                        new.append(y)
            frontier = new
        return self.subgroup(elts, check=False)

    @property
    def whole(self) -> "Subgroup":
        W = self.__dict__.get("_whole")
        if W is None:
            W = self._whole = self.subgroup(range(self.order), check=False)
        return W

    @property
    def trivial(self) -> "Subgroup":
        return self.subgroup([self.identity], check=False)

    def subgroups(self) -> list["Subgroup"]:
        """All subgroups, sorted by (size, sorted element list).

        Built by joining cyclic subgroups until nothing new appears, which
        reaches every subgroup since each one is generated by its cyclic
        subgroups.
        """
        if self._subgroups is None:
            cyclic = {self.generate([g]).members for g in range(self.order)}
            found = set(cyclic)
            frontier = list(cyclic)
            while frontier:
                new = []
                for A in frontier:
                    for C in cyclic:
                        if C <= A:
                            continue
                        J = self.generate(A | C).members
                        if J not in found:
                            found.add(J)
                            new.append(J)
                frontier = new
            subs = sorted((self.subgroup(s, check=False) for s in found),
                          key=lambda S: (len(S.elements), S.elements))
            for i, S in enumerate(subs):
                S.canonical_id = i
            self._subgroups = subs
        return self._subgroups

    def _position(self, H):
        return self.subgroups().index(H)

    def subgroup_by_id(self, i: int) -> "Subgroup":
        subs = self.subgroups()
        if not 0 <= i < len(subs):
            raise ValueError(f"subgroup id {i} out of range 0..{len(subs) - 1}")
        return subs[i]

    def conjugate(self, H: "Subgroup", g: int) -> "Subgroup":
        """``H^g = g^-1 H g``."""
        gi, m = self.inv[g], self.mul
        return self.subgroup((m[m[gi][h]][g] for h in H.elements), check=False)

    def conjugacy_class(self, H: "Subgroup", within: "Subgroup | None" = None) -> list["Subgroup"]:
        """Conjugates of ``H`` by elements of ``within`` (default: all of G), sorted by id."""
        within = within or self.whole
        out = {self.conjugate(H, g) for g in within.elements}
        return sorted(out, key=lambda S: S.canonical_id)

    def class_rep(self, H: "Subgroup", within: "Subgroup | None" = None) -> "Subgroup":
        """The conjugate of ``H`` (under ``within``) with the smallest canonical id."""
        return self.conjugacy_class(H, within)[0]

    def is_normal(self, H: "Subgroup") -> bool:
        return all(self.conjugate(H, g) is H for g in range(self.order))

    def intersect(self, A: "Subgroup", B: "Subgroup") -> "Subgroup":
        return self.subgroup(A.members & B.members, check=False)

    # -- cosets ------------------------------------------------------------

    def coset_reps(self, H: "Subgroup", within: "Subgroup | None" = None) -> "CosetDecomposition":
        """Left cosets ``rH`` of ``H`` inside ``within`` (default G)."""
        within = within or self.whole
        key = (H, within)
        dec = self._cosets.get(key)
        if dec is None:
            dec = CosetDecomposition(self, H, within)
            self._cosets[key] = dec
        return dec

    def double_cosets(self, L: "Subgroup", H: "Subgroup", within: "Subgroup | None" = None) -> list[int]:
        """Minimal representatives of ``L \\ within / H``, in increasing order."""
        within = within or self.whole
        if not (L <= within and H <= within):
            raise ValueError("double_cosets: subgroups must lie in the ambient group")
        m = self.mul
        seen = set()
        reps = []
        for g in within.elements:
            if g in seen:
                continue
            reps.append(g)
            for l in L.elements:
                lg = m[l][g]
                for h in H.elements:
                    seen.add(m[lg][h])
        return reps


class Subgroup:
    """A subgroup of a :class:`FiniteGroup`; obtain these via ``G.subgroup``."""

    __slots__ = ("group", "members", "elements", "canonical_id", "__weakref__")

    def __init__(self, group: FiniteGroup, members: frozenset):
        self.group = group
        self.members = members
        self.elements = tuple(sorted(members))
        self.canonical_id = None

    def __repr__(self):
        return f"Subgroup(id={self.id}, elements={list(self.elements)})"

    @property
    def id(self) -> int:
        if self.canonical_id is None:
            self.group.subgroups()
        return self.canonical_id

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g):
        return g in self.members

    def __le__(self, other: "Subgroup"):
        return self.group is other.group and self.members <= other.members

    def __lt__(self, other: "Subgroup"):
        return self.group is other.group and self.members < other.members

    def index_in(self, other: "Subgroup") -> int:
        return len(other.elements) // len(self.elements)

    def subgroups(self) -> list["Subgroup"]:
        return [S for S in self.group.subgroups() if S.members <= self.members]


class CosetDecomposition:
    """Left cosets ``rH`` of ``H`` in an ambient subgroup ``L``.

    ``reps[i]`` is the smallest element of the i-th coset, except that the
    coset ``H`` itself is always listed first with the identity as its rep.
    """

    def __init__(self, group: FiniteGroup, H: Subgroup, within: Subgroup):
        if not H <= within:
            raise ValueError("coset_reps: H is not contained in the ambient subgroup")
        m = group.mul
        self.group, self.subgroup, self.ambient = group, H, within
        coset_of = {}
        reps = [group.identity]
        for h in H.elements:
            coset_of[h] = 0
        for g in within.elements:
            if g in coset_of:
                continue
            i = len(reps)
            reps.append(g)
            for h in H.elements:
                coset_of[m[g][h]] = i
        self.reps = tuple(reps)
        self.coset_of = coset_of
        # left translation table: shift[g][i] = index of g * reps[i] * H
        self.shift = {g: tuple(coset_of[m[g][r]] for r in reps) for g in within.elements}

    def __len__(self):
        return len(self.reps)

    def index(self, g: int) -> int:
        return self.coset_of[g]

    def decompose(self, g: int) -> tuple[int, int]:
        """Write ``g = reps[i] * h`` with ``h`` in H; returns ``(i, h)``."""
        i = self.coset_of[g]
        G = self.group
        return i, G.mul[G.inv[self.reps[i]]][g]

    def act(self, g: int, i: int) -> tuple[int, int]:
        """``g * reps[i] = reps[j] * h``; returns ``(j, h)``."""
        return self.decompose(self.group.mul[g][self.reps[i]])


def _cycle_string(p) -> str:
    seen, parts = set(), []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(j)
            j = p[j]
        parts.append("(" + " ".join(str(x + 1) for x in cyc) + ")")
    return "".join(parts) or "e"


# -- a small library of groups ------------------------------------------------

def cyclic(n: int) -> FiniteGroup:
    return FiniteGroup([[(a + b) % n for b in range(n)] for a in range(n)],
                       names=[str(a) for a in range(n)], check=False)


def symmetric(n: int) -> FiniteGroup:
    if n <= 1:
        return FiniteGroup.from_permutations([tuple(range(n))], degree=n)
    gens = [tuple([1, 0] + list(range(2, n))), tuple(list(range(1, n)) + [0])]
    return FiniteGroup.from_permutations(gens, degree=n)


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n."""
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return FiniteGroup.from_permutations([rot, ref], degree=n)


def quaternion() -> FiniteGroup:
    """Q8 via its left regular representation on (+-1, +-i, +-j, +-k)."""
    # units as (sign, axis) with axis 0=1, 1=i, 2=j, 3=k
    table = {(0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
             (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
             (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
             (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0)}
    units = [(s, a) for a in range(4) for s in (1, -1)]
    idx = {u: i for i, u in enumerate(units)}

    def times(u, v):
        s, a = table[(u[1], v[1])]
        return (u[0] * v[0] * s, a)

    gens = [tuple(idx[times(units[g], v)] for v in units) for g in (idx[(1, 1)], idx[(1, 2)])]
    return FiniteGroup.from_permutations(gens, degree=8)


def direct_product(A: FiniteGroup, B: FiniteGroup) -> FiniteGroup:
    """``A x B`` with ``(a, b)`` stored as ``a * |B| + b``."""
    nb = B.order
    mul = [[A.mul[x // nb][y // nb] * nb + B.mul[x % nb][y % nb]
            for y in range(A.order * nb)] for x in range(A.order * nb)]
    names = [f"({A.name(x // nb)},{B.name(x % nb)})" for x in range(A.order * nb)]
    G = FiniteGroup(mul, names=names, check=False)
    G.factors = (A, B)
    return G


def trivial_group() -> FiniteGroup:
    return FiniteGroup([[0]], names=["e"], check=False)


def small_groups(max_order: int = 8) -> dict[str, FiniteGroup]:
    """One group per isomorphism type up to order 8 (orders above 8 are not listed)."""
    lib = {
        "1": trivial_group,
        "C2": lambda: cyclic(2),
        "C3": lambda: cyclic(3),
        "C4": lambda: cyclic(4),
        "C2xC2": lambda: direct_product(cyclic(2), cyclic(2)),
        "C5": lambda: cyclic(5),
        "C6": lambda: cyclic(6),
        "S3": lambda: symmetric(3),
        "C7": lambda: cyclic(7),
        "C8": lambda: cyclic(8),
        "C4xC2": lambda: direct_product(cyclic(4), cyclic(2)),
        "C2xC2xC2": lambda: direct_product(direct_product(cyclic(2), cyclic(2)), cyclic(2)),
        "D8": lambda: dihedral(4),
        "Q8": quaternion,
    }
    out = {}
    for name, make in lib.items():
        G = make()
        if G.order <= max_order:
            out[name] = G
    return out


NAMED = {
    "C1": trivial_group, "1": trivial_group,
    "S3": lambda: symmetric(3), "S4": lambda: symmetric(4),
    "D6": lambda: dihedral(3), "D8": lambda: dihedral(4), "Q8": quaternion,
    "C2xC2": lambda: direct_product(cyclic(2), cyclic(2)),
    "C4xC2": lambda: direct_product(cyclic(4), cyclic(2)),
    "C2xC2xC2": lambda: direct_product(direct_product(cyclic(2), cyclic(2)), cyclic(2)),
}


def named_group(name: str) -> FiniteGroup:
    """Look up a group by a short name such as ``C4``, ``S3``, ``D8``, ``Q8``."""
    if name in NAMED:
        return NAMED[name]()
    if name[:1] == "C" and name[1:].isdigit() and int(name[1:]) >= 1:
        return cyclic(int(name[1:]))
    raise ValueError(f"unknown group name {name!r}")

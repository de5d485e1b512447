"""Finite G-sets and H-sets, equivariant maps and the usual constructions.

An ``H``-set always remembers the ambient group's element numbering: its
acting group is a :class:`Subgroup` and ``perm(h)`` is looked up by the
ambient index of ``h``.  Actions are on the left, ``perm(g*h) = perm(g) o perm(h)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .group import FiniteGroup, Subgroup


class GSet:
    """A finite set ``0..size-1`` with a left action of ``acting``."""

    __slots__ = ("acting", "size", "perms", "_key", "_hash", "_orbits", "_stabs")

    def __init__(self, acting, perms: Mapping[int, Sequence[int]], size: int | None = None,
                 check: bool = True):
        if isinstance(acting, FiniteGroup):
            acting = acting.whole
        self.acting = acting
        self.perms = {g: tuple(perms[g]) for g in acting.elements}
        if size is None:
            size = len(self.perms[acting.group.identity])
        self.size = size
        self._key = None
        self._hash = None
        self._orbits = None
        self._stabs = {}
        if check:
            self.check()

    def check(self):
        G = self.acting.group
        n = self.size
        for g, p in self.perms.items():
            if len(p) != n or sorted(p) != list(range(n)):
                raise ValueError(f"action: entry for element {g} is not a permutation of 0..{n - 1}")
        if self.perms[G.identity] != tuple(range(n)):
            raise ValueError("action: the identity does not act trivially")
        for g in self.acting.elements:
            pg = self.perms[g]
            for h in self.acting.elements:
                ph, pgh = self.perms[h], self.perms[G.mul[g][h]]
                if any(pg[ph[x]] != pgh[x] for x in range(n)):
                    raise ValueError(f"action: act({g}*{h}) != act({g}) o act({h})")

    @property
    def group(self) -> FiniteGroup:
        return self.acting.group

    def __len__(self):
        return self.size

    def __repr__(self):
        return f"GSet(acting={self.acting.id}, size={self.size})"

    def key(self):
        if self._key is None:
            self._key = (self.acting.id, self.size,
                         tuple(self.perms[g] for g in self.acting.elements))
        return self._key

    def __eq__(self, other):
        if self is other:
            return True
        return (isinstance(other, GSet) and self.acting is other.acting
                and self.key() == other.key())

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def act(self, g: int, x: int) -> int:
        return self.perms[g][x]

    def perm(self, g: int) -> tuple:
        return self.perms[g]

    def orbits(self) -> list[list[int]]:
        """Orbits as sorted point lists, ordered by their smallest point."""
        if self._orbits is None:
            seen = [False] * self.size
            out = []
            gens = list(self.perms.values())
            for x in range(self.size):
                if seen[x]:
                    continue
                orb = {p[x] for p in gens}
                for y in orb:
                    seen[y] = True
                out.append(sorted(orb))
            self._orbits = out
        return self._orbits

    def stabilizer(self, x: int) -> Subgroup:
        S = self._stabs.get(x)
        if S is None:
            S = self.group.subgroup((g for g, p in self.perms.items() if p[x] == x), check=False)
            self._stabs[x] = S
        return S

    def fixed_points(self, H: Subgroup | None = None) -> list[int]:
        H = H or self.acting
        if not H <= self.acting:
            raise ValueError("fixed_points: subgroup does not act on this set")
        perms = [self.perms[h] for h in H.elements]
        return [x for x in range(self.size) if all(p[x] == x for p in perms)]

    def decompose(self) -> "OrbitDecomposition":
        entries = []
        for orb in self.orbits():
            x = orb[0]
            S = self.stabilizer(x)
            C = coset_space(S, self.acting)
            dec = self.group.coset_reps(S, self.acting)
            witness = EquivariantMap(C, self, [self.act(r, x) for r in dec.reps])
            entries.append((orb, S, witness))
        return OrbitDecomposition(self, entries)

    def orbit_types(self) -> list[int]:
        """Sorted ids of the canonical conjugacy-class reps of the orbit stabilizers."""
        G = self.group
        return sorted(G.class_rep(self.stabilizer(o[0]), self.acting).id for o in self.orbits())

    def is_trivial(self) -> bool:
        return all(p == tuple(range(self.size)) for p in self.perms.values())


@dataclass(frozen=True)
class OrbitDecomposition:
    gset: GSet
    orbits: list

    def __iter__(self):
        return iter(self.orbits)

    def __len__(self):
        return len(self.orbits)


class EquivariantMap:
    """A map of point indices commuting with the actions."""

    __slots__ = ("source", "target", "map")

    def __init__(self, source: GSet, target: GSet, mapping: Sequence[int], check: bool = True):
        self.source, self.target = source, target
        self.map = tuple(mapping)
        if check:
            self.check()

    def check(self):
        s, t = self.source, self.target
        if s.acting is not t.acting:
            raise ValueError("map: source and target have different acting groups")
        if len(self.map) != s.size or any(not 0 <= y < t.size for y in self.map):
            raise ValueError("map: not a total function into the target")
        for g in s.acting.elements:
            ps, pt = s.perms[g], t.perms[g]
            for x in range(s.size):
                if self.map[ps[x]] != pt[self.map[x]]:
                    raise ValueError(f"map: not equivariant at element {g}, point {x}")

    def __call__(self, x: int) -> int:
        return self.map[x]

    def __eq__(self, other):
        return (isinstance(other, EquivariantMap) and self.map == other.map
                and self.source == other.source and self.target == other.target)

    def __hash__(self):
        return hash(self.map)

    def __repr__(self):
        return f"EquivariantMap({list(self.map)})"

    def then(self, other: "EquivariantMap") -> "EquivariantMap":
        """``other o self``."""
        return EquivariantMap(self.source, other.target, [other.map[y] for y in self.map], check=False)

    def is_bijective(self) -> bool:
        return self.source.size == self.target.size and len(set(self.map)) == self.source.size

    def inverse(self) -> "EquivariantMap":
        if not self.is_bijective():
            raise ValueError("inverse: map is not a bijection")
        inv = [0] * len(self.map)
        for x, y in enumerate(self.map):
            inv[y] = x
        return EquivariantMap(self.target, self.source, inv, check=False)

    def fiber(self, y: int) -> list[int]:
        return [x for x, fx in enumerate(self.map) if fx == y]


def identity_map(X: GSet) -> EquivariantMap:
    return EquivariantMap(X, X, range(X.size), check=False)


# -- constructions -------------------------------------------------------------

def coset_space(K: Subgroup, H: Subgroup | None = None) -> GSet:
    """``H/K`` as an ``H``-set; points are the cosets in canonical rep order."""
    G = K.group
    H = H or G.whole
    dec = G.coset_reps(K, H)
    return GSet(H, {h: dec.shift[h] for h in H.elements}, size=len(dec), check=False)


def orbit_gset(H: Subgroup) -> GSet:
    """``G/H``."""
    return coset_space(H, H.group.whole)


def trivial_gset(acting, n: int) -> GSet:
    if isinstance(acting, FiniteGroup):
        acting = acting.whole
    ident = tuple(range(n))
    return GSet(acting, {g: ident for g in acting.elements}, size=n, check=False)


def from_orbits(acting: Subgroup, stabilizers: Iterable[Subgroup]) -> GSet:
    """``H/K_1 + H/K_2 + ...`` in the given order."""
    return disjoint_union(*[coset_space(K, acting) for K in stabilizers], acting=acting)


def disjoint_union(*parts: GSet, acting: Subgroup | None = None) -> GSet:
    if not parts:
        if acting is None:
            raise ValueError("disjoint_union: empty union needs an acting group")
        return trivial_gset(acting, 0)
    acting = parts[0].acting
    for X in parts:
        if X.acting is not acting:
            raise ValueError("disjoint_union: acting groups differ")
    perms = {}
    for g in acting.elements:
        row, off = [], 0
        for X in parts:
            row.extend(off + y for y in X.perms[g])
            off += X.size
        perms[g] = row
    return GSet(acting, perms, size=sum(X.size for X in parts), check=False)


def coproduct_inclusions(parts: Sequence[GSet]) -> tuple[GSet, list[EquivariantMap]]:
    U = disjoint_union(*parts)
    maps, off = [], 0
    for X in parts:
        maps.append(EquivariantMap(X, U, range(off, off + X.size), check=False))
        off += X.size
    return U, maps


def product(X: GSet, Y: GSet) -> GSet:
    """``X x Y``; the pair ``(x, y)`` is point ``x * |Y| + y``."""
    if X.acting is not Y.acting:
        raise ValueError("product: acting groups differ")
    m = Y.size
    perms = {g: [X.perms[g][x] * m + Y.perms[g][y] for x in range(X.size) for y in range(m)]
             for g in X.acting.elements}
    return GSet(X.acting, perms, size=X.size * m, check=False)


def restrict(X: GSet, K: Subgroup) -> GSet:
    if not K <= X.acting:
        raise ValueError("restrict: subgroup does not act on this set")
    return GSet(K, {k: X.perms[k] for k in K.elements}, size=X.size, check=False)


def induce(Y: GSet, H: Subgroup) -> GSet:
    """``ind_K^H Y`` on pairs (coset rep index, point), ordered lexicographically.

    ``h * (r_i, y) = (r_j, k*y)`` where ``h r_i = r_j k``.
    """
    K = Y.acting
    if not K <= H:
        raise ValueError("induce: the acting group of Y is not contained in H")
    G = H.group
    dec = G.coset_reps(K, H)
    n = Y.size
    perms = {}
    for h in H.elements:
        row = []
        for i in range(len(dec)):
            j, k = dec.act(h, i)
            pk = Y.perms[k]
            row.extend(j * n + pk[y] for y in range(n))
        perms[h] = row
    return GSet(H, perms, size=len(dec) * n, check=False)


def conjugate(Y: GSet, g: int) -> GSet:
    """``c_g Y``: an ``H^g``-set on the same points, ``k`` acting as ``g k g^-1``."""
    G = Y.group
    Hg = G.conjugate(Y.acting, g)
    gi, m = G.inv[g], G.mul
    perms = {k: Y.perms[m[m[g][k]][gi]] for k in Hg.elements}
    return GSet(Hg, perms, size=Y.size, check=False)


def relabel(X: GSet, order: Sequence[int]) -> tuple[GSet, EquivariantMap]:
    """Move old point ``order[i]`` to new position ``i``; returns the new set and old->new iso."""
    pos = [0] * X.size
    for i, x in enumerate(order):
        pos[x] = i
    perms = {g: [pos[p[order[i]]] for i in range(X.size)] for g, p in X.perms.items()}
    Y = GSet(X.acting, perms, size=X.size, check=False)
    return Y, EquivariantMap(X, Y, pos, check=False)


def sub_gset(X: GSet, points: Iterable[int]) -> tuple[GSet, EquivariantMap]:
    """The sub-``H``-set on ``points`` (must be a union of orbits), with its inclusion."""
    pts = sorted(set(points))
    pos = {x: i for i, x in enumerate(pts)}
    try:
        perms = {g: [pos[p[x]] for x in pts] for g, p in X.perms.items()}
    except KeyError:
        raise ValueError("sub_gset: points are not closed under the action") from None
    S = GSet(X.acting, perms, size=len(pts), check=False)
    return S, EquivariantMap(S, X, pts, check=False)


def pullback(f: EquivariantMap, g: EquivariantMap) -> tuple[GSet, EquivariantMap, EquivariantMap]:
    """Pairs ``(c, e)`` with ``f(c) = g(e)``, in lexicographic order, with both projections."""
    if f.target != g.target:
        raise ValueError("pullback: maps do not share a target")
    C, E = f.source, g.source
    pairs = [(c, e) for c in range(C.size) for e in range(E.size) if f.map[c] == g.map[e]]
    index = {p: i for i, p in enumerate(pairs)}
    perms = {h: [index[(C.perms[h][c], E.perms[h][e])] for c, e in pairs] for h in C.acting.elements}
    P = GSet(C.acting, perms, size=len(pairs), check=False)
    return (P, EquivariantMap(P, C, [c for c, _ in pairs], check=False),
            EquivariantMap(P, E, [e for _, e in pairs], check=False))


def mediating_maps(P, p1, p2, a: EquivariantMap, b: EquivariantMap) -> list[EquivariantMap]:
    """All maps ``m: T -> P`` with ``p1 m = a`` and ``p2 m = b`` (a pullback has exactly one)."""
    T = a.source
    choices = []
    for t in range(T.size):
        choices.append([z for z in range(P.size) if p1.map[z] == a.map[t] and p2.map[z] == b.map[t]])
    out = []
    for combo in itertools.product(*choices):
        try:
            out.append(EquivariantMap(T, P, combo))
        except ValueError:
            pass
    return out


# -- maps between G-sets --------------------------------------------------------

def equivariant_maps(X: GSet, Y: GSet, over: tuple[EquivariantMap, EquivariantMap] | None = None):
    """Yield every equivariant map ``X -> Y`` (commuting with ``over = (u, v)`` if given).

    A map is fixed by where it sends one base point per orbit, and the base
    point must go to a point fixed by its stabilizer.
    """
    if X.acting is not Y.acting:
        raise ValueError("equivariant_maps: acting groups differ")
    G = X.group
    bases, options = [], []
    for orb in X.orbits():
        x = orb[0]
        S = X.stabilizer(x)
        cands = Y.fixed_points(S)
        if over is not None:
            u, v = over
            cands = [y for y in cands if v.map[y] == u.map[x]]
        bases.append(x)
        options.append(cands)
    acting = X.acting.elements
    for combo in itertools.product(*options):
        img = [None] * X.size
        for x, y in zip(bases, combo):
            for g in acting:
                img[X.perms[g][x]] = Y.perms[g][y]
        yield EquivariantMap(X, Y, img, check=False)


def isomorphisms(X: GSet, Y: GSet, over=None):
    if X.size != Y.size:
        return
    for f in equivariant_maps(X, Y, over):
        if f.is_bijective():
            yield f


def iso_test(X: GSet, Y: GSet, over: tuple[EquivariantMap, EquivariantMap] | None = None):
    """An isomorphism ``X -> Y`` (over ``u: X->A``, ``v: Y->A`` if given), or ``None``.

    Orbits are paired greedily: an orbit of X with base point x is sent to
    an unused orbit of Y holding a point with exactly the same stabilizer
    (and the same image in A).  Being isomorphic is an equivalence relation
    on single orbits, so a greedy pairing succeeds whenever any does.
    """
    if X.acting is not Y.acting or X.size != Y.size:
        return None
    G = X.group
    used = [False] * len(Y.orbits())
    img = [None] * X.size
    for orb in X.orbits():
        x = orb[0]
        S = X.stabilizer(x)
        hit = None
        for j, yorb in enumerate(Y.orbits()):
            if used[j] or len(yorb) != len(orb):
                continue
            for y in yorb:
                if Y.stabilizer(y) is S and (over is None or over[1].map[y] == over[0].map[x]):
                    hit = (j, y)
                    break
            if hit:
                break
        if hit is None:
            return None
        j, y = hit
        used[j] = True
        for g in X.acting.elements:
            img[X.perms[g][x]] = Y.perms[g][y]
    return EquivariantMap(X, Y, img, check=False)


# -- nerve of a translation groupoid modulo a free-ish group action ---------------

def nerve_quotient_check(X: GSet, Y: GSet, gamma: Subgroup, n: int) -> bool:
    """Compare ``(X^{n+1} x Y)/Gamma`` with the ``n``-fold fiber product of
    ``(X x X x Y)/Gamma`` over ``(X x Y)/Gamma``.

    ``X`` and ``Y`` are sets over a common group (typically a product
    ``G x Gamma``) and ``gamma`` is the subgroup whose quotient is taken.
    Returns whether the canonical comparison map is a bijection.  It is when
    ``gamma`` acts freely on ``X``; without freeness it can fail to be injective.
    """
    if X.acting is not Y.acting:
        raise ValueError("nerve_quotient_check: X and Y carry different acting groups")
    if not gamma <= X.acting:
        raise ValueError("nerve_quotient_check: gamma is not inside the acting group")
    if n < 0:
        raise ValueError("nerve_quotient_check: level must be non-negative")
    gs = [(X.perms[c], Y.perms[c]) for c in gamma.elements]

    def orbit_key(xs, y):
        return min((tuple(px[x] for x in xs), py[y]) for px, py in gs)

    # classes of (X x Y) and (X x X x Y)
    obj = {}
    for x in range(X.size):
        for y in range(Y.size):
            obj.setdefault(orbit_key((x,), y), None)
    mor = {}
    for x0 in range(X.size):
        for x1 in range(X.size):
            for y in range(Y.size):
                k = orbit_key((x0, x1), y)
                if k not in mor:
                    mor[k] = (orbit_key((x0,), y), orbit_key((x1,), y))
    # left side and its image
    left = set()
    for xs in itertools.product(range(X.size), repeat=n + 1):
        for y in range(Y.size):
            left.add(orbit_key(xs, y))
    images = set()
    for xs, y in left:
        if n == 0:
            images.add((orbit_key(xs, y),))
        else:
            images.add(tuple(orbit_key((xs[i], xs[i + 1]), y) for i in range(n)))
    if len(images) != len(left):
        return False
    # count composable strings on the right
    if n == 0:
        right = len(obj)
    else:
        by_source = {}
        for k, (s, t) in mor.items():
            by_source.setdefault(s, []).append((k, t))
        counts = {o: 1 for o in obj}
        for _ in range(n):
            new = {}
            for o in obj:
                new[o] = sum(counts[t] for _, t in by_source.get(o, []))
            counts = new
        right = sum(counts.values())
    return right == len(images)

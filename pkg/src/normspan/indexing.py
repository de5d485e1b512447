"""Indexing systems stored as transfer relations.

A pair ``(K, H)`` of canonical subgroup ids (``K <= H``) in ``pairs`` means
that the orbit ``H/K`` is admissible.  An ``H``-set is admissible when every
orbit is.  The relation is closed under four rules:

* reflexivity: ``(H, H)`` (trivial sets are admissible);
* conjugation: ``(K, H)`` gives ``(K^g, H^g)``;
* restriction: ``(K, H)``, ``M <= H`` and ``h`` in ``H`` give ``(M n hKh^-1, M)``;
  this is restriction of ``H/K`` to ``M`` split by the double coset formula
  and then cut into orbits (subobjects);
* composition: ``(L, K)`` and ``(K, H)`` give ``(L, H)``, i.e. ``ind_K^H(K/L) = H/L``.

Whether these rules really capture the set-level axioms is checked, not
assumed: :func:`validate_against_axioms` tests all seven axioms on every
``H``-set up to a size bound.
"""

from __future__ import annotations

import itertools
from typing import Iterable

import numpy as np

from . import _horn as _horn_kernels

from . import gset as gs
from .group import FiniteGroup, Subgroup

Pair = tuple[int, int]


class IndexingSystem:
    __slots__ = ("group", "pairs", "__weakref__")

    def __init__(self, group: FiniteGroup, pairs: Iterable[Pair]):
        self.group = group
        self.pairs = frozenset((int(k), int(h)) for k, h in pairs)
        subs = group.subgroups()
        for k, h in self.pairs:
            if not (0 <= k < len(subs) and 0 <= h < len(subs)) or not subs[k] <= subs[h]:
                raise ValueError(f"pairs: ({k}, {h}) is not a subgroup pair K <= H")

    @classmethod
    def complete(cls, G: FiniteGroup) -> "IndexingSystem":
        return cls(G, all_pairs(G))

    @classmethod
    def minimal(cls, G: FiniteGroup) -> "IndexingSystem":
        return cls(G, [(S.id, S.id) for S in G.subgroups()])

    def __eq__(self, other):
        return isinstance(other, IndexingSystem) and self.group is other.group and self.pairs == other.pairs

    def __hash__(self):
        return hash(self.pairs)

    def __le__(self, other):
        return self.pairs <= other.pairs

    def __repr__(self):
        return f"IndexingSystem({self.sorted_pairs()})"

    def sorted_pairs(self) -> list[Pair]:
        return sorted(self.pairs)

    def admits(self, K: Subgroup, H: Subgroup) -> bool:
        return (K.id, H.id) in self.pairs

    def strict_pairs(self) -> list[Pair]:
        return sorted(p for p in self.pairs if p[0] != p[1])

    def is_closed(self) -> bool:
        return not closure_violations(self.group, self.pairs)


def all_pairs(G: FiniteGroup) -> list[Pair]:
    subs = G.subgroups()
    return [(K.id, H.id) for H in subs for K in subs if K <= H]


# -- rule tables -------------------------------------------------------------

class _Rules:
    """Per-group consequence tables for the closure rules."""

    def __init__(self, G: FiniteGroup):
        subs = G.subgroups()
        self.pairs = all_pairs(G)
        self.conj = {}
        self.restr = {}
        for k, h in self.pairs:
            K, H = subs[k], subs[h]
            self.conj[(k, h)] = sorted({(G.conjugate(K, g).id, G.conjugate(H, g).id) for g in G})
            out = set()
            for M in H.subgroups():
                for x in H.elements:
                    gK = G.conjugate(K, G.inv[x])  # x K x^-1
                    out.add((G.intersect(M, gK).id, M.id))
            self.restr[(k, h)] = sorted(out)
        self.above = {}
        self.below = {}
        for k, h in self.pairs:
            self.above.setdefault(k, []).append(h)
            self.below.setdefault(h, []).append(k)
        self.reflexive = [(S.id, S.id) for S in subs]


def _rules(G: FiniteGroup) -> _Rules:
    r = getattr(G, "_indexing_rules", None)
    if r is None:
        r = _Rules(G)
        G._indexing_rules = r
    return r


def closure_violations(G: FiniteGroup, pairs) -> list[tuple[str, Pair]]:
    """Which closure rules fail for ``pairs``, with a missing pair for each."""
    R = _rules(G)
    pairs = set(pairs)
    out = []
    for p in R.reflexive:
        if p not in pairs:
            out.append(("reflexivity", p))
    for p in sorted(pairs):
        for q in R.conj[p]:
            if q not in pairs:
                out.append(("conjugation", q))
        for q in R.restr[p]:
            if q not in pairs:
                out.append(("restriction", q))
    by_top = {}
    for l, k in pairs:
        by_top.setdefault(k, []).append(l)
    for k, h in sorted(pairs):
        for l in by_top.get(k, []):
            if (l, h) not in pairs:
                out.append(("composition", (l, h)))
    return out


def closure(G: FiniteGroup, generators: Iterable[Pair] = ()) -> IndexingSystem:
    """The least indexing system containing ``generators``."""
    R = _rules(G)
    gens = [(int(k), int(h)) for k, h in generators]
    valid = set(R.pairs)
    for p in gens:
        if p not in valid:
            raise ValueError(f"generators: {p} is not a subgroup pair K <= H")
    return IndexingSystem(G, _close(R, set(R.reflexive), gens))


def _close(R: _Rules, closed: set, new: Iterable[Pair]) -> set:
    """Extend an already closed relation by ``new`` and close again."""
    pairs = set(closed)
    work = [p for p in new if p not in pairs]
    pairs.update(work)
    while work:
        p = work.pop()
        cand = list(R.conj[p]) + list(R.restr[p])
        l, k = p
        for h in R.above.get(k, ()):
            if (k, h) in pairs:
                cand.append((l, h))
        for j in R.below.get(l, ()):
            if (j, l) in pairs:
                cand.append((j, k))
        for q in cand:
            if q not in pairs:
                pairs.add(q)
                work.append(q)
    return pairs


class SearchTooLarge(RuntimeError):
    """Raised when an enumeration would exceed its configured size guard."""


def enumerate_all(G: FiniteGroup, max_pairs: int = 62, max_systems: int = 200000) -> list[IndexingSystem]:
    """Every indexing system on ``G``, sorted by their sorted pair lists.

    Raises :class:`SearchTooLarge` above ``max_pairs`` strict pairs or
    ``max_systems`` systems; use :func:`relation_masks` for bulk work.
    """
    strict, masks = relation_masks(G, max_pairs=max_pairs)
    if len(masks) > max_systems:
        raise SearchTooLarge(f"{len(masks)} indexing systems exceed the guard {max_systems}")
    reflexive = _rules(G).reflexive
    systems = [IndexingSystem(G, reflexive + [strict[i] for i in range(len(strict)) if (int(m) >> i) & 1])
               for m in masks]
    systems.sort(key=IndexingSystem.sorted_pairs)
    return systems


class _Horn:
    """The closure rules as Horn clauses over the strict pairs."""

    def __init__(self, G: FiniteGroup):
        R = _rules(G)
        self.strict = [p for p in R.pairs if p[0] != p[1]]
        n = len(self.strict)
        bit = {p: i for i, p in enumerate(self.strict)}
        self.bit = bit
        unary = np.zeros(max(n, 1), dtype=np.int64)
        binary = [[] for _ in range(n)]
        for p in self.strict:
            m = 0
            for q in R.conj[p] + R.restr[p]:
                if q in bit:
                    m |= 1 << bit[q]
            unary[bit[p]] = m
        for l, k in self.strict:
            for h in R.above.get(k, ()):
                if h == k or (l, h) not in bit:
                    continue
                a, b, c = bit[(l, k)], bit[(k, h)], bit[(l, h)]
                binary[a].append((b, c))
                binary[b].append((a, c))
        ptr = [0]
        bs, cs = [], []
        for lst in binary:
            for b, c in lst:
                bs.append(b)
                cs.append(c)
            ptr.append(len(bs))
        self.unary = unary
        self.ptr = np.array(ptr, dtype=np.int64)
        self.bin_b = np.array(bs or [0], dtype=np.int64)
        self.bin_c = np.array(cs or [0], dtype=np.int64)

    def mask(self, pairs) -> int:
        return sum(1 << self.bit[p] for p in pairs if p in self.bit)


def _horn(G: FiniteGroup) -> _Horn:
    h = G.__dict__.get("_horn")
    if h is None:
        h = G._horn = _Horn(G)
    return h


def relation_masks(G: FiniteGroup, max_pairs: int = 62) -> tuple[list[Pair], np.ndarray]:
    """All indexing systems as bitmasks over the strict pairs (sorted ascending).

    Bit ``i`` of a mask stands for ``strict[i]``; reflexive pairs are implicit.
    """
    H = _horn(G)
    n = len(H.strict)
    if n > max_pairs:
        raise SearchTooLarge(f"{n} strict subgroup pairs exceed the guard {max_pairs}")
    cached = G.__dict__.get("_relation_masks")
    if cached is not None:
        return H.strict, cached
    cap = 1024
    while True:
        out = np.zeros(cap, dtype=np.int64)
        count = _horn_kernels.enumerate_models(n, np.int64(0), H.unary, H.ptr, H.bin_b, H.bin_c, out)
        if count <= cap:
            break
        cap = count
    masks = np.sort(out[:count])
    G._relation_masks = masks
    return H.strict, masks


def enumerate_naive(G: FiniteGroup, max_pairs: int = 16) -> list[IndexingSystem]:
    """Filter every relation containing the reflexive pairs by the closure rules.

    Exponential in the number of strict pairs; guarded by ``max_pairs``.
    """
    R = _rules(G)
    strict = [p for p in R.pairs if p[0] != p[1]]
    if len(strict) > max_pairs:
        raise SearchTooLarge(f"{len(strict)} strict subgroup pairs exceed the guard {max_pairs}")
    out = []
    for bits in itertools.product((0, 1), repeat=len(strict)):
        pairs = set(R.reflexive) | {p for p, b in zip(strict, bits) if b}
        if not closure_violations(G, pairs):
            out.append(IndexingSystem(G, pairs))
    out.sort(key=IndexingSystem.sorted_pairs)
    return out


def cover_relations(systems: list[IndexingSystem]) -> list[tuple[int, int]]:
    """Hasse diagram of the inclusion order, as index pairs ``(i, j)`` with ``i < j`` covering."""
    edges = []
    for i, A in enumerate(systems):
        ups = [j for j, B in enumerate(systems) if A.pairs < B.pairs]
        for j in ups:
            if not any(systems[j].pairs > systems[k].pairs for k in ups if k != j):
                edges.append((i, j))
    return edges


# -- admissibility --------------------------------------------------------------

def requirements(T: gs.GSet) -> frozenset[Pair]:
    """The pairs ``(Stab(x), H)`` for the smallest point ``x`` of each orbit of ``T``."""
    h = T.acting.id
    return frozenset((T.stabilizer(o[0]).id, h) for o in T.orbits())


def is_admissible_hset(I: IndexingSystem, T: gs.GSet, H: Subgroup | None = None) -> bool:
    if H is not None and H is not T.acting:
        raise ValueError("is_admissible_hset: T is not an H-set for the given H")
    return requirements(T) <= I.pairs


def inadmissible_fibers(I: IndexingSystem, u: gs.EquivariantMap) -> list[tuple[int, gs.GSet]]:
    """Base points ``b`` (one per orbit of the target) whose fiber ``Stab(b)``-set is not admissible."""
    bad = []
    for b, F in orbit_fibers(u):
        if not is_admissible_hset(I, F):
            bad.append((b, F))
    return bad


def orbit_fibers(u: gs.EquivariantMap) -> list[tuple[int, gs.GSet]]:
    """For each orbit of the target, its smallest point ``b`` and the ``Stab(b)``-set ``u^-1(b)``."""
    B = u.target
    out = []
    for orb in B.orbits():
        b = orb[0]
        S = B.stabilizer(b)
        pts = u.fiber(b)
        pos = {x: i for i, x in enumerate(pts)}
        F = gs.GSet(S, {s: [pos[u.source.perms[s][x]] for x in pts] for s in S.elements},
                    size=len(pts), check=False)
        out.append((b, F))
    return out


def is_admissible_map(I: IndexingSystem, u: gs.EquivariantMap) -> bool:
    return not inadmissible_fibers(I, u)


# -- the seven axioms on bounded H-sets ----------------------------------------------

AXIOMS = {
    1: "contains all trivial H-sets",
    2: "closed under isomorphism",
    3: "closed under restriction",
    4: "closed under conjugation",
    5: "closed under subobjects",
    6: "closed under finite coproducts",
    7: "closed under self-induction",
}


def hsets_up_to_iso(H: Subgroup, bound: int) -> list[gs.GSet]:
    """One ``H``-set per isomorphism class with at most ``bound`` points."""
    G = H.group
    types = []
    for K in H.subgroups():
        if G.class_rep(K, H) is K and K.index_in(H) <= bound:
            types.append(K)
    out = []

    def grow(start, room, chosen):
        out.append(gs.from_orbits(H, chosen))
        for i in range(start, len(types)):
            K = types[i]
            if K.index_in(H) <= room:
                grow(i, room - K.index_in(H), chosen + [K])

    grow(0, bound, [])
    return out


class _AxiomData:
    """Every axiom instance on ``H``-sets of size ``<= bound``, as implications
    between requirement sets.  An implication ``(P, C, axiom)`` reads: if all
    of ``P`` is admissible then all of ``C`` must be."""

    def __init__(self, G: FiniteGroup, bound: int):
        self.implications = set()
        add = self.implications.add
        subs = G.subgroups()
        universe = {H.id: hsets_up_to_iso(H, bound) for H in subs}
        # axiom 1: trivial sets
        for H in subs:
            for n in range(bound + 1):
                add((frozenset(), requirements(gs.trivial_gset(H, n)), 1))
        for H in subs:
            for A in universe[H.id]:
                rA = requirements(A)
                # axiom 2: iso copies with every choice of conjugate stabilizers and point order
                for B in _iso_copies(A):
                    add((rA, requirements(B), 2))
                    add((requirements(B), rA, 2))
                # axiom 3: restriction
                for K in H.subgroups():
                    add((rA, requirements(gs.restrict(A, K)), 3))
                # axiom 4: conjugation
                for g in G:
                    add((rA, requirements(gs.conjugate(A, g)), 4))
                # axiom 5: subobjects are unions of orbits
                orbs = A.orbits()
                for r in range(len(orbs) + 1):
                    for pick in itertools.combinations(orbs, r):
                        S, _ = gs.sub_gset(A, [x for o in pick for x in o])
                        add((rA, requirements(S), 5))
                # axiom 6: coproducts
                for B in universe[H.id]:
                    if A.size + B.size <= bound:
                        add((rA | requirements(B), requirements(gs.disjoint_union(A, B)), 6))
            # axiom 7: ind_K^H A for A a K-set, whenever H/K is admissible
            for K in H.subgroups():
                idx = K.index_in(H)
                HK = requirements(gs.coset_space(K, H))
                for A in universe[K.id]:
                    if idx * A.size <= bound:
                        add((requirements(A) | HK, requirements(gs.induce(A, H)), 7))
        self.implications = sorted(self.implications, key=lambda t: (t[2], sorted(t[0]), sorted(t[1])))


def _iso_copies(A: gs.GSet) -> list[gs.GSet]:
    """Isomorphic copies of ``A``: reversed points, and each orbit replaced by
    the coset set of every conjugate of its stabilizer."""
    G = A.group
    H = A.acting
    out = [gs.relabel(A, list(reversed(range(A.size))))[0]]
    stabs = [A.stabilizer(o[0]) for o in A.orbits()]
    options = [G.conjugacy_class(S, H) for S in stabs]
    seen = set()
    for combo in itertools.product(*options):
        key = tuple(sorted(S.id for S in combo))
        if key not in seen:
            seen.add(key)
            out.append(gs.from_orbits(H, list(reversed(combo))))
    return out


def _axiom_data(G: FiniteGroup, bound: int) -> _AxiomData:
    cache = G.__dict__.setdefault("_axiom_cache", {})
    if bound not in cache:
        cache[bound] = _AxiomData(G, bound)
    return cache[bound]


def axiom_violations(I: IndexingSystem, size_bound: int) -> list[tuple[int, frozenset]]:
    """Axiom numbers violated by ``I`` on ``H``-sets with at most ``size_bound`` points,
    each with the requirement set that should have been admissible."""
    if size_bound < 1:
        raise ValueError("size_bound must be at least 1")
    data = _axiom_data(I.group, size_bound)
    pairs = I.pairs
    bad = []
    seen = set()
    for prem, concl, ax in data.implications:
        if prem <= pairs and not concl <= pairs and (ax, concl) not in seen:
            seen.add((ax, concl))
            bad.append((ax, concl))
    return bad


def validate_against_axioms(I: IndexingSystem, size_bound: int) -> bool:
    return not axiom_violations(I, size_bound)


def validate_all(G: FiniteGroup, size_bound: int) -> tuple[int, list[tuple[int, int]]]:
    """Check the axioms for every indexing system of ``G`` at once.

    Uses the same axiom instances as :func:`axiom_violations`; every system
    contains the reflexive pairs, which are therefore dropped from the
    implications.  Returns the number of systems and a list of
    ``(mask, axiom)`` failures.
    """
    strict, masks = relation_masks(G)
    H = _horn(G)
    data = _axiom_data(G, size_bound)
    prem = np.array([H.mask(p) for p, _, _ in data.implications], dtype=np.int64)
    concl = np.array([H.mask(c) for _, c, _ in data.implications], dtype=np.int64)
    axes = [a for _, _, a in data.implications]
    hit = _horn_kernels.first_violation(masks, prem, concl)
    bad = [(int(masks[i]), axes[j]) for i, j in enumerate(hit) if j >= 0]
    return len(masks), bad


def system_from_mask(G: FiniteGroup, mask: int) -> IndexingSystem:
    H = _horn(G)
    return IndexingSystem(G, _rules(G).reflexive + [p for i, p in enumerate(H.strict) if (mask >> i) & 1])


def corresponding_pair_admissible(I: IndexingSystem, K: Subgroup, H: Subgroup) -> bool:
    """Whether ``G/K -> G/H`` (``K <= H``) is admissible, read off the relation directly."""
    return I.admits(K, H)


def parse_pair_spec(G: FiniteGroup, spec: str, aliases: dict[str, Subgroup] | None = None) -> list[Pair]:
    """Parse ``"e<C4, 1<3"`` style generator lists.

    A side is a canonical id, ``e`` (trivial), ``G`` (whole group), an alias
    from ``aliases``, or ``C<n>`` / ``#<n>`` for the unique subgroup of order n.
    """
    aliases = dict(aliases or {})
    out = []
    for part in spec.replace(";", ",").split(","):
        part = part.strip()
        if not part:
            continue
        if "<" not in part:
            raise ValueError(f"gen: {part!r} is not of the form K<H")
        a, b = (s.strip() for s in part.split("<", 1))
        out.append((_resolve(G, a, aliases).id, _resolve(G, b, aliases).id))
    return out


def resolve_subgroup(G: FiniteGroup, name: str) -> Subgroup:
    """A subgroup from a canonical id, ``e``, ``G`` or ``C<n>``."""
    return _resolve(G, name.strip(), {})


def _resolve(G: FiniteGroup, name: str, aliases) -> Subgroup:
    if name in aliases:
        return aliases[name]
    if name.isdigit():
        return G.subgroup_by_id(int(name))
    if name in ("e", "1"):
        return G.trivial
    if name == "G":
        return G.whole
    digits = name.lstrip("C#")
    if name[:1] in ("C", "#") and digits.isdigit():
        n = int(digits)
        hits = [S for S in G.subgroups() if S.order == n]
        if len(hits) == 1:
            return hits[0]
        raise ValueError(f"gen: {len(hits)} subgroups of order {n}; use a canonical id")
    raise ValueError(f"gen: cannot resolve subgroup {name!r}")

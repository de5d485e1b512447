"""Spans of finite G-sets with admissible right legs.

A span ``A <- C -> B`` is a morphism ``A -> B``; composition is by pullback
and 2-cells are isomorphisms of apexes over both legs.  Mackey functors are
modelled by ``Hom_G(-, M)`` for a commutative G-monoid ``M``: a span pulls a
function back along its left leg and sums it over the fibers of its right
leg, so ``G/K <- G/K -> G/H`` is the transfer.
"""

from __future__ import annotations

import itertools
import random
from typing import Iterable, Sequence

from . import gset as gs
from . import indexing as ix
from . import normedcat as nc
from . import operad as op
from .group import FiniteGroup, Subgroup
from .monoid import CommutativeGMonoid


class InadmissibleSpan(ValueError):
    def __init__(self, fibers):
        self.fibers = fibers
        desc = ", ".join(f"over point {b} (a {F.size}-point set for subgroup {F.acting.id})" for b, F in fibers)
        super().__init__(f"right leg is not admissible: fiber {desc}")


class SpanMorphism:
    def __init__(self, left: gs.EquivariantMap, right: gs.EquivariantMap,
                 I: ix.IndexingSystem | None = None):
        if left.source is not right.source and left.source != right.source:
            raise ValueError("span: legs have different sources")
        self.left, self.right = left, right
        self.apex, self.source, self.target = left.source, left.target, right.target
        if I is not None:
            bad = ix.inadmissible_fibers(I, right)
            if bad:
                raise InadmissibleSpan(bad)

    def __repr__(self):
        return f"Span({self.source.size} <- {self.apex.size} -> {self.target.size})"

    def is_admissible(self, I: ix.IndexingSystem) -> bool:
        return ix.is_admissible_map(I, self.right)

    def legs(self) -> gs.EquivariantMap:
        """The apex mapped into ``source x target``."""
        prod = gs.product(self.source, self.target)
        m = self.target.size
        return gs.EquivariantMap(self.apex, prod, [self.left(c) * m + self.right(c) for c in range(self.apex.size)],
                                 check=False)


def identity_span(A: gs.GSet) -> SpanMorphism:
    i = gs.identity_map(A)
    return SpanMorphism(i, i)


def compose_spans(s: SpanMorphism, t: SpanMorphism, I: ix.IndexingSystem | None = None) -> SpanMorphism:
    """``t o s`` for ``s: A -> B`` and ``t: B -> C``; the apex is the pullback over ``B``."""
    if s.target != t.source:
        raise ValueError("compose_spans: target of the first span is not the source of the second")
    P, p1, p2 = gs.pullback(s.right, t.left)
    return SpanMorphism(p1.then(s.left), p2.then(t.right), I)


# -- isomorphism classes ---------------------------------------------------------------

def orbit_signature(s: SpanMorphism, orbit: Sequence[int]) -> tuple:
    """``(class rep id, min (left, right) over points whose stabilizer is the class rep)``."""
    C = s.apex
    G = C.group
    S0 = C.stabilizer(orbit[0])
    R = G.class_rep(S0, C.acting)
    best = min((s.left(y), s.right(y)) for y in orbit if C.stabilizer(y) is R)
    return (R.id,) + best


def canonical_form(s: SpanMorphism) -> tuple:
    return tuple(sorted(orbit_signature(s, o) for o in s.apex.orbits()))


def span_isomorphisms(s: SpanMorphism, t: SpanMorphism):
    """Apex isomorphisms commuting with both legs."""
    return gs.isomorphisms(s.apex, t.apex, over=(s.legs(), t.legs()))


def span_iso(s: SpanMorphism, t: SpanMorphism):
    return gs.iso_test(s.apex, t.apex, over=(s.legs(), t.legs()))


def span_isomorphisms_brute(s: SpanMorphism, t: SpanMorphism) -> list[tuple]:
    """Every bijection of apexes that is equivariant and commutes with both legs."""
    C, D = s.apex, t.apex
    if C.size != D.size:
        return []
    out = []
    for f in itertools.permutations(range(C.size)):
        if any(t.left(f[c]) != s.left(c) or t.right(f[c]) != s.right(c) for c in range(C.size)):
            continue
        if all(f[C.perms[g][c]] == D.perms[g][f[c]] for g in C.acting.elements for c in range(C.size)):
            out.append(f)
    return out


def automorphism_count(s: SpanMorphism) -> int:
    return sum(1 for _ in span_isomorphisms(s, s))


def span_from_orbits(A: gs.GSet, B: gs.GSet, orbits: Iterable[tuple], I=None) -> SpanMorphism:
    """The span whose apex has one orbit ``G/S`` per ``(S, a, b)``, base point ``S`` sent to ``(a, b)``."""
    orbits = list(orbits)
    G = A.group
    Ss = [G.subgroup_by_id(o[0]) for o in orbits]
    C = gs.from_orbits(A.acting, Ss)
    left, right = [None] * C.size, [None] * C.size
    off = 0
    for (sid, a, b), S in zip(orbits, Ss):
        dec = G.coset_reps(S, A.acting)
        base = off
        for r in dec.reps:
            x = C.perms[r][base]
            left[x], right[x] = A.perms[r][a], B.perms[r][b]
        off += len(dec)
    return SpanMorphism(gs.EquivariantMap(C, A, left), gs.EquivariantMap(C, B, right), I)


class SpanClass:
    __slots__ = ("form", "span", "automorphisms")

    def __init__(self, form, span, automorphisms):
        self.form, self.span, self.automorphisms = form, span, automorphisms

    def __repr__(self):
        return f"SpanClass({self.form}, aut={self.automorphisms})"


def _orbit_types(I, A, B):
    """Admissible single-orbit spans ``A <- G/S -> B`` up to isomorphism, as signatures."""
    G = A.group
    out = []
    for S in G.subgroups():
        if G.class_rep(S) is not S:
            continue
        N = [g for g in range(G.order) if G.conjugate(S, g) is S]
        fa, fb = A.fixed_points(S), B.fixed_points(S)
        seen = set()
        for a in fa:
            for b in fb:
                key = min((A.perms[n][a], B.perms[n][b]) for n in N)
                if key in seen:
                    continue
                seen.add(key)
                sig = (S.id,) + key
                s = span_from_orbits(A, B, [sig])
                if I is None or s.is_admissible(I):
                    out.append((sig, S.index_in(G.whole)))
    return sorted(out)


def hom_groupoid(I: ix.IndexingSystem, A: gs.GSet, B: gs.GSet, apex_bound: int,
                 automorphisms: bool = True) -> list[SpanClass]:
    """Isomorphism classes of admissible spans ``A -> B`` with apex size ``<= apex_bound``.

    A span is determined up to iso by the multiset of its orbit signatures,
    so classes are enumerated as multisets of admissible single-orbit spans.
    """
    types = _orbit_types(I, A, B)
    out = []

    def grow(start, room, chosen):
        s = span_from_orbits(A, B, chosen)
        out.append(SpanClass(canonical_form(s), s, automorphism_count(s) if automorphisms else None))
        for i in range(start, len(types)):
            sig, size = types[i]
            if size <= room:
                grow(i, room - size, chosen + [sig])

    grow(0, apex_bound, [])
    return out


def restrict_source(s: SpanMorphism, part: Sequence[int], A_part: gs.GSet) -> SpanMorphism:
    """The span over the sub-G-set ``part`` of the source (points in order), relabelled onto ``A_part``."""
    pos = {a: i for i, a in enumerate(part)}
    pts = [c for c in range(s.apex.size) if s.left(c) in pos]
    C, inc = gs.sub_gset(s.apex, pts)
    left = gs.EquivariantMap(C, A_part, [pos[s.left(c)] for c in inc.map])
    right = gs.EquivariantMap(C, s.target, [s.right(c) for c in inc.map])
    return SpanMorphism(left, right)


def semi_additivity_check(I, A: gs.GSet, B: gs.GSet, C: gs.GSet, apex_bound: int) -> bool:
    """Restricting along ``A -> A + B <- B`` matches classes and automorphism orders."""
    AB = gs.disjoint_union(A, B, acting=A.acting)
    whole = hom_groupoid(I, AB, C, apex_bound)
    left = {c.form: c for c in hom_groupoid(I, A, C, apex_bound)}
    right = {c.form: c for c in hom_groupoid(I, B, C, apex_bound)}
    pairs = set()
    for cl in whole:
        sa = restrict_source(cl.span, range(A.size), A)
        sb = restrict_source(cl.span, range(A.size, AB.size), B)
        key = (canonical_form(sa), canonical_form(sb))
        if key in pairs or key[0] not in left or key[1] not in right:
            return False
        pairs.add(key)
        if cl.automorphisms != left[key[0]].automorphisms * right[key[1]].automorphisms:
            return False
    expected = sum(1 for x in left.values() for y in right.values()
                   if x.span.apex.size + y.span.apex.size <= apex_bound)
    return len(pairs) == expected


# -- spans into G/H and normed objects ---------------------------------------------------

def theta(s: SpanMorphism, H: Subgroup) -> nc.NormedObject:
    """For ``A <- C -> G/H``: the ``H``-fixed object ``((x)_T, (u(t_1), ...))``.

    ``T`` is the fiber over the coset ``H`` (point ``0``) and ``u`` the left
    leg on it.
    """
    if s.target.size != H.index_in(H.group.whole) or s.target.stabilizer(0) is not H:
        raise ValueError("theta: target is not G/H with H at point 0")
    fib = s.right.fiber(0)
    T, inc = gs.sub_gset(gs.restrict(s.apex, H), fib)
    return nc.NormedObject(op.norm(T), [s.left(c) for c in inc.map])


def theta_morphism(f: Sequence[int], s: SpanMorphism, t: SpanMorphism, H: Subgroup) -> nc.NormedMorphism:
    """The image of a span isomorphism ``f: apex(s) -> apex(t)``: ``f`` on the fibers over ``H``."""
    fs, ft = s.right.fiber(0), t.right.fiber(0)
    pos = {c: i for i, c in enumerate(ft)}
    return nc.NormedMorphism(theta(s, H), theta(t, H), [pos[f[c]] for c in fs])


# -- Mackey functors of the form Hom_G(-, M) ------------------------------------------------

def equivariant_functions(A: gs.GSet, M: CommutativeGMonoid) -> list[tuple]:
    """Every equivariant ``A -> M``."""
    return [u.map for u in gs.equivariant_maps(A, M.action)]


def is_equivariant_function(A: gs.GSet, M: CommutativeGMonoid, phi: Sequence[int]) -> bool:
    return all(phi[A.perms[g][a]] == M.act(g, phi[a]) for g in A.acting.elements for a in range(A.size))


def mackey_eval(M: CommutativeGMonoid, s: SpanMorphism, phi: Sequence[int]) -> tuple:
    """``b -> sum of phi(left(c)) over c in right^-1(b)``."""
    if len(phi) != s.source.size:
        raise ValueError("mackey_eval: function does not live on the span's source")
    out = [M.zero] * s.target.size
    for c in range(s.apex.size):
        b = s.right(c)
        out[b] = M.add[out[b]][phi[s.left(c)]]
    return tuple(out)


def transfer_span(K: Subgroup, H: Subgroup, I=None) -> SpanMorphism:
    """``G/K <- G/K -> G/H``."""
    GK, GH = gs.orbit_gset(K), gs.orbit_gset(H)
    G = K.group
    proj = [None] * GK.size
    for g in range(G.order):
        proj[GK.perms[g][0]] = GH.perms[g][0]
    return SpanMorphism(gs.identity_map(GK), gs.EquivariantMap(GK, GH, proj), I)


def restriction_span(K: Subgroup, H: Subgroup) -> SpanMorphism:
    """``G/H <- G/K -> G/K``."""
    t = transfer_span(K, H)
    return SpanMorphism(t.right, t.left)


# -- random instances ------------------------------------------------------------------

def random_gset(G: FiniteGroup, rng: random.Random, max_size: int, max_orbits: int = 3) -> gs.GSet:
    subs = [S for S in G.subgroups() if S.index_in(G.whole) <= max_size]
    chosen, room = [], max_size
    for _ in range(rng.randint(1, max_orbits)):
        fits = [S for S in subs if S.index_in(G.whole) <= room]
        if not fits:
            break
        S = rng.choice(fits)
        chosen.append(S)
        room -= S.index_in(G.whole)
    return gs.from_orbits(G.whole, chosen)


def random_span(I, A: gs.GSet, B: gs.GSet, rng: random.Random, max_apex: int,
                max_orbits: int = 3) -> SpanMorphism:
    """A random admissible span built from admissible single-orbit pieces."""
    types = [t for t in _orbit_types(I, A, B) if t[1] <= max_apex]
    chosen, room = [], max_apex
    for _ in range(rng.randint(0, max_orbits)):
        fits = [t for t in types if t[1] <= room]
        if not fits:
            break
        sig, size = rng.choice(fits)
        chosen.append(sig)
        room -= size
    s = span_from_orbits(A, B, chosen, I)
    # scramble the apex order so composition sees unsorted input
    order = list(range(s.apex.size))
    rng.shuffle(order)
    C, iso = gs.relabel(s.apex, order)
    inv = iso.inverse()
    return SpanMorphism(inv.then(s.left), inv.then(s.right), I)

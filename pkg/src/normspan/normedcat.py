"""The free normed symmetric monoidal category on a finite G-set.

Objects of ``G(A)`` are pairs ``(theta, labels)`` with one point of ``A``
per leaf; a morphism ``alpha`` is any map of leaf positions with
``src.labels[i] == tgt.labels[alpha[i]]``.  The core ``F(A)`` keeps the
bijections.  ``g`` acts on objects by moving leaf ``i`` to ``omega(theta, g)[i]``
and multiplying its label by ``g``.

Unfurling.  An equivariant assignment ``phi: A -> G(B)`` extends to a strict
normed functor ``cons(phi)``.  Below a node ``r (x)_T`` the children are the
objects ``(theta_i, r^-1 . labels_i)``, so that ``r (x)_T (X_1, ...)`` means
``r . (x)_T(X_1, ...)``; this is what makes ``cons(phi)`` equivariant when
``r`` is not the identity.  As a consequence the block of a leaf labelled
``a`` that sits below reps ``r_1 ... r_d`` is ``phi(a)`` with its leaves
permuted by ``omega(phi(a), (r_1...r_d)^-1)``, and ``cons`` on morphisms
moves blocks along that twist.  When every rep is the identity this is the
plain block map.
"""

from __future__ import annotations

import itertools
from typing import Callable, Iterable, Mapping, Sequence

from . import gset as gs
from . import indexing as ix
from . import operad as op
from . import perm as P
from .group import FiniteGroup, Subgroup


class NormedObject:
    __slots__ = ("tree", "labels", "_hash")

    def __init__(self, tree: op.NormTree, labels: Sequence[int]):
        self.tree = tree
        self.labels = tuple(labels)
        if len(self.labels) != tree.length:
            raise ValueError(f"object: {len(self.labels)} labels for a tree of length {tree.length}")
        self._hash = hash((tree, self.labels))

    @property
    def length(self) -> int:
        return len(self.labels)

    def __eq__(self, other):
        return (self is other or isinstance(other, NormedObject) and self._hash == other._hash
                and self.labels == other.labels and self.tree == other.tree)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"({self.tree!r}, {list(self.labels)})"


class NormedMorphism:
    __slots__ = ("source", "target", "alpha")

    def __init__(self, source: NormedObject, target: NormedObject, alpha: Sequence[int], check: bool = True):
        self.source, self.target, self.alpha = source, target, tuple(alpha)
        if check:
            if len(self.alpha) != source.length:
                raise ValueError("morphism: map length differs from the source length")
            for i, j in enumerate(self.alpha):
                if not 0 <= j < target.length or source.labels[i] != target.labels[j]:
                    raise ValueError(f"morphism: position {i} is not sent to an equal label")

    def __eq__(self, other):
        return (isinstance(other, NormedMorphism) and self.alpha == other.alpha
                and self.source == other.source and self.target == other.target)

    def __hash__(self):
        return hash((self.source, self.target, self.alpha))

    def __repr__(self):
        return f"{self.source!r} -{list(self.alpha)}-> {self.target!r}"

    def then(self, other: "NormedMorphism") -> "NormedMorphism":
        """``other`` after ``self``."""
        if other.source != self.target:
            raise ValueError("then: morphisms are not composable")
        return NormedMorphism(self.source, other.target, [other.alpha[j] for j in self.alpha], check=False)

    def is_iso(self) -> bool:
        return self.source.length == self.target.length and P.is_permutation(self.alpha)

    def inverse(self) -> "NormedMorphism":
        if not self.is_iso():
            raise ValueError("inverse: not a bijection")
        return NormedMorphism(self.target, self.source, P.inverse(self.alpha), check=False)


def identity(X: NormedObject) -> NormedMorphism:
    return NormedMorphism(X, X, range(X.length), check=False)


def leaf(a: int) -> NormedObject:
    return NormedObject(op.LEAF, (a,))


# -- G-action ------------------------------------------------------------------------

def act_object(A: gs.GSet, g: int, X: NormedObject) -> NormedObject:
    t, w = op.act_with_omega(g, X.tree)
    pg = A.perms[g]
    labels = [0] * X.length
    for i, a in enumerate(X.labels):
        labels[w[i]] = pg[a]
    return NormedObject(t, labels)


def act_morphism(A: gs.GSet, g: int, f: NormedMorphism) -> NormedMorphism:
    ws, wt = op.omega(f.source.tree, g), op.omega(f.target.tree, g)
    alpha = [0] * len(f.alpha)
    for i, j in enumerate(f.alpha):
        alpha[ws[i]] = wt[j]
    return NormedMorphism(act_object(A, g, f.source), act_object(A, g, f.target), alpha, check=False)


def is_fixed_object(A: gs.GSet, X: NormedObject, H: Subgroup) -> bool:
    return all(act_object(A, h, X) == X for h in H.elements)


def is_fixed_morphism(A: gs.GSet, f: NormedMorphism, H: Subgroup) -> bool:
    return all(act_morphism(A, h, f) == f for h in H.elements)


# -- monoidal structure -------------------------------------------------------------

def _trivial(H: Subgroup, n: int) -> gs.GSet:
    cache = H.group.__dict__.setdefault("_trivial_hsets", {})
    T = cache.get((H.id, n))
    if T is None:
        T = cache[(H.id, n)] = gs.trivial_gset(H, n)
    return T


def unit(G: FiniteGroup) -> NormedObject:
    return NormedObject(op.norm(_trivial(G.whole, 0)), ())


def tensor(X: NormedObject, Y: NormedObject, G: FiniteGroup) -> NormedObject:
    tree = op.NormTree(G.whole, _trivial(G.whole, 2), G.identity, (X.tree, Y.tree), check=False)
    return NormedObject(tree, X.labels + Y.labels)


def tensor_morphisms(f: NormedMorphism, g: NormedMorphism, G: FiniteGroup) -> NormedMorphism:
    alpha = P.disjoint_union_maps([f.alpha, g.alpha], [f.target.length, g.target.length])
    return NormedMorphism(tensor(f.source, g.source, G), tensor(f.target, g.target, G), alpha, check=False)


def external_norm(T: gs.GSet, xs: Sequence[NormedObject], rep: int | None = None) -> NormedObject:
    if len(xs) != T.size:
        raise ValueError(f"external_norm: {len(xs)} objects for an H-set of size {T.size}")
    tree = op.norm(T, [x.tree for x in xs], rep)
    return NormedObject(tree, tuple(a for x in xs for a in x.labels))


def norm_morphisms(T: gs.GSet, fs: Sequence[NormedMorphism]) -> NormedMorphism:
    alpha = P.disjoint_union_maps([f.alpha for f in fs], [f.target.length for f in fs])
    return NormedMorphism(external_norm(T, [f.source for f in fs]),
                          external_norm(T, [f.target for f in fs]), alpha, check=False)


def associator(X, Y, Z, G) -> NormedMorphism:
    src = tensor(tensor(X, Y, G), Z, G)
    return NormedMorphism(src, tensor(X, tensor(Y, Z, G), G), range(src.length))


def left_unitor(X, G) -> NormedMorphism:
    return NormedMorphism(tensor(unit(G), X, G), X, range(X.length))


def right_unitor(X, G) -> NormedMorphism:
    return NormedMorphism(tensor(X, unit(G), G), X, range(X.length))


def braiding(X, Y, G) -> NormedMorphism:
    return NormedMorphism(tensor(X, Y, G), tensor(Y, X, G), P.block((1, 0), (X.length, Y.length)))


def untwistor(T: gs.GSet, xs: Sequence[NormedObject]) -> NormedMorphism:
    """``(x)_T(X_i) -> (x)_n(X_i)`` with ``n`` the trivial set; the identity of leaf positions."""
    src = external_norm(T, xs)
    return NormedMorphism(src, external_norm(_trivial(T.acting, T.size), xs), range(src.length))


# -- hom-sets, bounded object lists --------------------------------------------------

def hom_set(X: NormedObject, Y: NormedObject, core: bool = False) -> list[NormedMorphism]:
    where = {}
    for j, b in enumerate(Y.labels):
        where.setdefault(b, []).append(j)
    choices = [where.get(a, []) for a in X.labels]
    out = []
    if core:
        if X.length != Y.length:
            return out
        for alpha in itertools.product(*choices):
            if len(set(alpha)) == len(alpha):
                out.append(NormedMorphism(X, Y, alpha, check=False))
    else:
        for alpha in itertools.product(*choices):
            out.append(NormedMorphism(X, Y, alpha, check=False))
    return out


def objects(trees: Iterable[op.NormTree], A: gs.GSet) -> list[NormedObject]:
    """Every labelling of every given tree by points of ``A``."""
    return [NormedObject(t, L) for t in trees for L in itertools.product(range(A.size), repeat=t.length)]


# -- equivariant assignments and their unfurling --------------------------------------

class EquivariantFunctorData:
    """An equivariant assignment ``A -> G(B)``: ``values[g.a] == g.values[a]``."""

    def __init__(self, A: gs.GSet, B: gs.GSet, values: Sequence[NormedObject] | Mapping[int, NormedObject],
                 check: bool = True):
        self.A, self.B = A, B
        self.values = tuple(values[a] for a in range(A.size))
        if check:
            self.check()

    def check(self):
        for g in self.A.acting.elements:
            pg = self.A.perms[g]
            for a in range(self.A.size):
                if self.values[pg[a]] != act_object(self.B, g, self.values[a]):
                    raise ValueError(f"functor data: value at {pg[a]} is not {g} times the value at {a}")

    def __call__(self, a: int) -> NormedObject:
        return self.values[a]

    @classmethod
    def from_basepoints(cls, A: gs.GSet, B: gs.GSet, base: Mapping[int, NormedObject]):
        """Extend values given at one point per orbit (each fixed by that point's stabilizer)."""
        values = [None] * A.size
        G = A.group
        for x, X in base.items():
            S = A.stabilizer(x)
            if not is_fixed_object(B, X, S):
                raise ValueError(f"functor data: value at {x} is not fixed by its stabilizer")
            for r in G.coset_reps(S, A.acting).reps:
                values[A.perms[r][x]] = act_object(B, r, X)
        if any(v is None for v in values):
            raise ValueError("functor data: some orbit has no base value")
        return cls(A, B, values, check=False)

    @classmethod
    def from_map(cls, u: gs.EquivariantMap):
        """``a -> (Leaf, (u(a)))``; its unfurling is ``G(u)``."""
        return cls(u.source, u.target, [leaf(u(a)) for a in range(u.source.size)], check=False)


class EquivariantTransformation:
    """Components ``phi(a) -> psi(a)`` with ``comps[g.a] == g.comps[a]``."""

    def __init__(self, phi: EquivariantFunctorData, psi: EquivariantFunctorData,
                 comps: Sequence[NormedMorphism], check: bool = True):
        self.phi, self.psi = phi, psi
        self.comps = tuple(comps)
        if check:
            B = phi.B
            for a, c in enumerate(self.comps):
                if c.source != phi(a) or c.target != psi(a):
                    raise ValueError(f"transformation: component at {a} has the wrong ends")
            for g in phi.A.acting.elements:
                pg = phi.A.perms[g]
                for a in range(phi.A.size):
                    if self.comps[pg[a]] != act_morphism(B, g, self.comps[a]):
                        raise ValueError(f"transformation: not equivariant at ({g}, {a})")

    @classmethod
    def from_basepoints(cls, phi, psi, base: Mapping[int, NormedMorphism]):
        A, B = phi.A, phi.B
        G = A.group
        comps = [None] * A.size
        for x, f in base.items():
            S = A.stabilizer(x)
            if not is_fixed_morphism(B, f, S):
                raise ValueError(f"transformation: component at {x} is not fixed by its stabilizer")
            for r in G.coset_reps(S, A.acting).reps:
                comps[A.perms[r][x]] = act_morphism(B, r, f)
        return cls(phi, psi, comps)


class Cons:
    """The strict normed functor ``G(A) -> G(B)`` unfurled from ``phi``."""

    def __init__(self, phi: EquivariantFunctorData):
        self.phi = phi
        self.A, self.B = phi.A, phi.B
        self.G = self.A.group
        self._memo = {}

    def expand(self, X: NormedObject):
        """``(cons(X), twisted leaf labels, block starts, block twists)``.

        Leaf ``i`` of ``X`` becomes the block ``starts[i] .. starts[i] + |phi(a_i)|``;
        point ``p`` of ``phi(a_i)`` lands at ``starts[i] + twists[i][p]``.
        """
        hit = self._memo.get(X)
        if hit is not None:
            return hit
        G, A, B = self.G, self.A, self.B
        twisted, pis = [], []

        def walk(theta, labels, rho):
            if theta.H is None:
                b = labels[0]
                twisted.append(b)
                Y = self.phi(b)
                a = A.perms[rho][b]
                pis.append(op.omega(self.phi(a).tree, G.inv[rho]))
                return Y.tree, Y.labels
            r = theta.rep
            pr, pri = B.perms[r], A.perms[G.inv[r]]
            kids, out, off = [], [], 0
            for c in theta.children:
                sub = [pri[x] for x in labels[off:off + c.length]]
                off += c.length
                t, l = walk(c, sub, G.mul[rho][r])
                kids.append(t)
                out.extend(pr[y] for y in l)
            return op.NormTree(theta.H, theta.T, r, kids, check=False), out

        tree, labels = walk(X.tree, X.labels, G.identity)
        starts, acc = [], 0
        for p in pis:
            starts.append(acc)
            acc += len(p)
        out = (NormedObject(tree, labels), tuple(twisted), tuple(starts), tuple(pis))
        self._memo[X] = out
        return out

    def __call__(self, X: NormedObject) -> NormedObject:
        return self.expand(X)[0]

    def on_morphism(self, f: NormedMorphism) -> NormedMorphism:
        S, _, s_start, s_pi = self.expand(f.source)
        T, _, t_start, t_pi = self.expand(f.target)
        alpha = [0] * S.length
        for i, j in enumerate(f.alpha):
            pi, pj = s_pi[i], t_pi[j]
            for p in range(len(pi)):
                alpha[s_start[i] + pi[p]] = t_start[j] + pj[p]
        return NormedMorphism(S, T, alpha)

    def on_transformation(self, w: EquivariantTransformation, target: "Cons", X: NormedObject) -> NormedMorphism:
        """The component at ``X`` of ``cons(w): cons(phi) => cons(psi)``; ``self`` must be ``cons(phi)``."""
        S, twisted, s_start, _ = self.expand(X)
        T, _, t_start, _ = target.expand(X)
        alpha = [0] * S.length
        for i, b in enumerate(twisted):
            for q, j in enumerate(w.comps[b].alpha):
                alpha[s_start[i] + q] = t_start[i] + j
        return NormedMorphism(S, T, alpha)

    def after(self, psi: "Cons") -> EquivariantFunctorData:
        """The assignment ``cons(psi) o phi``, whose unfurling is ``cons(psi) o cons(phi)``."""
        return EquivariantFunctorData(self.A, psi.B, [psi(v) for v in self.phi.values], check=False)


def cons(phi: EquivariantFunctorData) -> Cons:
    return Cons(phi)


def block_map(alpha: Sequence[int], src_lengths: Sequence[int], tgt_lengths: Sequence[int]) -> tuple:
    """The untwisted block map ``alpha(k_1..)(l_1..)``."""
    return P.block_map(alpha, src_lengths, tgt_lengths)


# -- the P_T adjunction and Beck-Chevalley -------------------------------------------

def _point_index(X: gs.GSet, coset: int, t: int, size: int) -> int:
    return coset * size + t


class ProjectionAdjunction:
    """``G(P_T) -| G(P_T)^*`` for ``P_T: ind_H^G T -> G/H``.

    Points of ``ind_H^G T`` are ``coset * |T| + t``; coset ``0`` is ``H`` itself.
    """

    def __init__(self, I: ix.IndexingSystem, T: gs.GSet):
        H = T.acting
        G = H.group
        if not ix.is_admissible_hset(I, T):
            raise ValueError("projection_adjunction: T is not admissible")
        self.I, self.T, self.H, self.G = I, T, H, G
        n = T.size
        self.X = X = gs.induce(T, G.whole)
        self.GH = GH = gs.coset_space(H)
        self.proj = gs.EquivariantMap(X, GH, [p // n for p in range(X.size)]) if n else \
            gs.EquivariantMap(X, GH, [])
        self.L = Cons(EquivariantFunctorData.from_map(self.proj))
        base = NormedObject(op.norm(T), tuple(range(n)))
        self.R = Cons(EquivariantFunctorData.from_basepoints(GH, X, {0: base}))
        # unit: a -> R L a at points of X, generated at the points (H, t)
        incl = EquivariantFunctorData(X, X, [leaf(x) for x in range(X.size)], check=False)
        self.Id_X = Cons(incl)
        self.RL = Cons(self.L.after(self.R))
        self.unit_data = EquivariantTransformation.from_basepoints(
            incl, self.RL.phi,
            {t: NormedMorphism(leaf(t), base, (t,)) for t in _orbit_reps(X, range(n))})
        self.LR = Cons(self.R.after(self.L))
        self.Id_GH = Cons(EquivariantFunctorData(GH, GH, [leaf(x) for x in range(GH.size)], check=False))
        top = self.LR.phi(0)
        self.counit_data = EquivariantTransformation.from_basepoints(
            self.LR.phi, self.Id_GH.phi, {0: NormedMorphism(top, leaf(0), (0,) * n)})

    def unit(self, Y: NormedObject) -> NormedMorphism:
        return self.Id_X.on_transformation(self.unit_data, self.RL, Y)

    def counit(self, Z: NormedObject) -> NormedMorphism:
        return self.LR.on_transformation(self.counit_data, self.Id_GH, Z)

    def triangle_left(self, Y: NormedObject) -> bool:
        """``eps_{L Y} o L(eta_Y) = id_{L Y}``."""
        LY = self.L(Y)
        f = self.L.on_morphism(self.unit(Y)).then(self.counit(LY))
        return f == identity(LY)

    def triangle_right(self, Z: NormedObject) -> bool:
        """``R(eps_Z) o eta_{R Z} = id_{R Z}``."""
        RZ = self.R(Z)
        f = self.unit(RZ).then(self.R.on_morphism(self.counit(Z)))
        return f == identity(RZ)


def _orbit_reps(X: gs.GSet, candidates) -> list[int]:
    seen, reps = set(), []
    for x in candidates:
        if x in seen:
            continue
        reps.append(x)
        seen.update(X.perms[g][x] for g in X.acting.elements)
    return reps


def projection_adjunction(I: ix.IndexingSystem, T: gs.GSet) -> ProjectionAdjunction:
    return ProjectionAdjunction(I, T)


class BeckChevalleyMate:
    """The mate ``G(v) G(P_{res T})^* => G(P_T)^* G(w)`` for ``K <= H`` and an ``H``-set ``T``."""

    def __init__(self, I: ix.IndexingSystem, K: Subgroup, T: gs.GSet):
        H = T.acting
        G = H.group
        if not K <= H:
            raise ValueError("beck_chevalley_mate: K is not a subgroup of H")
        self.top = ProjectionAdjunction(I, T)
        self.low = ProjectionAdjunction(I, gs.restrict(T, K))
        n = T.size
        Xk, Xh = self.low.X, self.top.X
        # v sends (K, t) to (H, t); w sends K to H
        v = [None] * Xk.size
        for t in range(n):
            for g in range(G.order):
                v[Xk.perms[g][t]] = Xh.perms[g][t]
        self.v = gs.EquivariantMap(Xk, Xh, v if n else [])
        GK, GH = self.low.GH, self.top.GH
        w = [None] * GK.size
        for g in range(G.order):
            w[GK.perms[g][0]] = GH.perms[g][0]
        self.w = gs.EquivariantMap(GK, GH, w)
        self.Gv = Cons(EquivariantFunctorData.from_map(self.v))
        self.Gw = Cons(EquivariantFunctorData.from_map(self.w))
        # the predicted mate: identity [n] -> [n] at the base point K
        src = Cons(self.low.R.after(self.Gv))
        tgt = Cons(self.Gw.after(self.top.R))
        self.src, self.tgt = src, tgt
        pred = NormedMorphism(src.phi(0), tgt.phi(0), range(n))
        self.predicted_data = EquivariantTransformation.from_basepoints(src.phi, tgt.phi, {0: pred})

    def component(self, Y: NormedObject) -> NormedMorphism:
        top, low = self.top, self.low
        A = self.Gv(low.R(Y))
        step1 = top.unit(A)                      # A -> R L A
        LA = top.L(A)
        if LA != self.Gw(low.L(low.R(Y))):
            raise AssertionError("beck_chevalley_mate: the square does not commute strictly")
        step2 = top.R.on_morphism(self.Gw.on_morphism(low.counit(Y)))
        return step1.then(step2)

    def predicted(self, Y: NormedObject) -> NormedMorphism:
        return self.src.on_transformation(self.predicted_data, self.tgt, Y)


def beck_chevalley_mate(I: ix.IndexingSystem, K: Subgroup, T: gs.GSet) -> BeckChevalleyMate:
    return BeckChevalleyMate(I, K, T)


# -- finite coproducts ---------------------------------------------------------------

class SumEquivalence:
    """``Phi: G(A) x G(B) -> G(A + B)`` and its inverse ``Psi = (Psi_A, Psi_B)``.

    Points of ``A + B`` are those of ``A`` followed by those of ``B``.
    """

    def __init__(self, A: gs.GSet, B: gs.GSet):
        self.A, self.B = A, B
        self.G = G = A.group
        self.AB = AB = gs.disjoint_union(A, B, acting=A.acting)
        na = A.size
        e = unit(G)
        self.Psi_A = Cons(EquivariantFunctorData(AB, A, [leaf(c) if c < na else e for c in range(AB.size)],
                                                 check=False))
        self.Psi_B = Cons(EquivariantFunctorData(AB, B, [e if c < na else leaf(c - na) for c in range(AB.size)],
                                                 check=False))

    def Phi(self, X: NormedObject, Y: NormedObject) -> NormedObject:
        na = self.A.size
        return tensor(NormedObject(X.tree, X.labels), NormedObject(Y.tree, [b + na for b in Y.labels]), self.G)

    def Phi_morphism(self, f: NormedMorphism, g: NormedMorphism) -> NormedMorphism:
        alpha = P.disjoint_union_maps([f.alpha, g.alpha], [f.target.length, g.target.length])
        return NormedMorphism(self.Phi(f.source, g.source), self.Phi(f.target, g.target), alpha)

    def Psi(self, Z: NormedObject):
        return self.Psi_A(Z), self.Psi_B(Z)

    def PhiPsi_morphism(self, f: NormedMorphism) -> NormedMorphism:
        return self.Phi_morphism(self.Psi_A.on_morphism(f), self.Psi_B.on_morphism(f))

    def eta(self, Z: NormedObject) -> NormedMorphism:
        """``Phi Psi Z -> Z``, built level by level through the interchange isomorphism."""
        return NormedMorphism(self.Phi(*self.Psi(Z)), Z, self._eta(Z.tree, Z.labels))

    def _eta(self, theta, labels) -> tuple:
        na = self.A.size
        if theta.H is None:
            return (0,)
        G = self.G
        pri = self.AB.perms[G.inv[theta.rep]]
        parts, sizes_a, sizes_b, off = [], [], [], 0
        for c in theta.children:
            sub = [pri[x] for x in labels[off:off + c.length]]
            off += c.length
            parts.append(self._eta(c, sub))
            na_c = sum(1 for x in sub if x < na)
            sizes_a.append(na_c)
            sizes_b.append(c.length - na_c)
        # interchange: (a_1..a_n | b_1..b_n) -> (a_1 b_1 | ... | a_n b_n)
        inter, starts, acc = [], [], 0
        for ka, kb in zip(sizes_a, sizes_b):
            starts.append(acc)
            acc += ka + kb
        for i, ka in enumerate(sizes_a):
            inter.extend(range(starts[i], starts[i] + ka))
        for i, kb in enumerate(sizes_b):
            inter.extend(range(starts[i] + sizes_a[i], starts[i] + sizes_a[i] + kb))
        inner = P.direct_sum(parts)
        return P.compose(inner, inter)

    def epsilon(self, X: NormedObject, Y: NormedObject) -> tuple[NormedMorphism, NormedMorphism]:
        """``Psi Phi (X, Y) -> (X, Y)``, the identity on leaf positions in each factor."""
        Z = self.Phi(X, Y)
        return (NormedMorphism(self.Psi_A(Z), X, range(X.length)),
                NormedMorphism(self.Psi_B(Z), Y, range(Y.length)))


def sum_equivalence(A: gs.GSet, B: gs.GSet) -> SumEquivalence:
    return SumEquivalence(A, B)


# -- fixed subcategories and slices --------------------------------------------------

class IsoClass:
    """A representative with its automorphism group order and bucket size."""

    __slots__ = ("rep", "automorphisms", "members")

    def __init__(self, rep, automorphisms: int, members: int = 1):
        self.rep, self.automorphisms, self.members = rep, automorphisms, members

    def __repr__(self):
        return f"IsoClass({self.rep!r}, aut={self.automorphisms})"


class FixedSubcategory:
    """``H``-fixed objects of ``F(A)`` and their ``H``-fixed isomorphisms.

    Objects are the ``H``-fixed ``(theta, labels)`` where ``theta`` has at most
    ``max_internal`` internal nodes and length at most ``max_length``.  An
    ``H``-fixed bijection ``X -> Y`` is the same thing as an iso of ``H``-sets
    ``T_X -> T_Y`` over ``res A`` (``T_X`` carries ``h`` by ``omega``), which is
    how classes are found.
    """

    def __init__(self, I: ix.IndexingSystem, A: gs.GSet, H: Subgroup, max_length: int, max_internal: int = 1):
        self.I, self.A, self.H = I, A, H
        self.resA = gs.restrict(A, H)
        self.objects = []
        for theta in self._trees(max_length, max_internal):
            Tt = op.equivariant_orbit_set(theta, H)
            for u in gs.equivariant_maps(Tt, self.resA):
                self.objects.append((NormedObject(theta, u.map), Tt, u))
        self.classes = _iso_classes(self.objects)

    def _trees(self, max_length, max_internal):
        I, H = self.I, self.H
        G = H.group
        if max_internal == 1:
            # a single node r (x)_S is H-fixed iff r^-1 H r <= K (its leaves are fixed anyway)
            out = [op.LEAF]
            for K, S, r in op.Catalog(I, max_length).decorations:
                if G.conjugate(H, r) <= K:
                    out.append(op.NormTree(K, S, r, [op.LEAF] * S.size, check=False))
            return out
        catalog = op.Catalog(I, max_length + max_internal - 1)
        out = []
        for v in range(1, max_length + max_internal + 1):
            for n in range(max_length + 1):
                out.extend(t for t in op.fixed_trees(catalog, H, n, v) if t.internal <= max_internal)
        return out

    def object_list(self) -> list[NormedObject]:
        return [o[0] for o in self.objects]

    def fixed_isomorphisms(self, X: NormedObject, Y: NormedObject) -> list[NormedMorphism]:
        """By brute force over ``hom_set`` and the group action (for small checks)."""
        return [f for f in hom_set(X, Y, core=True) if is_fixed_morphism(self.A, f, self.H)]


def fixed_subcategory(I, A, H, max_length, max_internal=1) -> FixedSubcategory:
    return FixedSubcategory(I, A, H, max_length, max_internal)


def _signature(Tt: gs.GSet, u: gs.EquivariantMap):
    G = Tt.group
    sig = []
    for o in Tt.orbits():
        S = Tt.stabilizer(o[0])
        sig.append((G.class_rep(S, Tt.acting).id, len(o), tuple(sorted(u(x) for x in o))))
    return (Tt.size, tuple(sorted(sig)))


def _iso_classes(entries) -> list[IsoClass]:
    """Classes of ``(payload, T, u: T -> Z)`` under isomorphisms of ``T`` over ``Z``."""
    buckets = {}
    for e in entries:
        buckets.setdefault(_signature(e[1], e[2]), []).append(e)
    classes = []
    for key in sorted(buckets, key=repr):
        reps = []
        for e in buckets[key]:
            for c in reps:
                if gs.iso_test(c.rep[1], e[1], over=(c.rep[2], e[2])) is not None:
                    c.members += 1
                    break
            else:
                aut = sum(1 for _ in gs.isomorphisms(e[1], e[1], over=(e[2], e[2])))
                reps.append(IsoClass(e, aut))
        classes.extend(reps)
    return classes


class SliceCategory:
    """Admissible ``H``-sets ``T`` with ``|T| <= size_bound`` over ``res_H A``, up to isomorphism."""

    def __init__(self, I: ix.IndexingSystem, H: Subgroup, A: gs.GSet, size_bound: int):
        self.I, self.H, self.A = I, H, A
        self.resA = gs.restrict(A, H)
        entries = []
        for T in ix.hsets_up_to_iso(H, size_bound):
            if not ix.is_admissible_hset(I, T):
                continue
            for u in gs.equivariant_maps(T, self.resA):
                entries.append(((T, u), T, u))
        self.objects = entries
        self.classes = _iso_classes(entries)

    def morphisms(self, x, y) -> list[gs.EquivariantMap]:
        (T, u), (S, w) = x, y
        return [f for f in gs.equivariant_maps(T, S) if all(w(f(t)) == u(t) for t in range(T.size))]


def slice_category(I, H, A, size_bound) -> SliceCategory:
    return SliceCategory(I, H, A, size_bound)


# -- freeness ------------------------------------------------------------------------

def generated_objects(catalog: op.Catalog, A: gs.GSet, max_nodes: int) -> list[set]:
    """Objects of ``F(A)`` reachable from the points of ``A`` by external norms and the action.

    ``out[v]`` holds those whose tree has ``v`` vertices.  The node
    ``r (x)_T`` is reached as ``r . (x)_T(X_1, ...)``.
    """
    G = catalog.group
    out = [set() for _ in range(max_nodes + 1)]
    if max_nodes >= 1:
        out[1].update(leaf(a) for a in range(A.size))
    for v in range(1, max_nodes + 1):
        for H, T, r in catalog.decorations:
            k = T.size
            if k > v - 1 or (k == 0 and v != 1):
                continue
            for sizes in op._compositions(v - 1, k):
                pools = [list(out[s]) for s in sizes]
                for xs in itertools.product(*pools):
                    out[v].add(act_object(A, r, external_norm(T, xs)))
    return out

"""Formal external norms: decorated trees and the free operad they span.

A tree is either :data:`LEAF` or a node ``r (x)_T (children)`` where ``T`` is
an admissible ``H``-set (its point order fixes ``sigma: H -> Sigma_|T|``),
``r`` is the canonical representative of a coset in ``G/H`` and there is
one child per point of ``T``.

Group action.  For ``g r = r' h`` with ``r'`` canonical and ``h`` in ``H``::

    g . (r (x)_T (t_1, ..., t_n)) = r' (x)_T (h.t_{s^-1(1)}, ..., h.t_{s^-1(n)}),  s = sigma(h)

and ``omega(theta, g)`` sends old leaf positions to new ones:
``sigma(h)<k_1..k_n> o (omega(t_1, h) + ... + omega(t_n, h))``.

Operations of arity ``n`` are pairs ``(theta, delta)`` with ``delta`` in
``Sigma_n``; ``g.(theta, delta) = (g theta, omega(theta, g) o delta)`` and
the right action is ``(theta, delta).s = (theta, delta o s)``.  Read
``(theta, delta)`` as "input ``i`` feeds leaf ``delta(i)``".

Size of a tree: :attr:`NormTree.nodes` counts every vertex, leaves
included, so a bound on it bounds both depth and arity.
"""

from __future__ import annotations

import itertools
import random
from typing import Callable, Iterable, Mapping, Sequence

from . import gset as gs
from . import indexing as ix
from . import perm as P
from .group import FiniteGroup, Subgroup


class NormTree:
    __slots__ = ("H", "T", "rep", "children", "length", "nodes", "_hash")

    def __init__(self, H: Subgroup | None = None, T: gs.GSet | None = None, rep: int = 0,
                 children: Sequence["NormTree"] = (), check: bool = True):
        self.H, self.T, self.rep = H, T, rep
        self.children = tuple(children)
        if H is None:
            self.length, self.nodes = 1, 1
            self._hash = 0x1EAF
            return
        if check:
            if T.acting is not H:
                raise ValueError("node: hset is not an H-set for the node's subgroup")
            if len(self.children) != T.size:
                raise ValueError(f"node: {len(self.children)} children for an hset of size {T.size}")
            dec = H.group.coset_reps(H)
            if rep not in dec.coset_of or dec.reps[dec.coset_of[rep]] != rep:
                raise ValueError(f"node: {rep} is not a canonical coset representative")
        self.length = sum(c.length for c in self.children)
        self.nodes = 1 + sum(c.nodes for c in self.children)
        self._hash = hash((H.id, T, rep, self.children))

    @property
    def is_leaf(self) -> bool:
        return self.H is None

    @property
    def internal(self) -> int:
        if self.H is None:
            return 0
        return 1 + sum(c.internal for c in self.children)

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, NormTree) or self._hash != other._hash:
            return False
        return (self.H is other.H and self.rep == other.rep
                and (self.T is other.T or self.T == other.T) and self.children == other.children)

    def __repr__(self):
        if self.H is None:
            return "Leaf"
        inner = ", ".join(map(repr, self.children))
        return f"{self.rep}(x)[H{self.H.id}|{self.T.size}]({inner})"

    def decorations(self) -> Iterable["NormTree"]:
        """The internal nodes, root first."""
        if self.H is not None:
            yield self
            for c in self.children:
                yield from c.decorations()


LEAF = NormTree()


def norm(T: gs.GSet, children: Sequence[NormTree] | None = None, rep: int | None = None) -> NormTree:
    """``r (x)_T (children)``; defaults to the identity rep and leaf children."""
    H = T.acting
    if rep is None:
        rep = H.group.identity
    if children is None:
        children = [LEAF] * T.size
    return NormTree(H, T, rep, children)


def check_tree(I: ix.IndexingSystem, theta: NormTree) -> bool:
    """Whether every decoration of ``theta`` is admissible for ``I``."""
    return all(ix.is_admissible_hset(I, n.T) for n in theta.decorations())


# -- action and the omega cocycle ----------------------------------------------------

def _step(g: int, theta: NormTree, child: Callable) -> tuple[NormTree, tuple]:
    """One level of the action; ``child(h, t)`` returns ``(h.t, omega(t, h))``."""
    H = theta.H
    dec = H.group.coset_reps(H)
    j, h = dec.act(g, dec.coset_of[theta.rep])
    s = theta.T.perms[h]
    n = len(s)
    new = [None] * n
    parts = []
    for i, c in enumerate(theta.children):
        t, w = child(h, c)
        new[s[i]] = t
        parts.append(w)
    omega = P.compose(P.block(s, [c.length for c in theta.children]), P.direct_sum(parts))
    return NormTree(H, theta.T, dec.reps[j], new, check=False), omega


def act_with_omega(g: int, theta: NormTree, memo: dict | None = None) -> tuple[NormTree, tuple]:
    if theta.H is None:
        return theta, (0,)
    if g == theta.H.group.identity:
        return theta, P.identity(theta.length)
    if memo is not None:
        hit = memo.get((g, theta))
        if hit is not None:
            return hit
    out = _step(g, theta, lambda h, c: act_with_omega(h, c, memo))
    if memo is not None:
        memo[(g, theta)] = out
    return out


def act(g: int, theta: NormTree) -> NormTree:
    return act_with_omega(g, theta)[0]


def omega(theta: NormTree, g: int) -> tuple:
    return act_with_omega(g, theta)[1]


def is_fixed(theta: NormTree, K: Subgroup) -> bool:
    return all(act(k, theta) == theta for k in K.elements)


# -- composition ------------------------------------------------------------------

def compose_trees(theta: NormTree, taus: Sequence[NormTree]) -> NormTree:
    """Plain grafting: ``taus`` replace the leaves of ``theta`` from left to right.

    This is the composition of the free nonsymmetric operad of trees.  It
    does not commute with the group action (see :func:`compose_sym`).
    """
    if len(taus) != theta.length:
        raise ValueError(f"compose_trees: {len(taus)} arguments for a tree of length {theta.length}")
    if theta.H is None:
        return taus[0]
    kids, off = [], 0
    for c in theta.children:
        kids.append(compose_trees(c, taus[off:off + c.length]))
        off += c.length
    return NormTree(theta.H, theta.T, theta.rep, kids, check=False)


class SymOperation:
    """An operation ``(theta, delta)``: input ``i`` is routed to leaf ``delta[i]``."""

    __slots__ = ("tree", "perm")

    def __init__(self, tree: NormTree, perm: Sequence[int] | None = None):
        self.tree = tree
        self.perm = P.identity(tree.length) if perm is None else tuple(perm)
        if len(self.perm) != tree.length or not P.is_permutation(self.perm):
            raise ValueError("perm: not a permutation of the tree's leaves")

    @property
    def arity(self) -> int:
        return self.tree.length

    def __eq__(self, other):
        return isinstance(other, SymOperation) and self.perm == other.perm and self.tree == other.tree

    def __hash__(self):
        return hash((self.tree, self.perm))

    def __repr__(self):
        return f"SymOperation({self.tree!r}, {list(self.perm)})"

    def act(self, g: int) -> "SymOperation":
        t, w = act_with_omega(g, self.tree)
        return SymOperation(t, P.compose(w, self.perm))

    def right(self, s: Sequence[int]) -> "SymOperation":
        return SymOperation(self.tree, P.compose(self.perm, s))


IDENTITY_OP = SymOperation(LEAF)


def _graft(theta: NormTree, ys: Sequence["SymOperation"]) -> "SymOperation":
    """``(theta, id)`` composed with ``ys`` listed in leaf order.

    The node ``r (x)_T(t_1..t_k)`` stands for ``r . (x)_T(t_1..t_k)``, so what
    is grafted below it is first moved by ``r^-1``; the leaves this reorders
    are recorded in the permutation.
    """
    if theta.H is None:
        return ys[0]
    G = theta.H.group
    if theta.rep != G.identity:
        ri = G.inv[theta.rep]
        ys = [y.act(ri) for y in ys]
    kids, perms, off = [], [], 0
    for c in theta.children:
        u = _graft(c, ys[off:off + c.length])
        off += c.length
        kids.append(u.tree)
        perms.append(u.perm)
    return SymOperation(NormTree(theta.H, theta.T, theta.rep, kids, check=False), P.direct_sum(perms))


def compose_sym(x: SymOperation, ys: Sequence[SymOperation]) -> SymOperation:
    """Operadic composition: ``y_i`` is plugged into input ``i`` of ``x``.

    Leaf ``j`` of ``x.tree`` receives ``y_{delta^-1(j)}``; the result is
    ``G``-equivariant and satisfies the symmetric operad axioms.
    """
    n = x.arity
    if len(ys) != n:
        raise ValueError(f"compose_sym: {len(ys)} arguments for an operation of arity {n}")
    d = x.perm
    dinv = P.inverse(d)
    u = _graft(x.tree, [ys[dinv[j]] for j in range(n)])
    return SymOperation(u.tree, P.compose(u.perm, P.block(d, [y.arity for y in ys])))


# -- graph subgroups and fixed points --------------------------------------------------

class GraphSubgroup:
    """``{(h, sigma(h))}`` inside ``G x Sigma_n``."""

    def __init__(self, H: Subgroup, sigma: Mapping[int, Sequence[int]]):
        self.H = H
        self.sigma = {h: tuple(sigma[h]) for h in H.elements}
        self.n = len(self.sigma[H.group.identity])
        G = H.group
        for a in H.elements:
            for b in H.elements:
                if self.sigma[G.mul[a][b]] != P.compose(self.sigma[a], self.sigma[b]):
                    raise ValueError("sigma: not a homomorphism")

    def hset(self) -> gs.GSet:
        return gs.GSet(self.H, self.sigma, size=self.n, check=False)


def graph_subgroup_of(T: gs.GSet) -> GraphSubgroup:
    return GraphSubgroup(T.acting, T.perms)


def is_fixed_operation(x: SymOperation, gamma: GraphSubgroup) -> bool:
    """``(h, sigma(h)) . x = x``, i.e. ``h.x . sigma(h)^-1 = x``."""
    for h in gamma.H.elements:
        t, w = act_with_omega(h, x.tree)
        if t != x.tree or P.compose(w, x.perm) != P.compose(x.perm, gamma.sigma[h]):
            return False
    return True


class Catalog:
    """Node decorations drawn from admissible sets, one per isomorphism class.

    For every subgroup ``H``, every admissible ``H``-set with at most
    ``max_arity`` points (up to isomorphism) and every coset rep of ``G/H``.
    """

    def __init__(self, I: ix.IndexingSystem, max_arity: int):
        self.I = I
        self.group = G = I.group
        self.max_arity = max_arity
        self.hsets = {}
        for H in G.subgroups():
            self.hsets[H.id] = [T for T in ix.hsets_up_to_iso(H, max_arity) if ix.is_admissible_hset(I, T)]
        self.decorations = []
        for H in G.subgroups():
            reps = G.coset_reps(H).reps
            for T in self.hsets[H.id]:
                for r in sorted(reps):
                    self.decorations.append((H, T, r))
        self._fixed = {}

    def by_arity(self, k: int):
        return [d for d in self.decorations if d[1].size == k]


def enumerate_trees(catalog: Catalog, max_nodes: int) -> list[list[NormTree]]:
    """``out[v]`` lists every tree with exactly ``v`` vertices (``1 <= v <= max_nodes``)."""
    out = [[] for _ in range(max_nodes + 1)]
    if max_nodes < 1:
        return out
    by_k = {}
    for d in catalog.decorations:
        by_k.setdefault(d[1].size, []).append(d)
    for v in range(1, max_nodes + 1):
        level = out[v]
        if v == 1:
            level.append(LEAF)
        for k, decs in sorted(by_k.items()):
            if k > v - 1 or (k == 0 and v != 1):
                continue
            for sizes in _compositions(v - 1, k):
                for kids in itertools.product(*[out[s] for s in sizes]):
                    for H, T, r in decs:
                        level.append(NormTree(H, T, r, kids, check=False))
    return out


class TooManyTrees(RuntimeError):
    pass


def orbit_type_decorations(I: ix.IndexingSystem) -> list[tuple]:
    """One decoration ``1 (x)_{H/K}`` per admissible pair ``K <= H``."""
    G = I.group
    out = []
    for k, h in I.sorted_pairs():
        H = G.subgroup_by_id(h)
        out.append((H, gs.coset_space(G.subgroup_by_id(k), H), G.identity))
    return out


def trees_by_internal(decorations, max_internal: int, limit: int | None = None) -> list[list[NormTree]]:
    """``out[k]`` lists the trees with exactly ``k`` internal nodes drawn from ``decorations``."""
    out = [[LEAF]]
    total = 1
    for k in range(1, max_internal + 1):
        level = []
        for H, T, r in decorations:
            n = T.size
            for split in _weak_compositions(k - 1, n):
                for kids in itertools.product(*[out[s] for s in split]):
                    level.append(NormTree(H, T, r, kids, check=False))
                    total += 1
                    if limit is not None and total > limit:
                        raise TooManyTrees(f"more than {limit} trees with at most {k} internal nodes")
        out.append(level)
    return out


def _weak_compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total + 1):
        for rest in _weak_compositions(total - first, parts - 1):
            yield (first,) + rest


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def fixed_trees(catalog: Catalog, K: Subgroup, length: int, nodes: int) -> list[NormTree]:
    """Every ``K``-fixed tree of the given length with exactly ``nodes`` vertices.

    A node ``r (x)_T`` is ``K``-fixed iff ``K <= r H r^-1`` and its children
    satisfy ``t_{s(i)} = k.t_i`` for ``k`` in ``K' = r^-1 K r``, ``s = sigma(k)``.
    So one child per ``K'``-orbit of ``T`` is free, subject to being fixed by
    its stabilizer, and the rest are its translates.
    """
    key = (K.id, length, nodes)
    memo = catalog._fixed
    if key in memo:
        return memo[key]
    G = catalog.group
    out = []
    if nodes == 1 and length == 1:
        out.append(LEAF)
    for H, T, r in catalog.decorations:
        if T.size > nodes - 1 or (T.size == 0 and (nodes != 1 or length != 0)):
            continue
        Kr = G.conjugate(K, r)  # r^-1 K r
        if not Kr <= H:
            continue
        R = gs.restrict(T, Kr)
        orbs = R.orbits()
        stabs = [R.stabilizer(o[0]) for o in orbs]
        sizes = [len(o) for o in orbs]
        for kids in _orbit_children(catalog, orbs, stabs, sizes, length, nodes - 1):
            children = [None] * T.size
            for o, c in zip(orbs, kids):
                base = o[0]
                for k in Kr.elements:
                    p = R.perms[k][base]
                    if children[p] is None:
                        children[p] = act(k, c)
            out.append(NormTree(H, T, r, children, check=False))
    memo[key] = out
    return out


def _orbit_children(catalog, orbs, stabs, sizes, length, nodes):
    if not orbs:
        if length == 0 and nodes == 0:
            yield ()
        return
    m = sizes[0]
    if len(orbs) == 1:
        # the last orbit takes whatever is left
        if length % m == 0 and nodes % m == 0 and nodes:
            for h in fixed_trees(catalog, stabs[0], length // m, nodes // m):
                yield (h,)
        return
    for l in range(0, length // m + 1):
        for v in range(1, nodes // m + 1):
            rest_len, rest_nodes = length - m * l, nodes - m * v
            if rest_nodes < sum(sizes[1:]):
                continue
            tails = list(_orbit_children(catalog, orbs[1:], stabs[1:], sizes[1:], rest_len, rest_nodes))
            if not tails:
                continue
            for h in fixed_trees(catalog, stabs[0], l, v):
                for t in tails:
                    yield (h,) + t


def iter_fixed_operations(I: ix.IndexingSystem, gamma: GraphSubgroup, n: int, node_budget: int,
                          catalog: Catalog | None = None):
    """Lazily yield the ``gamma``-fixed operations of arity ``n`` with at most ``node_budget`` vertices.

    ``(theta, delta)`` is fixed iff ``theta`` is ``H``-fixed and
    ``omega(theta, h) o delta = delta o sigma(h)``, i.e. ``delta`` is an
    ``H``-isomorphism from the graph's ``H``-set onto ``T_theta``.
    """
    if node_budget < 1:
        raise ValueError("node_budget must be at least 1")
    catalog = catalog or Catalog(I, node_budget - 1)
    H = gamma.H
    for v in range(1, node_budget + 1):
        for theta in fixed_trees(catalog, H, n, v):
            w = {h: omega(theta, h) for h in H.elements}
            for d in itertools.permutations(range(n)):
                if all(P.compose(w[h], d) == P.compose(d, gamma.sigma[h]) for h in H.elements):
                    yield SymOperation(theta, d)


def fixed_operations(I: ix.IndexingSystem, gamma: GraphSubgroup, n: int, node_budget: int,
                     catalog: Catalog | None = None) -> list[SymOperation]:
    """Every ``gamma``-fixed operation of arity ``n`` with at most ``node_budget`` vertices."""
    return list(iter_fixed_operations(I, gamma, n, node_budget, catalog))


def has_fixed_operation(I, gamma, n, node_budget, catalog=None) -> bool:
    return next(iter_fixed_operations(I, gamma, n, node_budget, catalog), None) is not None


def equivariant_orbit_set(theta: NormTree, H: Subgroup) -> gs.GSet:
    """``T_theta``: the leaves of an ``H``-fixed tree, ``h`` acting by ``omega(theta, h)``."""
    perms = {}
    for h in H.elements:
        t, w = act_with_omega(h, theta)
        if t != theta:
            raise ValueError("equivariant_orbit_set: tree is not fixed by the subgroup")
        perms[h] = w
    return gs.GSet(H, perms, size=theta.length, check=False)


# -- free extension into endomorphism operads ------------------------------------------

class EndOperad:
    """Maps ``X^n -> X`` for a finite ``G``-set ``X``, stored as value tables.

    Tuples of inputs are indexed lexicographically.  ``(g.f)(x) = g f(g^-1 x)``
    and ``(f.s)(x_1..x_n) = f(x_{s^-1(1)}, ..., x_{s^-1(n)})``.
    """

    def __init__(self, X: gs.GSet):
        self.X = X
        self.m = X.size
        self._tuples = {}

    def tuples(self, n: int):
        t = self._tuples.get(n)
        if t is None:
            t = self._tuples[n] = list(itertools.product(range(self.m), repeat=n))
        return t

    def index(self, xs) -> int:
        i = 0
        for x in xs:
            i = i * self.m + x
        return i

    def identity(self) -> tuple:
        return tuple(range(self.m))

    def make(self, n: int, f: Callable) -> tuple:
        return tuple(f(xs) for xs in self.tuples(n))

    def arity(self, f: tuple) -> int:
        n, size = 0, 1
        while size < len(f):
            size *= self.m
            n += 1
        return n

    def compose(self, f: tuple, gs_: Sequence[tuple]) -> tuple:
        ar = [self.arity(g) for g in gs_]
        total = sum(ar)

        def value(xs):
            ys, off = [], 0
            for g, a in zip(gs_, ar):
                ys.append(g[self.index(xs[off:off + a])])
                off += a
            return f[self.index(ys)]

        return self.make(total, value)

    def act(self, g: int, f: tuple) -> tuple:
        n = self.arity(f)
        G = self.X.group
        pg, pgi = self.X.perms[g], self.X.perms[G.inv[g]]
        return self.make(n, lambda xs: pg[f[self.index([pgi[x] for x in xs])]])

    def right(self, f: tuple, s: Sequence[int]) -> tuple:
        n = self.arity(f)
        sinv = P.inverse(s)
        return self.make(n, lambda xs: f[self.index([xs[sinv[j]] for j in range(n)])])

    def is_fixed(self, f: tuple, H: Subgroup, sigma: Mapping[int, Sequence[int]]) -> bool:
        return all(self.act(h, f) == self.right(f, sigma[h]) for h in H.elements)

    def random_fixed(self, H: Subgroup, sigma: Mapping[int, Sequence[int]], rng: random.Random) -> tuple:
        """A random ``f`` with ``h.f = f.sigma(h)``: an ``H``-map from ``X^n`` (twisted) to ``X``."""
        n = len(sigma[H.group.identity])
        X = self.X
        table = [None] * (self.m ** n)
        for xs in self.tuples(n):
            i = self.index(xs)
            if table[i] is not None:
                continue
            orbit = {}
            for h in H.elements:
                s = sigma[h]
                sinv = P.inverse(s)
                ys = tuple(X.perms[h][xs[sinv[j]]] for j in range(n))
                orbit.setdefault(ys, h)
            stab = [h for h in H.elements if all(
                X.perms[h][xs[P.inverse(sigma[h])[j]]] == xs[j] for j in range(n))]
            allowed = [v for v in range(self.m) if all(X.perms[h][v] == v for h in stab)]
            v = rng.choice(allowed)
            for ys, h in orbit.items():
                table[self.index(ys)] = X.perms[h][v]
        return tuple(table)


class FreeExtension:
    """The operad map out of the free operad determined by values on the generators.

    ``assign(H, T)`` gives the image of ``(x)_T``; it must be fixed by the
    graph subgroup of ``T``.
    """

    def __init__(self, I: ix.IndexingSystem, assign: Callable, target: EndOperad):
        self.I, self.assign, self.target = I, assign, target
        self._gen = {}
        self._memo = {}

    def generator(self, T: gs.GSet) -> tuple:
        f = self._gen.get(T)
        if f is None:
            if not ix.is_admissible_hset(self.I, T):
                raise ValueError("free_extension: decoration is not admissible")
            f = self.assign(T.acting, T)
            if not self.target.is_fixed(f, T.acting, T.perms):
                raise ValueError("free_extension: assignment is not fixed by the graph subgroup")
            self._gen[T] = f
        return f

    def tree(self, theta: NormTree) -> tuple:
        hit = self._memo.get(theta)
        if hit is not None:
            return hit
        E = self.target
        if theta.H is None:
            out = E.identity()
        else:
            inner = E.compose(self.generator(theta.T), [self.tree(c) for c in theta.children])
            out = E.act(theta.rep, inner)
        self._memo[theta] = out
        return out

    def __call__(self, x: SymOperation) -> tuple:
        return self.target.right(self.tree(x.tree), x.perm)


def free_extension(I: ix.IndexingSystem, assign: Callable | Mapping, target: EndOperad) -> FreeExtension:
    if isinstance(assign, Mapping):
        table = assign
        assign = lambda H, T: table[T]
    return FreeExtension(I, assign, target)


def product_operation(M, E: EndOperad, n: int) -> tuple:
    """The ``n``-fold sum of a commutative monoid on ``E.X``, as an element of ``End_X(n)``."""
    def total(xs):
        s = M.zero
        for x in xs:
            s = M.add[s][x]
        return s
    return E.make(n, total)


class ActionTable:
    """``g.t`` and ``omega(t, g)`` for every tree of a finite, action-closed list.

    ``act[g][i]`` is the index of ``g.trees[i]`` and ``omega[g][i]`` an id
    into ``perms``.  Trees must be listed children-first (as
    :func:`enumerate_trees` produces them), so every entry is one
    :func:`_step` over already tabulated children.
    """

    def __init__(self, trees: Sequence[NormTree], G: FiniteGroup):
        self.trees = list(trees)
        self.group = G
        index = {t: i for i, t in enumerate(self.trees)}
        if len(index) != len(self.trees):
            raise ValueError("ActionTable: duplicate trees")
        self.index = index
        self.perms = []
        pid = {}
        elements = range(G.order)
        act = [[0] * len(self.trees) for _ in elements]
        om = [[0] * len(self.trees) for _ in elements]
        trees_ = self.trees
        perms = self.perms

        def perm_id(p):
            k = pid.get(p)
            if k is None:
                k = pid[p] = len(perms)
                perms.append(p)
            return k

        def child(h, c):
            j = index[c]
            return trees_[act[h][j]], perms[om[h][j]]

        for i, t in enumerate(trees_):
            for g in elements:
                if t.H is None:
                    act[g][i], om[g][i] = i, perm_id((0,))
                    continue
                new, w = _step(g, t, child)
                j = index.get(new)
                if j is None:
                    raise ValueError("ActionTable: tree list is not closed under the action")
                act[g][i], om[g][i] = j, perm_id(w)
        self.act, self.omega = act, om

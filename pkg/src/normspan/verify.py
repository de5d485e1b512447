"""Property suites shared by the test-suite and the command line.

Every suite returns a :class:`SuiteResult`; nothing here prints.  The
numbered ``criterion_*`` functions fix the groups, bounds and seeds of the
acceptance run, and :data:`CRITERIA` lists them with their time limits.
"""

from __future__ import annotations

import itertools
import random
import time
from typing import Callable

import numpy as np

from . import burnside as bs
from . import gset as gs
from . import indexing as ix
from . import monoid
from . import normedcat as nc
from . import operad as op
from . import perm as P
from .group import FiniteGroup, direct_product, named_group, small_groups

MAX_FAILURES = 20


class SuiteResult:
    def __init__(self, name: str):
        self.name = name
        self.checked = 0
        self.failures = []
        self.info = {}
        self.seconds = 0.0
        self._t0 = time.perf_counter()

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, what: Callable[[], str] | str = ""):
        self.checked += 1
        if not ok:
            if len(self.failures) < MAX_FAILURES:
                self.failures.append(what() if callable(what) else what)
            else:
                self.info["more_failures"] = self.info.get("more_failures", 0) + 1
        return ok

    def merge(self, other: "SuiteResult"):
        self.checked += other.checked
        for f in other.failures:
            self.check(False, f"{other.name}: {f}")
            self.checked -= 1
        self.info[other.name] = other.info
        return self

    def done(self) -> "SuiteResult":
        self.seconds = time.perf_counter() - self._t0
        return self

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "checked": self.checked,
                "failures": list(self.failures), "info": self.info}

    def __repr__(self):
        return f"SuiteResult({self.name!r}, passed={self.passed}, checked={self.checked})"


def _all_trees(I: ix.IndexingSystem, max_nodes: int) -> list[op.NormTree]:
    cat = op.Catalog(I, max(max_nodes - 1, 0))
    return [t for level in op.enumerate_trees(cat, max_nodes) for t in level]


# -- indexing systems ----------------------------------------------------------------

def indexing_enumeration(groups, max_pairs: int = 18) -> SuiteResult:
    """Rule-based enumeration against the filter over all relations."""
    res = SuiteResult("indexing-enumeration")
    for name, G in groups:
        fast = {I.pairs for I in ix.enumerate_all(G)}
        naive = {I.pairs for I in ix.enumerate_naive(G, max_pairs=max_pairs)}
        res.info[name] = len(fast)
        res.check(fast == naive, lambda: f"{name}: {len(fast)} enumerated vs {len(naive)} by filter")
    return res.done()


def indexing_axioms(groups, size_bound: int) -> SuiteResult:
    res = SuiteResult("indexing-axioms")
    for name, G in groups:
        count, bad = ix.validate_all(G, size_bound)
        res.info[name] = count
        res.check(not bad, lambda: f"{name}: {len(bad)} systems violate an axiom")
    return res.done()


# -- norm operad -----------------------------------------------------------------------

def action_cocycle(I: ix.IndexingSystem, max_nodes: int, spot_checks: int = 200, seed: int = 0) -> SuiteResult:
    """``g'.(g.t) = (g'g).t`` and ``omega(g t, g') omega(t, g) = omega(t, g'g)`` on every tree."""
    G = I.group
    res = SuiteResult("action-cocycle")
    trees = _all_trees(I, max_nodes)
    table = op.ActionTable(trees, G)
    act = np.array(table.act, dtype=np.int64)
    om = np.array(table.omega, dtype=np.int64)
    perms = table.perms
    # composition table of the (few) omega permutations; unknown composites get fresh ids
    ids = {p: i for i, p in enumerate(perms)}
    comp = np.full((len(perms), len(perms)), -1, dtype=np.int64)
    for a, pa in enumerate(perms):
        for b, pb in enumerate(perms):
            if len(pa) == len(pb):
                comp[a, b] = ids.get(P.compose(pa, pb), -2)
    e = G.identity
    res.check(bool((act[e] == np.arange(len(trees))).all()), "identity moves a tree")
    for g in range(G.order):
        ag = act[g]
        for h in range(G.order):
            hg = G.mul[h][g]
            ok_act = act[h][ag] == act[hg]
            ok_om = comp[om[h][ag], om[g]] == om[hg]
            res.check(bool(ok_act.all()), lambda: f"action fails for g={g}, g'={h}")
            res.check(bool(ok_om.all()), lambda: f"cocycle fails for g={g}, g'={h}")
            res.checked += 2 * len(trees) - 2
    # the table against the plain recursion
    rng = random.Random(seed)
    for i in rng.sample(range(len(trees)), min(spot_checks, len(trees))):
        g = rng.randrange(G.order)
        t, w = op.act_with_omega(g, trees[i])
        res.check(t == trees[act[g][i]] and w == perms[om[g][i]], lambda: f"table disagrees at tree {i}")
    res.info.update(trees=len(trees), omega_values=len(perms))
    return res.done()


def fixed_tree_admissibility(I: ix.IndexingSystem, max_nodes: int, brute_force: bool = False) -> SuiteResult:
    """``T_theta`` is admissible for every ``H``-fixed tree with at most ``max_nodes`` vertices."""
    G = I.group
    res = SuiteResult("fixed-tree-admissibility")
    cat = op.Catalog(I, max(max_nodes - 1, 0))
    found = {}
    for H in G.subgroups():
        n_fixed = 0
        for v in range(1, max_nodes + 1):
            for n in range(0, max_nodes + 1):
                for t in op.fixed_trees(cat, H, n, v):
                    n_fixed += 1
                    Tt = op.equivariant_orbit_set(t, H)
                    res.check(ix.is_admissible_hset(I, Tt), lambda: f"H={H.id}: {t!r}")
        found[H.id] = n_fixed
    if brute_force:
        trees = [t for level in op.enumerate_trees(cat, max_nodes) for t in level]
        for H in G.subgroups():
            n = sum(1 for t in trees if op.is_fixed(t, H))
            res.check(n == found[H.id], lambda: f"H={H.id}: {found[H.id]} generated vs {n} by filter")
    res.info["fixed_trees"] = found
    return res.done()


def _decoration_support(t: op.NormTree, memo: dict) -> frozenset:
    """The pairs every indexing system must contain for ``t`` to be one of its trees."""
    if t.H is None:
        return frozenset()
    hit = memo.get(t)
    if hit is None:
        hit = ix.requirements(t.T).union(*(_decoration_support(c, memo) for c in t.children))
        memo[t] = hit
    return hit


def fixed_tree_admissibility_all(G: FiniteGroup, max_nodes: int) -> SuiteResult:
    """:func:`fixed_tree_admissibility` for every indexing system of ``G`` in one pass.

    Trees over an indexing system are the trees of the complete one whose
    decorations it admits, and ``T_theta`` does not depend on the system, so
    each fixed tree is enumerated once and tested against every system.
    """
    res = SuiteResult("fixed-tree-admissibility-all")
    systems = ix.enumerate_all(G)
    cat = op.Catalog(ix.IndexingSystem.complete(G), max(max_nodes - 1, 0))
    memo = {}
    combos = {}
    for H in G.subgroups():
        for v in range(1, max_nodes + 1):
            for n in range(0, max_nodes + 1):
                for t in op.fixed_trees(cat, H, n, v):
                    key = (_decoration_support(t, memo), ix.requirements(op.equivariant_orbit_set(t, H)))
                    combos[key] = combos.get(key, 0) + 1
    counts = []
    for k, I in enumerate(systems):
        total = 0
        for (support, req), c in combos.items():
            if support <= I.pairs:
                total += c
                res.check(req <= I.pairs, lambda: f"system {k}: T_theta needs {sorted(req - I.pairs)}")
                res.checked += c - 1
        counts.append(total)
    res.info.update(systems=len(systems), fixed_trees=counts)
    return res.done()


def fixed_point_characterization(I: ix.IndexingSystem, max_size: int, budget: int) -> SuiteResult:
    """Some ``Gamma_T``-fixed operation exists exactly when ``T`` is admissible."""
    G = I.group
    res = SuiteResult("fixed-point-characterization")
    cat = op.Catalog(I, budget - 1)
    admissible = inadmissible = 0
    for H in G.subgroups():
        for T in ix.hsets_up_to_iso(H, max_size):
            adm = ix.is_admissible_hset(I, T)
            gamma = op.graph_subgroup_of(T)
            witness = next(op.iter_fixed_operations(I, gamma, T.size, budget, cat), None)
            res.check((witness is not None) == adm,
                      lambda: f"H={H.id}, orbits {T.orbit_types()}: admissible={adm}, witness={witness!r}")
            if witness is not None:
                res.check(op.is_fixed_operation(witness, gamma), lambda: f"witness not fixed: {witness!r}")
            if adm:
                admissible += 1
                if T.size <= budget - 1:
                    res.check(op.is_fixed_operation(op.SymOperation(op.norm(T)), gamma),
                              lambda: f"(x)_T not fixed for orbits {T.orbit_types()}")
            else:
                inadmissible += 1
    res.info.update(admissible=admissible, inadmissible=inadmissible)
    return res.done()


def _random_op(pool, rng):
    t = rng.choice(pool)
    p = list(range(t.length))
    rng.shuffle(p)
    return op.SymOperation(t, p)


def operad_axioms(I: ix.IndexingSystem, max_nodes: int, max_arity: int = 3, samples: int = 400,
                  seed: int = 0) -> SuiteResult:
    """Unit, associativity and equivariance of :func:`compose_sym`."""
    G = I.group
    res = SuiteResult("operad-axioms")
    rng = random.Random(seed)
    trees = [t for t in _all_trees(I, max_nodes) if t.length <= max_arity]
    by_len = {}
    for t in trees:
        by_len.setdefault(t.length, []).append(t)
    ops = [op.SymOperation(t, p) for t in trees for p in itertools.permutations(range(t.length))]
    one = op.IDENTITY_OP
    for x in ops:
        res.check(op.compose_sym(x, [one] * x.arity) == x, lambda: f"right unit fails at {x!r}")
        res.check(op.compose_sym(one, [x]) == x, lambda: f"left unit fails at {x!r}")
    for _ in range(samples):
        x = _random_op(trees, rng)
        ys = [_random_op(trees, rng) for _ in range(x.arity)]
        zs = [[_random_op(trees, rng) for _ in range(y.arity)] for y in ys]
        # associativity
        lhs = op.compose_sym(op.compose_sym(x, ys), [z for zz in zs for z in zz])
        rhs = op.compose_sym(x, [op.compose_sym(y, zz) for y, zz in zip(ys, zs)])
        res.check(lhs == rhs, lambda: f"associativity fails at {x!r}")
        # symmetric group: (x.s)(y_1..y_n) = x(y_s^-1(1)..y_s^-1(n)).s<k_1..k_n>
        n = x.arity
        s = list(range(n))
        rng.shuffle(s)
        sinv = P.inverse(s)
        lhs = op.compose_sym(x.right(s), ys)
        rhs = op.compose_sym(x, [ys[sinv[j]] for j in range(n)]).right(P.block(s, [y.arity for y in ys]))
        res.check(lhs == rhs, lambda: f"input permutation fails at {x!r}, s={s}")
        # x(y_1.t_1..y_n.t_n) = x(y).(t_1 + ... + t_n)
        ts = []
        for y in ys:
            t = list(range(y.arity))
            rng.shuffle(t)
            ts.append(tuple(t))
        lhs = op.compose_sym(x, [y.right(t) for y, t in zip(ys, ts)])
        rhs = op.compose_sym(x, ys).right(P.direct_sum(ts))
        res.check(lhs == rhs, lambda: f"block permutation fails at {x!r}")
        # G-equivariance
        g = rng.randrange(G.order)
        lhs = op.compose_sym(x, ys).act(g)
        rhs = op.compose_sym(x.act(g), [y.act(g) for y in ys])
        res.check(lhs == rhs, lambda: f"G-equivariance fails at {x!r}, g={g}")
        # the action is a left action on operations
        h = rng.randrange(G.order)
        res.check(x.act(g).act(h) == x.act(G.mul[h][g]), lambda: f"operation action fails at {x!r}")
    res.info.update(operations=len(ops), samples=samples)
    return res.done()


def free_extension_suite(I: ix.IndexingSystem, M: monoid.CommutativeGMonoid, max_nodes: int,
                         samples: int = 300, seed: int = 0) -> SuiteResult:
    """The extension of ``(x)_T -> |T|-fold sum`` into ``End_M`` is equivariant and respects composition."""
    G = I.group
    res = SuiteResult("free-extension")
    E = op.EndOperad(M.action)
    phi = op.free_extension(I, lambda H, T: op.product_operation(M, E, T.size), E)
    trees = _all_trees(I, max_nodes)
    rng = random.Random(seed)
    res.check(phi(op.IDENTITY_OP) == E.identity(), "identity is not sent to the identity")
    ops = [op.SymOperation(t, p) for t in trees for p in itertools.permutations(range(t.length))]
    for x in ops:
        fx = phi(x)
        for g in range(G.order):
            res.check(phi(x.act(g)) == E.act(g, fx), lambda: f"not equivariant at {x!r}, g={g}")
    small = [t for t in trees if t.length <= 2]
    for _ in range(samples):
        x = _random_op(small, rng)
        ys = [_random_op(small, rng) for _ in range(x.arity)]
        lhs = phi(op.compose_sym(x, ys))
        rhs = E.compose(phi(x), [phi(y) for y in ys])
        res.check(lhs == rhs, lambda: f"composition not preserved at {x!r}")
    # values are fixed by the graph subgroups of their generators
    for H, T, r in op.Catalog(I, max_nodes - 1).decorations:
        if r == G.identity:
            res.check(E.is_fixed(phi.generator(T), H, T.perms), lambda: f"generator for {T.orbit_types()} not fixed")
    res.info.update(operations=len(ops), monoid=M.name)
    return res.done()


# -- spans, slices, fixed objects ------------------------------------------------------

def counting_comparison(I: ix.IndexingSystem, A_bound: int = 4, bound: int = 4) -> SuiteResult:
    """Span classes into ``G/H``, admissible slices over ``res A`` and ``H``-fixed objects agree."""
    G = I.group
    res = SuiteResult("counting")
    total = 0
    for H in G.subgroups():
        if G.class_rep(H) is not H:
            continue
        GH = gs.orbit_gset(H)
        for A in ix.hsets_up_to_iso(G.whole, A_bound):
            sp = bs.hom_groupoid(I, A, GH, bound * H.index_in(G.whole))
            sl = nc.SliceCategory(I, H, A, bound).classes
            fx = nc.FixedSubcategory(I, A, H, bound).classes
            auts = [sorted(c.automorphisms for c in cs) for cs in (sp, sl, fx)]
            res.check(len(sp) == len(sl) == len(fx),
                      lambda: f"H={H.id}, A={A.orbit_types()}: {len(sp)} spans, {len(sl)} slices, {len(fx)} fixed")
            res.check(auts[0] == auts[1] == auts[2], lambda: f"H={H.id}, A={A.orbit_types()}: automorphism orders differ")
            total += len(sp)
    res.info["classes"] = total
    return res.done()


def span_canonical_forms(G: FiniteGroup, samples: int = 100, seed: int = 0) -> SuiteResult:
    """Canonical forms decide isomorphism (brute force over apex bijections)."""
    res = SuiteResult("span-canonical-form")
    I = ix.IndexingSystem.complete(G)
    rng = random.Random(seed)
    for _ in range(samples):
        A, B = bs.random_gset(G, rng, 3), bs.random_gset(G, rng, 3)
        s, t = bs.random_span(I, A, B, rng, 5), bs.random_span(I, A, B, rng, 5)
        # also an isomorphic copy of s
        u = bs.random_span(I, A, B, random.Random(rng.random()), 5)
        for a, b in ((s, t), (s, u)):
            same = bs.canonical_form(a) == bs.canonical_form(b)
            brute = a.apex.size == b.apex.size and bool(bs.span_isomorphisms_brute(a, b))
            res.check(same == brute, "canonical form disagrees with brute force")
    return res.done()


def mackey_functoriality(G: FiniteGroup, pairs: int, seed: int, apex: int = 6) -> SuiteResult:
    res = SuiteResult("mackey")
    rng = random.Random(seed)
    systems = ix.enumerate_all(G)
    subs = G.subgroups()
    monoids = [monoid.zmod(G, 6), monoid.subsets(gs.orbit_gset(subs[1] if len(subs) > 1 else subs[0]))]
    evaluated = 0
    for k in range(pairs):
        I = systems[k % len(systems)]
        A, B, C = (bs.random_gset(G, rng, 4) for _ in range(3))
        s = bs.random_span(I, A, B, rng, apex)
        t = bs.random_span(I, B, C, rng, apex)
        u = bs.compose_spans(s, t, I)
        res.check(u.is_admissible(I), "composite is not admissible")
        for M in monoids:
            fs = bs.equivariant_functions(A, M)
            for f in rng.sample(fs, min(4, len(fs))):
                evaluated += 1
                res.check(bs.mackey_eval(M, u, f) == bs.mackey_eval(M, t, bs.mackey_eval(M, s, f)),
                          lambda: f"functoriality fails (pair {k})")
    # transfers of constants
    I = ix.IndexingSystem.complete(G)
    for M in (monoid.zmod(G, 6), monoid.zmod(G, 5)):
        for H in subs:
            for K in H.subgroups():
                tr = bs.transfer_span(K, H, I)
                k = K.index_in(H)
                for x in range(M.size):
                    const = tuple([x] * tr.source.size)
                    want = tuple([M.times(k, x)] * tr.target.size)
                    res.check(bs.mackey_eval(M, tr, const) == want, lambda: f"transfer K={K.id} H={H.id} x={x}")
    res.info.update(pairs=pairs, evaluations=evaluated)
    return res.done()


# -- normed categories -------------------------------------------------------------

def _random_functor_data(A, B, pool, rng):
    base = {}
    for o in A.orbits():
        S = A.stabilizer(o[0])
        fixed = [X for X in pool if nc.is_fixed_object(B, X, S)]
        base[o[0]] = rng.choice(fixed)
    return nc.EquivariantFunctorData.from_basepoints(A, B, base)


def _morphism_buckets(objs):
    """Pairs of objects with at least one morphism between them, via the label sets."""
    by_labels = {}
    for X in objs:
        by_labels.setdefault(frozenset(X.labels), []).append(X)
    keys = list(by_labels)
    for k1 in keys:
        for k2 in keys:
            if k1 <= k2:
                for X in by_labels[k1]:
                    for Y in by_labels[k2]:
                        yield X, Y


def sample_morphisms(objs, rng, small_nodes: int = 2, samples: int = 1000, max_length: int = 2):
    """Every morphism between objects on trees with at most ``small_nodes`` vertices,
    then ``samples`` random morphisms between objects of length ``1..max_length``."""
    small = [X for X in objs if X.tree.nodes <= small_nodes]
    for X, Y in _morphism_buckets(small):
        yield from nc.hom_set(X, Y)
    pool = [X for X in objs if 1 <= X.length <= max_length]
    if not pool:
        return
    for _ in range(samples):
        for _ in range(200):
            X, Y = rng.choice(pool), rng.choice(pool)
            if set(X.labels) <= set(Y.labels):
                yield rng.choice(nc.hom_set(X, Y))
                break


def cons_suite(I: ix.IndexingSystem, budget: int, seed: int = 0, data_samples: int = 2,
               morphism_samples: int = 300) -> SuiteResult:
    """Unfurled functors are equivariant and compose strictly, on objects and morphisms."""
    G = I.group
    res = SuiteResult("cons")
    rng = random.Random(seed)
    trees = _all_trees(I, budget)
    orbits = [gs.orbit_gset(H) for H in G.subgroups()]
    pools = {id(B): nc.objects(trees, B) for B in orbits}
    morphisms = 0
    for A, B, C in itertools.product(orbits, repeat=3):
        for _ in range(data_samples):
            F = nc.Cons(_random_functor_data(A, B, pools[id(B)], rng))
            Gc = nc.Cons(_random_functor_data(B, C, pools[id(C)], rng))
            FG = nc.Cons(F.after(Gc))
            objs = pools[id(A)]
            for X in objs:
                FX = F(X)
                res.check(Gc(FX) == FG(X), lambda: f"composition fails on objects at {X!r}")
                for g in range(G.order):
                    res.check(F(nc.act_object(A, g, X)) == nc.act_object(B, g, FX),
                              lambda: f"not equivariant at {X!r}, g={g}")
            for f in sample_morphisms(objs, rng, samples=morphism_samples):
                morphisms += 1
                h = F.on_morphism(f)
                res.check(Gc.on_morphism(h) == FG.on_morphism(f), lambda: f"composition fails on {f!r}")
                g = rng.randrange(G.order)
                res.check(F.on_morphism(nc.act_morphism(A, g, f)) == nc.act_morphism(B, g, h),
                          lambda: f"not equivariant on {f!r}, g={g}")
                res.check(F.on_morphism(f.then(nc.identity(f.target))) == h.then(nc.identity(h.target)),
                          lambda: f"identities not preserved at {f!r}")
    res.info.update(morphisms=morphisms)
    return res.done()


def adjunction_suite(I: ix.IndexingSystem, budget: int, max_size: int = 3, triangle_length: int = 2) -> SuiteResult:
    """Triangle identities for the ``P_T`` adjunction of every admissible ``T``."""
    G = I.group
    res = SuiteResult("adjunction")
    trees = _all_trees(I, budget)
    short = [t for t in trees if t.length <= triangle_length]
    for H in G.subgroups():
        for T in ix.hsets_up_to_iso(H, max_size):
            if not ix.is_admissible_hset(I, T):
                continue
            adj = nc.ProjectionAdjunction(I, T)
            for Y in nc.objects(short, adj.X):
                res.check(adj.triangle_left(Y), lambda: f"left triangle, H={H.id}, T={T.orbit_types()}, {Y!r}")
            for Z in nc.objects(trees, adj.GH):
                res.check(adj.triangle_right(Z), lambda: f"right triangle, H={H.id}, T={T.orbit_types()}, {Z!r}")
    return res.done()


def mate_suite(I: ix.IndexingSystem, budget: int, max_size: int = 3) -> SuiteResult:
    """The Beck-Chevalley mate is invertible and equals the predicted identity map."""
    G = I.group
    res = SuiteResult("beck-chevalley")
    trees = _all_trees(I, budget)
    for H in G.subgroups():
        for K in H.subgroups():
            for T in ix.hsets_up_to_iso(H, max_size):
                if not ix.is_admissible_hset(I, T):
                    continue
                bc = nc.BeckChevalleyMate(I, K, T)
                for Y in nc.objects(trees, bc.low.GH):
                    m = bc.component(Y)
                    res.check(m.is_iso() and m == bc.predicted(Y),
                              lambda: f"K={K.id}, H={H.id}, T={T.orbit_types()}, {Y!r}")
    return res.done()


def sum_suite(I: ix.IndexingSystem, budget: int, seed: int = 0, morphism_samples: int = 1500) -> SuiteResult:
    """``eta`` and ``epsilon`` of the sum equivalence are invertible and natural."""
    G = I.group
    res = SuiteResult("sum-equivalence")
    rng = random.Random(seed)
    trees = _all_trees(I, budget)
    orbits = [gs.orbit_gset(H) for H in G.subgroups()]
    for A, B in itertools.combinations_with_replacement(orbits, 2):
        se = nc.SumEquivalence(A, B)
        objs = nc.objects(trees, se.AB)
        for Z in objs:
            res.check(se.eta(Z).is_iso(), lambda: f"eta not invertible at {Z!r}")
        for f in sample_morphisms(objs, rng, samples=morphism_samples):
            lhs = se.PhiPsi_morphism(f).then(se.eta(f.target))
            res.check(lhs == se.eta(f.source).then(f), lambda: f"eta not natural at {f!r}")
        oa, ob = nc.objects(trees, A), nc.objects(trees, B)
        # every object of one side against a sample of the other
        pairs = [(X, Y) for X in oa for Y in rng.sample(ob, min(25, len(ob)))]
        pairs += [(X, Y) for Y in ob for X in rng.sample(oa, min(25, len(oa)))]
        for X, Y in pairs:
            ea, eb = se.epsilon(X, Y)
            res.check(ea.is_iso() and eb.is_iso(), lambda: f"epsilon not invertible at {X!r}, {Y!r}")
        fa = list(sample_morphisms(oa, rng, samples=200))
        fb = list(sample_morphisms(ob, rng, samples=200))
        for _ in range(morphism_samples // 3):
            f, g = rng.choice(fa), rng.choice(fb)
            m = se.Phi_morphism(f, g)
            ea, eb = se.epsilon(f.source, g.source)
            ea2, eb2 = se.epsilon(f.target, g.target)
            res.check(se.Psi_A.on_morphism(m).then(ea2) == ea.then(f)
                      and se.Psi_B.on_morphism(m).then(eb2) == eb.then(g),
                      lambda: f"epsilon not natural at {f!r}, {g!r}")
    return res.done()


def freeness_counts(I: ix.IndexingSystem, A_bound: int, max_length: int, max_nodes: int) -> SuiteResult:
    """Objects generated from ``A`` by norms and the action, counted per tree shape."""
    res = SuiteResult("freeness")
    G = I.group
    cat = op.Catalog(I, max_nodes - 1)
    trees = op.enumerate_trees(cat, max_nodes)
    for A in ix.hsets_up_to_iso(G.whole, A_bound):
        gen = nc.generated_objects(cat, A, max_nodes)
        for v in range(1, max_nodes + 1):
            for n in range(max_length + 1):
                got = sum(1 for X in gen[v] if X.length == n)
                want = sum(1 for t in trees[v] if t.length == n) * A.size ** n
                res.check(got == want, lambda: f"A={A.orbit_types()}, {v} vertices, length {n}: {got} vs {want}")
    return res.done()


# -- nerve -------------------------------------------------------------------------------

def _free_orbit_types(GG: FiniteGroup, Gamma) -> list:
    return [S for S in GG.subgroups() if len(S.members & Gamma.members) == 1]


def _gsets_from(GG, types, bound):
    """Disjoint unions of the given orbit types with at most ``bound`` points."""
    types = sorted(types, key=lambda S: S.id)
    out = []

    def grow(start, room, chosen):
        out.append(gs.from_orbits(GG.whole, chosen))
        for i in range(start, len(types)):
            k = types[i].index_in(GG.whole)
            if k <= room:
                grow(i, room - k, chosen + [types[i]])

    grow(0, bound, [])
    return [X for X in out if X.size]


def nerve_suite(pairs=None, bound: int = 6, max_level: int = 3, max_y: int | None = None) -> SuiteResult:
    """``nerve_quotient_check`` on every ``G x Gamma``-set ``X`` with ``Gamma`` free, and every ``Y``."""
    res = SuiteResult("nerve")
    if pairs is None:
        pairs = [("1", "C2"), ("1", "C3"), ("C2", "C2"), ("C2", "C3"), ("1", "S3"), ("C3", "C2"),
                 ("1", "C2xC2"), ("1", "C6")]
    instances = 0
    for gname, cname in pairs:
        Gg, Cc = named_group(gname), named_group(cname)
        GG = direct_product(Gg, Cc)
        Gamma = GG.subgroup([Gg.identity * Cc.order + c for c in range(Cc.order)])
        Xs = _gsets_from(GG, _free_orbit_types(GG, Gamma), bound)
        Ys = _gsets_from(GG, GG.subgroups(), bound if max_y is None else max_y)
        for X in Xs:
            for Y in Ys:
                for n in range(max_level + 1):
                    instances += 1
                    res.check(gs.nerve_quotient_check(X, Y, Gamma, n),
                              lambda: f"{gname} x {cname}: |X|={X.size}, |Y|={Y.size}, n={n}")
    res.info["instances"] = instances
    return res.done()


# -- acceptance criteria ---------------------------------------------------------------

def _groups(names):
    return [(n, named_group(n)) for n in names]


def criterion_1():
    return indexing_enumeration(_groups(["1", "C2", "C3", "C4", "C6", "C2xC2", "S3"]))


def criterion_2():
    return indexing_axioms(list(small_groups(8).items()), 5)


def criterion_3():
    res = SuiteResult("criterion-3")
    for name in ("C4", "S3"):
        G = named_group(name)
        r = action_cocycle(ix.IndexingSystem.complete(G), 4)
        r.name = name
        res.merge(r)
    return res.done()


def criterion_4():
    res = SuiteResult("criterion-4")
    for name in ("C2", "C4", "S3", "C2xC2"):
        r = fixed_tree_admissibility_all(named_group(name), 4)
        r.name = name
        res.merge(r)
    # direct enumeration per system, against the filter over all trees
    for k, I in enumerate(ix.enumerate_all(named_group("C4"))):
        r = fixed_tree_admissibility(I, 4, brute_force=True)
        r.name = f"C4#{k}"
        res.merge(r)
        res.check(r.info["fixed_trees"] and sum(r.info["fixed_trees"].values()) == res.info["C4"]["fixed_trees"][k],
                  f"C4#{k}: one-pass count differs from direct enumeration")
    return res.done()


def incomplete_c4_systems():
    G = named_group("C4")
    full = len(ix.IndexingSystem.complete(G).pairs)
    return [I for I in ix.enumerate_all(G) if I.strict_pairs() and len(I.pairs) < full]


def criterion_5():
    res = SuiteResult("criterion-5")
    for k, I in enumerate(incomplete_c4_systems()):
        r = fixed_point_characterization(I, 4, 6)
        r.name = f"C4#{k}"
        res.merge(r)
    return res.done()


def criterion_6():
    res = SuiteResult("criterion-6")
    G = named_group("C2")
    for I in ix.enumerate_all(G):
        res.merge(operad_axioms(I, 4, samples=5000, seed=6))
        for M in (monoid.zmod_sign(G, 3, lambda g: 1 if g == G.identity else -1), monoid.zmod(G, 3)):
            res.merge(free_extension_suite(I, M, 4, samples=2000, seed=6))
    return res.done()


def criterion_7():
    res = SuiteResult("criterion-7")
    for name in ("C2", "C4", "S3"):
        G = named_group(name)
        for k, I in enumerate(ix.enumerate_all(G)):
            r = counting_comparison(I)
            r.name = f"{name}#{k}"
            res.merge(r)
    return res.done()


def criterion_8():
    res = SuiteResult("criterion-8")
    for name, seed in (("C4", 8), ("S3", 88)):
        r = mackey_functoriality(named_group(name), 500, seed)
        r.name = name
        res.merge(r)
    return res.done()


def criterion_9():
    res = SuiteResult("criterion-9")
    I = ix.IndexingSystem.complete(named_group("C4"))
    for suite in (cons_suite(I, 3, seed=9), adjunction_suite(I, 3), mate_suite(I, 3), sum_suite(I, 3, seed=9)):
        res.merge(suite)
    return res.done()


def criterion_10():
    res = nerve_suite()
    res.name = "criterion-10"
    return res


def criterion_11():
    res = SuiteResult("criterion-11")
    G = named_group("C2")
    for k, I in enumerate(ix.enumerate_all(G)):
        r = freeness_counts(I, 3, 3, 4)
        r.name = f"C2#{k}"
        res.merge(r)
    return res.done()


CRITERIA = [
    (1, "indexing enumeration matches the relation filter", 10, criterion_1),
    (2, "axioms hold for every indexing system, |G| <= 8, bound 5", 60, criterion_2),
    (3, "action and omega cocycle, C4 and S3, <= 4 vertices", 60, criterion_3),
    (4, "T_theta admissible for fixed trees, <= 4 vertices", 30, criterion_4),
    (5, "fixed operations exist exactly for admissible T (C4)", 60, criterion_5),
    (6, "operad axioms and free extension over C2", 60, criterion_6),
    (7, "spans, slices and fixed objects counted alike", 120, criterion_7),
    (8, "Mackey evaluation is functorial; transfers of constants", 120, criterion_8),
    (9, "normed-category suites on C4, budget 3", 120, criterion_9),
    (10, "nerve comparison with a free quotient", 30, criterion_10),
    (11, "free normed category object counts over C2", 10, criterion_11),
]


def run_criterion(number: int) -> tuple[SuiteResult, float, bool]:
    """Run one criterion; returns the result, its wall time and whether it met the time limit."""
    _, _, limit, fn = next(c for c in CRITERIA if c[0] == number)
    t0 = time.perf_counter()
    res = fn()
    dt = time.perf_counter() - t0
    return res, dt, dt <= limit

import functools
import itertools

import pytest
from hypothesis import given, settings, strategies as st

from normspan import gset as gs
from normspan import indexing as ix
from normspan import operad as op
from normspan import perm as P
from normspan import verify
from normspan.group import cyclic, small_groups, symmetric

GROUPS = small_groups(6)


def admissible_hset_counts(I, H, max_size):
    """Isomorphism classes of admissible H-sets by size: multisets of admissible orbit types."""
    G = I.group
    types = sorted({G.class_rep(K, H).id for K in H.subgroups()})
    sizes = [G.subgroup_by_id(k).index_in(H) for k in types if (k, H.id) in I.pairs]
    ways = [1] + [0] * max_size
    for s in sizes:
        for n in range(s, max_size + 1):
            ways[n] += ways[n - s]
    return ways


def tree_counts_by_vertices(I, max_arity, max_vertices):
    """t[v] = trees with v vertices: a leaf, or a decorated node over children using v - 1 vertices."""
    G = I.group
    D = [0] * (max_arity + 1)
    for H in G.subgroups():
        for k, w in enumerate(admissible_hset_counts(I, H, max_arity)):
            D[k] += w * H.index_in(G.whole)
    t = [0] * (max_vertices + 1)
    for v in range(1, max_vertices + 1):
        total = 1 if v == 1 else 0
        for k, d in enumerate(D):
            if d == 0:
                continue
            # k-tuples of trees with vertex total v - 1
            ways = [1] + [0] * (v - 1)
            for _ in range(k):
                ways = [sum(ways[a] * t[n - a] for a in range(n + 1)) for n in range(v)]
            total += d * ways[v - 1]
        t[v] = total
    return t[1:]


FROZEN_TREE_COUNTS = {
    "C2": [4, 12, 100, 940],
    "C4": [8, 56, 1032, 21304],
    "S3": [19, 342, 16264, 869269],
}


@pytest.mark.parametrize("name", ["C2", "C4", "S3"])
def test_tree_counts_frozen_and_match_generating_function(name):
    G = GROUPS[name]
    I = ix.IndexingSystem.complete(G)
    assert tree_counts_by_vertices(I, 3, 4) == FROZEN_TREE_COUNTS[name]
    if name != "S3":
        levels = op.enumerate_trees(op.Catalog(I, 3), 4)
        assert [len(x) for x in levels[1:]] == FROZEN_TREE_COUNTS[name]


@pytest.mark.parametrize("name", ["C4", "S3", "C2xC2"])
def test_tree_counts_for_every_system(name):
    G = GROUPS[name]
    for I in ix.enumerate_all(G):
        levels = op.enumerate_trees(op.Catalog(I, 3), 3)
        assert [len(x) for x in levels[1:]] == tree_counts_by_vertices(I, 3, 3)
        for level in levels:
            assert all(op.check_tree(I, t) for t in level)


def test_tree_shape_and_validation(C4):
    e, c2, c4 = C4.subgroups()
    T = gs.coset_space(e, c2)
    t = op.norm(T, [op.LEAF, op.norm(gs.trivial_gset(c4, 0))], rep=1)
    assert (t.length, t.nodes, t.internal) == (1, 3, 2)
    with pytest.raises(ValueError, match="canonical coset"):
        op.norm(T, rep=2)
    with pytest.raises(ValueError, match="children"):
        op.NormTree(c2, T, 0, [op.LEAF])


# -- the action and omega ------------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def all_trees(name, max_vertices):
    G = GROUPS[name]
    cat = op.Catalog(ix.IndexingSystem.complete(G), 3)
    trees = [t for level in op.enumerate_trees(cat, max_vertices) for t in level]
    return G, trees


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(["C2", "C4", "S3", "C2xC2"]), st.data())
def test_action_is_a_group_action_and_omega_a_cocycle(name, data):
    G, trees = all_trees(name, 4 if name != "S3" else 3)
    t = data.draw(st.sampled_from(trees))
    g = data.draw(st.integers(0, G.order - 1))
    h = data.draw(st.integers(0, G.order - 1))
    gt, wg = op.act_with_omega(g, t)
    hgt, wh = op.act_with_omega(h, gt)
    t2, w = op.act_with_omega(G.mul[h][g], t)
    assert hgt == t2
    assert P.compose(wh, wg) == w
    assert gt.length == t.length and gt.nodes == t.nodes


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(["C2", "C4", "S3"]), st.data())
def test_omega_is_a_homomorphism_on_the_stabilizer(name, data):
    G, trees = all_trees(name, 3)
    t = data.draw(st.sampled_from(trees))
    stab = [g for g in range(G.order) if op.act(g, t) == t]
    for a in stab:
        for b in stab:
            assert op.omega(t, G.mul[a][b]) == P.compose(op.omega(t, a), op.omega(t, b))


def test_omega_of_a_free_orbit_node(C2):
    # C2 acting on (x)_{C2/e}: the generator swaps the two leaves
    t = op.norm(gs.coset_space(C2.trivial, C2.whole))
    assert op.act(1, t) == t
    assert op.omega(t, 1) == (1, 0)
    assert op.equivariant_orbit_set(t, C2.whole).orbit_types() == [C2.trivial.id]


# -- composition ------------------------------------------------------------------------------

def test_literal_grafting_is_not_equivariant(C2):
    e = C2.trivial
    theta = op.norm(gs.trivial_gset(e, 1), rep=1)
    tau = op.norm(gs.trivial_gset(e, 0), rep=1)
    lhs = op.act(1, op.compose_trees(theta, [tau]))
    rhs = op.compose_trees(op.act(1, theta), [op.act(1, tau)])
    assert lhs != rhs
    x, y = op.SymOperation(theta), op.SymOperation(tau)
    assert op.compose_sym(x, [y]).act(1) == op.compose_sym(x.act(1), [y.act(1)])


def test_compose_trees_grafts_leaves_in_order(C2):
    T2 = gs.trivial_gset(C2.whole, 2)
    a, b = op.norm(gs.trivial_gset(C2.whole, 0)), op.norm(T2)
    t = op.compose_trees(op.norm(T2), [a, b])
    assert t.children == (a, b) and t.length == 2


def test_compose_sym_with_identity_reps_routes_inputs(C2):
    T2 = gs.trivial_gset(C2.whole, 2)
    x = op.SymOperation(op.norm(T2), (1, 0))
    y0 = op.SymOperation(op.norm(gs.trivial_gset(C2.whole, 0)))
    y1 = op.SymOperation(op.norm(T2))
    z = op.compose_sym(x, [y0, y1])
    # input 0 goes to leaf 1, so y0 hangs from leaf 1 and y1 from leaf 0
    assert z.tree.children == (y1.tree, y0.tree)
    assert z.perm == (0, 1)


@pytest.mark.parametrize("name,seed", [("C2", 1), ("C4", 2), ("S3", 3), ("C2xC2", 4)])
def test_operad_axioms(name, seed):
    res = verify.operad_axioms(ix.IndexingSystem.complete(GROUPS[name]), 3, samples=300, seed=seed)
    assert res.passed, res.failures


def test_free_extension_into_endomorphisms(C2):
    from normspan import monoid
    I = ix.IndexingSystem.complete(C2)
    M = monoid.zmod_sign(C2, 3, lambda g: 1 if g == C2.identity else -1)
    res = verify.free_extension_suite(I, M, 3, samples=200)
    assert res.passed, res.failures


# -- fixed points ---------------------------------------------------------------------------------

@pytest.mark.parametrize("name", ["C2", "C4", "S3"])
def test_fixed_tree_generation_matches_filter(name):
    for I in ix.enumerate_all(GROUPS[name]):
        res = verify.fixed_tree_admissibility(I, 3, brute_force=True)
        assert res.passed, res.failures


def is_equivariant(X, Y, f):
    return all(f[X.perms[h][x]] == Y.perms[h][f[x]] for h in X.acting.elements for x in range(X.size))


def test_fixedness_characterization_by_brute_force(C2, C4):
    # (theta, delta) is Gamma_T-fixed iff theta is H-fixed and delta is an H-iso T -> T_theta
    for G in (C2, C4):
        I = ix.IndexingSystem.complete(G)
        trees = [t for level in op.enumerate_trees(op.Catalog(I, 2), 3) for t in level if t.length <= 2]
        for H in G.subgroups():
            for T in ix.hsets_up_to_iso(H, 2):
                gamma = op.graph_subgroup_of(T)
                for t in (t for t in trees if t.length == T.size):
                    for d in itertools.permutations(range(T.size)):
                        x = op.SymOperation(t, d)
                        expected = op.is_fixed(t, H) and is_equivariant(T, op.equivariant_orbit_set(t, H), d)
                        assert op.is_fixed_operation(x, gamma) == expected


def test_fixed_points_of_free_c2_set(C2):
    T = gs.coset_space(C2.trivial, C2.whole)
    gamma = op.graph_subgroup_of(T)
    assert op.has_fixed_operation(ix.IndexingSystem.complete(C2), gamma, 2, 4)
    assert not op.has_fixed_operation(ix.IndexingSystem.minimal(C2), gamma, 2, 6)
    assert op.has_fixed_operation(ix.IndexingSystem.minimal(C2), op.graph_subgroup_of(gs.trivial_gset(C2.whole, 2)), 2, 3)


def test_fixed_point_characterization_chosen_c4_system(C4):
    I = ix.closure(C4, ix.parse_pair_spec(C4, "e<C2"))
    res = verify.fixed_point_characterization(I, 4, 6)
    assert res.passed, res.failures
    assert res.info["inadmissible"] > 0


@pytest.mark.slow
@pytest.mark.parametrize("name", ["C4", "S3", "C2xC2"])
def test_fixed_point_characterization_every_system(name):
    G = GROUPS[name]
    for I in ix.enumerate_all(G):
        cat = op.Catalog(I, 5)
        for H in G.subgroups():
            for T in ix.hsets_up_to_iso(H, 4):
                found = op.has_fixed_operation(I, op.graph_subgroup_of(T), T.size, 6, cat)
                assert found == ix.is_admissible_hset(I, T), (I, H, T.orbit_types())


# -- enumeration by internal nodes -------------------------------------------------------------

@pytest.mark.parametrize("name", ["C2", "C4", "S3"])
def test_budget_one_lists_leaf_and_one_norm_per_orbit_type(name):
    G = GROUPS[name]
    for I in ix.enumerate_all(G):
        levels = op.trees_by_internal(op.orbit_type_decorations(I), 1)
        assert levels[0] == [op.LEAF]
        assert len(levels[1]) == len(I.pairs)
        assert {(t.T.orbit_types()[0], t.H.id) for t in levels[1]} == {
            (G.class_rep(G.subgroup_by_id(k), G.subgroup_by_id(h)).id, h) for k, h in I.pairs}


def test_internal_node_guard(S3):
    decs = op.Catalog(ix.IndexingSystem.complete(S3), 3).decorations
    with pytest.raises(op.TooManyTrees):
        op.trees_by_internal(decs, 4, limit=10_000)
    levels = op.trees_by_internal(decs, 1)
    assert len(levels[1]) == len(decs)

import functools
import itertools

import pytest
from hypothesis import given, settings, strategies as st

from normspan import burnside as bs
from normspan import gset as gs
from normspan import indexing as ix
from normspan import normedcat as nc
from normspan import operad as op
from normspan import verify
from normspan.group import small_groups

GROUPS = small_groups(6)


@functools.lru_cache(maxsize=None)
def object_pool(name, max_vertices, size):
    G = GROUPS[name]
    I = ix.IndexingSystem.complete(G)
    A = gs.from_orbits(G.whole, [G.trivial] + [G.whole] * (size > G.order))
    trees = [t for level in op.enumerate_trees(op.Catalog(I, 2), max_vertices) for t in level if t.length <= 3]
    return G, A, nc.objects(trees, A)


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(["C2", "C4", "S3"]), st.data())
def test_action_on_objects_and_morphisms(name, data):
    G, A, objs = object_pool(name, 3, 1)
    X = data.draw(st.sampled_from(objs))
    g, h = (data.draw(st.integers(0, G.order - 1)) for _ in range(2))
    assert nc.act_object(A, h, nc.act_object(A, g, X)) == nc.act_object(A, G.mul[h][g], X)
    for f in nc.hom_set(X, X)[:20]:
        lhs = nc.act_morphism(A, h, nc.act_morphism(A, g, f))
        assert lhs == nc.act_morphism(A, G.mul[h][g], f)
        # the action preserves composition
        assert nc.act_morphism(A, g, f.then(f)) == nc.act_morphism(A, g, f).then(nc.act_morphism(A, g, f))


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(["C2", "C4", "S3"]), st.data())
def test_symmetric_monoidal_structure(name, data):
    G, A, objs = object_pool(name, 2, 1)
    X, Y, Z = (data.draw(st.sampled_from(objs)) for _ in range(3))
    b = nc.braiding(X, Y, G)
    assert b.then(nc.braiding(Y, X, G)) == nc.identity(nc.tensor(X, Y, G))
    # hexagon: (XY)Z -> X(YZ) -> (YZ)X -> Y(ZX) equals (XY)Z -> (YX)Z -> Y(XZ) -> Y(ZX)
    a1 = nc.associator(X, Y, Z, G).then(nc.braiding(X, nc.tensor(Y, Z, G), G)).then(nc.associator(Y, Z, X, G))
    a2 = (nc.tensor_morphisms(b, nc.identity(Z), G).then(nc.associator(Y, X, Z, G))
          .then(nc.tensor_morphisms(nc.identity(Y), nc.braiding(X, Z, G), G)))
    assert a1 == a2
    assert nc.left_unitor(X, G).is_iso() and nc.right_unitor(X, G).is_iso()
    for g in range(G.order):
        assert nc.act_object(A, g, nc.tensor(X, Y, G)) == nc.tensor(nc.act_object(A, g, X), nc.act_object(A, g, Y), G)


def test_external_norm_and_untwistor(C2):
    A = gs.orbit_gset(C2.trivial)
    T = gs.coset_space(C2.trivial, C2.whole)
    X = nc.external_norm(T, [nc.leaf(0), nc.leaf(1)])
    assert X.labels == (0, 1)
    assert nc.is_fixed_object(A, X, C2.whole)
    assert not nc.is_fixed_object(A, nc.external_norm(T, [nc.leaf(0), nc.leaf(0)]), C2.whole)
    u = nc.untwistor(T, [nc.leaf(0), nc.leaf(1)])
    assert u.is_iso() and u.inverse().then(u) == nc.identity(u.target)
    with pytest.raises(ValueError):
        nc.NormedMorphism(nc.leaf(0), nc.leaf(1), [0])


def test_hom_set_counts(C2):
    X = nc.NormedObject(op.norm(gs.trivial_gset(C2.whole, 3)), (0, 0, 1))
    Y = nc.NormedObject(op.norm(gs.trivial_gset(C2.whole, 3)), (1, 0, 0))
    assert len(nc.hom_set(X, Y)) == 4
    assert len(nc.hom_set(X, Y, core=True)) == 2


# -- fixed objects, slices and spans ---------------------------------------------------------------

@pytest.mark.parametrize("name,length", [("C2", 3), ("C4", 2)])
def test_deeper_fixed_trees_add_no_classes(name, length):
    G = GROUPS[name]
    for I in ix.enumerate_all(G):
        for H in G.subgroups():
            for A in ix.hsets_up_to_iso(G.whole, 2):
                one = nc.FixedSubcategory(I, A, H, length, max_internal=1).classes
                two = nc.FixedSubcategory(I, A, H, length, max_internal=2).classes
                assert len(one) == len(two)
                assert sorted(c.automorphisms for c in one) == sorted(c.automorphisms for c in two)


def test_slices_over_a_point(C2):
    # admissible e-sets of size <= 3 over a point: sizes 0..3, automorphisms n!
    I = ix.IndexingSystem.complete(C2)
    A = gs.trivial_gset(C2.whole, 1)
    sl = nc.SliceCategory(I, C2.trivial, A, 3).classes
    assert sorted(c.automorphisms for c in sl) == [1, 1, 2, 6]
    # over C2 itself: trivial orbits only under the minimal system
    mn = nc.SliceCategory(ix.IndexingSystem.minimal(C2), C2.whole, A, 3).classes
    assert len(mn) == 4
    cp = nc.SliceCategory(I, C2.whole, A, 3).classes
    assert len(cp) == 6  # m trivial + k free orbits with m + 2k <= 3


@pytest.mark.parametrize("name", ["C2", "C4"])
def test_counting_comparison(name):
    for I in ix.enumerate_all(GROUPS[name]):
        res = verify.counting_comparison(I, A_bound=3, bound=3)
        assert res.passed, res.failures


def test_theta_sends_spans_to_fixed_objects(C4):
    I = ix.IndexingSystem.complete(C4)
    e, c2, c4 = C4.subgroups()
    for A in ix.hsets_up_to_iso(C4.whole, 2):
        for H in (e, c2, c4):
            for cls in bs.hom_groupoid(I, A, gs.orbit_gset(H), 2 * H.index_in(C4.whole)):
                X = bs.theta(cls.span, H)
                assert nc.is_fixed_object(A, X, H)


# -- functor suites at small budgets ---------------------------------------------------------------

@pytest.mark.parametrize("name", ["C2", "C4"])
def test_cons_and_adjunction_suites(name):
    I = ix.IndexingSystem.complete(GROUPS[name])
    for res in (verify.cons_suite(I, 2, seed=1, data_samples=1, morphism_samples=100),
                verify.adjunction_suite(I, 2), verify.mate_suite(I, 2)):
        assert res.passed, (res.name, res.failures)


def test_sum_equivalence_suite(C2):
    res = verify.sum_suite(ix.IndexingSystem.complete(C2), 2, seed=2, morphism_samples=200)
    assert res.passed, res.failures


def test_cons_of_identity_data_is_identity(C4):
    I = ix.IndexingSystem.complete(C4)
    A = gs.orbit_gset(C4.trivial)
    phi = nc.EquivariantFunctorData.from_map(gs.identity_map(A))
    F = nc.cons(phi)
    for t in [t for level in op.enumerate_trees(op.Catalog(I, 2), 3) for t in level][:40]:
        for L in itertools.islice(itertools.product(range(A.size), repeat=t.length), 8):
            X = nc.NormedObject(t, L)
            assert F(X) == X


@pytest.mark.parametrize("name", ["C2", "C3"])
def test_freeness_counts(name):
    for I in ix.enumerate_all(GROUPS[name]):
        res = verify.freeness_counts(I, 2, 3, 4)
        assert res.passed, res.failures

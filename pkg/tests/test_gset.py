import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from normspan import gset as gs
from normspan.burnside import random_gset
from normspan.group import cyclic, direct_product, small_groups, symmetric

GROUPS = {k: v for k, v in small_groups(6).items()}


def brute_maps(X, Y):
    out = []
    for f in itertools.product(range(Y.size), repeat=X.size):
        if all(f[X.perms[g][x]] == Y.perms[g][f[x]] for g in X.acting.elements for x in range(X.size)):
            out.append(f)
    return out


def gsets(name, max_size=4):
    return st.integers(0, 10**6).map(lambda s: random_gset(GROUPS[name], random.Random(s), max_size))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["C2", "C4", "S3", "C2xC2"]), st.data())
def test_orbit_stabilizer(name, data):
    X = data.draw(gsets(name, 6))
    G = X.group
    assert sorted(x for o in X.orbits() for x in o) == list(range(X.size))
    for o in X.orbits():
        assert len(o) * X.stabilizer(o[0]).order == G.order


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["C2", "C4", "S3"]), st.data())
def test_equivariant_maps_match_brute_force(name, data):
    X = data.draw(gsets(name, 4))
    Y = data.draw(gsets(name, 4))
    found = sorted(tuple(u.map) for u in gs.equivariant_maps(X, Y))
    assert found == sorted(brute_maps(X, Y))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["C2", "C4", "S3"]), st.data())
def test_iso_test_matches_brute_force(name, data):
    X = data.draw(gsets(name, 4))
    Y = data.draw(gsets(name, 4))
    brute = X.size == Y.size and any(len(set(f)) == X.size for f in brute_maps(X, Y))
    assert (gs.iso_test(X, Y) is not None) == brute
    assert (gs.iso_test(X, Y) is not None) == (X.orbit_types() == Y.orbit_types())


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["C2", "C4", "S3"]), st.data())
def test_pullback_is_universal(name, data):
    rng = random.Random(data.draw(st.integers(0, 10**6)))
    G = GROUPS[name]
    B = random_gset(G, rng, 3)
    A = random_gset(G, rng, 4)
    C = random_gset(G, rng, 4)
    fs = [u for u in gs.equivariant_maps(A, B)]
    hs = [u for u in gs.equivariant_maps(C, B)]
    if not fs or not hs:
        return
    f, h = rng.choice(fs), rng.choice(hs)
    P, p1, p2 = gs.pullback(f, h)
    assert P.size == sum(len(f.fiber(b)) * len(h.fiber(b)) for b in range(B.size))
    for c in range(P.size):
        assert f(p1(c)) == h(p2(c))
    # any cone from a small test object factors uniquely
    T = random_gset(G, rng, 3)
    for a in gs.equivariant_maps(T, A):
        for b in gs.equivariant_maps(T, C):
            if all(f(a(t)) == h(b(t)) for t in range(T.size)):
                assert len(gs.mediating_maps(P, p1, p2, a, b)) == 1


@pytest.mark.parametrize("name", ["C4", "S3", "C2xC2"])
def test_restricted_orbits_counted_by_double_cosets(name):
    G = GROUPS[name]
    for H in G.subgroups():
        for K in G.subgroups():
            X = gs.restrict(gs.orbit_gset(H), K)
            assert len(X.orbits()) == len(G.double_cosets(K, H))


@pytest.mark.parametrize("name", ["C4", "S3"])
def test_induction_size_and_adjunction(name):
    G = GROUPS[name]
    for K in G.subgroups():
        for Y in (gs.trivial_gset(K, 1), gs.coset_space(G.trivial, K)):
            ind = gs.induce(Y, G.whole)
            assert ind.size == K.index_in(G.whole) * Y.size
            # Hom_G(ind Y, X) = Hom_K(Y, res X) on every orbit X
            for H in G.subgroups():
                X = gs.orbit_gset(H)
                n1 = sum(1 for _ in gs.equivariant_maps(ind, X))
                n2 = sum(1 for _ in gs.equivariant_maps(Y, gs.restrict(X, K)))
                assert n1 == n2


def test_conjugate_gset(S3):
    for H in S3.subgroups():
        T = gs.coset_space(S3.trivial, H)
        for g in range(S3.order):
            C = gs.conjugate(T, g)
            assert C.acting is S3.conjugate(H, g)
            C.check()


def test_decompose_witnesses_orbits(S3):
    X = gs.disjoint_union(gs.orbit_gset(S3.subgroups()[1]), gs.orbit_gset(S3.whole), gs.orbit_gset(S3.trivial))
    dec = X.decompose()
    covered = sorted(x for orb, S, w in dec for x in w.map)
    assert len(dec) == 3 and all(w.map[0] == orb[0] for orb, S, w in dec)
    assert covered == list(range(X.size))


def test_bad_action_rejected(C2):
    with pytest.raises(ValueError):
        gs.GSet(C2, {0: (0, 1), 1: (0, 0)})
    X = gs.orbit_gset(C2.trivial)
    Y = gs.trivial_gset(C2.whole, 2)
    with pytest.raises(ValueError):
        gs.EquivariantMap(Y, X, [0, 1])


# -- nerve comparison --------------------------------------------------------------

def test_nerve_check_fails_without_freeness(C2):
    # C2 on {p, a, b}: p fixed, a and b swapped
    X = gs.GSet(C2, {0: (0, 1, 2), 1: (0, 2, 1)})
    Y = gs.trivial_gset(C2.whole, 1)
    assert gs.nerve_quotient_check(X, Y, C2.whole, 2) is False
    assert gs.nerve_quotient_check(X, Y, C2.whole, 0) is True


def test_nerve_check_free_instance():
    G, Gam = cyclic(2), cyclic(3)
    GG = direct_product(G, Gam)
    Gamma = GG.subgroup([c for c in range(Gam.order)])
    X = gs.orbit_gset(GG.trivial)
    Y = gs.orbit_gset(Gamma)
    for n in range(4):
        assert gs.nerve_quotient_check(X, Y, Gamma, n)

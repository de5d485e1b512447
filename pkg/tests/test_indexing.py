import random

import pytest
from hypothesis import given, settings, strategies as st

from normspan import gset as gs
from normspan import indexing as ix
from normspan.group import cyclic, small_groups

GROUPS = small_groups(8)


def transfer_systems_brute(G):
    """Reflexive transitive refinements of inclusion, closed under conjugation and restriction."""
    subs = G.subgroups()
    ids = range(len(subs))
    strict = [(k, h) for k in ids for h in ids if k != h and subs[k] <= subs[h]]
    found = []
    for mask in range(1 << len(strict)):
        R = {strict[i] for i in range(len(strict)) if mask >> i & 1} | {(i, i) for i in ids}

        def closed():
            for k, h in R:
                for g in range(G.order):
                    if (G.conjugate(subs[k], g).id, G.conjugate(subs[h], g).id) not in R:
                        return False
                for l in ids:
                    if subs[l] <= subs[h] and (G.intersect(subs[k], subs[l]).id, l) not in R:
                        return False
                for a, b in R:
                    if a == h and (k, b) not in R:
                        return False
            return True

        if closed():
            found.append(frozenset(R))
    return found


@pytest.mark.parametrize("name", ["1", "C2", "C3", "C4", "C2xC2", "C5", "C6", "S3"])
def test_enumeration_matches_definition(name):
    G = GROUPS[name]
    assert {I.pairs for I in ix.enumerate_all(G)} == set(transfer_systems_brute(G))


def test_counts_frozen():
    counts = {name: len(ix.enumerate_all(G)) for name, G in GROUPS.items() if name != "C2xC2xC2"}
    assert counts == {"1": 1, "C2": 2, "C3": 2, "C4": 5, "C2xC2": 19, "C5": 2, "C6": 10, "S3": 9,
                      "C7": 2, "C8": 14, "C4xC2": 328, "D8": 294, "Q8": 68}


@pytest.mark.parametrize("n,catalan", [(1, 2), (2, 5), (3, 14), (4, 42)])
def test_cyclic_p_groups_give_catalan_numbers(n, catalan):
    assert len(ix.enumerate_all(cyclic(2 ** n))) == catalan


@pytest.mark.slow
def test_elementary_abelian_order_8_count():
    strict, masks = ix.relation_masks(GROUPS["C2xC2xC2"])
    assert len(strict) == 50
    assert len(masks) == 10_429_586


@pytest.mark.parametrize("name", ["C4", "C2xC2", "S3", "C6", "Q8"])
def test_search_methods_agree(name):
    G = GROUPS[name]
    assert {I.pairs for I in ix.enumerate_naive(G)} == {I.pairs for I in ix.enumerate_all(G)}


def test_closure_examples(C4):
    I = ix.closure(C4, ix.parse_pair_spec(C4, "e<C4"))
    e, c2, c4 = (S.id for S in C4.subgroups())
    assert (e, c2) in I.pairs and (e, c4) in I.pairs
    assert (c2, c4) not in I.pairs
    assert ix.closure(C4, I.pairs) == I
    assert ix.closure(C4, ix.parse_pair_spec(C4, "C2<C4")).strict_pairs() == [(c2, c4)]


def test_closure_examples_s3(S3):
    # the transfer e -> S3 forces e -> every subgroup
    I = ix.closure(S3, [(S3.trivial.id, S3.whole.id)])
    assert all((S3.trivial.id, S.id) in I.pairs for S in S3.subgroups())
    assert len(I.strict_pairs()) == 5


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["C4", "S3", "C2xC2", "C6"]), st.integers(0, 10**6))
def test_closure_is_least_system_above(name, seed):
    G = GROUPS[name]
    rng = random.Random(seed)
    strict = [p for p in ix.all_pairs(G) if p[0] != p[1]]
    gens = rng.sample(strict, rng.randint(0, min(3, len(strict))))
    I = ix.closure(G, gens)
    assert I.is_closed()
    above = [J for J in ix.enumerate_all(G) if set(gens) <= J.pairs]
    assert all(I <= J for J in above) and I in above


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["C2", "C4", "S3", "C2xC2"]), st.integers(0, 10**6))
def test_axioms_detect_exactly_the_non_closed_relations(name, seed):
    # bound = |G| covers every orbit G/K, so the axiom suite sees every pair
    G = GROUPS[name]
    rng = random.Random(seed)
    pairs = [p for p in ix.all_pairs(G) if p[0] == p[1] or rng.random() < 0.4]
    R = ix.IndexingSystem(G, pairs)
    assert (not ix.axiom_violations(R, G.order)) == R.is_closed()


@pytest.mark.parametrize("name", ["C4", "S3", "C2xC2"])
def test_bulk_validation_agrees_with_per_system(name):
    G = GROUPS[name]
    n, bad = ix.validate_all(G, 4)
    assert n == len(ix.enumerate_all(G)) and bad == []
    assert all(ix.validate_against_axioms(I, 4) for I in ix.enumerate_all(G))


def test_complete_and_minimal_validate(groups):
    for G in groups.values():
        assert ix.validate_against_axioms(ix.IndexingSystem.complete(G), 3)
        assert ix.validate_against_axioms(ix.IndexingSystem.minimal(G), 3)


def test_cover_relations_c4_pentagon(C4):
    systems = ix.enumerate_all(C4)
    edges = ix.cover_relations(systems)
    brute = [(a, b) for a, A in enumerate(systems) for b, B in enumerate(systems)
             if A.pairs < B.pairs and not any(A.pairs < C.pairs < B.pairs for C in systems)]
    assert sorted(edges) == sorted(brute)
    assert len(edges) == 5


def test_admissible_hsets(C4):
    e, c2, c4 = C4.subgroups()
    I = ix.closure(C4, [(e.id, c2.id)])
    assert ix.is_admissible_hset(I, gs.coset_space(e, c2))
    assert not ix.is_admissible_hset(I, gs.coset_space(e, c4))
    assert ix.is_admissible_hset(I, gs.trivial_gset(c4, 3))
    # over C4 the set C4/C2 + C4/C4 is not admissible, but its restriction to C2 is
    T = gs.disjoint_union(gs.coset_space(c2, c4), gs.trivial_gset(c4, 1))
    assert not ix.is_admissible_hset(I, T)
    assert ix.is_admissible_hset(I, gs.restrict(T, c2))


def test_inadmissible_fibers_name_the_point(C4):
    e, c2, c4 = C4.subgroups()
    u = gs.EquivariantMap(gs.orbit_gset(e), gs.orbit_gset(c2), [0, 1, 0, 1])
    I = ix.IndexingSystem.minimal(C4)
    bad = ix.inadmissible_fibers(I, u)
    assert [b for b, _ in bad] == [0]
    assert bad[0][1].acting is c2 and bad[0][1].size == 2
    assert ix.is_admissible_map(ix.IndexingSystem.complete(C4), u)


def test_parse_pair_spec(C4, S3):
    assert ix.parse_pair_spec(C4, "e<C4, 1<2") == [(0, 2), (1, 2)]
    with pytest.raises(ValueError, match="K<H"):
        ix.parse_pair_spec(C4, "e")
    with pytest.raises(ValueError, match="3 subgroups of order 2"):
        ix.parse_pair_spec(S3, "e<C2")
    with pytest.raises(ValueError, match="subgroup pair"):
        ix.closure(C4, [(2, 0)])

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from normspan.group import FiniteGroup, cyclic, dihedral, named_group, quaternion, small_groups, symmetric


def brute_subgroups(G):
    """Every closed subset containing the identity, by exhausting subsets."""
    out = []
    others = [g for g in range(G.order) if g != G.identity]
    for r in range(len(others) + 1):
        for extra in itertools.combinations(others, r):
            S = {G.identity, *extra}
            if all(G.mul[a][b] in S for a in S for b in S):
                out.append(frozenset(S))
    return out


@pytest.mark.parametrize("name", ["1", "C2", "C3", "C4", "C2xC2", "C6", "S3", "C8", "D8", "Q8"])
def test_subgroups_match_exhaustive_search(groups, name):
    G = groups[name]
    assert {S.members for S in G.subgroups()} == set(brute_subgroups(G))


def test_subgroup_counts_frozen(groups):
    counts = {k: len(G.subgroups()) for k, G in groups.items()}
    assert counts == {"1": 1, "C2": 2, "C3": 2, "C4": 3, "C2xC2": 5, "C5": 2, "C6": 4, "S3": 6,
                      "C7": 2, "C8": 4, "C4xC2": 8, "C2xC2xC2": 16, "D8": 10, "Q8": 6}


def test_subgroups_are_interned_and_sorted(S3):
    subs = S3.subgroups()
    assert [S.id for S in subs] == list(range(len(subs)))
    assert [S.order for S in subs] == sorted(S.order for S in subs)
    assert S3.subgroup(subs[3].elements) is subs[3]
    assert S3.generate([1]) is S3.subgroup(S3.generate([1]).elements)


def test_identity_first_for_permutation_groups():
    for G in (symmetric(3), dihedral(4), quaternion()):
        assert G.identity == 0


def test_bad_tables_rejected():
    with pytest.raises(ValueError, match="associative"):
        FiniteGroup([[0, 1, 2], [1, 0, 0], [2, 0, 1]])
    with pytest.raises(ValueError, match="row 1"):
        FiniteGroup([[0, 1], [1]])
    with pytest.raises(ValueError):
        named_group("X7")


def test_conjugation_convention(S3):
    # H^g = g^-1 H g
    for H in S3.subgroups():
        for g in range(S3.order):
            gi = S3.inv[g]
            assert S3.conjugate(H, g).members == {S3.prod(gi, h, g) for h in H}


def test_s3_class_reps(S3):
    reps = {S3.class_rep(H).id for H in S3.subgroups()}
    assert len(reps) == 4
    assert [S3.is_normal(H) for H in S3.subgroups()] == [True, False, False, False, True, True]


@pytest.mark.parametrize("name", ["C4", "S3", "D8", "Q8"])
def test_coset_decomposition(groups, name):
    G = groups[name]
    for H in G.subgroups():
        for L in G.subgroups():
            if not H <= L:
                continue
            dec = G.coset_reps(H, L)
            assert dec.reps[0] == G.identity
            assert len(dec) == H.index_in(L)
            for g in L:
                i, h = dec.decompose(g)
                assert h in H and G.mul[dec.reps[i]][h] == g
                for k in range(len(dec)):
                    j, h2 = dec.act(g, k)
                    assert G.mul[g][dec.reps[k]] == G.mul[dec.reps[j]][h2]


@pytest.mark.parametrize("name", ["C4", "S3", "D8"])
def test_double_coset_count_formula(groups, name):
    # the number of L-orbits on G/H, and |LgH| summing to |G|
    G = groups[name]
    for L in G.subgroups():
        for H in G.subgroups():
            reps = G.double_cosets(L, H)
            dec = G.coset_reps(H)
            orbits = {frozenset(dec.shift[l][i] for l in L) for i in range(len(dec))}
            assert len(reps) == len(orbits)
            assert sum(L.order * H.order // G.intersect(L, G.conjugate(H, G.inv[r])).order for r in reps) == G.order


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(sorted(small_groups(8))), st.data())
def test_table_axioms(name, data):
    G = small_groups(8)[name]
    a, b, c = (data.draw(st.integers(0, G.order - 1)) for _ in range(3))
    m = G.mul
    assert m[m[a][b]][c] == m[a][m[b][c]]
    assert m[a][G.inv[a]] == G.identity
    assert G.power(a, G.element_order(a)) == G.identity


def test_named_groups():
    assert named_group("C5").order == 5
    assert named_group("S4").order == 24
    assert named_group("D6").order == 6
    assert cyclic(6).element_order(1) == 6

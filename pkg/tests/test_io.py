import random

import pytest
from hypothesis import given, settings, strategies as st

from normspan import burnside as bs
from normspan import indexing as ix
from normspan import io
from normspan import operad as op
from normspan.group import small_groups

GROUPS = small_groups(6)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["C2", "C4", "S3", "C2xC2"]), st.integers(0, 10**6))
def test_round_trips(name, seed):
    G = GROUPS[name]
    rng = random.Random(seed)
    I = rng.choice(ix.enumerate_all(G))
    A, B = bs.random_gset(G, rng, 4), bs.random_gset(G, rng, 3)
    assert io.gset_from_json(io.gset_to_json(A), G) == A
    assert io.gset_from_json(io.gset_to_json(A, full=False), G) == A
    s = bs.random_span(I, A, B, rng, 4)
    t = io.span_from_json(io.span_to_json(s), G)
    assert t.left.map == s.left.map and t.right.map == s.right.map and t.apex == s.apex
    assert io.indexing_from_json(io.indexing_to_json(I), G) == I
    trees = [x for level in op.enumerate_trees(op.Catalog(I, 2), 3) for x in level]
    tree = rng.choice(trees)
    assert io.tree_from_json(io.tree_to_json(tree), G) == tree
    assert io.group_from_json(io.group_to_json(G)).mul == G.mul


def test_partial_generators_are_closed_up(C4):
    X = io.gset_from_json({"size": 4, "action": {"1": [1, 2, 3, 0]}}, C4)
    assert X.perms[2] == (2, 3, 0, 1)
    with pytest.raises(io.InputError, match="gset.action"):
        io.gset_from_json({"size": 2, "action": {"1": [1, 0], "2": [1, 0]}}, C4)


def test_diagnostics_name_fields(C4):
    with pytest.raises(io.InputError) as exc:
        io.tree_from_json({"node": {"H": 9, "hset": {"size": 0}, "children": []}}, C4)
    assert exc.value.field == "tree.node.H"
    with pytest.raises(io.InputError, match="zmod"):
        io.monoid_from_json({"zmod": 0}, C4)
    with pytest.raises(io.InputError, match="sign"):
        io.monoid_from_json({"zmod": 3, "sign": [1, 1]}, C4)
    with pytest.raises(io.InputError, match="group"):
        io.load_group("Z99x")


def test_subgroup_labels(S3, C4):
    assert [io.subgroup_label(S) for S in C4.subgroups()] == ["e", "C2", "C4"]
    assert [io.subgroup_label(S) for S in S3.subgroups()] == ["e", "H1", "H2", "H3", "C3", "H5"]


def test_dumps_is_canonical():
    assert io.dumps({"b": 1, "a": [1, 2]}) == io.dumps({"a": [1, 2], "b": 1})

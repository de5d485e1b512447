"""JSON readers and writers for groups, G-sets, maps, indexing systems, trees and spans.

Readers raise :class:`InputError` naming the offending field.  Writers
produce plain dicts; :func:`dumps` renders them with sorted keys so equal
inputs give byte-identical output.
"""

from __future__ import annotations

import json
import os
from typing import Any

from . import burnside as bs
from . import gset as gs
from . import indexing as ix
from . import monoid
from . import normedcat as nc
from . import operad as op
from .group import FiniteGroup, Subgroup, named_group


class InputError(ValueError):
    def __init__(self, field: str, message: str):
        self.field = field
        super().__init__(f"{field}: {message}")


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def read_json(path: str, field: str = "file") -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(field, f"cannot read {path!r}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(field, f"{path!r} is not valid JSON (line {exc.lineno})") from None


def _need(obj, key, field, kind=None):
    if not isinstance(obj, dict) or key not in obj:
        raise InputError(f"{field}.{key}" if field else key, "missing")
    v = obj[key]
    if kind is not None and not isinstance(v, kind):
        raise InputError(f"{field}.{key}" if field else key, f"expected {kind.__name__}")
    return v


# -- groups ------------------------------------------------------------------------------

def load_group(ref, field: str = "group") -> FiniteGroup:
    """A group from a file path, a short name (``C4``, ``S3``) or an inline dict."""
    if isinstance(ref, FiniteGroup):
        return ref
    if isinstance(ref, str):
        if os.path.exists(ref):
            return group_from_json(read_json(ref, field), field)
        try:
            return named_group(ref)
        except ValueError:
            raise InputError(field, f"{ref!r} is neither a file nor a known group name") from None
    return group_from_json(ref, field)


def group_from_json(obj, field: str = "group") -> FiniteGroup:
    if not isinstance(obj, dict):
        raise InputError(field, "expected an object")
    try:
        if "mul" in obj:
            mul = _need(obj, "mul", field, list)
            if "order" in obj and obj["order"] != len(mul):
                raise InputError(f"{field}.order", f"says {obj['order']} but mul has {len(mul)} rows")
            return FiniteGroup(mul, names=obj.get("names"))
        if "generators" in obj:
            gens = _need(obj, "generators", field, list)
            return FiniteGroup.from_permutations(gens, obj.get("degree"))
        if "name" in obj:
            return named_group(obj["name"])
    except InputError:
        raise
    except (ValueError, TypeError, IndexError) as exc:
        key = "mul" if "mul" in obj else "generators" if "generators" in obj else "name"
        raise InputError(f"{field}.{key}", str(exc)) from None
    raise InputError(field, "needs 'mul', 'generators' or 'name'")


def group_to_json(G: FiniteGroup) -> dict:
    out = {"order": G.order, "mul": [list(r) for r in G.mul]}
    if G.names is not None:
        out["names"] = list(G.names)
    return out


def subgroup_label(S: Subgroup) -> str:
    """``e``, ``C<n>`` for the only subgroup of its order when cyclic, else ``H<id>``."""
    G = S.group
    if S.order == 1:
        return "e"
    same = [T for T in G.subgroups() if T.order == S.order]
    cyclic = any(G.element_order(g) == S.order for g in S.elements)
    if len(same) == 1 and cyclic:
        return f"C{S.order}"
    return f"H{S.id}"


def subgroup_table(G: FiniteGroup) -> list[dict]:
    return [{"id": S.id, "label": subgroup_label(S), "order": S.order, "elements": list(S.elements)}
            for S in G.subgroups()]


def _subgroup(G: FiniteGroup, i, field) -> Subgroup:
    subs = G.subgroups()
    if not isinstance(i, int) or not 0 <= i < len(subs):
        raise InputError(field, f"no subgroup with id {i!r} (ids run 0..{len(subs) - 1})")
    return subs[i]


# -- G-sets and maps ----------------------------------------------------------------------

def gset_from_json(obj, G: FiniteGroup, field: str = "gset", acting: Subgroup | None = None) -> gs.GSet:
    """``{"size": m, "action": {g: perm}, "subgroup": id?}``; listing generators is enough."""
    if acting is None:
        acting = _subgroup(G, obj["subgroup"], f"{field}.subgroup") if isinstance(obj, dict) and "subgroup" in obj \
            else G.whole
    size = _need(obj, "size", field, int)
    action = obj.get("action", {})
    if not isinstance(action, dict):
        raise InputError(f"{field}.action", "expected an object keyed by element index")
    given = {}
    for k, p in action.items():
        try:
            g = int(k)
        except ValueError:
            raise InputError(f"{field}.action", f"key {k!r} is not an element index") from None
        if g not in acting.members:
            raise InputError(f"{field}.action", f"element {g} is not in the acting subgroup")
        if not isinstance(p, list) or sorted(p) != list(range(size)):
            raise InputError(f"{field}.action.{k}", f"not a permutation of 0..{size - 1}")
        given[g] = tuple(p)
    # close up from whatever elements were listed
    perms = {G.identity: tuple(range(size))}
    frontier = [G.identity]
    while frontier:
        new = []
        for g in frontier:
            for s, q in given.items():
                h = G.mul[s][g]
                p = tuple(q[x] for x in perms[g])
                if h not in perms:
                    perms[h] = p
                    new.append(h)
                elif perms[h] != p:
                    raise InputError(f"{field}.action", f"inconsistent: two different permutations for element {h}")
        frontier = new
    for s, q in given.items():
        if perms.get(s) != q:
            raise InputError(f"{field}.action", f"element {s} is not compatible with the others")
    missing = [g for g in acting.elements if g not in perms]
    if missing:
        raise InputError(f"{field}.action", f"elements {missing} are not generated by the listed ones")
    try:
        return gs.GSet(acting, perms, size=size)
    except ValueError as exc:
        raise InputError(f"{field}.action", str(exc)) from None


def gset_to_json(X: gs.GSet, full: bool = True) -> dict:
    out = {"size": X.size, "subgroup": X.acting.id}
    if full:
        elts = X.acting.elements
    else:
        # a generating set of the acting subgroup, so readers can close it up
        G, elts, span = X.group, [], {X.group.identity}
        for g in X.acting.elements:
            if g not in span:
                elts.append(g)
                span = set(G.generate(elts).members)
    out["action"] = {str(g): list(X.perms[g]) for g in elts}
    return out


def map_from_json(obj, G: FiniteGroup, field: str = "map", source=None, target=None) -> gs.EquivariantMap:
    src = source if source is not None else gset_from_json(_need(obj, "source", field), G, f"{field}.source")
    tgt = target if target is not None else gset_from_json(_need(obj, "target", field), G, f"{field}.target")
    img = _need(obj, "map", field, list)
    if len(img) != src.size or any(not isinstance(y, int) or not 0 <= y < tgt.size for y in img):
        raise InputError(f"{field}.map", f"expected {src.size} entries in 0..{tgt.size - 1}")
    try:
        return gs.EquivariantMap(src, tgt, img)
    except ValueError as exc:
        raise InputError(f"{field}.map", str(exc)) from None


def map_to_json(u: gs.EquivariantMap) -> dict:
    return {"source": gset_to_json(u.source), "target": gset_to_json(u.target), "map": list(u.map)}


# -- indexing systems ---------------------------------------------------------------------

def indexing_from_json(obj, G: FiniteGroup, field: str = "indexing") -> ix.IndexingSystem:
    pairs = _need(obj, "pairs", field, list)
    subs = G.subgroups()
    out = []
    for i, p in enumerate(pairs):
        if not (isinstance(p, list) and len(p) == 2):
            raise InputError(f"{field}.pairs[{i}]", "expected [K_id, H_id]")
        K = _subgroup(G, p[0], f"{field}.pairs[{i}][0]")
        H = _subgroup(G, p[1], f"{field}.pairs[{i}][1]")
        if not K <= H:
            raise InputError(f"{field}.pairs[{i}]", f"subgroup {K.id} is not contained in {H.id}")
        out.append((K.id, H.id))
    bad = ix.closure_violations(G, out)
    if bad:
        rule, pair = bad[0]
        raise InputError(f"{field}.pairs", f"not closed: {rule} requires {list(pair)}")
    return ix.closure(G, out)


def indexing_to_json(I: ix.IndexingSystem) -> dict:
    return {"pairs": [list(p) for p in I.sorted_pairs()],
            "strict": [[subgroup_label(I.group.subgroup_by_id(k)), subgroup_label(I.group.subgroup_by_id(h))]
                       for k, h in sorted(I.strict_pairs())]}


# -- trees and operations ---------------------------------------------------------------

def tree_from_json(obj, G: FiniteGroup, field: str = "tree") -> op.NormTree:
    if obj == "leaf":
        return op.LEAF
    node = _need(obj, "node", field, dict)
    H = _subgroup(G, _need(node, "H", f"{field}.node"), f"{field}.node.H")
    T = gset_from_json(_need(node, "hset", f"{field}.node"), G, f"{field}.node.hset", acting=H)
    kids = _need(node, "children", f"{field}.node", list)
    children = [tree_from_json(c, G, f"{field}.node.children[{i}]") for i, c in enumerate(kids)]
    rep = node.get("rep", G.identity)
    try:
        return op.NormTree(H, T, rep, children)
    except ValueError as exc:
        raise InputError(f"{field}.node", str(exc)) from None


def tree_to_json(t: op.NormTree):
    if t.H is None:
        return "leaf"
    return {"node": {"H": t.H.id, "hset": gset_to_json(t.T), "rep": t.rep,
                     "children": [tree_to_json(c) for c in t.children]}}


def operation_to_json(x: op.SymOperation) -> dict:
    return {"tree": tree_to_json(x.tree), "perm": list(x.perm)}


def object_to_json(X: nc.NormedObject) -> dict:
    return {"tree": tree_to_json(X.tree), "labels": list(X.labels)}


def object_from_json(obj, G: FiniteGroup, field: str = "object") -> nc.NormedObject:
    t = tree_from_json(_need(obj, "tree", field), G, f"{field}.tree")
    labels = _need(obj, "labels", field, list)
    if len(labels) != t.length:
        raise InputError(f"{field}.labels", f"expected {t.length} labels")
    return nc.NormedObject(t, labels)


# -- spans and monoids ------------------------------------------------------------------

def span_from_json(obj, G: FiniteGroup, field: str = "span") -> bs.SpanMorphism:
    A = gset_from_json(_need(obj, "source", field), G, f"{field}.source")
    B = gset_from_json(_need(obj, "target", field), G, f"{field}.target")
    S = gset_from_json(_need(obj, "apex", field), G, f"{field}.apex")
    left = map_from_json({"map": _need(obj, "left", field)}, G, f"{field}.left", S, A)
    right = map_from_json({"map": _need(obj, "right", field)}, G, f"{field}.right", S, B)
    return bs.SpanMorphism(left, right)


def span_to_json(s: bs.SpanMorphism) -> dict:
    return {"source": gset_to_json(s.source), "target": gset_to_json(s.target), "apex": gset_to_json(s.apex),
            "left": list(s.left.map), "right": list(s.right.map)}


def monoid_from_json(obj, G: FiniteGroup, field: str = "monoid") -> monoid.CommutativeGMonoid:
    """``{"zmod": m, "sign": [+-1 per element]?}`` or ``{"size", "action", "add", "zero"}``."""
    if not isinstance(obj, dict):
        raise InputError(field, "expected an object")
    if "zmod" in obj:
        m = obj["zmod"]
        if not isinstance(m, int) or m < 1:
            raise InputError(f"{field}.zmod", "expected a positive integer")
        if "sign" in obj:
            sign = obj["sign"]
            if not isinstance(sign, list) or len(sign) != G.order or any(s not in (1, -1) for s in sign):
                raise InputError(f"{field}.sign", f"expected {G.order} entries of 1 or -1")
            try:
                return monoid.zmod_sign(G, m, lambda g: sign[g])
            except ValueError as exc:
                raise InputError(f"{field}.sign", str(exc)) from None
        return monoid.zmod(G, m)
    X = gset_from_json(obj, G, field)
    add = _need(obj, "add", field, list)
    try:
        M = monoid.CommutativeGMonoid(X, add, obj.get("zero", 0), obj.get("name", ""))
    except (ValueError, IndexError, TypeError) as exc:
        raise InputError(f"{field}.add", str(exc)) from None
    return M

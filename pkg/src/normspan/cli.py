"""Command line front end.

Exit codes: 0 success, 1 malformed input, 2 validation failure or an
inadmissible span, 3 a bound too large to enumerate.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import __version__
from . import burnside as bs
from . import gset as gs
from . import indexing as ix
from . import io
from . import normedcat as nc
from . import operad as op
from . import verify
from .group import small_groups

EXIT_OK, EXIT_INPUT, EXIT_FAILED, EXIT_OVERFLOW = 0, 1, 2, 3
TREE_LIMIT = 2_000_000


class Overflow(RuntimeError):
    pass


class Failed(RuntimeError):
    """Carries a finished report whose verdict is a failure."""

    def __init__(self, report, message=""):
        super().__init__(message)
        self.report = report


# -- configuration -------------------------------------------------------------------

class WorkspaceConfig:
    def __init__(self, args):
        self.args = args
        self.group_ref = args.group
        self.seed = args.seed
        self.bound = args.bound
        self.budget = args.budget
        self.format = args.format
        self.out = args.out
        for name in ("bound", "budget"):
            v = getattr(args, name)
            if v is not None and v < 1:
                raise io.InputError(f"--{name}", "must be positive")
        if self.out is not None and not os.path.isdir(self.out):
            raise io.InputError("--out", f"{self.out!r} is not a directory")
        self._group = None

    @property
    def group(self):
        if self._group is None:
            if self.group_ref is None:
                raise io.InputError("--group", "required for this command")
            self._group = io.load_group(self.group_ref, "--group")
        return self._group

    def indexing(self, G=None) -> ix.IndexingSystem:
        G = G or self.group
        a = self.args
        if a.indexing:
            return io.indexing_from_json(io.read_json(a.indexing, "--indexing"), G, "--indexing")
        if a.gen:
            try:
                return ix.closure(G, ix.parse_pair_spec(G, a.gen))
            except ValueError as exc:
                raise io.InputError("--gen", str(exc).removeprefix("gen: ")) from None
        if a.minimal:
            return ix.IndexingSystem.minimal(G)
        return ix.IndexingSystem.complete(G)

    def indexing_source(self) -> str:
        a = self.args
        if a.indexing:
            return f"file:{a.indexing}"
        if a.gen:
            return f"gen:{a.gen}"
        return "minimal" if a.minimal else "complete"

    def header(self, command) -> dict:
        return {"tool": "normspan", "version": __version__, "command": command, "seed": self.seed,
                "config": {"group": self.group_ref, "indexing": self.indexing_source(),
                           "bound": self.bound, "budget": self.budget, "format": self.format}}


def _span_group(cfg: WorkspaceConfig, obj, field):
    if cfg.group_ref is None and isinstance(obj, dict) and "group" in obj:
        cfg.group_ref = obj["group"] if isinstance(obj["group"], str) else None
        if cfg.group_ref is None:
            cfg._group = io.load_group(obj["group"], f"{field}.group")
            cfg.group_ref = "inline"
    return cfg.group


# -- indexing ----------------------------------------------------------------------------

def cmd_indexing(cfg: WorkspaceConfig, action: str, rest):
    if action == "enumerate":
        G = cfg.group
        try:
            systems = ix.enumerate_all(G)
        except ix.SearchTooLarge as exc:
            raise Overflow(str(exc)) from None
        edges = ix.cover_relations(systems)
        return {"subgroups": io.subgroup_table(G), "count": len(systems),
                "systems": [dict(io.indexing_to_json(I), index=k) for k, I in enumerate(systems)],
                "edges": [list(e) for e in edges]}
    if action == "validate":
        bound = cfg.bound or 5
        if cfg.group_ref is None:
            if cfg.args.indexing or cfg.args.gen:
                raise io.InputError("--group", "required with --indexing or --gen")
            groups = list(small_groups(8).items())
        else:
            groups = [(cfg.group_ref, cfg.group)]
        rows = []
        for name, G in groups:
            I = cfg.indexing(G)
            bad = ix.axiom_violations(I, bound)
            rows.append({"group": name, "pairs": [list(p) for p in I.sorted_pairs()],
                         "verdict": "PASS" if not bad else "FAIL", "violations": len(bad)})
        report = {"bound": bound, "results": rows,
                  "verdict": "PASS" if all(r["verdict"] == "PASS" for r in rows) else "FAIL"}
        if report["verdict"] != "PASS":
            raise Failed(report, "axiom violations")
        return report
    if action == "closure":
        G = cfg.group
        if not cfg.args.gen and not cfg.args.indexing:
            raise io.InputError("--gen", "closure needs generators")
        I = cfg.indexing(G)
        return {"subgroups": io.subgroup_table(G), "system": io.indexing_to_json(I)}
    raise io.InputError("action", f"unknown indexing action {action!r}")


# -- operad ------------------------------------------------------------------------------

def cmd_operad(cfg: WorkspaceConfig, action: str, rest):
    G = cfg.group
    I = cfg.indexing(G)
    if action == "enumerate-norms":
        budget = cfg.budget or 1
        if cfg.bound:
            decorations = op.Catalog(I, cfg.bound).decorations
            source = f"admissible sets with at most {cfg.bound} points, all representatives"
        else:
            decorations = op.orbit_type_decorations(I)
            source = "one orbit type H/K per admissible pair"
        try:
            levels = op.trees_by_internal(decorations, budget, limit=TREE_LIMIT)
        except op.TooManyTrees as exc:
            raise Overflow(str(exc)) from None
        trees = [t for level in levels for t in level]
        return {"subgroups": io.subgroup_table(G), "decorations": source, "internal_budget": budget,
                "counts": [len(level) for level in levels], "count": len(trees),
                "trees": [{"text": repr(t), "length": t.length, "vertices": t.nodes, "tree": io.tree_to_json(t)}
                          for t in trees]}
    if action == "fixed-points":
        path = cfg.args.hset
        if not path:
            raise io.InputError("--hset", "required")
        T = io.gset_from_json(io.read_json(path, "--hset"), G, "--hset")
        budget = cfg.budget or 6
        if budget > 8:
            raise Overflow(f"vertex budget {budget} is above the supported 8")
        gamma = op.graph_subgroup_of(T)
        adm = ix.is_admissible_hset(I, T)
        witness = next(op.iter_fixed_operations(I, gamma, T.size, budget), None)
        found = witness is not None
        if found:
            verdict = "NONEMPTY (consistent with admissibility criterion)" if adm \
                else "NONEMPTY (INCONSISTENT with admissibility criterion)"
        else:
            verdict = "EMPTY (consistent with admissibility criterion)" if not adm \
                else "EMPTY (INCONSISTENT with admissibility criterion)"
        report = {"hset": io.gset_to_json(T), "admissible": adm, "vertex_budget": budget,
                  "witness": io.operation_to_json(witness) if found else None, "verdict": verdict}
        if found != adm:
            raise Failed(report, verdict)
        return report
    if action == "verify":
        budget = cfg.budget or 3
        if budget > 4:
            raise Overflow(f"vertex budget {budget} is above the supported 4 for the full suite")
        suites = [verify.action_cocycle(I, budget, seed=cfg.seed),
                  verify.fixed_tree_admissibility(I, budget),
                  verify.operad_axioms(I, budget, samples=500, seed=cfg.seed),
                  verify.fixed_point_characterization(I, min(budget, 3), budget + 2)]
        return _suite_report(suites)
    raise io.InputError("action", f"unknown operad action {action!r}")


def _suite_report(suites):
    rows = [{"suite": r.name, "verdict": "PASS" if r.passed else "FAIL", "checked": r.checked,
             "failures": r.failures} for r in suites]
    report = {"suites": rows, "verdict": "PASS" if all(r.passed for r in suites) else "FAIL"}
    if report["verdict"] != "PASS":
        raise Failed(report, "suite failure")
    return report


# -- spans and Mackey functors ------------------------------------------------------------

def _load_span(cfg, path, field):
    obj = io.read_json(path, field)
    G = _span_group(cfg, obj, field)
    s = io.span_from_json(obj, G, field)
    return s


def _check_admissible(I, s, field):
    bad = ix.inadmissible_fibers(I, s.right)
    if bad:
        b, F = bad[0]
        raise Failed({"error": "inadmissible right leg", "file": field, "fiber_over": b,
                      "fiber": io.gset_to_json(F), "fiber_subgroup": F.acting.id},
                     f"{field}: right leg is not admissible, fiber over point {b}")


def _span_report(s):
    return {"span": io.span_to_json(s), "canonical_form": _form_json(bs.canonical_form(s)),
            "automorphisms": bs.automorphism_count(s)}


def _form_json(form):
    return [list(map(lambda v: list(v) if isinstance(v, tuple) else v, o)) for o in form]


def cmd_spans(cfg: WorkspaceConfig, action: str, rest):
    if action == "compose":
        if len(rest) != 2:
            raise io.InputError("files", "compose needs two span files")
        s = _load_span(cfg, rest[0], rest[0])
        t = _load_span(cfg, rest[1], rest[1])
        I = cfg.indexing()
        _check_admissible(I, s, rest[0])
        _check_admissible(I, t, rest[1])
        if s.target != t.source:
            raise io.InputError(rest[1], "source does not match the target of the first span")
        return _span_report(bs.compose_spans(s, t, I))
    if action == "canonicalize":
        if len(rest) != 1:
            raise io.InputError("files", "canonicalize needs one span file")
        s = _load_span(cfg, rest[0], rest[0])
        _check_admissible(cfg.indexing(), s, rest[0])
        return _span_report(s)
    if action == "hom":
        G = cfg.group
        I = cfg.indexing(G)
        A = _gset_arg(cfg, "source", G)
        B = _gset_arg(cfg, "target", G)
        bound = cfg.bound or 4
        classes = bs.hom_groupoid(I, A, B, bound)
        return {"apex_bound": bound, "count": len(classes),
                "classes": [{"canonical_form": _form_json(c.form), "apex": c.span.apex.size,
                             "automorphisms": c.automorphisms} for c in classes]}
    if action == "theta":
        if len(rest) != 1:
            raise io.InputError("files", "theta needs one span file")
        s = _load_span(cfg, rest[0], rest[0])
        G = cfg.group
        if s.target.size == 0:
            raise io.InputError(rest[0], "theta needs a nonempty target")
        H = s.target.stabilizer(0)
        try:
            X = bs.theta(s, H)
        except ValueError as exc:
            raise io.InputError(f"{rest[0]}.target", str(exc)) from None
        return {"subgroup": H.id, "object": io.object_to_json(X), "fixed": nc.is_fixed_object(s.source, X, H)}
    raise io.InputError("action", f"unknown spans action {action!r}")


def _orbit_subgroup(G, text):
    name = text[2:] if text.startswith("G/") else text
    try:
        return ix.resolve_subgroup(G, name)
    except ValueError as exc:
        raise io.InputError("--orbit", str(exc)) from None


def _gset_arg(cfg, name, G):
    path = getattr(cfg.args, name)
    if path is None:
        raise io.InputError(f"--{name}", "required")
    return io.gset_from_json(io.read_json(path, f"--{name}"), G, f"--{name}")


def cmd_mackey(cfg: WorkspaceConfig, action: str, rest):
    if action == "eval":
        if not cfg.args.span or not cfg.args.monoid:
            raise io.InputError("--span" if not cfg.args.span else "--monoid", "required")
        s = _load_span(cfg, cfg.args.span, "--span")
        G = cfg.group
        _check_admissible(cfg.indexing(G), s, "--span")
        M = io.monoid_from_json(io.read_json(cfg.args.monoid, "--monoid"), G, "--monoid")
        constants = []
        for x in range(M.size):
            phi = tuple([x] * s.source.size)
            if bs.is_equivariant_function(s.source, M, phi):
                constants.append({"input": x, "output": list(bs.mackey_eval(M, s, phi))})
        fs = bs.equivariant_functions(s.source, M)
        table = None
        if len(fs) <= 4096:
            table = [{"input": list(f), "output": list(bs.mackey_eval(M, s, f))} for f in fs]
        return {"monoid": M.name, "constants": constants, "table": table, "functions": len(fs)}
    if action == "table":
        G = cfg.group
        I = cfg.indexing(G)
        if not cfg.args.monoid:
            raise io.InputError("--monoid", "required")
        M = io.monoid_from_json(io.read_json(cfg.args.monoid, "--monoid"), G, "--monoid")
        rows = []
        for k, h in I.sorted_pairs():
            K, H = G.subgroup_by_id(k), G.subgroup_by_id(h)
            tr = bs.transfer_span(K, H, I)
            res = bs.restriction_span(K, H)
            fixed_K = [x for x in range(M.size) if all(M.act(g, x) == x for g in K.elements)]
            fixed_H = [x for x in range(M.size) if all(M.act(g, x) == x for g in H.elements)]
            rows.append({"K": k, "H": h, "index": K.index_in(H),
                         "transfer": {str(x): bs.mackey_eval(M, tr, _const_on(tr.source, M, x))[0] for x in fixed_K},
                         "restriction": {str(x): bs.mackey_eval(M, res, _const_on(res.source, M, x))[0]
                                         for x in fixed_H}})
        return {"monoid": M.name, "subgroups": io.subgroup_table(G), "pairs": rows}
    raise io.InputError("action", f"unknown mackey action {action!r}")


def _const_on(X, M, x):
    """The equivariant function on an orbit ``G/K`` with value ``x`` at the base point."""
    out = [None] * X.size
    for g in X.acting.elements:
        out[X.perms[g][0]] = M.act(g, x)
    return tuple(out)


# -- normed categories ----------------------------------------------------------------------

def cmd_normedcat(cfg: WorkspaceConfig, action: str, rest):
    G = cfg.group
    I = cfg.indexing(G)
    if action == "fixed":
        if cfg.args.orbit is None:
            raise io.InputError("--orbit", "required (a subgroup id H for the orbit G/H)")
        H = _orbit_subgroup(G, cfg.args.orbit)
        A = _gset_arg(cfg, "source", G) if cfg.args.source else gs.trivial_gset(G.whole, 1)
        bound = cfg.bound or 3
        if bound > 6:
            raise Overflow(f"bound {bound} is above the supported 6")
        fx = nc.FixedSubcategory(I, A, H, bound).classes
        sl = nc.SliceCategory(I, H, A, bound).classes
        sp = bs.hom_groupoid(I, A, gs.orbit_gset(H), bound * H.index_in(G.whole))
        counts = {"fixed_objects": len(fx), "slices": len(sl), "spans": len(sp)}
        auts = {k: sorted(c.automorphisms for c in cs) for k, cs in
                (("fixed_objects", fx), ("slices", sl), ("spans", sp))}
        ok = len(set(counts.values())) == 1 and len({tuple(v) for v in auts.values()}) == 1
        report = {"orbit": H.id, "bound": bound, "A": io.gset_to_json(A), "counts": counts,
                  "automorphism_orders": auts, "verdict": "EQUAL" if ok else "DIFFERENT"}
        if not ok:
            raise Failed(report, "counts differ")
        return report
    if action == "verify":
        budget = cfg.budget or 2
        if budget > 3:
            raise Overflow(f"budget {budget} is above the supported 3")
        suites = [verify.cons_suite(I, budget, seed=cfg.seed, data_samples=1),
                  verify.adjunction_suite(I, budget), verify.mate_suite(I, budget),
                  verify.sum_suite(I, budget, seed=cfg.seed, morphism_samples=300)]
        return _suite_report(suites)
    raise io.InputError("action", f"unknown normedcat action {action!r}")


# -- rendering -------------------------------------------------------------------------------

def render_text(command, report) -> str:
    lines = [f"normspan {__version__}: {' '.join(command)}"]
    if "verdict" in report:
        lines.append(f"verdict: {report['verdict']}")
    if command[:2] == ["indexing", "enumerate"]:
        lines.append(f"{report['count']} indexing systems")
        for s in report["systems"]:
            strict = ", ".join(f"({k},{h})" for k, h in s["strict"]) or "none"
            lines.append(f"  #{s['index']}: {strict}")
    elif command[:2] == ["indexing", "closure"]:
        lines.append("pairs: " + ", ".join(f"({k},{h})" for k, h in report["system"]["strict"]))
    elif command[:2] == ["operad", "enumerate-norms"]:
        lines.append(f"{report['count']} trees ({report['decorations']})")
        lines.extend("  " + t["text"] for t in report["trees"])
    elif "suites" in report:
        lines.extend(f"  {r['suite']}: {r['verdict']} ({r['checked']} checks)" for r in report["suites"])
    elif "results" in report:
        lines.extend(f"  {r['group']}: {r['verdict']}" for r in report["results"])
    elif "counts" in report and isinstance(report["counts"], dict):
        lines.extend(f"  {k}: {v}" for k, v in sorted(report["counts"].items()))
    elif "constants" in report:
        lines.extend(f"  constant {c['input']} -> {c['output']}" for c in report["constants"])
    elif "canonical_form" in report:
        lines.append(f"canonical form: {report['canonical_form']}")
    else:
        lines.append(io.dumps(report).rstrip())
    return "\n".join(lines) + "\n"


def render_dot(command, report) -> str:
    if command[:2] == ["indexing", "enumerate"]:
        out = ["digraph indexing {", "  rankdir=BT;"]
        for s in report["systems"]:
            label = "\\n".join(f"{k}<{h}" for k, h in s["strict"]) or "minimal"
            out.append(f'  s{s["index"]} [label="{label}"];')
        out.extend(f"  s{a} -> s{b};" for a, b in report["edges"])
        out.append("}")
        return "\n".join(out) + "\n"
    if command[:2] == ["indexing", "closure"]:
        out = ["digraph transfers {"]
        out.extend(f'  "{k}" -> "{h}";' for k, h in report["system"]["strict"])
        out.append("}")
        return "\n".join(out) + "\n"
    raise io.InputError("--format", "dot output exists for indexing enumerate and closure only")


def emit(cfg, command, report) -> str:
    fmt = cfg.format
    if fmt == "json":
        text = io.dumps(dict(cfg.header(command), report=report))
    elif fmt == "dot":
        text = render_dot(command, report)
    else:
        text = render_text(command, report)
    if cfg.out:
        ext = {"json": "json", "dot": "dot", "text": "txt"}[fmt]
        path = os.path.join(cfg.out, "-".join(command[:2]) + "." + ext)
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return text


# -- verify-all ------------------------------------------------------------------------------

def verify_all(cfg) -> int:
    failed = 0
    rows = []
    for number, title, limit, _ in verify.CRITERIA:
        res, dt, in_time = verify.run_criterion(number)
        ok = res.passed and in_time
        failed += not ok
        rows.append({"criterion": number, "title": title, "passed": res.passed, "within_time": in_time,
                     "checked": res.checked, "failures": res.failures})
        print(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {title}  ({dt:.1f}s, limit {limit}s)",
              file=sys.stderr, flush=True)
    report = {"criteria": rows, "verdict": "PASS" if not failed else "FAIL"}
    if cfg.format == "json" or cfg.out:
        emit(cfg, ["verify-all"], report)
    return EXIT_OK if not failed else EXIT_FAILED


# -- argument parsing --------------------------------------------------------------------------

COMMANDS = {
    "indexing": (cmd_indexing, ["enumerate", "validate", "closure"]),
    "operad": (cmd_operad, ["enumerate-norms", "fixed-points", "verify"]),
    "spans": (cmd_spans, ["compose", "canonicalize", "hom", "theta"]),
    "mackey": (cmd_mackey, ["eval", "table"]),
    "normedcat": (cmd_normedcat, ["fixed", "verify"]),
}


def _common(p, suppress=False):
    # the subcommand copy must not overwrite flags given before the subcommand
    kw = {"default": argparse.SUPPRESS} if suppress else {}
    p.add_argument("--group", help="group file (JSON) or a name such as C4, S3", **kw)
    src = p.add_mutually_exclusive_group()
    src.add_argument("--indexing", metavar="FILE", help="indexing system file with canonical pair ids", **kw)
    src.add_argument("--complete", action="store_true", help="the complete indexing system (default)", **kw)
    src.add_argument("--minimal", action="store_true", help="the minimal indexing system", **kw)
    src.add_argument("--gen", metavar="SPEC", help='generating pairs, e.g. "e<C4"', **kw)
    p.add_argument("--bound", type=int, help="size bound (H-sets, slices, apex)", **kw)
    p.add_argument("--budget", type=int, help="tree budget", **kw)
    p.add_argument("--seed", type=int, help="seed for randomized suites (default 0)",
                   **(kw or {"default": 0}))
    p.add_argument("--format", choices=["json", "text", "dot"], **(kw or {"default": "json"}))
    p.add_argument("--out", metavar="DIR", help="write the report into DIR instead of stdout", **kw)
    p.add_argument("--hset", metavar="FILE", help="H-set file for operad fixed-points", **kw)
    p.add_argument("--monoid", metavar="FILE", help="commutative monoid file", **kw)
    p.add_argument("--span", metavar="FILE", help="span file for mackey eval", **kw)
    p.add_argument("--source", metavar="FILE", help="G-set file", **kw)
    p.add_argument("--target", metavar="FILE", help="G-set file", **kw)
    p.add_argument("--orbit", metavar="G/H", help="orbit G/H, with H an id, e, G or C<n>", **kw)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="normspan",
                                     description="Indexing systems, norm operads, normed categories and spans.")
    _common(parser)
    common = argparse.ArgumentParser(add_help=False)
    _common(common, suppress=True)
    parser.add_argument("--version", action="version", version=f"normspan {__version__}")
    parser.add_argument("--verify-all", action="store_true", help="run every acceptance criterion")
    sub = parser.add_subparsers(dest="command")
    for name, (_, actions) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common])
        p.add_argument("action", choices=actions)
        p.add_argument("files", nargs="*")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = WorkspaceConfig(args)
        if args.verify_all:
            return verify_all(cfg)
        if not args.command:
            parser.print_usage(sys.stderr)
            return EXIT_INPUT
        fn = COMMANDS[args.command][0]
        command = [args.command, args.action] + list(args.files)
        try:
            report = fn(cfg, args.action, args.files)
        except Failed as exc:
            emit(cfg, command, exc.report)
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_FAILED
        emit(cfg, command, report)
        return EXIT_OK
    except io.InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except bs.InadmissibleSpan as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except Overflow as exc:
        print(f"error: budget overflow: {exc}", file=sys.stderr)
        return EXIT_OVERFLOW


if __name__ == "__main__":
    sys.exit(main())

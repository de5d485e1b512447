import json
import subprocess
import sys

import pytest

from normspan import burnside as bs
from normspan import cli, io, verify
from normspan.group import cyclic, symmetric

C4_TABLE = {"order": 4, "mul": [[(a + b) % 4 for b in range(4)] for a in range(4)]}


@pytest.fixture
def files(tmp_path):
    G = cyclic(4)
    e, c2, c4 = G.subgroups()
    paths = {}

    def put(name, obj):
        p = tmp_path / name
        p.write_text(json.dumps(obj))
        paths[name] = str(p)

    put("c4.json", C4_TABLE)
    put("free.json", {"size": 4, "action": {"1": [1, 2, 3, 0]}})
    put("half.json", {"size": 2, "subgroup": c2.id, "action": {"2": [1, 0]}})
    put("tr1.json", dict(io.span_to_json(bs.transfer_span(e, c2)), group="C4"))
    put("tr2.json", dict(io.span_to_json(bs.transfer_span(c2, c4)), group="C4"))
    put("zmod3.json", {"zmod": 3})
    put("bad_group.json", {"order": 3, "mul": [[0, 1, 2], [1, 0, 0], [2, 0, 1]]})
    put("bad_indexing.json", {"pairs": [[0, 2]]})
    paths["dir"] = str(tmp_path)
    return paths


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_indexing_enumerate(capsys, files):
    code, out, _ = run(capsys, "indexing", "enumerate", "--group", "C2")
    rep = json.loads(out)
    assert code == 0 and rep["report"]["count"] == 2
    assert rep["tool"] == "normspan" and rep["seed"] == 0 and rep["config"]["group"] == "C2"
    code, out, _ = run(capsys, "indexing", "enumerate", "--group", files["c4.json"], "--format", "dot")
    assert code == 0 and out.startswith("digraph") and out.count("->") == 5


def test_indexing_closure_and_validate(capsys, files):
    code, out, _ = run(capsys, "indexing", "closure", "--group", files["c4.json"], "--gen", "e<C4")
    assert code == 0
    assert ["e", "C2"] in json.loads(out)["report"]["system"]["strict"]
    code, out, _ = run(capsys, "indexing", "validate", "--complete", "--bound", "4", "--format", "text")
    assert code == 0 and "verdict: PASS" in out


def test_malformed_inputs_exit_1_and_name_the_field(capsys, files):
    code, _, err = run(capsys, "indexing", "enumerate", "--group", files["bad_group.json"])
    assert code == 1 and "group.mul" in err
    code, _, err = run(capsys, "indexing", "closure", "--group", "C4", "--indexing", files["bad_indexing.json"])
    assert code == 1 and "--indexing.pairs" in err and "requires" in err
    code, _, err = run(capsys, "indexing", "closure", "--group", "C4", "--gen", "e<C9")
    assert code == 1 and "--gen" in err
    code, _, err = run(capsys, "operad", "fixed-points", "--group", "C4", "--hset", files["dir"] + "/missing.json")
    assert code == 1 and "--hset" in err
    code, _, err = run(capsys, "indexing", "enumerate", "--group", "C4", "--bound", "0")
    assert code == 1 and "--bound" in err


def test_fixed_points(capsys, files):
    code, out, _ = run(capsys, "operad", "fixed-points", "--group", "C4", "--gen", "e<C2",
                       "--hset", files["free.json"], "--format", "text")
    assert code == 0 and "EMPTY (consistent with admissibility criterion)" in out
    code, out, _ = run(capsys, "operad", "fixed-points", "--group", "C4", "--gen", "e<C2", "--hset", files["half.json"])
    rep = json.loads(out)["report"]
    assert code == 0 and rep["admissible"] and rep["witness"] is not None


def test_enumerate_norms_budget_one(capsys):
    code, out, _ = run(capsys, "operad", "enumerate-norms", "--group", "S3", "--complete", "--budget", "1")
    rep = json.loads(out)["report"]
    S3 = symmetric(3)
    pairs = sum(1 for K in S3.subgroups() for H in S3.subgroups() if K <= H)
    # Leaf, plus one norm per admissible pair K <= H, reflexive ones included
    assert pairs == 15
    assert code == 0 and rep["counts"] == [1, pairs] and rep["trees"][0]["text"] == "Leaf"


def test_budget_overflow_exits_3(capsys):
    code, _, err = run(capsys, "operad", "enumerate-norms", "--group", "S3", "--budget", "9")
    assert code == 3 and "overflow" in err
    code, _, _ = run(capsys, "operad", "verify", "--group", "C2", "--budget", "9")
    assert code == 3


def test_operad_verify(capsys):
    code, out, _ = run(capsys, "operad", "verify", "--group", "S3", "--complete", "--budget", "3", "--format", "text")
    assert code == 0 and out.count(": PASS (") == 4


def test_spans(capsys, files):
    code, out, _ = run(capsys, "spans", "compose", files["tr1.json"], files["tr2.json"])
    rep = json.loads(out)["report"]
    assert code == 0 and rep["canonical_form"] == [[0, 0, 0]]
    code, out, err = run(capsys, "spans", "compose", files["tr1.json"], files["tr2.json"], "--minimal")
    assert code == 2 and "fiber over point 0" in err
    assert json.loads(out)["report"]["fiber_subgroup"] == 1
    code, out, _ = run(capsys, "spans", "canonicalize", files["tr2.json"])
    assert code == 0 and json.loads(out)["report"]["automorphisms"] == 1
    code, out, _ = run(capsys, "spans", "hom", "--group", "C4", "--source", files["free.json"],
                       "--target", files["free.json"], "--bound", "4")
    assert code == 0 and json.loads(out)["report"]["count"] == 5
    code, out, _ = run(capsys, "spans", "theta", files["tr2.json"])
    assert code == 0 and json.loads(out)["report"]["fixed"]


def test_mackey_eval_on_constants(capsys, files):
    code, out, _ = run(capsys, "mackey", "eval", "--monoid", files["zmod3.json"], "--span", files["tr1.json"])
    rep = json.loads(out)["report"]
    assert code == 0
    assert {c["input"]: c["output"] for c in rep["constants"]} == {0: [0, 0], 1: [2, 2], 2: [1, 1]}
    code, out, _ = run(capsys, "mackey", "table", "--group", "S3", "--monoid", files["zmod3.json"])
    for row in json.loads(out)["report"]["pairs"]:
        assert row["transfer"] == {str(x): x * row["index"] % 3 for x in range(3)}


def test_normedcat_fixed(capsys):
    for orbit in ("G/e", "G/C2", "G/C4", "1"):
        code, out, _ = run(capsys, "normedcat", "fixed", "--group", "C4", "--orbit", orbit, "--bound", "3")
        counts = json.loads(out)["report"]["counts"]
        assert code == 0 and len(set(counts.values())) == 1
    code, _, err = run(capsys, "normedcat", "fixed", "--group", "S3", "--orbit", "G/C2")
    assert code == 1 and "--orbit" in err


def test_reports_are_byte_reproducible(files, tmp_path):
    outs = []
    for k in range(2):
        d = tmp_path / f"run{k}"
        d.mkdir()
        code = cli.main(["operad", "verify", "--group", files["c4.json"], "--gen", "e<C2", "--budget", "3",
                         "--seed", "7", "--out", str(d)])
        assert code == 0
        outs.append((d / "operad-verify.json").read_bytes())
    assert outs[0] == outs[1]
    assert json.loads(outs[0])["seed"] == 7


def test_flags_before_the_subcommand(capsys):
    code, out, _ = run(capsys, "--group", "C4", "--format", "text", "indexing", "enumerate")
    assert code == 0 and "5 indexing systems" in out


def test_verify_all(capsys, monkeypatch):
    quick = [c for c in verify.CRITERIA if c[0] in (1, 11)]
    monkeypatch.setattr(verify, "CRITERIA", quick)
    code, _, err = run(capsys, "--verify-all")
    assert code == 0 and err.count("PASS") == 2

    def broken():
        res = verify.SuiteResult("broken")
        res.check(False, "always fails")
        return res.done()

    monkeypatch.setattr(verify, "CRITERIA", [(99, "always fails", 10, broken)])
    code, _, err = run(capsys, "--verify-all")
    assert code != 0 and "FAIL" in err


def test_module_entry_point():
    r = subprocess.run([sys.executable, "-m", "normspan", "indexing", "enumerate", "--group", "C3", "--format", "text"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "2 indexing systems" in r.stdout

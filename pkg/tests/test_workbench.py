import io
import json
import os
import subprocess
import sys

import pytest

from ddlab import diagrams as dg
from ddlab import relations as rl
from ddlab import workbench as wb


def cli(*argv):
    out = io.StringIO()
    code = wb.run(list(argv), out)
    return code, out.getvalue()


# argument handling and exit codes

@pytest.mark.parametrize("argv", [
    [],
    ["dims"],
    ["dims", "dd", "x", "2"],
    ["dims", "knot", "1", "1"],
    ["dims", "dd", "1", "Q"],
    ["dims", "dd", "-1", "1"],
    ["verify", "no-such-check"],
    ["verify", "strutless", "--components", "CI"],
    ["verify", "iota-nu", "--components", "3"],
    ["enumerate", "dd", "1"],
    ["templates", "edit"],
    ["dims", "dd", "1", "1", "--format", "xml"],
])
def test_usage_errors_exit_2(argv):
    assert cli(*argv)[0] == wb.EXIT_USAGE


def test_missing_template_file_is_usage_error(tmp_path):
    assert cli("templates", "hash", "--templates", str(tmp_path / "nope.tmpl"))[0] == wb.EXIT_USAGE


def test_bad_template_file_is_usage_error(tmp_path):
    p = tmp_path / "bad.tmpl"
    p.write_text("template t kind=dd\nterm 1: P+@nowhere\n")
    assert cli("templates", "dump", "--templates", str(p))[0] == wb.EXIT_USAGE


def test_budget_exceeded_exit_3():
    assert cli("dims", "dd", "2", "3", "--budget", "100")[0] == wb.EXIT_BUDGET
    assert cli("enumerate", "wedge", "2", "3", "--budget", "100")[0] == wb.EXIT_BUDGET


def test_parse_components():
    assert wb.parse_components("3") == 3
    assert wb.parse_components("CII") == wb.parse_components("C,I,I") == wb.parse_components("c i i") == ("C", "I", "I")
    with pytest.raises(wb.UsageError):
        wb.parse_components("0")


def test_console_script_exit_code():
    r = subprocess.run([sys.executable, "-m", "ddlab.workbench", "dims", "dd", "1", "2"],
                       capture_output=True, text=True)
    assert r.returncode == 0 and "quotient_dim 0" in r.stdout
    r = subprocess.run([sys.executable, "-m", "ddlab.workbench", "dims"], capture_output=True, text=True)
    assert r.returncode == 2 and "ddlab:" in r.stderr


# dims

def test_dims_examples():
    assert wb.cmd_dims("dd", 1, 2).quotient_dim == 0
    assert wb.cmd_dims("dd", 0, 4).quotient_dim == 1
    assert wb.cmd_dims("framed", 3, 1).quotient_dim == 1
    assert wb.cmd_dims("chord", 3, 1).quotient_dim == 3


def test_dims_flags_and_json():
    code, text = cli("dims", "--kind", "dd", "--degree", "1", "--components", "2", "--format", "json")
    assert code == 0
    obj = json.loads(text)
    assert obj["quotient_dim"] == obj["generator_count"] - obj["rank"] == 0
    assert obj["generator_count"] == 5


def test_cache_transparency(tmp_path):
    cache = tmp_path / "c"
    cold = cli("dims", "wedge", "2", "2", "--cache-dir", str(cache))
    files = sorted(os.listdir(cache))
    assert len(files) == 1 and files[0].endswith(".ech")
    data = (cache / files[0]).read_bytes()
    warm = cli("dims", "wedge", "2", "2", "--cache-dir", str(cache))
    assert cold == warm
    assert cli("dims", "wedge", "2", "2") == cold
    assert (cache / files[0]).read_bytes() == data


def test_cache_keyed_by_templates(tmp_path):
    cache = tmp_path / "c"
    wb.cmd_dims("dd", 1, 1, cache_dir=str(cache))
    comment = rl.builtin_text().replace("template 3T kind=dd", "template 3T kind=dd\n# edited", 1)
    same = rl.load_templates(text=comment, include_builtin=False)
    assert rl.templates_hash(same) == rl.templates_hash(rl.load_templates())
    text = rl.builtin_text().replace("term 1: P+@z1", "term 2: P+@z1", 1)
    edited = rl.load_templates(text=text, include_builtin=False)
    wb.cmd_dims("dd", 1, 1, templates=edited, cache_dir=str(cache))
    assert len(os.listdir(cache)) == 2


def test_env_cache_dir(tmp_path, monkeypatch):
    monkeypatch.setenv("DDLAB_CACHE", str(tmp_path / "env"))
    assert wb.resolve_cache_dir() == str(tmp_path / "env")
    assert wb.resolve_cache_dir(str(tmp_path / "flag")) == str(tmp_path / "flag")
    assert cli("dims", "dd", "1", "1")[0] == 0
    assert os.listdir(tmp_path / "env")
    monkeypatch.delenv("DDLAB_CACHE")
    assert wb.resolve_cache_dir() is None


# table

def test_table_small():
    t = wb.cmd_table(1, 3)
    assert [c.quotient_dim for c in t.row("dd", 0)] == [1, 1, 1]
    assert [c.quotient_dim for c in t.row("dd", 1)] == [0, 0, 0]
    assert [c.quotient_dim for c in t.row("wedge", 1)] == [0, 0, 0]
    assert t.ok
    code, text = cli("table", "1", "3")
    assert code == 0 and "PASS expected 1 1 1" in text and "PASS expected 0 0 0" in text


def test_table_parallel_matches_serial():
    a = wb.cmd_table(1, 2, jobs=2)
    b = wb.cmd_table(1, 2)
    assert a.as_json() == b.as_json()


def test_expected_values():
    assert [wb.expected_dd(2, m) for m in (1, 2, 3, 4)] == [0, 0, 1, 4]
    assert wb.expected_dd(3, 1) is None


def test_failing_cell_exits_1():
    t = wb.Table(0, 1, [wb.TableCell("dd", 0, 1, 2, 1)])
    assert not t.ok and "FAIL expected 1" in t.text()


# verify

def test_verification_result_needs_witness():
    with pytest.raises(ValueError):
        wb.VerificationResult("x", {}, "fail")
    with pytest.raises(ValueError):
        wb.VerificationResult("x", {}, "maybe")


@pytest.mark.parametrize("check, degree, comps", [
    ("iota-relations", 1, "2"),
    ("wedge-onto", 1, "3"),
    ("strutless", 2, "1"),
    ("stu-confluence", 2, "1"),
    ("iota-nu", 2, "C"),
    ("nu-wellposed", 2, "II"),
    ("knot-bijection", 2, None),
])
def test_verify_small(check, degree, comps):
    argv = ["verify", check, "--degree", str(degree), "--format", "json"]
    if comps:
        argv += ["--components", comps]
    code, text = cli(*argv)
    obj = json.loads(text)
    assert code == 0 and obj["status"] == "pass", obj
    assert obj["params"]["degree"] == degree


def test_verify_properties_seeded():
    a = wb.cmd_verify("properties", seed=11)
    b = wb.cmd_verify("properties", seed=11)
    assert a.passed and a.as_dict() == b.as_dict()
    assert a.params == {"seed": 11}


# enumerate

def test_enumerate_records():
    code, text = cli("enumerate", "dd", "1", "1")
    assert code == 0
    assert [dg.parse_diagram(b) for b in text.strip().split("\n\n")] == dg.enumerate_diagrams("dd", 1, 1)
    code, text = cli("enumerate", "chord", "2", "1", "--format", "json")
    assert len(json.loads(text)) == 2


def test_enumerate_grouped_classes():
    text = wb.cmd_enumerate("dd", 2, 3)
    heads = [ln for ln in text.splitlines() if ln.startswith("# ")]
    counts = [int(h.rsplit(":", 1)[1]) for h in heads]
    assert len(heads) == 4 and heads[-1].startswith("# total")
    assert sum(counts[:3]) == counts[3] == len(dg.enumerate_diagrams("dd", 2, 3))
    assert any("Two non-isolated pairs" in h for h in heads)
    recs = json.loads(wb.cmd_enumerate("dd", 2, 3, "json"))
    assert {r["class"] for r in recs} == {dg.TWO_ISOLATED, dg.ONE_ISOLATED, dg.NONE_ISOLATED}


def test_enumerate_trivalent():
    code, text = cli("enumerate", "trivalent", "2", "1")
    assert code == 0
    assert len(text.strip().split("\n\n")) == len(dg.enumerate_diagrams("trivalent", 2, 1))


# templates

def test_templates_dump_roundtrip(tmp_path):
    code, text = cli("templates", "dump")
    assert code == 0
    p = tmp_path / "t.tmpl"
    p.write_text(text)
    assert list(rl.load_templates(path=p, include_builtin=False)) == list(rl.load_templates())
    assert cli("templates", "hash", "--templates", str(p)) == cli("templates", "hash")


def test_templates_hash_stable_and_sensitive(tmp_path):
    h1, h2 = cli("templates", "hash"), cli("templates", "hash")
    assert h1 == h2 and len(h1[1].strip()) == 16
    p = tmp_path / "e.tmpl"
    p.write_text(rl.load_templates()["2T"].text().replace("term 1:", "term 3:", 1) + "\n")
    assert cli("templates", "hash", "--templates", str(p))[1] != h1[1]

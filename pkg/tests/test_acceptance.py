"""Acceptance criteria 1-10.

Each test prints one ``criterion N ...: PASS|FAIL`` line (visible without
``-s``) and asserts exactly what the criterion states, at its tolerance and
time limit.
"""

import io
import json
import time

import pytest

from ddlab import diagrams as dg
from ddlab import exactlin as el
from ddlab import maps as mp
from ddlab import relations as rl
from ddlab import workbench as wb


@pytest.fixture
def report(capsys):
    def emit(n, title, ok, detail, elapsed, limit):
        ok = ok and elapsed < limit
        with capsys.disabled():
            print(f"\ncriterion {n} {title}: {'PASS' if ok else 'FAIL'} "
                  f"({detail}; {elapsed:.1f} s, limit {limit} s)")
        return ok
    return emit


def cli(*argv):
    out = io.StringIO()
    code = wb.run(list(argv), out)
    return code, out.getvalue()


def verify(check, *flags):
    code, text = cli("verify", check, "--format", "json", *flags)
    return code, json.loads(text)


def test_criterion_01_dimension_table(report):
    t0 = time.perf_counter()
    code, text = cli("table", "2", "4", "--format", "json")
    elapsed = time.perf_counter() - t0
    cells = json.loads(text)["cells"]
    got = {d: [c["quotient_dim"] for c in cells if c["kind"] == "dd" and c["degree"] == d] for d in (0, 1, 2)}
    want = {0: [1, 1, 1, 1], 1: [0, 0, 0, 0], 2: [0, 0, 1, 4]}
    detail = "; ".join(f"degree {d}: {got[d]} vs {want[d]}" for d in want)
    ok = report(1, "dd dimension table", got == want and code == 0, detail, elapsed, 60)
    assert got == want
    assert ok


def test_criterion_02_degree2_classes(report):
    t0 = time.perf_counter()
    code, text = cli("enumerate", "dd", "2", "3", "--format", "json")
    recs = json.loads(text)
    basis = dg.enumerate_diagrams("dd", 2, 3)
    classes = {r["class"] for r in recs}
    partition = (code == 0 and len(recs) == len(basis)
                 and classes == {dg.TWO_ISOLATED, dg.ONE_ISOLATED, dg.NONE_ISOLATED}
                 and [dg.from_json(r) for r in recs] == basis
                 and all(r["class"] == dg.classify_degree2(dg.from_json(r)) for r in recs))
    system = rl.gen_dd_relations(2, 3)
    dim = system.quotient_dim()
    mu_nonzero = not system.contains(el.combo((1, mp.mu_generator())))
    elapsed = time.perf_counter() - t0
    detail = f"{len(recs)} diagrams in 3 classes: {partition}; quotient dim {dim} (want 1); mu nonzero: {mu_nonzero}"
    ok = report(2, "degree-2 classification", partition and dim == 1 and mu_nonzero, detail, elapsed, 60)
    assert partition and mu_nonzero
    assert dim == 1
    assert ok


def test_criterion_03_iota_relations(report):
    t0 = time.perf_counter()
    code, res = verify("iota-relations", "--degree", "2", "--components", "3")
    elapsed = time.perf_counter() - t0
    ok = report(3, "iota sends relations into 4T", code == 0 and res["status"] == "pass",
                f"{len(res['details'])} strata checked", elapsed, 300)
    assert ok, res["witness"]


def test_criterion_04_iota_nu_identity(report):
    t0 = time.perf_counter()
    code, res = verify("iota-nu", "--degree", "3", "--components", "C")
    elapsed = time.perf_counter() - t0
    ok = report(4, "iota(nu(D)) - D has isolated chords", code == 0 and res["status"] == "pass",
                "degrees 0..3 on one circle", elapsed, 60)
    assert ok, res["witness"]


def test_criterion_05_nu_wellposed(report):
    t0 = time.perf_counter()
    code, res = verify("nu-wellposed", "--degree", "3", "--components", "C")
    elapsed = time.perf_counter() - t0
    ok = report(5, "nu maps 4T into the DD relations", code == 0 and res["status"] == "pass",
                "; ".join(res["details"]), elapsed, 300)
    assert ok, res["witness"]


def test_criterion_06_wedge_onto(report):
    t0 = time.perf_counter()
    code, res = verify("wedge-onto", "--degree", "2", "--components", "3")
    elapsed = time.perf_counter() - t0
    ok = report(6, "wedge images span the DD quotient", code == 0 and res["status"] == "pass",
                f"{len(res['details'])} strata", elapsed, 60)
    assert ok, res["witness"]


def test_criterion_07_strutless(report):
    t0 = time.perf_counter()
    code, res = verify("strutless", "--degree", "2", "--components", "3")
    elapsed = time.perf_counter() - t0
    ok = report(7, "iota(wedges) = strutless span mod 4T", code == 0 and res["status"] == "pass",
                f"{len(res['details'])} strata", elapsed, 300)
    assert ok, res["witness"]


def test_criterion_08_knot_bijection(report):
    t0 = time.perf_counter()
    framed = [rl.gen_framing(d, 1).quotient_dim() for d in range(4)]
    code, res = verify("knot-bijection", "--degree", "3")
    elapsed = time.perf_counter() - t0
    good = framed == [1, 0, 1, 1] and code == 0 and res["status"] == "pass"
    ok = report(8, "knot-case dims and iota rank", good, f"A^c,r dims {framed}; " + "; ".join(res["details"]),
                elapsed, 300)
    assert framed == [1, 0, 1, 1]
    assert ok, res["witness"]


def test_criterion_09_nu3_fails(report):
    t0 = time.perf_counter()
    code, res = verify("nu3-fails", "--degree", "2")
    elapsed = time.perf_counter() - t0
    found = code == 0 and res["status"] == "pass" and bool(res["witness"])
    ok = report(9, "three-strand nu depends on insertion order", found, "; ".join(res["details"]), elapsed, 300)
    assert ok


def test_criterion_10_property_suites(report):
    t0 = time.perf_counter()
    res = wb.check_properties(seed=wb.DEFAULT_SEED, cases=100)
    elapsed = time.perf_counter() - t0
    ok = report(10, "property suites, 100 cases each", res.passed, "; ".join(res.details), elapsed, 120)
    assert ok, res.witness

"""Command line workbench: ``ddlab dims|table|verify|enumerate|templates``.

Exit codes: 0 pass, 1 verification failure, 2 usage error, 3 budget
exceeded.  Echelon forms are cached under ``--cache-dir`` (or the
``DDLAB_CACHE`` directory), keyed by stratum and template hash.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import random
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import diagrams as dg
from . import exactlin as el
from . import maps as M
from . import relations as R
from .exactlin import DimensionReport, EchelonForm, LinearCombo

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

DEFAULT_SEED = 1729

# dd strata with more raw arrangements than this use the certificate path
LARGE_RAW = 2_000_000

DIM_KINDS = ("dd", "wedge", "chord", "framed")


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------------------
# expected values


def expected_dd(degree, m):
    """Closed forms for the DD quotient dimensions (degrees 0..2 only)."""
    if degree == 0:
        return 1
    if degree == 1:
        return 0
    if degree == 2:
        return math.comb(m, 3)
    return None


# ---------------------------------------------------------------------------
# helpers


def parse_components(text):
    """``"3"`` -> 3 circles; ``"CII"``, ``"C,I,I"`` or ``"C I I"`` -> a skeleton."""
    if isinstance(text, (int, tuple)):
        return text
    t = str(text).strip()
    if t.isdigit():
        n = int(t)
        if n < 1:
            raise UsageError("components must be at least 1")
        return n
    skel = tuple(c for c in t.upper() if c not in " ,")
    if not skel or any(c not in "CI" for c in skel):
        raise UsageError(f"bad components {text!r}: give a count or a word in C and I")
    return skel


def skeleton_word(skel) -> str:
    return "".join(dg.as_skeleton(skel))


def resolve_cache_dir(flag=None):
    """Explicit flag first, then ``DDLAB_CACHE``; ``None`` disables caching."""
    if flag:
        return flag
    return os.environ.get("DDLAB_CACHE") or None


def _stamp(kind, templates):
    if kind in ("chord", "framed"):
        return el.content_hash(R.dump_templates(R.chord_templates()))
    return R.templates_hash(templates)


def _system(kind, degree, skel, templates, budget):
    if kind == "dd":
        return R.gen_dd_relations(degree, skel, templates, budget=budget)
    if kind == "wedge":
        return R.gen_wedge_relations(degree, skel, templates, budget=budget)
    if kind == "chord":
        return R.gen_4T(degree, skel, budget=budget)
    if kind == "framed":
        return R.gen_framing(degree, skel, budget=budget)
    raise UsageError(f"unknown kind {kind!r}; choose from {', '.join(DIM_KINDS)}")


def _large(kind, degree, skel, templates) -> bool:
    return kind == "dd" and R.uses_builtin_dd(templates) and dg.raw_count("dd", degree, skel) > LARGE_RAW


def _check_budget(kind, degree, skel, budget):
    raw_kind = "chord" if kind == "framed" else kind
    est = dg.raw_count(raw_kind, degree, skel)
    if est > budget:
        raise dg.BudgetExceeded(est, budget)


def _atomic_write(path, text):
    d = os.path.dirname(os.path.abspath(path))
    os.makedirs(d, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-")
    with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
    os.replace(tmp, path)


# ---------------------------------------------------------------------------
# dims


def cmd_dims(kind, degree, components, templates=None, cache_dir=None,
             budget=dg.DEFAULT_BUDGET) -> DimensionReport:
    """Quotient dimension of one stratum (cached when a cache dir is given)."""
    if kind not in DIM_KINDS:
        raise UsageError(f"unknown kind {kind!r}; choose from {', '.join(DIM_KINDS)}")
    if degree < 0:
        raise UsageError("degree must be non-negative")
    skel = dg.as_skeleton(components)
    templates = R.load_templates() if templates is None else templates
    _check_budget(kind, degree, skel, budget)
    stamp = _stamp(kind, templates)
    base = None
    if cache_dir:
        base = os.path.join(cache_dir, f"{kind}-{degree}-{skeleton_word(skel)}-{stamp}")
    if _large(kind, degree, skel, templates):
        if base and os.path.exists(base + ".dim.json"):
            with open(base + ".dim.json", encoding="utf-8") as fh:
                obj = json.load(fh)
            return DimensionReport(obj["kind"], obj["degree"], tuple(obj["components"]),
                                   obj["generator_count"], obj["relation_count"], obj["rank"],
                                   obj["quotient_dim"], obj["method"])
        c = M.certified_dd_dim(degree, skel, budget)
        method = "certified" if c.certified else f"modular-upper-bound (lower {c.lower})"
        rep = DimensionReport("dd", degree, skel, c.generators, c.relations,
                              c.generators - c.upper, c.upper, method)
        if base and c.certified:
            _atomic_write(base + ".dim.json", json.dumps(rep.as_dict(), sort_keys=True) + "\n")
        return rep
    if base and os.path.exists(base + ".ech"):
        header, basis_lines, ech = el.read_cache(base + ".ech")
        if header["templates"] == stamp and header["kind"] == kind:
            n = len(basis_lines)
            return DimensionReport(kind, degree, skel, n, int(header["relations"]), ech.rank,
                                   n - ech.rank)
    system = _system(kind, degree, skel, templates, budget)
    rep = system.report()
    if base:
        header = {"kind": kind, "degree": degree, "components": skeleton_word(skel),
                  "templates": stamp, "relations": len(system.rows)}
        lines = [dg.serialize_diagram(b).replace("\n", " / ") for b in system.basis]
        el.write_cache(base + ".ech", header, lines, system.echelon)
    return rep


def format_report(rep: DimensionReport, fmt="text") -> str:
    if fmt == "json":
        return json.dumps(rep.as_dict(), sort_keys=True)
    return (f"{rep.kind} degree {rep.degree} on {' '.join(rep.components)}: "
            f"{rep.generator_count} diagrams, {rep.relation_count} relations, "
            f"rank {rep.rank}, quotient_dim {rep.quotient_dim}"
            + ("" if rep.method == "exact" else f" [{rep.method}]"))


# ---------------------------------------------------------------------------
# table


@dataclass
class TableCell:
    kind: str
    degree: int
    components: int
    quotient_dim: int
    expected: object = None

    @property
    def status(self):
        if self.expected is None:
            return None
        return "pass" if self.quotient_dim == self.expected else "fail"

    def as_dict(self):
        return {"kind": self.kind, "degree": self.degree, "components": self.components,
                "quotient_dim": self.quotient_dim, "expected": self.expected, "status": self.status}


@dataclass
class Table:
    max_degree: int
    max_components: int
    cells: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.cells)

    def row(self, kind, degree):
        return [c for c in self.cells if c.kind == kind and c.degree == degree]

    def text(self) -> str:
        ms = range(1, self.max_components + 1)
        out = ["kind   degree  " + "  ".join(f"m={m:<3}" for m in ms) + "  check"]
        for kind in ("dd", "wedge"):
            for d in range(self.max_degree + 1):
                cells = self.row(kind, d)
                vals = "  ".join(f"{c.quotient_dim:<5}" for c in cells)
                exp = [c.expected for c in cells]
                if any(e is not None for e in exp):
                    bad = any(c.status == "fail" for c in cells)
                    tail = ("FAIL expected " if bad else "PASS expected ") + " ".join(str(e) for e in exp)
                else:
                    tail = "-"
                out.append(f"{kind:<6} {d:<7} {vals}  {tail}")
        out.append("table: " + ("all expected cells match" if self.ok else "some expected cells differ"))
        return "\n".join(out)

    def as_json(self) -> str:
        return json.dumps({"ok": self.ok, "cells": [c.as_dict() for c in self.cells]}, sort_keys=True)


def _cell(args):
    kind, d, m, cache_dir, budget, text = args
    templates = R.load_templates(text=text) if text else R.load_templates()
    return cmd_dims(kind, d, m, templates, cache_dir, budget).quotient_dim


def cmd_table(max_degree, max_components, templates_text=None, cache_dir=None,
              budget=dg.DEFAULT_BUDGET, jobs=1) -> Table:
    """DD and wedge quotient dimensions for degrees 0..max, circles 1..max.

    DD cells are compared against the hardcoded closed forms; the
    computation never consults them.
    """
    jobs_list = [(kind, d, m, cache_dir, budget, templates_text)
                 for kind in ("dd", "wedge")
                 for d in range(max_degree + 1)
                 for m in range(1, max_components + 1)]
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as pool:
            dims = list(pool.map(_cell, jobs_list))
    else:
        dims = [_cell(j) for j in jobs_list]
    table = Table(max_degree, max_components)
    for (kind, d, m, *_), q in zip(jobs_list, dims):
        table.cells.append(TableCell(kind, d, m, q, expected_dd(d, m) if kind == "dd" else None))
    return table


# ---------------------------------------------------------------------------
# verify


@dataclass
class VerificationResult:
    check: str
    params: dict
    status: str
    witness: object = None
    details: list = field(default_factory=list)

    def __post_init__(self):
        if self.status not in ("pass", "fail"):
            raise ValueError("status must be pass or fail")
        if self.status == "fail" and not self.witness:
            raise ValueError("a failed verification needs a witness")

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def as_dict(self):
        return {"check": self.check, "params": self.params, "status": self.status,
                "witness": self.witness, "details": self.details}

    def text(self) -> str:
        params = " ".join(f"{k}={v}" for k, v in self.params.items())
        lines = [f"{self.check} [{params}]: {self.status.upper()}"]
        lines.extend("  " + d for d in self.details)
        if self.witness:
            lines.append("witness:")
            lines.extend("  " + ln for ln in str(self.witness).splitlines())
        return "\n".join(lines)


def _result(check, params, failure, details, witness_on_pass=None):
    if failure:
        return VerificationResult(check, params, "fail", failure, details)
    return VerificationResult(check, params, "pass", witness_on_pass, details)


def _row_combo(system, row) -> LinearCombo:
    return LinearCombo([(system.basis[k], c) for k, c in row.items()])


def _dd_membership(degree, skel, templates, budget):
    """(contains(lc), quotient dim, method) for a DD stratum."""
    if _large("dd", degree, skel, templates):
        c = M.certified_dd_dim(degree, skel, budget)
        if not c.certified:
            raise RuntimeError(f"dd degree {degree}: dimension bounds {c.lower}..{c.upper} not certified")
        return c.contains, c.dim, "certified"
    s = R.gen_dd_relations(degree, skel, templates, budget=budget)
    return (lambda lc: not lc or s.contains(lc)), s.quotient_dim(), "exact"


def check_iota_relations(degree, m, templates, budget, **_):
    details = []
    for kind in ("dd", "wedge"):
        for d in range(0, degree + 1):
            for k in range(1, m + 1):
                system = _system(kind, d, dg.circles(k), templates, budget)
                four = R.gen_4T(d, k, budget=budget)
                for row in system.rows:
                    img = M.iota_combo(_row_combo(system, row))
                    if img and not four.contains(img):
                        w = (f"{kind} relation at degree {d}, {k} circles:\n"
                             + M.serialize_combo(_row_combo(system, row))
                             + "\niota image:\n" + M.serialize_combo(img))
                        return _result("iota-relations", {}, w, details)
                details.append(f"{kind} degree {d} m={k}: {len(system.rows)} relations map into 4T")
    return _result("iota-relations", {}, None, details)


def check_nu_wellposed(degree, skeleton, templates, budget, **_):
    skel = skeleton or ("C",)
    details = []
    for d in range(1, degree + 1):
        four = R.gen_4T(d, skel, budget=budget)
        contains, dim, method = _dd_membership(d, skel, templates, budget)
        for row in four.rows:
            lc = _row_combo(four, row)
            img = M.nu_combo(lc)
            if not contains(img):
                w = ("4T relation:\n" + M.serialize_combo(lc) + "\nnu image outside the DD relations:\n"
                     + M.serialize_combo(img))
                return _result("nu-wellposed", {}, w, details)
        details.append(f"degree {d}: {len(four.rows)} 4T relations, nu images in the DD span ({method})")
    return _result("nu-wellposed", {}, None, details)


def check_iota_nu(degree, skeleton, budget, **_):
    skel = skeleton or ("C",)
    details = []
    for d in range(0, degree + 1):
        chords = dg.enumerate_diagrams("chord", d, skel, budget=budget)
        for c in chords:
            diff = M.iota(M.nu(c)) - LinearCombo([(c, 1)])
            bad = [k for k in diff.terms if not dg.has_isolated_chord(k)]
            if bad:
                w = "chord diagram:\n" + dg.serialize_diagram(c) + "\niota(nu(D)) - D:\n" + M.serialize_combo(diff)
                return _result("iota-nu", {}, w, details)
        details.append(f"degree {d}: {len(chords)} diagrams, every extra term has an isolated chord")
    return _result("iota-nu", {}, None, details)


def check_wedge_onto(degree, m, templates, budget, **_):
    details = []
    for d in range(0, degree + 1):
        for k in range(1, m + 1):
            s = R.gen_dd_relations(d, k, templates, budget=budget)
            base = s.echelon
            e = EchelonForm(len(s.basis), dict(base.pivots))
            wedges = dg.enumerate_diagrams("wedge", d, k, budget=budget)
            for w in wedges:
                e.add({s.index[dg.wedge_to_dd(w)]: 1})
            gain = e.rank - base.rank
            details.append(f"degree {d} m={k}: wedge images add rank {gain}, quotient dim {s.quotient_dim()}")
            if gain != s.quotient_dim():
                return _result("wedge-onto", {}, f"degree {d}, {k} circles: images span {gain} of "
                               f"{s.quotient_dim()} dimensions", details)
    return _result("wedge-onto", {}, None, details)


def check_strutless(degree, m, budget, **_):
    details = []
    for d in range(1, degree + 1):
        for k in range(1, m + 1):
            four = R.gen_4T(d, k, budget=budget)
            chords, rows = M.iota_image_span("wedge", d, k, budget=budget)
            st = [four.vector(M.stu_reduce(t)) for t in M.strutless_generators(d, k, budget=budget)]
            ok = el.span_equal(rows + four.rows, st + four.rows, len(four.basis))
            details.append(f"degree {d} m={k}: {len(rows)} wedge images, {len(st)} strutless diagrams, "
                           f"equal spans mod 4T: {ok}")
            if not ok:
                return _result("strutless", {}, f"degree {d}, {k} circles: spans differ modulo 4T", details)
    return _result("strutless", {}, None, details)


def check_knot_bijection(degree, templates, budget, **_):
    details = []
    for d in range(0, degree + 1):
        _, dd_dim, method = _dd_membership(d, ("C",), templates, budget)
        framed = R.gen_framing(d, 1, budget=budget).quotient_dim()
        c = M.certified_dd_dim(d, 1, budget) if R.uses_builtin_dd(templates) else None
        if c is not None:
            img = c.lower
        else:
            four = R.gen_framing(d, 1, budget=budget)
            _, rows = M.iota_image_span("dd", d, 1, budget=budget)
            img = el.rank(four.rows + rows, len(four.basis)) - four.rank
        details.append(f"degree {d}: dim A^DD {dd_dim} ({method}), dim A^c,r {framed}, iota image rank {img}")
        if not dd_dim == framed == img:
            return _result("knot-bijection", {}, details[-1], details)
    return _result("knot-bijection", {}, None, details)


def check_nu3_fails(degree, templates, budget, **_):
    skel = ("I", "I", "I")
    details = []
    found = None
    for d in range(1, degree + 1):
        s = R.gen_dd_relations(d, skel, templates, budget=budget)
        count = 0
        chords = dg.enumerate_diagrams("chord", d, skel, budget=budget)
        for c in chords:
            ids = c.ids()
            a = M.nu_stacked(c, ids)
            b = M.nu_stacked(c, ids[::-1])
            diff = LinearCombo([(a, 1)]) - LinearCombo([(b, 1)])
            if diff and not s.contains(diff):
                count += 1
                if found is None:
                    found = ("chord diagram:\n" + dg.serialize_diagram(c)
                             + "\ntwo insertion orders differ by a vector outside the DD relations:\n"
                             + M.serialize_combo(diff))
        details.append(f"degree {d}: {count} of {len(chords)} inputs depend on the insertion order")
    if found is None:
        return _result("nu3-fails", {}, "no input depends on the insertion order", details)
    return _result("nu3-fails", {}, None, details, witness_on_pass=found)


def check_stu_confluence(degree, m, budget, **_):
    details = []
    for d in range(1, degree + 1):
        for k in range(1, m + 1):
            four = R.gen_4T(d, k, budget=budget)
            gens = [t for t in dg.enumerate_diagrams("trivalent", d, k, budget=budget) if t.internal]
            for t in gens:
                results = M.stu_all_orders(t)
                for r in results[1:]:
                    diff = r - results[0]
                    if diff and not four.contains(diff):
                        w = ("trivalent diagram:\n" + str(t) + "\ntwo reduction orders differ by:\n"
                             + M.serialize_combo(diff))
                        return _result("stu-confluence", {}, w, details)
            details.append(f"degree {d} m={k}: {len(gens)} diagrams, all reduction orders agree mod 4T")
    return _result("stu-confluence", {}, None, details)


def check_properties(seed, cases=100, **_):
    from . import properties

    details = []
    for name, fn in properties.SUITES.items():
        failure = fn(random.Random(f"{seed}-{name}"), cases)
        details.append(f"{name}: {cases} cases " + ("FAIL" if failure else "ok"))
        if failure:
            return _result("properties", {}, f"{name}: {failure}", details)
    return _result("properties", {}, None, details)


CHECKS = {
    "iota-relations": (check_iota_relations, {"degree": 2, "components": 3}),
    "nu-wellposed": (check_nu_wellposed, {"degree": 3, "components": "C"}),
    "iota-nu": (check_iota_nu, {"degree": 3, "components": "C"}),
    "wedge-onto": (check_wedge_onto, {"degree": 2, "components": 3}),
    "strutless": (check_strutless, {"degree": 2, "components": 3}),
    "knot-bijection": (check_knot_bijection, {"degree": 3, "components": "C"}),
    "nu3-fails": (check_nu3_fails, {"degree": 2, "components": "III"}),
    "stu-confluence": (check_stu_confluence, {"degree": 2, "components": 3}),
    "properties": (check_properties, {"degree": 0, "components": 1}),
}


def cmd_verify(check, degree=None, components=None, seed=DEFAULT_SEED, templates=None,
               budget=dg.DEFAULT_BUDGET) -> VerificationResult:
    """Run one named check up to the given degree (and circle count)."""
    if check not in CHECKS:
        raise UsageError(f"unknown check {check!r}; choose from {', '.join(CHECKS)}")
    fn, defaults = CHECKS[check]
    degree = defaults["degree"] if degree is None else degree
    if degree < 0:
        raise UsageError("degree must be non-negative")
    comps = parse_components(defaults["components"] if components is None else components)
    templates = R.load_templates() if templates is None else templates
    skel = dg.as_skeleton(comps)
    params = {"degree": degree}
    if check in ("iota-nu", "nu-wellposed"):
        if skel not in M.NU_SKELETONS:
            raise UsageError(f"{check} runs on one circle or two intervals")
        params["components"] = "".join(skel)
    elif check in ("iota-relations", "wedge-onto", "strutless", "stu-confluence"):
        if "I" in skel:
            raise UsageError(f"{check} takes a number of circles")
        params["components"] = len(skel)
    elif check == "properties":
        params = {"seed": seed}
    res = fn(degree=degree, m=len(skel), skeleton=skel, templates=templates, budget=budget, seed=seed)
    res.params = params
    return res


# ---------------------------------------------------------------------------
# enumerate and templates


def cmd_enumerate(kind, degree, components, fmt="text", budget=dg.DEFAULT_BUDGET) -> str:
    """Serialized diagrams of a stratum; dd degree 2 is grouped by class."""
    if kind not in dg.KINDS + ("trivalent",):
        raise UsageError(f"unknown kind {kind!r}")
    if degree < 0:
        raise UsageError("degree must be non-negative")
    diagrams = dg.enumerate_diagrams(kind, degree, components, budget=budget)
    grouped = kind == "dd" and degree == 2
    if fmt == "json":
        out = []
        for d in diagrams:
            obj = json.loads(dg.serialize_diagram(d, "json"))
            if grouped:
                obj["class"] = dg.classify_degree2(d)
            out.append(obj)
        return json.dumps(out, sort_keys=True)
    if not grouped:
        return "\n\n".join(dg.serialize_diagram(d) for d in diagrams)
    groups = {c: [] for c in dg.CLASS_TITLES}
    for d in diagrams:
        groups[dg.classify_degree2(d)].append(d)
    blocks = []
    for cls, title in dg.CLASS_TITLES.items():
        blocks.append(f"# {title} ({cls}): {len(groups[cls])}")
        blocks.extend(dg.serialize_diagram(d) for d in groups[cls])
    blocks.append(f"# total: {len(diagrams)}")
    return "\n\n".join(blocks)


def cmd_templates(action, templates=None) -> str:
    templates = R.load_templates() if templates is None else templates
    if action == "dump":
        return R.dump_templates(templates)
    if action == "hash":
        return R.templates_hash(templates)
    raise UsageError(f"unknown templates action {action!r}; use dump or hash")


# ---------------------------------------------------------------------------
# command line


def _parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--kind")
    common.add_argument("--degree", type=int)
    common.add_argument("--components")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--cache-dir")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--budget", type=int, default=dg.DEFAULT_BUDGET)
    common.add_argument("--templates", help="template file overriding or adding to the builtin ones")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for table")

    p = argparse.ArgumentParser(prog="ddlab", description="Double dating diagram workbench")
    sub = p.add_subparsers(dest="command", required=True)
    s = sub.add_parser("dims", parents=[common], help="quotient dimension of one stratum")
    s.add_argument("args", nargs="*", metavar="KIND DEGREE COMPONENTS")
    s = sub.add_parser("table", parents=[common], help="dimension table with expected-value checks")
    s.add_argument("args", nargs="*", metavar="MAX_DEGREE MAX_COMPONENTS")
    s = sub.add_parser("verify", parents=[common], help="run a named verification")
    s.add_argument("check", choices=sorted(CHECKS))
    s = sub.add_parser("enumerate", parents=[common], help="list the diagrams of a stratum")
    s.add_argument("args", nargs="*", metavar="KIND DEGREE COMPONENTS")
    s = sub.add_parser("templates", parents=[common], help="dump the active templates or print their hash")
    s.add_argument("action", choices=("dump", "hash"))
    return p


def _positional(args, names, ns):
    vals = list(getattr(ns, "args", []) or [])
    if len(vals) > len(names):
        raise UsageError(f"too many arguments: {' '.join(vals)}")
    out = {}
    for name, v in zip(names, vals):
        out[name] = v
    for name in names:
        flag = getattr(ns, name, None)
        if name not in out and flag is not None:
            out[name] = flag
    return out


def _int(v, what):
    try:
        return int(v)
    except (TypeError, ValueError):
        raise UsageError(f"{what} must be an integer, got {v!r}") from None


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = _parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        templates = R.load_templates(path=ns.templates) if ns.templates else R.load_templates()
        cache = resolve_cache_dir(ns.cache_dir)
        if ns.command == "dims":
            a = _positional(ns, ["kind", "degree", "components"], ns)
            if len(a) < 3:
                raise UsageError("dims needs KIND DEGREE COMPONENTS")
            rep = cmd_dims(a["kind"], _int(a["degree"], "degree"), parse_components(a["components"]),
                           templates, cache, ns.budget)
            print(format_report(rep, ns.format), file=out)
            return EXIT_OK
        if ns.command == "table":
            vals = list(ns.args)
            if len(vals) > 2:
                raise UsageError("table takes MAX_DEGREE MAX_COMPONENTS")
            d = _int(vals[0] if vals else (ns.degree if ns.degree is not None else 2), "degree")
            m = _int(vals[1] if len(vals) > 1 else (ns.components or 4), "components")
            text = None
            if ns.templates:
                with open(ns.templates, encoding="utf-8") as fh:
                    text = fh.read()
            t = cmd_table(d, m, text, cache, ns.budget, ns.jobs)
            print(t.as_json() if ns.format == "json" else t.text(), file=out)
            return EXIT_OK if t.ok else EXIT_FAIL
        if ns.command == "verify":
            res = cmd_verify(ns.check, ns.degree, ns.components, ns.seed, templates, ns.budget)
            print(json.dumps(res.as_dict(), sort_keys=True) if ns.format == "json" else res.text(), file=out)
            return EXIT_OK if res.passed else EXIT_FAIL
        if ns.command == "enumerate":
            a = _positional(ns, ["kind", "degree", "components"], ns)
            if len(a) < 3:
                raise UsageError("enumerate needs KIND DEGREE COMPONENTS")
            print(cmd_enumerate(a["kind"], _int(a["degree"], "degree"), parse_components(a["components"]),
                                ns.format, ns.budget), file=out)
            return EXIT_OK
        if ns.command == "templates":
            print(cmd_templates(ns.action, templates).rstrip("\n"), file=out)
            return EXIT_OK
    except dg.BudgetExceeded as exc:
        print(f"ddlab: budget exceeded: {exc}; raise --budget to run it anyway", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, dg.DiagramError, R.TemplateError, OSError) as exc:
        print(f"ddlab: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_USAGE


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())

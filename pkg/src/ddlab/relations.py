"""Relation templates and the relation generators built from them.

A template describes a local move: some owned objects (pairs, wedges or
chords) placed at named slots, each term a different placement.  An
instance fixes a context diagram and where every slot sits in it; each term
then becomes one diagram and the instance one relation vector.

Instances are found by matching the first term against every basis diagram
of the target degree and then placing the slots the first term leaves
empty.  Every instance has a first-term diagram in the basis, so nothing is
missed; repeated instances are collapsed when the rows are deduplicated up
to sign.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path

from . import diagrams as dg
from .exactlin import RelationSystem, _primitive, content_hash


class TemplateError(ValueError):
    def __init__(self, message, line=None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


OWN_TYPE = {"dd": "pair", "wedge": "wedge", "chord": "chord"}
# token suffix -> (part, endpoints carried by that token)
_SUFFIX = {
    "pair": {"+": (0, 2), "-": (1, 2)},
    "wedge": {"^": (0, 1), "+": (1, 1), "-": (2, 1)},
    "chord": {"": (0, 2)},
}
_POINTS = {"chord": ("1", "2"), "wedge": ("^", "+", "-")}
_WEDGE_PART = {"^": 0, "+": 1, "-": 2}


@dataclass
class Slot:
    name: str
    mode: str  # "on", "before", "after"
    strand: str | None = None
    anchor: str | None = None
    point: str | None = None
    adjacent_to: str | None = None
    near: str | None = None


@dataclass
class Template:
    name: str
    kind: str
    owned: list = field(default_factory=list)  # [(name, type)]
    anchors: dict = field(default_factory=dict)  # name -> type
    slots: dict = field(default_factory=dict)  # name -> Slot
    terms: list = field(default_factory=list)  # [(Fraction, [(owned, suffix, slot)])]
    require: str | None = None
    source: list = field(default_factory=list)

    @property
    def in_place(self) -> bool:
        return self.require is not None

    def text(self) -> str:
        return "\n".join(self.source)


# ---------------------------------------------------------------------------
# parsing

_NAME = r"[A-Za-z_][A-Za-z0-9_]*"
_TOKEN_RE = re.compile(rf"^({_NAME})([+\-^]?)@({_NAME}|in-place)$")


def parse_templates(text: str) -> list[Template]:
    out: list[Template] = []
    cur: Template | None = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        head = words[0]
        if head == "template":
            if cur is not None:
                _check(cur)
            m = re.fullmatch(rf"template\s+(\S+)\s+kind=(\w+)", line)
            if not m:
                raise TemplateError("expected 'template <name> kind=<kind>'", lineno)
            if m.group(2) not in OWN_TYPE:
                raise TemplateError(f"unknown kind {m.group(2)!r}", lineno)
            cur = Template(m.group(1), m.group(2))
            cur._line = lineno
            out.append(cur)
            cur.source.append(line)
            continue
        if cur is None:
            raise TemplateError(f"{head!r} outside a template", lineno)
        cur.source.append(line)
        if head == "own":
            if len(words) < 3 or len(words) % 2 == 0:
                raise TemplateError("expected 'own <type> <name> ...'", lineno)
            for typ, name in zip(words[1::2], words[2::2]):
                if typ != OWN_TYPE[cur.kind]:
                    raise TemplateError(f"{cur.kind} templates own {OWN_TYPE[cur.kind]}s, not {typ}s", lineno)
                cur.owned.append((name, typ))
        elif head == "anchor":
            if len(words) != 3 or words[2] not in ("chord", "wedge"):
                raise TemplateError("expected 'anchor <name> chord|wedge'", lineno)
            if words[2] == "wedge" and cur.kind != "wedge":
                raise TemplateError("wedge anchors need a wedge template", lineno)
            if words[2] == "chord" and cur.kind == "wedge":
                raise TemplateError("wedge templates anchor on wedges", lineno)
            cur.anchors[words[1]] = words[2]
        elif head == "require":
            if len(words) != 3 or words[1] != "isolated":
                raise TemplateError("expected 'require isolated <owned>'", lineno)
            cur.require = words[2]
        elif head == "slot":
            cur.slots[words[1] if len(words) > 1 else ""] = _parse_slot(cur, words, lineno)
        elif head == "term":
            m = re.fullmatch(r"term\s+([^:]+):(.*)", line)
            if not m:
                raise TemplateError("expected 'term <rational>: <placements>'", lineno)
            try:
                coeff = Fraction(m.group(1).strip())
            except (ValueError, ZeroDivisionError):
                raise TemplateError(f"bad coefficient {m.group(1).strip()!r}", lineno) from None
            places = []
            for tok in m.group(2).split():
                tm = _TOKEN_RE.match(tok)
                if not tm:
                    raise TemplateError(f"bad placement {tok!r}", lineno)
                owner, suffix, slot = tm.groups()
                if owner not in dict(cur.owned):
                    raise TemplateError(f"{owner!r} is not an owned object", lineno)
                if slot != "in-place" and slot not in cur.slots:
                    raise TemplateError(f"undeclared slot {slot!r}", lineno)
                if slot != "in-place" and suffix not in _SUFFIX[OWN_TYPE[cur.kind]]:
                    raise TemplateError(f"bad token {owner + suffix!r}", lineno)
                places.append((owner, suffix, slot))
            cur.terms.append((coeff, places))
        else:
            raise TemplateError(f"unknown directive {head!r}", lineno)
    if cur is not None:
        _check(cur)
    return out


def _parse_slot(t: Template, words, lineno) -> Slot:
    near = None
    if len(words) >= 6 and words[-2] == "near":
        near = words[-1]
        if near not in t.slots:
            raise TemplateError(f"undeclared slot {near!r}", lineno)
        words = words[:-2]
    if len(words) == 4 and words[2] == "on":
        return Slot(words[1], "on", strand=words[3], near=near)
    if near is not None:
        raise TemplateError("'near' applies to free slots only", lineno)
    if len(words) == 6 and words[2] == "on" and words[4] == "adjacent-to":
        if words[5] not in t.slots:
            raise TemplateError(f"undeclared slot {words[5]!r}", lineno)
        return Slot(words[1], "on", strand=words[3], adjacent_to=words[5])
    if len(words) == 4 and words[2] in ("before", "after"):
        anchor, _, point = words[3].partition(".")
        if anchor not in t.anchors:
            raise TemplateError(f"undeclared anchor {anchor!r}", lineno)
        if point not in _POINTS[t.anchors[anchor]]:
            raise TemplateError(f"{t.anchors[anchor]} anchors have no point {point!r}", lineno)
        for s in t.slots.values():
            if (s.mode, s.anchor, s.point) == (words[2], anchor, point):
                raise TemplateError(f"two slots {words[2]} {words[3]}", lineno)
        return Slot(words[1], words[2], anchor=anchor, point=point)
    raise TemplateError("expected 'slot <s> on <strand> [adjacent-to <t>]' or 'slot <s> before|after <a>.<p>'", lineno)


def _check(t: Template) -> None:
    line = getattr(t, "_line", None)
    if not t.owned:
        raise TemplateError(f"template {t.name}: nothing owned", line)
    if not t.terms:
        raise TemplateError(f"template {t.name}: no terms", line)
    typ = OWN_TYPE[t.kind]
    if t.require is not None:
        if t.require not in dict(t.owned) or len(t.owned) != 1:
            raise TemplateError(f"template {t.name}: require needs the single owned object", line)
        if len(t.terms) != 1 or [p[2] for p in t.terms[0][1]] != ["in-place"]:
            raise TemplateError(f"template {t.name}: require templates have one in-place term", line)
        return
    for coeff, places in t.terms:
        for name, _ in t.owned:
            for suffix, (_, mult) in _SUFFIX[typ].items():
                n = sum(1 for o, s, _ in places if o == name and s == suffix)
                if n != mult:
                    raise TemplateError(
                        f"template {t.name}: every term must place {name}{suffix} {mult} time(s)", line
                    )
        if any(p[2] == "in-place" for p in places):
            raise TemplateError(f"template {t.name}: in-place needs 'require'", line)


# ---------------------------------------------------------------------------
# loading


def builtin_text(name: str = "builtin.tmpl") -> str:
    return resources.files("ddlab").joinpath("templates", name).read_text(encoding="utf-8")


def load_templates(path=None, text=None, include_builtin: bool = True) -> dict[str, Template]:
    """Builtin templates, overridden or extended by a user file or string.

    A user template with a builtin's name replaces it; new names are added.
    """
    out: dict[str, Template] = {}
    if include_builtin:
        for t in parse_templates(builtin_text()):
            out[t.name] = t
    if path is not None:
        text = Path(path).read_text(encoding="utf-8")
    if text is not None:
        for t in parse_templates(text):
            out[t.name] = t
    return out


def dump_templates(templates: dict[str, Template]) -> str:
    return "\n\n".join(t.text() for t in templates.values()) + "\n"


def templates_hash(templates: dict[str, Template]) -> str:
    return content_hash(dump_templates(templates))


def chord_templates() -> dict[str, Template]:
    return {t.name: t for t in parse_templates(builtin_text("chord.tmpl"))}


# ---------------------------------------------------------------------------
# instantiation
#
# During instantiation a component is a list of items: ("t", code) for a
# context token or ("m", slot) for a slot marker.


def _code(kind, ident, suffix) -> int:
    return ident * dg.UNIT[kind] + _SUFFIX[OWN_TYPE[kind]][suffix][0]


def _isolated(d: dg.Diagram) -> list[int]:
    if d.kind == "dd":
        return dg.isolated_pairs(d)
    if d.kind == "wedge":
        return dg.isolated_wedges(d)
    return [c for c, (a, b) in dg.chords_of(d).items() if d.adjacent(a, b)]


def _point_of(kind, anchor_type, code):
    """Anchor point label for a context token, or None if it cannot serve."""
    if anchor_type == "wedge":
        return "^+-"[code % 3] if kind == "wedge" else None
    return "chord" if kind in ("dd", "chord") else None


class _Instantiator:
    def __init__(self, t: Template, skeleton, radius=None):
        self.t = t
        self.kind = t.kind
        self.skel = skeleton
        self.unit = dg.UNIT[t.kind]
        self.radius = radius
        first = t.terms[0][1]
        self.first_runs: dict[str, list] = {}
        for owner, suffix, slot in first:
            self.first_runs.setdefault(slot, []).append((owner, suffix))
        self.occupied = set(self.first_runs)
        rest = [s for s in t.slots.values() if s.name not in self.occupied]
        # placement order: free slots, then adjacency, then hugging ones
        self.free = [s for s in rest if s.mode == "on" and s.adjacent_to is None]
        self.adj = [s for s in rest if s.mode == "on" and s.adjacent_to is not None]
        self.hug = [s for s in rest if s.mode != "on"]
        self.term_runs = []
        index = {name: i for i, (name, _) in enumerate(t.owned)}
        for coeff, places in t.terms:
            runs: dict[str, list] = {}
            for owner, suffix, slot in places:
                runs.setdefault(slot, []).append((index[owner], suffix))
            c = int(coeff) if coeff.denominator == 1 else coeff
            self.term_runs.append((c, runs))

    # -- matching the first term ---------------------------------------------

    def matches(self, d: dg.Diagram):
        """Yield (state) for every way the first term matches ``d``."""
        t, kind, unit = self.t, self.kind, self.unit
        ids = d.ids()
        pos = d.positions()
        for chosen in itertools.permutations(ids, len(t.owned)):
            own = {name: ident for (name, _), ident in zip(t.owned, chosen)}
            owned_ids = set(chosen)
            entries: dict[int, list] = {}
            for slot, run in self.first_runs.items():
                for i, (owner, suffix) in enumerate(run):
                    entries.setdefault(_code(kind, own[owner], suffix), []).append((slot, i))
            codes = list(entries)
            choices = [itertools.permutations(pos[c]) for c in codes]
            for perm in itertools.product(*choices):
                at = {}
                for c, occ in zip(codes, perm):
                    for e, p in zip(entries[c], occ):
                        at[e] = p
                state = self._check_runs(d, at, own, owned_ids)
                if state is not None:
                    yield state

    def _check_runs(self, d, at, own, owned_ids):
        t, unit = self.t, self.unit
        arr = d.arrangement
        starts = {}
        ends = {}
        for slot, run in self.first_runs.items():
            c0, i0 = at[(slot, 0)]
            n = len(arr[c0])
            closed = self.skel[c0] == "C"
            prev = i0
            for k in range(1, len(run)):
                ck, ik = at[(slot, k)]
                nxt = prev + 1
                if closed:
                    nxt %= n
                if ck != c0 or ik != nxt:
                    return None
                prev = ik
            starts[slot] = (c0, i0)
            ends[slot] = (c0, prev)
        strands = {}
        anchors = {}  # name -> {point: (comp, idx)} in d
        for slot in self.occupied:
            s = t.slots[slot]
            c0, i0 = starts[slot]
            if s.mode == "on":
                if strands.setdefault(s.strand, c0) != c0:
                    return None
                if s.adjacent_to is not None and s.adjacent_to in self.occupied:
                    if _step(arr, self.skel, ends[s.adjacent_to], 1) != (c0, i0):
                        return None
                continue
            nb = _step(arr, self.skel, starts[slot] if s.mode == "after" else ends[slot],
                       -1 if s.mode == "after" else 1)
            if nb is None:
                return None
            code = arr[nb[0]][nb[1]]
            if code // unit in owned_ids:
                return None
            atype = t.anchors[s.anchor]
            lab = _point_of(self.kind, atype, code)
            if lab is None:
                return None
            bound = anchors.get(s.anchor)
            if atype == "wedge":
                if lab != s.point:
                    return None
                got = {p: d.positions()[(code // unit) * unit + _WEDGE_PART[p]][0] for p in "^+-"}
            else:
                other = [q for q in d.positions()[code] if q != nb][0]
                got = {s.point: nb, ("2" if s.point == "1" else "1"): other}
            if bound is not None and bound != got:
                return None
            anchors[s.anchor] = got
        # build the context with markers
        marks = {}
        for slot in self.first_runs:
            marks[starts[slot]] = slot
        skip = {p for p in at.values()}
        ctx = []
        where = {}  # d position -> (comp, index in ctx component)
        for ci, seq in enumerate(arr):
            comp = []
            for i, code in enumerate(seq):
                if (ci, i) in marks:
                    comp.append(("m", marks[(ci, i)]))
                if (ci, i) in skip:
                    continue
                where[(ci, i)] = len(comp)
                comp.append(("t", code))
            ctx.append(comp)
        # anchor points as item identities: (comp, object) pairs, found again later
        anchor_items = {}
        for name, pts in anchors.items():
            anchor_items[name] = {p: (q[0], id_item(ctx, q[0], where[q])) for p, q in pts.items()}
        return ctx, strands, anchor_items

    # -- placing the remaining slots ---------------------------------------------

    def instances(self, d: dg.Diagram):
        for ctx, strands, anchors in self.matches(d):
            yield from self._place_free(ctx, strands, anchors, 0)

    def _place_free(self, ctx, strands, anchors, k):
        if k == len(self.free):
            yield from self._place_rest(ctx, strands, anchors)
            return
        s = self.free[k]
        comps = [strands[s.strand]] if s.strand in strands else range(len(ctx))
        for ci in comps:
            comp = ctx[ci]
            closed = self.skel[ci] == "C"
            n = len(comp)
            gaps = range(max(n, 1)) if closed else range(n + 1)
            for g in gaps:
                if not self._gap_ok(ctx, ci, g, anchors, s):
                    continue
                new = list(ctx)
                new[ci] = comp[:g] + [("m", s.name)] + comp[g:]
                st = dict(strands)
                st[s.strand] = ci
                yield from self._place_free(new, st, anchors, k + 1)

    def _gap_ok(self, ctx, ci, g, anchors, s):
        comp = ctx[ci]
        n = len(comp)
        closed = self.skel[ci] == "C"
        if n == 0:
            return self.radius is None
        left = comp[(g - 1) % n] if (closed or g > 0) else None
        right = comp[g % n] if (closed or g < n) else None
        # never split a hugging marker from its anchor point
        for slot in self.t.slots.values():
            if slot.mode == "on" or slot.name not in self.occupied:
                continue
            pt = anchors.get(slot.anchor, {}).get(slot.point)
            if pt is None or pt[0] != ci:
                continue
            mark = ("m", slot.name)
            if slot.mode == "after" and left is pt[1] and right == mark:
                return False
            if slot.mode == "before" and left == mark and right is pt[1]:
                return False
        if self.radius is None:
            return True
        r = self.radius
        targets = {s.near} if s.near is not None else self.occupied
        for j, it in enumerate(comp):
            if it[0] == "m" and it[1] in targets:
                for side in (g - 1, g):
                    dist = abs(side - j)
                    if closed:
                        dist = min(dist % n, (-dist) % n)
                    if dist <= r - 1:
                        return True
        return False

    def _place_rest(self, ctx, strands, anchors):
        ctx = [list(c) for c in ctx]
        for s in self.adj:
            ci, i = _find(ctx, ("m", s.adjacent_to))
            if s.strand in strands and strands[s.strand] != ci:
                return
            ctx[ci].insert(i + 1, ("m", s.name))
        hugs = self.hug
        need = sorted({s.anchor for s in hugs if s.anchor not in anchors})
        if not need:
            yield self._hug(ctx, anchors)
            return
        for choice in itertools.product(*[self._anchor_choices(ctx, a) for a in need]):
            an = dict(anchors)
            for name, pts in zip(need, choice):
                an[name] = pts
            yield self._hug([list(c) for c in ctx], an)

    def _anchor_choices(self, ctx, name):
        atype = self.t.anchors[name]
        out = []
        found: dict[int, list] = {}
        for ci, comp in enumerate(ctx):
            for it in comp:
                if it[0] == "t":
                    found.setdefault(it[1], []).append((ci, it))
        if atype == "chord":
            for code, occ in found.items():
                out.append({"1": occ[0], "2": occ[1]})
                out.append({"1": occ[1], "2": occ[0]})
        else:
            for ident in sorted({c // 3 for c in found}):
                out.append({p: found[3 * ident + _WEDGE_PART[p]][0] for p in "^+-"})
        return out

    def _hug(self, ctx, anchors):
        for s in self.hug:
            ci, item = anchors[s.anchor][s.point]
            i = _index_of(ctx[ci], item)
            ctx[ci].insert(i + 1 if s.mode == "after" else i, ("m", s.name))
        return ctx

    # -- building terms ------------------------------------------------------------

    def terms(self, ctx, fresh: int):
        """[(coeff, arrangement)] or None if some term is not a valid diagram."""
        out = []
        kind = self.kind
        for coeff, runs in self.term_runs:
            arr = []
            for comp in ctx:
                seq = []
                for it in comp:
                    if it[0] == "t":
                        seq.append(it[1])
                    else:
                        for k, suffix in runs.get(it[1], ()):
                            seq.append(_code(kind, fresh + k, suffix))
                arr.append(tuple(seq))
            if kind == "wedge" and not _legs_ok(arr, fresh, len(self.t.owned)):
                return None
            out.append((coeff, tuple(arr)))
        return out


def id_item(ctx, ci, i):
    return ctx[ci][i]


def _index_of(comp, item):
    for i, it in enumerate(comp):
        if it is item:
            return i
    raise KeyError(item)


def _find(ctx, item):
    for ci, comp in enumerate(ctx):
        for i, it in enumerate(comp):
            if it == item:
                return ci, i
    raise KeyError(item)


def _step(arr, skel, p, delta):
    ci, i = p
    n = len(arr[ci])
    j = i + delta
    if skel[ci] == "C":
        return (ci, j % n) if n > 1 else None
    return (ci, j) if 0 <= j < n else None


def _legs_ok(arr, fresh, count):
    for k in range(count):
        w = fresh + k
        cp = [ci for ci, s in enumerate(arr) if 3 * w + 1 in s]
        cm = [ci for ci, s in enumerate(arr) if 3 * w + 2 in s]
        if cp != cm:
            return False
    return True


# ---------------------------------------------------------------------------
# generation


@dataclass
class GenerationStats:
    instances: dict = field(default_factory=dict)
    rows: dict = field(default_factory=dict)


def instantiate(t: Template, basis, skeleton, radius=None, index=None, stats=None):
    """Relation rows (``{column: int}``, primitive, deduplicated) of one template.

    ``basis`` is the canonical basis of the target stratum; rows are over its
    positions.  ``radius`` restricts the first-term-free slots to gaps within
    that distance of an occupied slot (a smaller generating family; ``None``
    places them everywhere).
    """
    skel = dg.as_skeleton(skeleton)
    unit = dg.UNIT[t.kind]
    if index is None:
        index = {b.arrangement: i for i, b in enumerate(basis)}
    rows = set()
    count = 0
    if t.in_place:
        for i, b in enumerate(basis):
            if _isolated(b):
                rows.add(((i, 1),))
                count += 1
    else:
        inst = _Instantiator(t, skel, radius)
        for b in basis:
            fresh = (max(b.ids()) if b.ids() else 0) + 1
            memo: dict = {}  # repeated instances reuse canonical forms
            for ctx in inst.instances(b):
                terms = inst.terms(ctx, fresh)
                if terms is None:
                    continue
                count += 1
                vec: dict = {}
                for coeff, arr in terms:
                    col = memo.get(arr)
                    if col is None:
                        col = memo[arr] = index[dg._canonical_arrangement(arr, skel, unit)]
                    vec[col] = vec.get(col, 0) + coeff
                vec = {k: v for k, v in vec.items() if v}
                if vec:
                    rows.add(tuple(sorted(_primitive(vec).items())))
    if stats is not None:
        stats.instances[t.name] = count
        stats.rows[t.name] = len(rows)
    return [dict(r) for r in sorted(rows)]


def _system(kind, degree, components, templates, radius, budget, stats):
    skel = dg.as_skeleton(components)
    basis = dg.enumerate_diagrams(kind, degree, skel, budget=budget)
    index = {b.arrangement: i for i, b in enumerate(basis)}
    rows = set()
    for t in templates.values():
        if t.kind != kind:
            continue
        for r in instantiate(t, basis, skel, radius=radius, index=index, stats=stats):
            rows.add(tuple(sorted(r.items())))
    system = RelationSystem(basis, (), kind=kind, degree=degree, components=skel)
    system.rows = [dict(r) for r in sorted(rows)]
    return system


def _kind_texts(templates, kind):
    return sorted(t.text() for t in templates.values() if t.kind == kind)


def uses_builtin_dd(templates) -> bool:
    """Are the DD templates in ``templates`` exactly the builtin ones?"""
    return _kind_texts(templates, "dd") == _kind_texts(load_templates(), "dd")


_STRATA: dict = {}


def dd_stratum(degree, components, budget=dg.DEFAULT_BUDGET):
    """Compiled basis and builtin rows of a DD stratum (memoized per process)."""
    from .fastdd import DDStratum

    skel = dg.as_skeleton(components)
    key = (degree, skel)
    if key not in _STRATA:
        _STRATA[key] = DDStratum(degree, skel, budget)
    return _STRATA[key]


def gen_dd_relations(degree, components, templates=None, radius=None,
                     budget=dg.DEFAULT_BUDGET, stats=None, engine="auto") -> RelationSystem:
    """The DD relation system (1T, 2T, 3T by default) on one stratum.

    ``engine="auto"`` uses the compiled generator when the DD templates are
    the builtin ones and no radius is set; it yields the same rows as the
    template engine (``engine="generic"``).
    """
    templates = load_templates() if templates is None else templates
    fast = engine == "fast" or (
        engine == "auto" and radius is None and stats is None and uses_builtin_dd(templates)
    )
    if fast:
        skel = dg.as_skeleton(components)
        if dg.raw_count("dd", degree, skel) > budget:
            raise dg.BudgetExceeded(dg.raw_count("dd", degree, skel), budget)
        st = dd_stratum(degree, skel, budget)
        system = RelationSystem(st.basis, (), kind="dd", degree=degree, components=skel)
        system.rows = st.dict_rows()
        return system
    return _system("dd", degree, components, templates, radius, budget, stats)


def modular_dd_quotient(degree, components, budget=dg.DEFAULT_BUDGET):
    """(stratum, elimination): builtin DD relations eliminated modulo a prime.

    The quotient dimension it reports is an upper bound on the rational one.
    """
    st = dd_stratum(degree, components, budget)
    return st, st.modular()


def gen_wedge_relations(degree, components, templates=None, radius=None,
                        budget=dg.DEFAULT_BUDGET, stats=None) -> RelationSystem:
    """The wedge relation system on one stratum."""
    templates = load_templates() if templates is None else templates
    return _system("wedge", degree, components, templates, radius, budget, stats)


def gen_4T(degree, components, budget=dg.DEFAULT_BUDGET, stats=None) -> RelationSystem:
    """Chord diagrams modulo the four-term relation."""
    t = chord_templates()
    return _system("chord", degree, components, {"4T": t["4T"]}, None, budget, stats)


def gen_framing(degree, components, budget=dg.DEFAULT_BUDGET, stats=None) -> RelationSystem:
    """Chord diagrams modulo 4T and the framing (isolated chord) relation."""
    return _system("chord", degree, components, chord_templates(), None, budget, stats)

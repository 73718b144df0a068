"""Maps between diagram spaces.

* ``iota``: DD or wedge diagram -> combination of chord diagrams, summing
  over one chosen chord per pair (sign ``-1`` per chosen ``-`` chord).
* ``nu``: chord diagram on one circle or two intervals -> DD diagram, each
  chord getting a ``-`` partner placed at the bottom.
* ``stu_reduce``: trivalent diagram -> chord combination via STU.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import diagrams as dg
from . import fastdd
from .exactlin import LinearCombo, RelationSystem, reduce
from .relations import gen_framing, modular_dd_quotient
from .trivalent import TrivalentDiagram, canonical_form, enumerate_trivalent, make_trivalent


# ---------------------------------------------------------------------------
# iota


def iota_expansion(d: dg.Diagram) -> list[tuple[int, dg.Diagram]]:
    """The ``2^m`` signed selection terms of ``iota(d)``, before merging."""
    if d.kind not in ("dd", "wedge"):
        raise dg.DiagramError(f"iota needs a dd or wedge diagram, not {d.kind}")
    unit = d.unit
    ids = d.ids()
    out = []
    for choice in itertools.product((0, 1), repeat=len(ids)):
        pick = dict(zip(ids, choice))
        sign = -1 if sum(choice) % 2 else 1
        arr = []
        for seq in d.arrangement:
            comp = []
            for c in seq:
                ident, part = divmod(c, unit)
                if d.kind == "dd":
                    keep = part == pick[ident]
                else:
                    keep = part == 0 or part == 1 + pick[ident]
                if keep:
                    comp.append(ident)
            arr.append(tuple(comp))
        out.append((sign, dg.Diagram("chord", d.skeleton, tuple(arr)).canonical()))
    return out


def iota(d: dg.Diagram) -> LinearCombo:
    lc = LinearCombo()
    for sign, c in iota_expansion(d):
        lc.add_term(c, sign)
    return lc


def iota_combo(lc: LinearCombo) -> LinearCombo:
    """``iota`` extended linearly."""
    out = LinearCombo()
    for d, c in lc.terms.items():
        for k, v in iota(d).terms.items():
            out.add_term(k, c * v)
    return out


def iota_image_span(kind: str, degree: int, components, budget=dg.DEFAULT_BUDGET):
    """(chord basis, rows): ``{iota(D)}`` over the stratum, as chord-basis vectors."""
    skel = dg.as_skeleton(components)
    chords = dg.enumerate_diagrams("chord", degree, skel, budget=budget)
    index = {c: i for i, c in enumerate(chords)}
    rows = []
    for d in dg.enumerate_diagrams(kind, degree, skel, budget=budget):
        v = iota(d).to_vector(index)
        rows.append({k: c for k, c in v.items()})
    return chords, rows


# ---------------------------------------------------------------------------
# combination text


def serialize_combo(lc: LinearCombo, format: str = "text") -> str:
    """One ``<rational> * <diagram>`` line per term, sorted by key.

    The diagram is written on one line with `` / `` between its fields,
    which :func:`~ddlab.diagrams.parse_diagram` accepts back.
    """
    items = sorted(lc.terms.items())
    if format == "json":
        return json.dumps([
            {"coeff": str(c), "diagram": json.loads(dg.serialize_diagram(d, "json"))} for d, c in items
        ], sort_keys=True)
    return "\n".join(f"{c} * " + dg.serialize_diagram(d).replace("\n", " / ") for d, c in items)


def parse_combo(text: str) -> LinearCombo:
    text = text.strip()
    lc = LinearCombo()
    if text.startswith("["):
        for obj in json.loads(text):
            d, c = dg.from_json(obj["diagram"]), Fraction(obj["coeff"])
            if d.kind == "trivalent":
                sign, d = canonical_form(d)
                c *= sign
            else:
                d = d.canonical()
            if c:
                lc.add_term(d, c)
        return lc
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        coeff, sep, rest = line.partition(" * ")
        if not sep:
            raise dg.ParseError("expected '<rational> * <diagram>'", lineno, 1)
        try:
            c = Fraction(coeff.strip())
        except ValueError:
            raise dg.ParseError(f"bad coefficient {coeff.strip()!r}", lineno, 1) from None
        d = dg.parse_diagram(rest)
        if d.kind == "trivalent":
            sign, d = canonical_form(d)
            c *= sign
        else:
            d = d.canonical()
        if c:
            lc.add_term(d, c)
    return lc


# ---------------------------------------------------------------------------
# certified DD dimensions


@dataclass
class CertifiedDimension:
    """Two-sided bound on a DD quotient dimension.

    ``upper`` is the quotient dimension modulo a prime (never below the
    rational one).  ``lower`` is the rank of the iota image modulo 4T and
    framing, valid when ``compatible`` (iota sends every relation row into
    4T + framing).  When they agree the dimension is exact and iota induces
    an injective map, so membership can be decided on the chord side.
    """

    degree: int
    components: tuple
    generators: int
    relations: int
    upper: int
    lower: int
    compatible: bool
    _framed: RelationSystem = field(repr=False, default=None)
    _stratum: object = field(repr=False, default=None)
    _modular: object = field(repr=False, default=None)

    @property
    def certified(self) -> bool:
        return self.compatible and self.upper == self.lower

    @property
    def dim(self):
        return self.upper if self.certified else None

    def contains(self, lc: LinearCombo) -> bool:
        """Exact membership of a DD combination in the relation span."""
        if not self.certified:
            raise ValueError("dimension not certified; exact membership unavailable")
        exact = self._framed.contains(self._framed.vector(iota_combo(lc)))
        vec = {self._stratum.index[d.arrangement]: int(c) for d, c in lc.terms.items()
               if c.denominator == 1}
        if len(vec) == len(lc.terms) and self._modular.contains(vec) != exact:
            raise RuntimeError("modular and exact membership disagree")
        return exact


_CERTIFIED: dict = {}


def certified_dd_dim(degree, components, budget=dg.DEFAULT_BUDGET) -> CertifiedDimension:
    """Bound the builtin DD quotient dimension from both sides (memoized)."""
    skel = dg.as_skeleton(components)
    if (degree, skel) not in _CERTIFIED:
        _CERTIFIED[(degree, skel)] = _certify(degree, skel, budget)
    return _CERTIFIED[(degree, skel)]


def _certify(degree, skel, budget):
    st, mod = modular_dd_quotient(degree, skel, budget)
    framed = gen_framing(degree, skel, budget=budget)
    ech = reduce(framed.rows, len(framed.basis), reduced=False)
    base = ech.rank
    m = fastdd.iota_matrix(st.keys, degree, skel, framed.basis)
    for row in np.unique(m, axis=0):
        v = {i: int(x) for i, x in enumerate(row) if x}
        if v:
            ech.add(v)
    lower = ech.rank - base
    # iota of every relation row, as distinct chord vectors
    ok = True
    inv = np.empty(len(st.perm), np.int64)
    inv[st.perm] = np.arange(len(st.perm))
    small = [{int(inv[k]): c for k, c in r.items()} for r in st.one + st.two]
    vecs = [sum(c * m[k] for k, c in r.items()) for r in small]
    if len(st.three):
        mask = (1 << 21) - 1
        cols = [inv[(st.three >> sh) & mask] for sh in (42, 21, 0)]
        vecs.extend(np.unique(m[cols[0]] + m[cols[1]] + m[cols[2]], axis=0))
    seen = set()
    check = reduce(framed.rows, len(framed.basis), reduced=False)
    for v in vecs:
        t = tuple(int(x) for x in v)
        if t in seen:
            continue
        seen.add(t)
        if not check.contains({i: x for i, x in enumerate(t) if x}):
            ok = False
            break
    return CertifiedDimension(degree, skel, len(st.basis), st.row_count(), mod.quotient_dim,
                              lower, ok, framed, st, mod)


# ---------------------------------------------------------------------------
# nu


NU_SKELETONS = (("C",), ("I", "I"))


def nu(d: dg.Diagram) -> dg.Diagram:
    """The DD diagram with each chord ``k`` as ``k+`` and a new ``k-`` at the bottom.

    One circle: the ``-`` chords form one nested block at the start of the
    canonical serialization, chord 1 innermost.  Two intervals: the ``-``
    endpoints are appended past the strand ends, chord 1 first.
    """
    if d.kind != "chord":
        raise dg.DiagramError("nu needs a chord diagram")
    if d.skeleton not in NU_SKELETONS:
        raise dg.DiagramError(
            f"nu is defined on one circle or two intervals, not {' '.join(d.skeleton)}: "
            "with three or more strands the order of the added negative chords matters"
        )
    d = d.canonical()
    if d.skeleton == ("C",):
        n = d.degree
        block = [2 * k + 1 for k in range(n, 0, -1)] + [2 * k + 1 for k in range(1, n + 1)]
        seq = block + [2 * c for c in d.arrangement[0]]
        return dg.make("dd", d.skeleton, [seq])
    return nu_stacked(d, d.ids())


def nu_stacked(d: dg.Diagram, order) -> dg.Diagram:
    """Naive strand version of ``nu``: ``-`` endpoints appended at the strand
    ends, one chord at a time in ``order``.  Defined on any interval skeleton."""
    if any(c != "I" for c in d.skeleton):
        raise dg.DiagramError("stacking at the strand ends needs interval components")
    arr = [[2 * c for c in seq] for seq in d.arrangement]
    where = d.positions()
    for k in order:
        for ci, _ in where[k]:
            arr[ci].append(2 * k + 1)
    return dg.make("dd", d.skeleton, arr)


def nu_combo(lc: LinearCombo) -> LinearCombo:
    out = LinearCombo()
    for d, c in lc.terms.items():
        out.add_term(nu(d), c)
    return out


# ---------------------------------------------------------------------------
# STU


def chord_to_trivalent(d: dg.Diagram) -> TrivalentDiagram:
    legs, ends = [], {}
    nxt = 1
    for seq in d.arrangement:
        comp = []
        for c in seq:
            ends.setdefault(c, []).append(nxt)
            comp.append(nxt)
            nxt += 1
        legs.append(tuple(comp))
    edges = [((a, 0), (b, 0)) for a, b in ends.values()]
    return make_trivalent(d.skeleton, legs, 0, edges)


def trivalent_to_chord(t: TrivalentDiagram) -> dg.Diagram:
    if t.internal:
        raise dg.DiagramError("diagram still has internal vertices")
    chord_of = {}
    for i, (a, b) in enumerate(t.edges, 1):
        chord_of[a[0]] = chord_of[b[0]] = i
    arr = [tuple(chord_of[v] for v in s) for s in t.legs]
    return dg.make("chord", t.skeleton, arr)


def stu_sites(t: TrivalentDiagram) -> list[tuple[int, int]]:
    """Eligible (internal vertex, external vertex) pairs joined by an edge."""
    e = t.externals
    out = []
    for a, b in t.edges:
        for x, v in ((a, b), (b, a)):
            if x[0] <= e < v[0]:
                out.append((v[0], x[0]))
    return sorted(set(out))


def stu_step(t: TrivalentDiagram, site) -> list[tuple[int, TrivalentDiagram]]:
    """One STU rewrite at ``site``: ``[(+1, T), (-1, U)]`` (canonical, zeros kept out)."""
    v, x = site
    nb = t.neighbours()
    s = nb[(x, 0)][1]
    a = nb[(v, (s + 1) % 3)]
    b = nb[(v, (s + 2) % 3)]
    out = []
    for sign, first, second in ((1, a, b), (-1, b, a)):
        # new externals p, q replace x on the skeleton; vertex v disappears
        legs = []
        for seq in t.legs:
            comp = []
            for u in seq:
                comp.extend(("p", "q") if u == x else (u,))
            legs.append(comp)
        edges = []
        for h1, h2 in t.edges:
            if v in (h1[0], h2[0]):
                continue
            edges.append((h1, h2))
        edges.append((("p", 0), first))
        edges.append((("q", 0), second))
        out.append((sign, _renumber(t.skeleton, legs, edges, t.internal - 1)))
    res = []
    for sign, u in out:
        sg, c = canonical_form(u)
        if sg:
            res.append((sign * sg, c))
    return res


def _renumber(skeleton, legs, edges, internal):
    order = [u for s in legs for u in s]
    vmap = {u: i for i, u in enumerate(order, 1)}
    inner = sorted({h[0] for e in edges for h in e if h[0] not in vmap})
    for j, u in enumerate(inner):
        vmap[u] = len(order) + 1 + j
    new_legs = tuple(tuple(vmap[u] for u in s) for s in legs)
    new_edges = tuple(sorted(tuple(sorted(((vmap[a[0]], a[1]), (vmap[b[0]], b[1])))) for a, b in edges))
    return TrivalentDiagram(skeleton, new_legs, internal, new_edges)


def stu_reduce(t: TrivalentDiagram, chooser=None) -> LinearCombo:
    """Chord combination equal to ``t`` by STU.

    Always rewrites at the least eligible site of the canonical form unless
    ``chooser(diagram, sites)`` picks another.
    """
    sign, t = canonical_form(t)
    todo = LinearCombo()
    if sign:
        todo.add_term(t, sign)
    out = LinearCombo()
    while todo:
        u, c = min(todo.terms.items(), key=lambda kv: (-kv[0].internal, kv[0]))
        del todo.terms[u]
        if u.internal == 0:
            out.add_term(trivalent_to_chord(u), c)
            continue
        sites = stu_sites(u)
        if not sites:
            raise dg.DiagramError("no vertex next to the skeleton; cannot reduce")
        site = sites[0] if chooser is None else chooser(u, sites)
        for sg, w in stu_step(u, site):
            todo.add_term(w, c * sg)
    return out


def stu_all_orders(t: TrivalentDiagram) -> list[LinearCombo]:
    """``stu_reduce`` results over every possible sequence of site choices."""
    sign, t = canonical_form(t)
    if not sign:
        return [LinearCombo()]
    if t.internal == 0:
        return [LinearCombo([(trivalent_to_chord(t), sign)])]
    results = []
    for site in stu_sites(t):
        parts = [(sg * sign, stu_all_orders(w)) for sg, w in stu_step(t, site)]
        for pick in itertools.product(*[p[1] for p in parts]):
            lc = LinearCombo()
            for (sg, _), r in zip(parts, pick):
                lc = lc + r.scale(sg)
            results.append(lc)
    return results


def strutless_generators(degree, components, budget=dg.DEFAULT_BUDGET) -> list[TrivalentDiagram]:
    return enumerate_trivalent(degree, components, budget=budget, strutless=True)


# ---------------------------------------------------------------------------
# the Milnor generator


def mu_generator() -> dg.Diagram:
    """Degree 2 on three circles: pair 1 joins circles 1, 2 and pair 2 joins
    circles 2, 3, their endpoints alternating on circle 2."""
    return dg.make("dd", ("C", "C", "C"), [(2, 3), (2, 4, 3, 5), (4, 5)])

"""Trivalent (Jacobi) diagrams: chord diagrams allowed internal 3-valent vertices.

A diagram has external vertices sitting on the skeleton (``legs``) and
internal vertices with a cyclic orientation of their three slots.  Dashed
edges join half-edges ``(vertex, slot)``; an external vertex has the single
slot 0.

Isomorphism is decided by brute force over circle rotations and vertex
orientations, fine at the small degrees this package works at.  Reversing
a vertex orientation flips the sign (antisymmetry), so a diagram
isomorphic to its own negative is zero.
"""

from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass

from . import diagrams as dg


@dataclass(frozen=True, order=True)
class TrivalentDiagram:
    """``legs[c]`` lists external vertex ids along component ``c``; internal
    vertices are numbered after the externals; ``edges`` pairs half-edges."""

    skeleton: tuple
    legs: tuple
    internal: int
    edges: tuple

    kind = "trivalent"

    @property
    def externals(self) -> int:
        return sum(len(s) for s in self.legs)

    @property
    def degree(self) -> int:
        return (self.externals + self.internal) // 2

    @property
    def components(self) -> int:
        return len(self.skeleton)

    def neighbours(self) -> dict:
        out = {}
        for a, b in self.edges:
            out[a] = b
            out[b] = a
        return out

    def is_chord(self) -> bool:
        return self.internal == 0

    def struts(self) -> list:
        e = self.externals
        return [(a, b) for a, b in self.edges if a[0] <= e and b[0] <= e]

    def dashed_components(self) -> list[set]:
        n = self.externals + self.internal
        parent = list(range(n + 1))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in self.edges:
            parent[find(a[0])] = find(b[0])
        groups: dict = {}
        for v in range(1, n + 1):
            groups.setdefault(find(v), set()).add(v)
        return list(groups.values())

    def canonical(self):
        """(sign, canonical diagram); sign 0 means the diagram vanishes."""
        return canonical_form(self)

    def key(self):
        return canonical_form(self)[1]

    def __str__(self) -> str:
        return serialize_trivalent(self)


def _validate(t: TrivalentDiagram) -> None:
    e = t.externals
    n = e + t.internal
    ids = sorted(v for s in t.legs for v in s)
    if ids != list(range(1, e + 1)):
        raise dg.DiagramError("external vertices must be numbered 1..E along the skeleton")
    want = {(v, 0) for v in range(1, e + 1)} | {(v, s) for v in range(e + 1, n + 1) for s in range(3)}
    seen = []
    for a, b in t.edges:
        seen += [tuple(a), tuple(b)]
    if sorted(seen) != sorted(want):
        raise dg.DiagramError("every half-edge must lie on exactly one edge")
    for comp in t.dashed_components():
        if not any(v <= e for v in comp):
            raise dg.DiagramError("every dashed component must touch the skeleton")


def make_trivalent(skeleton, legs, internal, edges, canonical=True):
    skel = dg.as_skeleton(skeleton)
    legs = tuple(tuple(int(v) for v in s) for s in legs)
    if len(legs) != len(skel):
        raise dg.DiagramError("legs and skeleton disagree on the number of components")
    edges = tuple(sorted(tuple(sorted((tuple(a), tuple(b)))) for a, b in edges))
    t = TrivalentDiagram(skel, legs, int(internal), edges)
    _validate(t)
    return canonical_form(t)[1] if canonical else t


def canonical_form(t: TrivalentDiagram):
    # Labels come from a traversal: externals in skeleton order, then
    # internal vertices in order of discovery.  A vertex entered through
    # slot s gets slot order (s, s+1, s+2) or the reflected (s, s+2, s+1);
    # those bits are the only free choices besides circle rotations.
    e = t.externals
    k = t.internal
    nb = t.neighbours()
    rots = [range(len(s)) if (c == "C" and s) else (0,) for s, c in zip(t.legs, t.skeleton)]
    best = None
    signs = set()
    for combo in itertools.product(*rots):
        order = [v for s, r in zip(t.legs, combo) for v in s[r:] + s[:r]]
        vmap = {v: i for i, v in enumerate(order, 1)}
        legs = []
        nxt = 1
        for s in t.legs:
            legs.append(tuple(range(nxt, nxt + len(s))))
            nxt += len(s)
        legs = tuple(legs)
        for bits in itertools.product((0, 1), repeat=k):
            lab = dict(vmap)
            slotmap = {}
            found = []
            sign = 1

            def visit(h):
                nonlocal sign
                v, s = h
                if v in lab:
                    return
                b = bits[len(found)]
                lab[v] = e + 1 + len(found)
                found.append(v)
                seq = (s, (s + 1) % 3, (s + 2) % 3) if not b else (s, (s + 2) % 3, (s + 1) % 3)
                slotmap[v] = {old: new for new, old in enumerate(seq)}
                if b:
                    sign = -sign

            for v in order:
                visit(nb[(v, 0)])
            i = 0
            while i < len(found):
                v = found[i]
                inv = {new: old for old, new in slotmap[v].items()}
                for new in range(3):
                    visit(nb[(v, inv[new])])
                i += 1
            if len(found) != k:
                raise dg.DiagramError("dashed component not touching the skeleton")

            def he(h):
                v, s = h
                return (lab[v], slotmap[v][s] if v in slotmap else 0)

            edges = tuple(sorted(tuple(sorted((he(a), he(b)))) for a, b in t.edges))
            cand = (legs, edges)
            if best is None or cand < best:
                best = cand
                signs = {sign}
            elif cand == best:
                signs.add(sign)
    out = TrivalentDiagram(t.skeleton, best[0], k, best[1])
    if len(signs) > 1:
        return 0, out
    return signs.pop(), out


# ---------------------------------------------------------------------------
# enumeration


def _matchings(items):
    if not items:
        yield []
        return
    a = items[0]
    for i in range(1, len(items)):
        rest = items[1:i] + items[i + 1:]
        for m in _matchings(rest):
            yield [(a, items[i])] + m


def _double_factorial(n):
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def enumerate_trivalent(degree, components, budget=dg.DEFAULT_BUDGET, strutless=False):
    """Nonzero trivalent diagrams of one stratum, one per isomorphism class."""
    skel = dg.as_skeleton(components)
    m = len(skel)
    est = 0
    shapes = []
    for k in range(0, 2 * degree + 1):
        e = 2 * degree - k
        if (e + 3 * k) % 2:
            continue
        if e == 0 and degree > 0:
            continue
        ncomp = len(list(_compositions(e, m)))
        est += ncomp * _double_factorial(e + 3 * k - 1) * max(1, k)
        shapes.append((k, e))
    if est > budget:
        raise dg.BudgetExceeded(est, budget)
    seen = {}
    for k, e in shapes:
        if strutless and k == 0:
            continue
        half = [(v, 0) for v in range(1, e + 1)] + [(v, s) for v in range(e + 1, e + k + 1) for s in range(3)]
        for counts in _compositions(e, m):
            legs, nxt = [], 1
            for c in counts:
                legs.append(tuple(range(nxt, nxt + c)))
                nxt += c
            for mt in _matchings(half):
                edges = tuple(sorted(tuple(sorted(p)) for p in mt))
                if any(a[0] == b[0] for a, b in edges):
                    continue  # a tadpole is its own negative
                t = TrivalentDiagram(skel, tuple(legs), k, edges)
                if strutless and t.struts():
                    continue
                if not all(any(v <= e for v in c) for c in t.dashed_components()):
                    continue
                sign, c = canonical_form(t)
                if sign:
                    seen[c] = True
    return sorted(seen)


def _compositions(n, parts):
    if parts == 0:
        if n == 0:
            yield ()
        return
    if parts == 1:
        yield (n,)
        return
    for i in range(n + 1):
        for rest in _compositions(n - i, parts - 1):
            yield (i,) + rest


# ---------------------------------------------------------------------------
# text and JSON


def _name(v, e):
    return f"e{v}" if v <= e else f"v{v - e}"


def _slot_edges(t: TrivalentDiagram) -> dict:
    """Internal vertex -> 1-based edge indices at slots 0, 1, 2."""
    e = t.externals
    out = {v: [0, 0, 0] for v in range(e + 1, e + t.internal + 1)}
    for i, (a, b) in enumerate(t.edges, 1):
        for v, s in (a, b):
            if v > e:
                out[v][s] = i
    return out


def serialize_trivalent(t: TrivalentDiagram, format: str = "text") -> str:
    """Text: ``e<j>`` legs on the components, ``edges: (a b) ...`` and
    ``orient: v<i>=(x,y,z)`` giving each internal vertex's cyclic order of edge
    indices (1-based positions in the edge list)."""
    if format == "json":
        return json.dumps(trivalent_to_json(t), sort_keys=True)
    e = t.externals
    lines = ["kind: trivalent", "skeleton: " + " ".join(t.skeleton)]
    for i, s in enumerate(t.legs, 1):
        lines.append(f"comp {i}:" + "".join(f" e{v}" for v in s))
    lines.append("edges:" + "".join(f" ({_name(a[0], e)} {_name(b[0], e)})" for a, b in t.edges))
    orient = _slot_edges(t)
    lines.append("orient:" + "".join(
        f" {_name(v, e)}=({','.join(map(str, orient[v]))})" for v in sorted(orient)))
    return "\n".join(lines)


def trivalent_to_json(t: TrivalentDiagram) -> dict:
    e = t.externals
    orient = _slot_edges(t)
    return {
        "kind": "trivalent",
        "skeleton": list(t.skeleton),
        "arrangement": [[f"e{v}" for v in s] for s in t.legs],
        "graph": {
            "edges": [[_name(a[0], e), _name(b[0], e)] for a, b in t.edges],
            "orient": {_name(v, e): orient[v] for v in sorted(orient)},
        },
    }


def _vertex(tok, e_count, lineno=None):
    m = re.fullmatch(r"([ev])(\d+)", tok)
    if not m or int(m.group(2)) < 1:
        raise dg.ParseError(f"bad vertex {tok!r}", lineno)
    n = int(m.group(2))
    return n if m.group(1) == "e" else e_count + n


def _build(skel, legs, edges, orient, lineno=None):
    """Assemble half-edges from vertex-level edges and per-vertex edge orders."""
    e_count = sum(len(s) for s in legs)
    internal = len(orient)
    names = {f"v{i}" for i in range(1, internal + 1)}
    if set(orient) != names:
        raise dg.ParseError("orient must list v1..vK exactly once each", lineno)
    ends = [[_vertex(a, e_count, lineno), _vertex(b, e_count, lineno)] for a, b in edges]
    halves = [[None, None] for _ in ends]
    for name, order in orient.items():
        v = _vertex(name, e_count, lineno)
        if len(order) != 3:
            raise dg.ParseError(f"{name} needs three edges", lineno)
        for s, idx in enumerate(order):
            if not 1 <= idx <= len(ends):
                raise dg.ParseError(f"{name}: no edge {idx}", lineno)
            k = idx - 1
            side = next((j for j in (0, 1) if ends[k][j] == v and halves[k][j] is None), None)
            if side is None:
                raise dg.ParseError(f"{name}: edge {idx} is not incident or listed twice", lineno)
            halves[k][side] = (v, s)
    out = []
    for (a, b), (ha, hb) in zip(ends, halves):
        for v, h in ((a, ha), (b, hb)):
            if v > e_count and h is None:
                raise dg.ParseError(f"{_name(v, e_count)} does not list every incident edge", lineno)
        out.append((ha or (a, 0), hb or (b, 0)))
    legs = [[_vertex(x, e_count, lineno) for x in s] for s in legs]
    return make_trivalent(skel, legs, internal, out, canonical=False)


def trivalent_from_json(obj) -> TrivalentDiagram:
    try:
        g = obj["graph"]
        return _build(obj["skeleton"], obj["arrangement"], g["edges"],
                      {k: list(v) for k, v in g["orient"].items()})
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, dg.DiagramError):
            raise
        raise dg.ParseError(f"malformed trivalent JSON: {exc}") from None


_EDGE_RE = re.compile(r"\(\s*(\w+)\s+(\w+)\s*\)")
_ORIENT_RE = re.compile(r"(v\d+)\s*=\s*\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)")


def parse_trivalent(text: str) -> TrivalentDiagram:
    skel = None
    legs = []
    edges = []
    orient = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        head, sep, rest = line.partition(":")
        if not sep:
            raise dg.ParseError(f"expected '<field>: ...', got {line!r}", lineno, 1)
        head = head.strip()
        if head == "kind":
            if rest.strip() != "trivalent":
                raise dg.ParseError("not a trivalent diagram", lineno)
        elif head == "skeleton":
            skel = rest.split()
        elif head.startswith("comp"):
            legs.append(rest.split())
        elif head == "edges":
            found = _EDGE_RE.findall(rest)
            if _EDGE_RE.sub("", rest).strip():
                raise dg.ParseError(f"bad edge list {rest.strip()!r}", lineno)
            edges.extend(found)
        elif head == "orient":
            found = _ORIENT_RE.findall(rest)
            if _ORIENT_RE.sub("", rest).strip():
                raise dg.ParseError(f"bad orientation list {rest.strip()!r}", lineno)
            for name, *idx in found:
                if name in orient:
                    raise dg.ParseError(f"{name} oriented twice", lineno)
                orient[name] = [int(x) for x in idx]
        else:
            raise dg.ParseError(f"unknown field {head!r}", lineno, 1)
    if skel is None:
        raise dg.ParseError("missing skeleton line")
    return _build(skel, legs, edges, orient)

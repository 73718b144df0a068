"""Diagram data model: chord, double dating (DD) and wedge diagrams.

All three kinds share one representation.  A diagram is a skeleton (a tuple
of ``"C"`` circle / ``"I"`` interval markers) plus an arrangement: for each
component, the sequence of endpoint tokens met along its orientation.

Tokens are small integers ``id * unit + part``:

========  ====  ==========================================
kind      unit  part
========  ====  ==========================================
chord     1     0 (both endpoints of chord ``id``)
dd        2     0 = ``+`` chord, 1 = ``-`` chord of pair ``id``
wedge     3     0 = tip, 1 = ``+`` leg, 2 = ``-`` leg
========  ====  ==========================================

Ids start at 1.  The canonical representative of a diagram is the
lexicographically least arrangement over all circle rotations and all
relabelings of ids; relabeling is by first occurrence, so the least
arrangement is found greedily component by component.

Trivalent diagrams live in :mod:`ddlab.trivalent`.
"""

from __future__ import annotations

import itertools
import json
import math
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from more_itertools import distinct_permutations

KINDS = ("dd", "wedge", "chord")
UNIT = {"chord": 1, "dd": 2, "wedge": 3}

DEFAULT_BUDGET = 10**7


class DiagramError(ValueError):
    """A diagram violates the structural invariants of its kind."""


class ParseError(DiagramError):
    def __init__(self, message, line=None, column=None):
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
        self.line = line
        self.column = column


class BudgetExceeded(RuntimeError):
    """Raised when a stratum is too large to enumerate under the size budget."""

    def __init__(self, estimate, budget):
        super().__init__(
            f"stratum needs about {estimate} raw arrangements, budget is {budget}"
        )
        self.estimate = estimate
        self.budget = budget


def circles(n: int) -> tuple[str, ...]:
    return ("C",) * n


def intervals(n: int) -> tuple[str, ...]:
    return ("I",) * n


def as_skeleton(components) -> tuple[str, ...]:
    """Accept a component count (all circles) or an explicit skeleton."""
    if isinstance(components, int):
        if components < 1:
            raise DiagramError("a skeleton needs at least one component")
        return circles(components)
    skel = tuple(components)
    if not skel or any(c not in ("C", "I") for c in skel):
        raise DiagramError(f"bad skeleton {components!r}")
    return skel


# ---------------------------------------------------------------------------
# canonical forms


def _canonical_arrangement(arrangement, skeleton, unit):
    # candidates: (id map, next free id, chosen sequences so far)
    cands = [({}, 1, ())]
    for seq, ctype in zip(arrangement, skeleton):
        n = len(seq)
        if n == 0:
            cands = [(m, k, pre + ((),)) for m, k, pre in cands]
            continue
        # only rotations whose first relabeled token is least can win
        starts = []
        low = None
        for ci, (mp, nxt, pre) in enumerate(cands):
            for r in (range(n) if ctype == "C" else (0,)):
                ident, part = divmod(seq[r], unit)
                v = mp.get(ident, nxt) * unit + part
                if low is None or v < low:
                    low = v
                    starts = [(ci, r)]
                elif v == low:
                    starts.append((ci, r))
        best = None
        kept = []
        for ci, r in starts:
            mp, nxt, pre = cands[ci]
            m = dict(mp)
            k = nxt
            out = []
            tie = best is not None
            worse = False
            for i in range(n):
                j = r + i
                if j >= n:
                    j -= n
                ident, part = divmod(seq[j], unit)
                new = m.get(ident)
                if new is None:
                    new = m[ident] = k
                    k += 1
                v = new * unit + part
                if tie:
                    b = best[i]
                    if v > b:
                        worse = True
                        break
                    if v < b:
                        tie = False
                        kept = None
                out.append(v)
            if worse:
                continue
            out = tuple(out)
            if kept is None or best is None or out < best:
                best = out
                kept = [(m, k, pre + (out,))]
            else:
                kept.append((m, k, pre + (out,)))
        cands = kept
    return cands[0][2]


def _orbit(arrangement, skeleton, unit) -> Iterator[tuple]:
    """All relabeled rotations (brute force; used by tests and validation)."""
    rots = [range(len(s)) if (t == "C" and s) else (0,) for s, t in zip(arrangement, skeleton)]
    for combo in itertools.product(*rots):
        rotated = [s[r:] + s[:r] for s, r in zip(arrangement, combo)]
        m, k = {}, 1
        out = []
        for seq in rotated:
            comp = []
            for c in seq:
                ident, part = divmod(c, unit)
                if ident not in m:
                    m[ident] = k
                    k += 1
                comp.append(m[ident] * unit + part)
            out.append(tuple(comp))
        yield tuple(out)


@dataclass(frozen=True, order=True)
class Diagram:
    """An immutable chord, DD or wedge diagram.

    Construct through :func:`make` (validates and canonicalizes) unless the
    arrangement is known to be canonical already.
    """

    kind: str
    skeleton: tuple
    arrangement: tuple

    @property
    def unit(self) -> int:
        return UNIT[self.kind]

    @property
    def num_endpoints(self) -> int:
        return sum(len(s) for s in self.arrangement)

    @property
    def degree(self) -> int:
        per = {"chord": 2, "dd": 4, "wedge": 3}[self.kind]
        return self.num_endpoints // per

    @property
    def components(self) -> int:
        return len(self.skeleton)

    def canonical(self) -> "Diagram":
        arr = _canonical_arrangement(self.arrangement, self.skeleton, self.unit)
        if arr == self.arrangement:
            return self
        return Diagram(self.kind, self.skeleton, arr)

    def key(self) -> tuple:
        """Canonical key: compares equal iff the diagrams are isomorphic."""
        c = self.canonical()
        return (c.skeleton, c.arrangement)

    def is_canonical(self) -> bool:
        return _canonical_arrangement(self.arrangement, self.skeleton, self.unit) == self.arrangement

    def orbit(self) -> set:
        return set(_orbit(self.arrangement, self.skeleton, self.unit))

    def ids(self) -> list[int]:
        return sorted({c // self.unit for s in self.arrangement for c in s})

    def positions(self) -> dict[int, list[tuple[int, int]]]:
        """Token -> list of (component, index) occurrences."""
        out: dict[int, list[tuple[int, int]]] = {}
        for ci, seq in enumerate(self.arrangement):
            for i, c in enumerate(seq):
                out.setdefault(c, []).append((ci, i))
        return out

    def adjacent(self, a: tuple[int, int], b: tuple[int, int]) -> bool:
        """Are two endpoint positions neighbours on their component?"""
        if a[0] != b[0]:
            return False
        n = len(self.arrangement[a[0]])
        d = abs(a[1] - b[1])
        return d == 1 or (self.skeleton[a[0]] == "C" and d == n - 1 and d > 0)

    def __str__(self) -> str:
        return serialize_diagram(self)


def make(kind: str, skeleton, arrangement, canonical: bool = True) -> Diagram:
    """Validate and (by default) canonicalize a diagram."""
    if kind not in KINDS:
        raise DiagramError(f"unknown diagram kind {kind!r}")
    skel = as_skeleton(skeleton)
    arr = tuple(tuple(int(c) for c in seq) for seq in arrangement)
    if len(arr) != len(skel):
        raise DiagramError(
            f"skeleton has {len(skel)} components but arrangement has {len(arr)}"
        )
    d = Diagram(kind, skel, arr)
    validate(d)
    return d.canonical() if canonical else d


def validate(d: Diagram) -> None:
    unit = d.unit
    pos = d.positions()
    for c, where in pos.items():
        if c // unit < 1:
            raise DiagramError(f"token {format_token(d.kind, c)}: ids must be positive")
    ids = {c // unit for c in pos}
    for ident in sorted(ids):
        if d.kind == "chord":
            n = len(pos.get(ident, ()))
            if n != 2:
                raise DiagramError(f"chord {ident} has {n} endpoints, expected 2")
        elif d.kind == "dd":
            plus = pos.get(2 * ident, [])
            minus = pos.get(2 * ident + 1, [])
            if len(plus) != 2 or len(minus) != 2:
                raise DiagramError(
                    f"pair {ident}: each of {ident}+ and {ident}- must appear exactly twice"
                )
            if sorted(p[0] for p in plus) != sorted(p[0] for p in minus):
                raise DiagramError(
                    f"pair {ident}: its two chords join different components"
                )
        else:
            tip = pos.get(3 * ident, [])
            lp = pos.get(3 * ident + 1, [])
            lm = pos.get(3 * ident + 2, [])
            if len(tip) != 1 or len(lp) != 1 or len(lm) != 1:
                raise DiagramError(
                    f"wedge {ident}: needs exactly one tip and one leg of each sign"
                )
            if lp[0][0] != lm[0][0]:
                raise DiagramError(f"wedge {ident}: legs lie on different components")


# ---------------------------------------------------------------------------
# pair / chord geometry


def pair_type(d: Diagram, ident: int) -> tuple[int, int]:
    """Components joined by DD pair ``ident`` (0-based, sorted)."""
    comps = sorted(ci for ci, seq in enumerate(d.arrangement) for c in seq if c == 2 * ident)
    return comps[0], comps[1]


def chords_of(d: Diagram) -> dict[int, tuple[tuple[int, int], tuple[int, int]]]:
    """Token -> its two endpoint positions (chord and dd kinds)."""
    return {c: (w[0], w[1]) for c, w in d.positions().items()}


def isolated_pairs(d: Diagram) -> list[int]:
    """Pairs killed by the one-term relation.

    A pair joining two different components is isolated when, on each of
    them, its two endpoints are neighbours.  A pair on a single component is
    isolated when its four endpoints form a contiguous block ``s s t t`` with
    ``{s, t} = {+, -}``.
    """
    if d.kind != "dd":
        raise DiagramError("isolated_pairs needs a dd diagram")
    pos = d.positions()
    out = []
    for ident in d.ids():
        plus, minus = pos[2 * ident], pos[2 * ident + 1]
        ci = {p[0] for p in plus}
        if len(ci) == 2:
            ok = True
            for comp in ci:
                a = [p for p in plus if p[0] == comp][0]
                b = [p for p in minus if p[0] == comp][0]
                if not d.adjacent(a, b):
                    ok = False
                    break
            if ok:
                out.append(ident)
        else:
            comp = next(iter(ci))
            seq = d.arrangement[comp]
            n = len(seq)
            closed = d.skeleton[comp] == "C"
            starts = range(n) if closed else range(n - 3)
            for s in starts:
                if not closed and s + 4 > n:
                    break
                block = [seq[(s + k) % n] for k in range(4)]
                if (block[0] == block[1] and block[2] == block[3] and block[0] != block[2]
                        and {block[0], block[2]} == {2 * ident, 2 * ident + 1}):
                    out.append(ident)
                    break
    return out


def isolated_wedges(d: Diagram) -> list[int]:
    """Wedges whose two legs are neighbours."""
    if d.kind != "wedge":
        raise DiagramError("isolated_wedges needs a wedge diagram")
    pos = d.positions()
    return [w for w in d.ids() if d.adjacent(pos[3 * w + 1][0], pos[3 * w + 2][0])]


def has_isolated_chord(d: Diagram) -> bool:
    """True iff some chord has neighbouring endpoints on one component."""
    if d.kind != "chord":
        raise DiagramError("has_isolated_chord needs a chord diagram")
    for a, b in chords_of(d).values():
        if d.adjacent(a, b):
            return True
    return False


TWO_ISOLATED = "TwoIsolated"
ONE_ISOLATED = "OneIsolated"
NONE_ISOLATED = "NoneIsolated"

CLASS_TITLES = {
    TWO_ISOLATED: "Two isolated pairs",
    ONE_ISOLATED: "One isolated pair",
    NONE_ISOLATED: "Two non-isolated pairs",
}


def classify_degree2(d: Diagram) -> str:
    if d.kind != "dd" or d.degree != 2:
        raise DiagramError("classify_degree2 needs a degree-2 dd diagram")
    return {2: TWO_ISOLATED, 1: ONE_ISOLATED, 0: NONE_ISOLATED}[len(isolated_pairs(d))]


def wedge_to_dd(w: Diagram) -> Diagram:
    """Pull each wedge tip apart into two neighbouring endpoints, ``+`` first."""
    if w.kind != "wedge":
        raise DiagramError("wedge_to_dd needs a wedge diagram")
    arr = []
    for seq in w.arrangement:
        out = []
        for c in seq:
            ident, part = divmod(c, 3)
            if part == 0:
                out.extend((2 * ident, 2 * ident + 1))
            else:
                out.append(2 * ident + (part - 1))
        arr.append(tuple(out))
    return Diagram("dd", w.skeleton, tuple(arr)).canonical()


# ---------------------------------------------------------------------------
# enumeration


def _types(kind: str, l: int) -> list[tuple[int, int]]:
    if kind == "wedge":
        return [(a, b) for a in range(l) for b in range(l)]
    return [(i, j) for i in range(l) for j in range(i, l)]


def _comp_tokens(kind, assignment, l):
    comps = [[] for _ in range(l)]
    for k, (a, b) in enumerate(assignment, start=1):
        if kind == "chord":
            comps[a].append(k)
            comps[b].append(k)
        elif kind == "dd":
            for part in (0, 1):
                comps[a].append(2 * k + part)
                comps[b].append(2 * k + part)
        else:
            comps[a].append(3 * k)
            comps[b].extend((3 * k + 1, 3 * k + 2))
    return comps


def _multinomial(tokens) -> int:
    n = math.factorial(len(tokens))
    for _, grp in itertools.groupby(sorted(tokens)):
        n //= math.factorial(len(list(grp)))
    return n


def raw_count(kind: str, degree: int, skeleton) -> int:
    """Number of raw arrangements visited by :func:`enumerate_diagrams`."""
    skel = as_skeleton(skeleton)
    total = 0
    for assignment in itertools.combinations_with_replacement(_types(kind, len(skel)), degree):
        prod = 1
        for toks in _comp_tokens(kind, assignment, len(skel)):
            prod *= _multinomial(toks)
        total += prod
    return total


def _component_sequences(tokens, closed):
    if not tokens:
        yield ()
        return
    if not closed:
        yield from distinct_permutations(tokens)
        return
    # every rotation class has a member starting with the least token
    first = min(tokens)
    rest = list(tokens)
    rest.remove(first)
    for tail in distinct_permutations(rest):
        yield (first,) + tail


def raw_arrangements(kind: str, degree: int, skeleton) -> Iterator[tuple]:
    """Every labeled arrangement up to a fixed rotation convention (brute force)."""
    skel = as_skeleton(skeleton)
    for assignment in itertools.combinations_with_replacement(_types(kind, len(skel)), degree):
        comps = _comp_tokens(kind, assignment, len(skel))
        per = [list(_component_sequences(t, c == "C")) for t, c in zip(comps, skel)]
        for arr in itertools.product(*per):
            yield arr


def enumerate_diagrams(kind: str, degree: int, components, budget: int = DEFAULT_BUDGET) -> list[Diagram]:
    """Every isomorphism class of the stratum exactly once, sorted by key."""
    if kind == "trivalent":
        from .trivalent import enumerate_trivalent

        return enumerate_trivalent(degree, components, budget=budget)
    if kind not in KINDS:
        raise DiagramError(f"unknown diagram kind {kind!r}")
    if degree < 0:
        raise DiagramError("degree must be non-negative")
    skel = as_skeleton(components)
    est = raw_count(kind, degree, skel)
    if est > budget:
        raise BudgetExceeded(est, budget)
    unit = UNIT[kind]
    seen = set()
    for arr in raw_arrangements(kind, degree, skel):
        seen.add(_canonical_arrangement(arr, skel, unit))
    return [Diagram(kind, skel, a) for a in sorted(seen)]


# ---------------------------------------------------------------------------
# text and JSON


_DD_SIGN = {0: "+", 1: "-"}
_W_PART = {0: "^", 1: "+", 2: "-"}


def format_token(kind: str, c: int) -> str:
    if kind == "chord":
        return str(c)
    if kind == "dd":
        ident, part = divmod(c, 2)
        return f"{ident}{_DD_SIGN[part]}"
    ident, part = divmod(c, 3)
    return f"{ident}{_W_PART[part]}"


_TOKEN_RE = {
    "chord": re.compile(r"^(\d+)$"),
    "dd": re.compile(r"^(\d+)([+-])$"),
    "wedge": re.compile(r"^(\d+)([\^+-])$"),
}


def parse_token(kind: str, text: str, line=None, column=None) -> int:
    m = _TOKEN_RE[kind].match(text)
    if not m:
        raise ParseError(f"bad {kind} token {text!r}", line, column)
    ident = int(m.group(1))
    if ident < 1:
        raise ParseError(f"token {text!r}: ids must be positive", line, column)
    if kind == "chord":
        return ident
    if kind == "dd":
        return 2 * ident + (0 if m.group(2) == "+" else 1)
    return 3 * ident + {"^": 0, "+": 1, "-": 2}[m.group(2)]


def serialize_diagram(d, format: str = "text") -> str:
    """Serialize the canonical representative of ``d``."""
    if d.kind == "trivalent":
        from .trivalent import serialize_trivalent

        return serialize_trivalent(d, format)
    c = d.canonical()
    if format == "json":
        return json.dumps(to_json(c), sort_keys=True)
    lines = [f"kind: {c.kind}", "skeleton: " + " ".join(c.skeleton)]
    for i, seq in enumerate(c.arrangement, start=1):
        toks = " ".join(format_token(c.kind, t) for t in seq)
        lines.append(f"comp {i}:" + (" " + toks if toks else ""))
    return "\n".join(lines)


def to_json(d: Diagram) -> dict:
    obj = {
        "kind": d.kind,
        "skeleton": list(d.skeleton),
        "arrangement": [[format_token(d.kind, t) for t in seq] for seq in d.arrangement],
    }
    pos = d.positions()
    if d.kind == "chord":
        obj["chords"] = [
            {"id": i, "ends": [list(p) for p in pos[i]]} for i in d.ids()
        ]
    elif d.kind == "dd":
        obj["pairs"] = [
            {
                "id": i,
                "type": [c + 1 for c in pair_type(d, i)],
                "plus": [list(p) for p in pos[2 * i]],
                "minus": [list(p) for p in pos[2 * i + 1]],
            }
            for i in d.ids()
        ]
    else:
        obj["wedges"] = [
            {
                "id": i,
                "tip": list(pos[3 * i][0]),
                "plus": list(pos[3 * i + 1][0]),
                "minus": list(pos[3 * i + 2][0]),
            }
            for i in d.ids()
        ]
    return obj


def from_json(obj) -> Diagram:
    if isinstance(obj, str):
        obj = json.loads(obj)
    kind = obj.get("kind")
    if kind == "trivalent":
        from .trivalent import trivalent_from_json

        return trivalent_from_json(obj)
    if kind not in KINDS:
        raise ParseError(f"unknown kind {kind!r}")
    arr = [[parse_token(kind, t) for t in seq] for seq in obj["arrangement"]]
    return make(kind, obj["skeleton"], arr, canonical=False)


def _split_records(text: str) -> list[str]:
    # a record may be written on one line with " / " separators
    if "\n" not in text.strip() and " / " in text:
        return [ln.strip() for ln in text.split(" / ")]
    return [ln.rstrip() for ln in text.strip().splitlines()]


def parse_diagram(text: str):
    """Parse one diagram record (text grammar, or JSON if it starts with ``{``)."""
    stripped = text.strip()
    if stripped.startswith("{"):
        return from_json(stripped)
    lines = _split_records(stripped)
    if not lines or not lines[0].startswith("kind:"):
        raise ParseError("expected 'kind:' header", 1, 1)
    kind = lines[0][len("kind:"):].strip()
    if kind == "trivalent":
        from .trivalent import parse_trivalent

        return parse_trivalent("\n".join(lines))
    if kind not in KINDS:
        raise ParseError(f"unknown kind {kind!r}", 1, 7)
    if len(lines) < 2 or not lines[1].startswith("skeleton:"):
        raise ParseError("expected 'skeleton:' line", 2, 1)
    skel = lines[1][len("skeleton:"):].split()
    for j, s in enumerate(skel):
        if s not in ("C", "I"):
            raise ParseError(f"bad component marker {s!r}", 2, lines[1].find(s) + 1)
    if not skel:
        raise ParseError("empty skeleton", 2, 10)
    arr: list[list[int]] = [[] for _ in skel]
    seen = set()
    for ln_no, ln in enumerate(lines[2:], start=3):
        if not ln.strip():
            continue
        m = re.match(r"^comp\s+(\d+):(.*)$", ln)
        if not m:
            raise ParseError(f"expected 'comp <k>:' line, got {ln!r}", ln_no, 1)
        k = int(m.group(1))
        if not 1 <= k <= len(skel):
            raise ParseError(f"component {k} not in skeleton", ln_no, 6)
        if k in seen:
            raise ParseError(f"component {k} listed twice", ln_no, 6)
        seen.add(k)
        col = m.start(2) + 1
        for tok in m.group(2).split():
            col = ln.find(tok, col - 1) + 1
            arr[k - 1].append(parse_token(kind, tok, ln_no, col))
            col += len(tok)
    d = Diagram(kind, tuple(skel), tuple(tuple(a) for a in arr))
    validate(d)
    return d


def parse_many(text: str) -> list:
    """Parse records separated by blank lines."""
    out = []
    for block in re.split(r"\n\s*\n", text.strip()):
        if block.strip():
            out.append(parse_diagram(block))
    return out


def empty(kind: str, components) -> Diagram:
    skel = as_skeleton(components)
    return Diagram(kind, skel, tuple(() for _ in skel))

"""Exact sparse linear algebra over the rationals.

Vectors are ``{column: coefficient}`` dicts.  Elimination runs fraction-free
on primitive integer rows (each row divided by the gcd of its entries), which
is both exact and much faster than ``Fraction`` arithmetic; results are
converted back to ``Fraction`` at the API boundary.
"""

from __future__ import annotations

import hashlib
import math
import os
import tempfile
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce as _fold
from typing import Iterable, Mapping

CACHE_VERSION = 1
_HEADER = ("kind", "degree", "components", "templates", "relations")


class LinearCombo:
    """A finite formal rational combination of hashable keys (diagrams)."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms: dict = {}
        if terms:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for k, c in items:
                self.add_term(k, c)

    def add_term(self, key, coeff) -> None:
        c = self.terms.get(key, 0) + Fraction(coeff)
        if c:
            self.terms[key] = c
        else:
            self.terms.pop(key, None)

    def __add__(self, other: "LinearCombo") -> "LinearCombo":
        out = LinearCombo(self.terms)
        for k, c in other.terms.items():
            out.add_term(k, c)
        return out

    def __sub__(self, other: "LinearCombo") -> "LinearCombo":
        return self + other.scale(-1)

    def __neg__(self) -> "LinearCombo":
        return self.scale(-1)

    def scale(self, s) -> "LinearCombo":
        s = Fraction(s)
        if not s:
            return LinearCombo()
        out = LinearCombo()
        out.terms = {k: c * s for k, c in self.terms.items()}
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, LinearCombo) and self.terms == other.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(sorted(self.terms.items()))

    def coefficient(self, key) -> Fraction:
        return self.terms.get(key, Fraction(0))

    def keys(self):
        return self.terms.keys()

    def __repr__(self) -> str:
        return f"LinearCombo({len(self.terms)} terms)"

    def to_vector(self, index: Mapping) -> dict:
        """Coordinates over a basis given as ``{key: column}``.

        Raises ``KeyError`` if a term lies outside the basis.
        """
        return {index[k]: c for k, c in self.terms.items()}


def combo(*pairs) -> LinearCombo:
    """``combo((1, a), (-1, b))`` -> a - b."""
    return LinearCombo([(k, c) for c, k in pairs])


# ---------------------------------------------------------------------------
# integer rows


def _primitive(row: dict) -> dict:
    """Clear denominators, divide by content, make the leading entry positive."""
    if not row:
        return {}
    den = 1
    for v in row.values():
        if isinstance(v, Fraction) and v.denominator != 1:
            den = den * v.denominator // math.gcd(den, v.denominator)
    ints = {k: int(v * den) for k, v in row.items() if v}
    g = _fold(math.gcd, ints.values(), 0)
    lead = min(ints)
    if ints[lead] < 0:
        g = -g
    if g != 1:
        ints = {k: v // g for k, v in ints.items()}
    return ints


def _eliminate(v: dict, row: dict, col: int) -> dict:
    a = row[col]
    b = v[col]
    g = math.gcd(a, b)
    fa, fb = a // g, b // g
    out = {k: x * fa for k, x in v.items()} if fa != 1 else dict(v)
    for k, x in row.items():
        y = out.get(k, 0) - fb * x
        if y:
            out[k] = y
        else:
            out.pop(k, None)
    return _primitive(out) if out else out


@dataclass
class EchelonForm:
    """Row echelon form: ``pivots[c]`` is the row whose leading column is ``c``."""

    basis_size: int
    pivots: dict = field(default_factory=dict)
    reduced: bool = False

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce_vector(self, v: Mapping) -> dict:
        """Remainder of ``v`` after eliminating every pivot column (primitive)."""
        w = _primitive(dict(v))
        last = -1
        while True:
            cands = [k for k in w if k > last and k in self.pivots]
            if not cands:
                return w
            last = min(cands)
            w = _eliminate(w, self.pivots[last], last)

    def add(self, v: Mapping) -> bool:
        """Insert a row; returns True if it raised the rank."""
        w = _primitive(dict(v))
        while w:
            col = min(w)
            row = self.pivots.get(col)
            if row is None:
                self.pivots[col] = w
                self.reduced = False
                return True
            w = _eliminate(w, row, col)
        return False

    def contains(self, v: Mapping) -> bool:
        w = _primitive(dict(v))
        while w:
            col = min(w)
            row = self.pivots.get(col)
            if row is None:
                return False
            w = _eliminate(w, row, col)
        return True

    def make_reduced(self) -> "EchelonForm":
        """Back-substitute so every pivot column is zero outside its pivot row."""
        cols = sorted(self.pivots, reverse=True)
        for col in cols:
            row = self.pivots[col]
            changed = True
            while changed:
                changed = False
                for k in sorted(row):
                    if k != col and k in self.pivots:
                        row = _eliminate(row, self.pivots[k], k)
                        changed = True
                        break
            self.pivots[col] = row
        self.reduced = True
        return self

    def rows(self) -> list[dict]:
        """Pivot rows normalized to leading coefficient 1, as Fractions."""
        out = []
        for col in sorted(self.pivots):
            row = self.pivots[col]
            lead = row[col]
            out.append({k: Fraction(x, lead) for k, x in sorted(row.items())})
        return out


def reduce(rows: Iterable[Mapping], basis_size: int, reduced: bool = True) -> EchelonForm:
    """Echelon form of ``rows``; reduced row echelon form unless ``reduced=False``.

    Rows are inserted shortest first (ties broken by input order), which keeps
    fill-in low for the sparse relation systems this package produces.
    """
    ech = EchelonForm(basis_size)
    rows = list(rows)
    for v in rows:
        for k in v:
            if not 0 <= k < basis_size:
                raise ValueError(f"column {k} outside basis of size {basis_size}")
    order = sorted(range(len(rows)), key=lambda i: len(rows[i]))
    for i in order:
        if rows[i]:
            ech.add(rows[i])
    if reduced:
        ech.make_reduced()
    return ech


def rank(rows: Iterable[Mapping], basis_size: int) -> int:
    return reduce(rows, basis_size, reduced=False).rank


def in_span(v: Mapping, e: EchelonForm) -> bool:
    return e.contains(v)


def quotient_dim(basis: Iterable, rows: Iterable[Mapping]) -> int:
    n = len(list(basis))
    return n - rank(rows, n)


def span_equal(a: Iterable[Mapping], b: Iterable[Mapping], basis_size: int) -> bool:
    a, b = list(a), list(b)
    ea = reduce(a, basis_size, reduced=False)
    eb = reduce(b, basis_size, reduced=False)
    return all(eb.contains(v) for v in a) and all(ea.contains(v) for v in b)


# ---------------------------------------------------------------------------
# relation systems


@dataclass
class DimensionReport:
    kind: str
    degree: int
    components: tuple
    generator_count: int
    relation_count: int
    rank: int
    quotient_dim: int
    method: str = "exact"

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "degree": self.degree,
            "components": list(self.components),
            "generator_count": self.generator_count,
            "relation_count": self.relation_count,
            "rank": self.rank,
            "quotient_dim": self.quotient_dim,
            "method": self.method,
        }


class RelationSystem:
    """An ordered diagram basis, relation rows over it, and a cached echelon form."""

    def __init__(self, basis, rows=(), kind="", degree=0, components=()):
        self.basis = list(basis)
        self.index = {k: i for i, k in enumerate(self.basis)}
        self.rows: list[dict] = []
        self.kind = kind
        self.degree = degree
        self.components = tuple(components)
        self._echelon: EchelonForm | None = None
        for r in rows:
            self.add_row(r)

    def __len__(self) -> int:
        return len(self.rows)

    def vector(self, lc: LinearCombo) -> dict:
        return lc.to_vector(self.index)

    def add_row(self, row) -> None:
        if isinstance(row, LinearCombo):
            row = self.vector(row)
        for k in row:
            if not 0 <= k < len(self.basis):
                raise ValueError(f"relation column {k} outside the basis")
        if row:
            self.rows.append(dict(row))
            self._echelon = None

    def add_combo(self, lc: LinearCombo) -> None:
        self.add_row(self.vector(lc))

    @property
    def echelon(self) -> EchelonForm:
        if self._echelon is None:
            self._echelon = reduce(self.rows, len(self.basis), reduced=False)
        return self._echelon

    def set_echelon(self, e: EchelonForm) -> None:
        self._echelon = e

    @property
    def rank(self) -> int:
        return self.echelon.rank

    def quotient_dim(self) -> int:
        return len(self.basis) - self.rank

    def contains(self, lc) -> bool:
        v = self.vector(lc) if isinstance(lc, LinearCombo) else lc
        return self.echelon.contains(v)

    def report(self) -> DimensionReport:
        return DimensionReport(
            self.kind,
            self.degree,
            self.components,
            len(self.basis),
            len(self.rows),
            self.rank,
            self.quotient_dim(),
        )


# ---------------------------------------------------------------------------
# echelon cache file


def write_cache(path, header: Mapping, basis_lines: list[str], e: EchelonForm) -> None:
    """Atomically write an echelon cache (write temp file, then rename)."""
    lines = [f"ddlab-echelon {CACHE_VERSION}"]
    for k in _HEADER:
        lines.append(f"{k} {header[k]}")
    lines.append(f"basis {len(basis_lines)}")
    lines.extend(basis_lines)
    rows = e.rows()
    lines.append(f"rows {len(rows)}")
    for row in rows:
        lines.append(" ".join(f"{i}:{c.numerator}/{c.denominator}" for i, c in row.items()))
    data = "\n".join(lines) + "\n"
    d = os.path.dirname(os.path.abspath(path))
    os.makedirs(d, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=".ech")
    with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(data)
    os.replace(tmp, path)


def read_cache(path) -> tuple[dict, list[str], EchelonForm]:
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().split("\n")
    magic = lines[0].split()
    if magic[:1] != ["ddlab-echelon"] or int(magic[1]) != CACHE_VERSION:
        raise ValueError(f"{path}: not a version-{CACHE_VERSION} echelon cache")
    header = {}
    i = 1
    for k in _HEADER:
        name, _, val = lines[i].partition(" ")
        if name != k:
            raise ValueError(f"{path}: expected {k!r} header")
        header[k] = val
        i += 1
    n = int(lines[i].split()[1])
    basis_lines = lines[i + 1 : i + 1 + n]
    i += 1 + n
    r = int(lines[i].split()[1])
    e = EchelonForm(n)
    for ln in lines[i + 1 : i + 1 + r]:
        row = {}
        for tok in ln.split():
            idx, _, frac = tok.partition(":")
            num, _, den = frac.partition("/")
            row[int(idx)] = Fraction(int(num), int(den))
        prim = _primitive(row)
        e.pivots[min(prim)] = prim
    return header, basis_lines, e


def content_hash(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]

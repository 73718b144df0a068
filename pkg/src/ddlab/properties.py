"""Randomized property suites run by ``ddlab verify properties``.

Each suite takes a ``random.Random`` and a case count, and returns ``None``
or a short description of the first failing case.
"""

from __future__ import annotations

from fractions import Fraction

from . import diagrams as dg
from . import exactlin as el

SMALL_STRATA = [
    (kind, degree, skel)
    for kind in ("chord", "dd", "wedge")
    for degree in (0, 1, 2)
    for skel in (("C",), ("C", "C"), ("I",), ("C", "I"), ("C", "C", "C"))
    if dg.raw_count(kind, degree, skel) <= 20000
]


def random_arrangement(rng, kind, degree, skel):
    """A labeled arrangement with random ids, types and orders."""
    ids = rng.sample(range(1, 3 * degree + 3), degree)
    l = len(skel)
    comps = [[] for _ in range(l)]
    unit = dg.UNIT[kind]
    for k in ids:
        a, b = rng.randrange(l), rng.randrange(l)
        if kind == "chord":
            comps[a].append(k)
            comps[b].append(k)
        elif kind == "dd":
            for part in (0, 1):
                comps[a].append(unit * k + part)
                comps[b].append(unit * k + part)
        else:
            comps[a].append(unit * k)
            comps[b].extend((unit * k + 1, unit * k + 2))
    for c in comps:
        rng.shuffle(c)
    return tuple(tuple(c) for c in comps)


def orbit_soundness(rng, cases):
    for _ in range(cases):
        kind = rng.choice(dg.KINDS)
        skel = tuple(rng.choice("CI") for _ in range(rng.randint(1, 3)))
        arr = random_arrangement(rng, kind, rng.randint(0, 3), skel)
        d = dg.make(kind, skel, arr, canonical=False)
        c = d.canonical()
        orbit = d.orbit()
        if c.arrangement != min(orbit) or c.canonical() != c:
            return f"{kind} {arr}: canonical form is not the orbit minimum"
        for other in rng.sample(sorted(orbit), min(3, len(orbit))):
            if dg.Diagram(kind, skel, other).canonical() != c:
                return f"{kind} {arr}: orbit member {other} canonicalizes differently"
    return None


def enumeration_counts(rng, cases):
    for _ in range(cases):
        kind, degree, skel = rng.choice(SMALL_STRATA)
        got = dg.enumerate_diagrams(kind, degree, skel)
        brute = {min(dg._orbit(a, skel, dg.UNIT[kind])) for a in dg.raw_arrangements(kind, degree, skel)}
        if len(got) != len(brute) or {g.arrangement for g in got} != brute:
            return f"{kind} degree {degree} on {skel}: {len(got)} classes, brute force {len(brute)}"
    return None


def random_rows(rng, n_rows, n_cols, density=0.4, span=3):
    rows = []
    for _ in range(n_rows):
        row = {}
        for k in range(n_cols):
            if rng.random() < density:
                v = rng.randint(-span, span)
                if v:
                    row[k] = Fraction(v, rng.randint(1, 3))
        rows.append(row)
    return rows


def dense_rank(rows, n_cols):
    """Plain Fraction Gaussian elimination (independent oracle)."""
    m = [[Fraction(r.get(k, 0)) for k in range(n_cols)] for r in rows]
    rank = 0
    for col in range(n_cols):
        piv = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][col]:
                f = m[i][col] / m[rank][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def rank_invariance(rng, cases):
    for _ in range(cases):
        n_cols = rng.randint(1, 8)
        rows = random_rows(rng, rng.randint(0, 9), n_cols)
        r = el.rank(rows, n_cols)
        if r != dense_rank(rows, n_cols):
            return f"rank {r} differs from the dense oracle on {rows}"
        shuffled = []
        for row in rows:
            f = Fraction(rng.choice([-3, -2, -1, 1, 2, 5]), rng.randint(1, 4))
            shuffled.append({k: v * f for k, v in row.items()})
        rng.shuffle(shuffled)
        if el.rank(shuffled, n_cols) != r:
            return f"rank changed under shuffling and scaling: {rows}"
    return None


def span_consistency(rng, cases):
    for _ in range(cases):
        n_cols = rng.randint(1, 7)
        rows = random_rows(rng, rng.randint(0, 6), n_cols)
        e = el.reduce(rows, n_cols)
        if rng.random() < 0.5 and rows:
            v: dict = {}
            for row in rng.sample(rows, rng.randint(1, len(rows))):
                c = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
                for k, x in row.items():
                    v[k] = v.get(k, 0) + c * x
            v = {k: x for k, x in v.items() if x}
        else:
            v = random_rows(rng, 1, n_cols, density=0.6)[0]
        inside = el.in_span(v, e)
        same = el.rank(rows + [v], n_cols) == el.rank(rows, n_cols)
        if inside != same:
            return f"in_span {inside} but rank test {same} for {v} over {rows}"
    return None


SUITES = {
    "orbit-soundness": orbit_soundness,
    "enumeration-counts": enumeration_counts,
    "rank-invariance": rank_invariance,
    "span-consistency": span_consistency,
}


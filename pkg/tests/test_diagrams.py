import itertools
import json
import random

import pytest
from hypothesis import given, strategies as st

from ddlab import diagrams as dg
from ddlab.properties import random_arrangement


def dd(text):
    return dg.parse_diagram(text.replace(" / ", "\n"))


def brute_orbit(arr, skel, unit):
    """Every rotation of every circle, relabeled by first occurrence."""
    choices = [range(len(s)) if k == "C" and s else [0] for s, k in zip(arr, skel)]
    out = set()
    for rots in itertools.product(*choices):
        rotated = [s[r:] + s[:r] for s, r in zip(arr, rots)]
        ren, nxt, res = {}, 1, []
        for s in rotated:
            row = []
            for c in s:
                i = c // unit
                if i not in ren:
                    ren[i], nxt = nxt, nxt + 1
                row.append(ren[i] * unit + c % unit)
            res.append(tuple(row))
        out.add(tuple(res))
    return out


# canonical_key

def test_empty_key_is_stable():
    a, b = dg.empty("dd", 2), dg.empty("dd", 2)
    assert a.key() == b.key() == (("C", "C"), ((), ()))


def test_rotation_gives_same_key():
    assert dd("kind: dd / skeleton: C / comp 1: 1+ 1- 1- 1+").key() == \
        dd("kind: dd / skeleton: C / comp 1: 1+ 1+ 1- 1-").key()


def test_parallel_and_crossed_pairs_differ():
    a = dd("kind: dd / skeleton: C / comp 1: 1+ 1+ 1- 1-")
    b = dd("kind: dd / skeleton: C / comp 1: 1+ 1- 1+ 1-")
    assert a.key() != b.key()
    assert not brute_orbit(a.arrangement, a.skeleton, 2) & brute_orbit(b.arrangement, b.skeleton, 2)


def test_malformed_diagram_names_offender():
    with pytest.raises(dg.DiagramError, match="pair 1"):
        dd("kind: dd / skeleton: C / comp 1: 1+ 1+ 1-")
    with pytest.raises(dg.DiagramError, match="wedge 1"):
        dg.make("wedge", "CCC", [(3,), (4,), (5,)])


def test_sign_swap_is_a_different_diagram():
    a = dd("kind: dd / skeleton: C C / comp 1: 1+ 1+ 1- 1- 2+ 2- / comp 2: 2+ 2-")
    b = dd("kind: dd / skeleton: C C / comp 1: 1- 1- 1+ 1+ 2+ 2- / comp 2: 2+ 2-")
    assert a.key() != b.key()


def test_intervals_have_no_rotation():
    a = dg.make("chord", "I", [(1, 1, 2, 2)])
    b = dg.make("chord", "I", [(1, 2, 2, 1)])
    assert a.key() != b.key()
    assert dg.make("chord", "C", [(1, 1, 2, 2)]).key() == dg.make("chord", "C", [(1, 2, 2, 1)]).key()


@given(st.integers(0, 10**6))
def test_canonical_is_orbit_minimum(seed):
    rng = random.Random(seed)
    kind = rng.choice(dg.KINDS)
    skel = tuple(rng.choice("CI") for _ in range(rng.randint(1, 3)))
    arr = random_arrangement(rng, kind, rng.randint(0, 2), skel)
    d = dg.make(kind, skel, arr, canonical=False)
    orbit = brute_orbit(arr, skel, dg.UNIT[kind])
    c = d.canonical()
    assert c.arrangement == min(orbit)
    assert orbit == d.orbit()
    for other in orbit:
        assert dg.Diagram(kind, skel, other).canonical() == c


@given(st.integers(0, 10**6))
def test_key_constant_under_rotations(seed):
    rng = random.Random(seed)
    kind = rng.choice(dg.KINDS)
    skel = tuple(rng.choice("CI") for _ in range(rng.randint(1, 3)))
    arr = random_arrangement(rng, kind, rng.randint(1, 3), skel)
    d = dg.make(kind, skel, arr)
    rot = tuple(
        s[r:] + s[:r] if k == "C" and s else s
        for s, k in zip(arr, skel)
        for r in [rng.randrange(len(s)) if s else 0]
    )
    e = dg.make(kind, skel, rot)
    assert d.key() == e.key()
    if kind == "dd":
        assert len(dg.isolated_pairs(d)) == len(dg.isolated_pairs(e))
    if kind == "chord":
        assert dg.has_isolated_chord(d) == dg.has_isolated_chord(e)


# enumerate_diagrams

@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_degree_zero_is_single_empty(m):
    (d,) = dg.enumerate_diagrams("dd", 0, m)
    assert d.num_endpoints == 0


def test_dd_1_1():
    got = [str(d).splitlines()[-1] for d in dg.enumerate_diagrams("dd", 1, 1)]
    assert sorted(got) == ["comp 1: 1+ 1+ 1- 1-", "comp 1: 1+ 1- 1+ 1-"]


def test_dd_1_2():
    ds = dg.enumerate_diagrams("dd", 1, 2)
    assert len(ds) == 5
    types = sorted(dg.pair_type(d, 1) for d in ds)
    assert types == [(0, 0), (0, 0), (0, 1), (1, 1), (1, 1)]


def test_chord_2_1():
    got = {d.arrangement for d in dg.enumerate_diagrams("chord", 2, 1)}
    assert got == {((1, 1, 2, 2),), ((1, 2, 1, 2),)}


def test_enumeration_sorted_and_deterministic():
    a = dg.enumerate_diagrams("wedge", 2, 2)
    assert a == sorted(a) == dg.enumerate_diagrams("wedge", 2, 2)


def test_budget_guard():
    with pytest.raises(dg.BudgetExceeded, match="raw arrangements"):
        dg.enumerate_diagrams("dd", 3, 3, budget=1000)


EXHAUSTIVE = [
    (kind, skel, degree)
    for kind in dg.KINDS
    for skel in ("C", "CC", "CCC", "I", "II", "CI")
    for degree in (0, 1, 2, 3)
    if {"chord": 2, "dd": 4, "wedge": 3}[kind] * degree <= 10 and dg.raw_count(kind, degree, skel) <= 200000
]


@pytest.mark.parametrize("kind, skel, degree", EXHAUSTIVE)
def test_enumeration_matches_brute_force(kind, skel, degree):
    unit = dg.UNIT[kind]
    brute = {min(brute_orbit(a, tuple(skel), unit)) for a in dg.raw_arrangements(kind, degree, skel)}
    got = [d.arrangement for d in dg.enumerate_diagrams(kind, degree, skel)]
    assert len(got) == len(set(got)) == len(brute)
    assert set(got) == brute


# parse / serialize

def test_parse_examples():
    d = dd("kind: dd / skeleton: C / comp 1: 1+ 1+ 1- 1-")
    assert (d.kind, d.degree, d.skeleton) == ("dd", 1, ("C",))
    c = dd("kind: chord / skeleton: C C / comp 1: 1 / comp 2: 1")
    assert c.degree == 1 and c.arrangement == ((1,), (1,))
    inter = dd("kind: dd / skeleton: C C / comp 1: 1+ 1- / comp 2: 1+ 1-")
    singles = [d for d in dg.enumerate_diagrams("dd", 1, 2) if dg.pair_type(d, 1) == (0, 1)]
    assert singles == [inter.canonical()]


def test_serialize_examples():
    assert dg.serialize_diagram(dg.empty("dd", 1)) == "kind: dd\nskeleton: C\ncomp 1:"
    d = dd("kind: dd / skeleton: C / comp 1: 1+ 1- 1- 1+")
    assert dg.serialize_diagram(d).splitlines()[-1] == "comp 1: 1+ 1+ 1- 1-"


def test_parse_errors_carry_position():
    with pytest.raises(dg.ParseError, match="line 3, column"):
        dg.parse_diagram("kind: dd\nskeleton: C C\ncomp 1: 1+ 1+ 1- x")
    with pytest.raises(dg.ParseError):
        dg.parse_diagram("kind: knot\nskeleton: C")


@pytest.mark.parametrize("kind", dg.KINDS)
@pytest.mark.parametrize("fmt", ["text", "json"])
def test_roundtrip(kind, fmt):
    for d in dg.enumerate_diagrams(kind, 2, "CI"):
        s = dg.serialize_diagram(d, fmt)
        back = dg.parse_diagram(s)
        assert back == d
        assert dg.serialize_diagram(back, fmt) == s
    if fmt == "json":
        obj = json.loads(s)
        assert {"kind", "skeleton", "arrangement"} <= set(obj)


def test_parse_many():
    ds = dg.enumerate_diagrams("dd", 1, 2)
    text = "\n\n".join(str(d) for d in ds)
    assert dg.parse_many(text) == ds


# isolated pairs, isolated chords, classes

def test_isolated_pair_examples():
    assert dg.isolated_pairs(dd("kind: dd / skeleton: C C / comp 1: 1+ 1- / comp 2: 1+ 1-")) == [1]
    assert dg.isolated_pairs(dd("kind: dd / skeleton: C / comp 1: 1+ 1+ 1- 1-")) == [1]
    assert dg.isolated_pairs(dd("kind: dd / skeleton: C / comp 1: 1+ 1- 1+ 1-")) == []
    sep = dd("kind: dd / skeleton: C C / comp 1: 1+ 2+ 1- 2- / comp 2: 1+ 2+ 1- 2-")
    assert dg.isolated_pairs(sep) == []


def test_isolated_chord_examples():
    assert dg.has_isolated_chord(dg.make("chord", "C", [(1, 1)]))
    assert not dg.has_isolated_chord(dg.make("chord", "C", [(1, 2, 1, 2)]))
    assert dg.has_isolated_chord(dg.make("chord", "C", [(1, 1, 2, 2)]))
    # adjacency across the wrap point of a circle but not of an interval
    assert dg.has_isolated_chord(dg.make("chord", "C", [(1, 2, 3, 2, 3, 1)], canonical=False))
    assert not dg.has_isolated_chord(dg.make("chord", "I", [(1, 2, 3, 2, 3, 1)]))


def test_classify_examples():
    two = dd("kind: dd / skeleton: C C C C / comp 1: 1+ 1- / comp 2: 1+ 1- / comp 3: 2+ 2- / comp 4: 2+ 2-")
    assert dg.classify_degree2(two) == dg.TWO_ISOLATED
    one = dd("kind: dd / skeleton: C / comp 1: 1+ 1+ 1- 1- 2+ 2- 2+ 2-")
    assert dg.classify_degree2(one) == dg.ONE_ISOLATED
    with pytest.raises(dg.DiagramError):
        dg.classify_degree2(dd("kind: dd / skeleton: C / comp 1: 1+ 1+ 1- 1-"))


def test_classes_partition_stratum():
    ds = dg.enumerate_diagrams("dd", 2, 3)
    counts = {}
    for d in ds:
        counts[dg.classify_degree2(d)] = counts.get(dg.classify_degree2(d), 0) + 1
    assert set(counts) == {dg.TWO_ISOLATED, dg.ONE_ISOLATED, dg.NONE_ISOLATED}
    assert sum(counts.values()) == len(ds)


# wedge_to_dd

def test_wedge_to_dd_examples():
    assert dg.wedge_to_dd(dg.empty("wedge", 2)) == dg.empty("dd", 2)
    w = dg.make("wedge", "CC", [(3,), (4, 5)])
    inter = dd("kind: dd / skeleton: C C / comp 1: 1+ 1- / comp 2: 1+ 1-").canonical()
    assert dg.wedge_to_dd(w) == inter


def test_wedge_tip_splits_plus_first():
    w = dg.make("wedge", "C", [(3, 4, 5)])
    d = dg.wedge_to_dd(w)
    assert d == dg.make("dd", "C", [(2, 3, 2, 3)])


@pytest.mark.parametrize("m", [1, 2, 3])
def test_wedge_to_dd_preserves_degree(m):
    for degree in (0, 1, 2):
        for w in dg.enumerate_diagrams("wedge", degree, m):
            d = dg.wedge_to_dd(w)
            assert d.degree == degree and d.is_canonical()


def test_wedge_to_dd_injective_up_to_degree_2():
    seen = {}
    for m in (1, 2, 3):
        for degree in (0, 1, 2):
            for w in dg.enumerate_diagrams("wedge", degree, m):
                d = dg.wedge_to_dd(w)
                prior = seen.setdefault(d, w)
                assert prior == w, f"{prior.arrangement} and {w.arrangement} both map to {d.arrangement}"

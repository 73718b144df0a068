import itertools
import json
import random

import pytest

from ddlab import diagrams as dg
from ddlab import trivalent as tv

Y_EDGES = [((1, 0), (4, 0)), ((2, 0), (4, 1)), ((3, 0), (4, 2))]


def y_on_circle(canonical=True):
    return tv.make_trivalent("C", [(1, 2, 3)], 1, Y_EDGES, canonical=canonical)


def relabel(t, rng):
    """Same diagram with internal vertices renumbered and slots rotated."""
    e = t.externals
    inner = list(range(e + 1, e + t.internal + 1))
    perm = dict(zip(inner, rng.sample(inner, len(inner))))
    shift = {v: rng.randrange(3) for v in inner}

    def move(h):
        v, s = h
        return (perm[v], (s + shift[v]) % 3) if v > e else h

    edges = [(move(a), move(b)) for a, b in t.edges]
    return tv.make_trivalent(t.skeleton, t.legs, t.internal, edges, canonical=False)


def test_degree_and_struts():
    y = y_on_circle()
    assert y.degree == 2 and y.internal == 1 and not y.struts()
    chord = tv.make_trivalent("C", [(1, 2)], 0, [((1, 0), (2, 0))])
    assert chord.degree == 1 and chord.is_chord() and chord.struts()


def test_validation_errors():
    with pytest.raises(dg.DiagramError, match="half-edge"):
        tv.make_trivalent("C", [(1, 2, 3)], 1, Y_EDGES[:2])
    with pytest.raises(dg.DiagramError, match="touch the skeleton"):
        tv.make_trivalent("C", [(1, 2)], 2, [((1, 0), (2, 0)), ((3, 0), (4, 0)), ((3, 1), (4, 1)), ((3, 2), (4, 2))])


def test_orientation_reversal_is_antisymmetric():
    y = y_on_circle()
    swapped = [((1, 0), (4, 0)), ((2, 0), (4, 2)), ((3, 0), (4, 1))]
    t = tv.make_trivalent("C", [(1, 2, 3)], 1, swapped, canonical=False)
    sign, c = tv.canonical_form(t)
    assert c == y and sign == -1


def test_canonical_invariant_under_relabeling():
    rng = random.Random(7)
    for degree, m in ((2, 1), (2, 2), (2, 3)):
        for t in tv.enumerate_trivalent(degree, m):
            for _ in range(3):
                assert tv.canonical_form(relabel(t, rng)) == (1, t)


def test_circle_rotation_invariance():
    t = tv.make_trivalent("C", [(1, 2, 3)], 1, Y_EDGES, canonical=False)
    # rotate the circle: legs read 2 3 1, renumbered along the skeleton
    rot = {2: 1, 3: 2, 1: 3}
    edges = [((rot.get(a[0], a[0]) if a[0] <= 3 else a[0], a[1]), b) for a, b in Y_EDGES]
    u = tv.make_trivalent("C", [(1, 2, 3)], 1, edges, canonical=False)
    assert tv.canonical_form(t)[1] == tv.canonical_form(u)[1]


def test_enumeration_has_distinct_nonzero_canonical_forms():
    for degree, m in ((1, 1), (2, 1), (2, 2)):
        ds = tv.enumerate_trivalent(degree, m)
        assert len(set(ds)) == len(ds)
        for t in ds:
            assert tv.canonical_form(t) == (1, t)
            assert t.degree == degree


def test_strutless_subset():
    assert tv.enumerate_trivalent(1, 2, strutless=True) == []
    full = set(tv.enumerate_trivalent(2, 2))
    sl = tv.enumerate_trivalent(2, 2, strutless=True)
    assert sl and set(sl) <= full and all(not t.struts() for t in sl)


def test_text_grammar():
    text = str(y_on_circle())
    assert text.splitlines() == [
        "kind: trivalent",
        "skeleton: C",
        "comp 1: e1 e2 e3",
        "edges: (e1 v1) (e2 v1) (e3 v1)",
        "orient: v1=(1,2,3)",
    ]
    assert dg.parse_diagram(text) == y_on_circle()


@pytest.mark.parametrize("fmt", ["text", "json"])
def test_roundtrip(fmt):
    for degree, m in ((1, 1), (2, 1), (2, 2), (2, 3)):
        for t in tv.enumerate_trivalent(degree, m):
            s = tv.serialize_trivalent(t, fmt)
            assert dg.parse_diagram(s) == t
    if fmt == "json":
        assert {"kind", "skeleton", "arrangement", "graph"} <= set(json.loads(s))


@pytest.mark.parametrize("text", [
    "kind: trivalent\nskeleton: C\ncomp 1: e1 e2 e3\nedges: (e1 v1) (e2 v1) (e3 v1)\norient: v1=(1,2)",
    "kind: trivalent\nskeleton: C\ncomp 1: e1 e2 e3\nedges: (e1 v1) (e2 v1) (e3 v1)\norient: v1=(1,2,2)",
    "kind: trivalent\nskeleton: C\ncomp 1: e1 e2 e3\nedges: (e1 v1) (e2 v1) e3\norient: v1=(1,2,3)",
    "kind: trivalent\ncomp 1: e1 e2",
    "kind: trivalent\nskeleton: C\ncomp 1: e1 x2",
])
def test_parse_errors(text):
    with pytest.raises(dg.DiagramError):
        dg.parse_diagram(text)


def test_double_edge_orientation_is_kept():
    loop = "kind: trivalent\nskeleton: C\ncomp 1: e1 e2\nedges: (e1 v1) (e2 v2) (v1 v2) (v1 v2)\n"
    a = dg.parse_diagram(loop + "orient: v1=(1,3,4) v2=(2,3,4)")
    b = dg.parse_diagram(loop + "orient: v1=(1,4,3) v2=(2,3,4)")
    (sa, ca), (sb, cb) = a.canonical(), b.canonical()
    assert ca == cb and sa == -sb != 0
    assert list(itertools.chain(*a.legs)) == [1, 2]


def test_parse_keeps_written_orientation():
    text = "kind: trivalent\nskeleton: C\ncomp 1: e1 e2 e3\nedges: (e1 v1) (e2 v1) (e3 v1)\norient: v1=(1,3,2)"
    t = dg.parse_diagram(text)
    assert tv.canonical_form(t) == (-1, y_on_circle())

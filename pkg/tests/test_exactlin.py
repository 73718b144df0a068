import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ddlab import exactlin as el
from ddlab.properties import dense_rank, random_rows

F = Fraction


def e(*ks):
    return {k: 1 for k in ks}


rows_strategy = st.integers(1, 7).flatmap(
    lambda n: st.tuples(
        st.just(n),
        st.lists(
            st.dictionaries(st.integers(0, n - 1), st.fractions(min_value=-5, max_value=5, max_denominator=4)
                            .filter(bool), max_size=n),
            max_size=8,
        ),
    )
)


# LinearCombo

def test_combo_normalizes_zeros():
    lc = el.combo((1, "a"), (-1, "a"), (F(1, 2), "b"))
    assert lc.terms == {"b": F(1, 2)}
    assert not (lc - lc)
    assert (lc + lc).coefficient("b") == 1
    assert lc.scale(0).terms == {}


def test_to_vector_outside_basis():
    with pytest.raises(KeyError):
        el.combo((1, "z")).to_vector({"a": 0})


# reduce

def test_reduce_examples():
    assert el.reduce([], 3).rank == 0
    assert el.rank([{0: 1, 1: -1}, {1: 1, 2: -1}, {0: 1, 2: -1}], 3) == 2
    halves = [{0: F(1, 2), 1: F(1, 3)}, {1: F(1, 2), 2: F(-1, 3)}]
    ints = [{0: 3, 1: 2}, {1: 3, 2: -2}]
    assert el.rank(halves, 3) == el.rank(ints, 3) == 2


def test_reduced_and_plain_forms_agree():
    rng = random.Random(3)
    for _ in range(50):
        rows = random_rows(rng, rng.randint(0, 6), 6)
        a, b = el.reduce(rows, 6), el.reduce(rows, 6, reduced=False)
        assert a.rank == b.rank
        for r in rows:
            assert el.in_span(r, a) and el.in_span(r, b)


def test_deterministic():
    rows = [{0: 2, 3: 1}, {1: F(5, 7), 3: -1}, {0: 1, 1: 1}]
    assert el.reduce(rows, 4).pivots == el.reduce(rows, 4).pivots


@given(rows_strategy, st.randoms(use_true_random=False))
def test_rank_matches_dense_oracle_and_is_invariant(data, r):
    n, rows = data
    rk = el.rank(rows, n)
    assert rk == dense_rank(rows, n)
    assert rk <= min(len(rows), n)
    scaled = []
    for row in rows:
        f = F(r.choice([-3, -1, 2, 7]), r.randint(1, 5))
        scaled.append({k: v * f for k, v in row.items()})
    r.shuffle(scaled)
    assert el.rank(scaled, n) == rk


# in_span

def test_in_span_examples():
    ech = el.reduce([{0: 1, 1: -1}], 2)
    assert el.in_span({}, ech)
    assert not el.in_span(e(0), ech)
    assert el.in_span({0: -3, 1: 3}, ech)


@given(rows_strategy, st.randoms(use_true_random=False))
def test_in_span_agrees_with_rank(data, r):
    n, rows = data
    ech = el.reduce(rows, n)
    for row in rows:
        assert el.in_span(row, ech)
    v = {k: F(r.randint(-3, 3)) for k in range(n) if r.random() < 0.5}
    v = {k: x for k, x in v.items() if x}
    assert el.in_span(v, ech) == (el.rank(rows + [v], n) == el.rank(rows, n))


# quotient_dim, span_equal

def test_quotient_dim_examples():
    assert el.quotient_dim(["empty"], []) == 1
    assert el.quotient_dim(list("abc"), [{0: 1, 1: 1}, {0: 2, 1: 2}]) == 2


def test_span_equal_examples():
    x = [{0: 1, 1: 2}, {2: 1}]
    assert el.span_equal(x, x, 3)
    assert el.span_equal([e(0)], [{0: 2}], 2)
    assert not el.span_equal([e(0)], [e(0, 1)], 2)
    assert el.span_equal([], [{}], 2)


# RelationSystem and reports

def test_relation_system_report():
    rs = el.RelationSystem(["a", "b", "c"], kind="dd", degree=1, components=("C",))
    rs.add_combo(el.combo((1, "a"), (-1, "b")))
    rs.add_row({1: 1, 2: -1})
    rs.add_row({})
    rep = rs.report()
    assert (rep.generator_count, rep.relation_count, rep.rank, rep.quotient_dim) == (3, 2, 2, 1)
    assert rep.quotient_dim == rep.generator_count - rep.rank
    assert rs.contains(el.combo((1, "a"), (-1, "c")))
    assert rep.as_dict()["components"] == ["C"]
    with pytest.raises(ValueError):
        rs.add_row({5: 1})


# echelon cache

def test_cache_roundtrip(tmp_path):
    rows = [{0: F(1, 2), 2: F(-7, 3)}, {1: 4, 2: 1}, {0: 1, 1: 1, 2: 1}]
    ech = el.reduce(rows, 3)
    header = {"kind": "dd", "degree": 1, "components": "C", "templates": "abc", "relations": 3}
    path = tmp_path / "sub" / "x.ech"
    el.write_cache(path, header, ["k0", "k1", "k2"], ech)
    h, basis, back = el.read_cache(path)
    assert basis == ["k0", "k1", "k2"]
    assert h["templates"] == "abc" and h["degree"] == "1"
    assert back.rank == ech.rank
    assert el.span_equal(back.rows(), ech.rows(), 3)
    again = tmp_path / "again.ech"
    el.write_cache(again, header, basis, back)
    assert again.read_bytes() == path.read_bytes()
    assert not [p for p in path.parent.iterdir() if p.name.startswith(".tmp-")]


def test_cache_rejects_other_versions(tmp_path):
    p = tmp_path / "bad.ech"
    p.write_text("ddlab-echelon 99\n")
    with pytest.raises(ValueError):
        el.read_cache(p)


def test_content_hash():
    assert el.content_hash("x") == el.content_hash("x") != el.content_hash("y")
    assert len(el.content_hash("x")) == 16

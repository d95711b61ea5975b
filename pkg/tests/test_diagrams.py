import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from conclab import diagrams as dg
from conclab import knot_invariants as ki
from conclab.exactmath import LaurentPoly1

import oracles


# -- braids ---------------------------------------------------------------------


def test_parse_braid_examples():
    b = dg.parse_braid("1 1 1")
    assert b.strands == 2 and b.letters == (1, 1, 1)
    assert dg.parse_braid("1 -2 1 -2").strands == 3
    assert dg.parse_braid("1, -2,1").letters == (1, -2, 1)
    assert dg.parse_braid("", strands=1) == dg.BraidWord(1, ())


@pytest.mark.parametrize("text,strands,pos", [("0", None, 1), ("1 x", None, 2),
                                              ("1 1 3", 3, 3)])
def test_parse_braid_errors(text, strands, pos):
    with pytest.raises(dg.DiagramParseError) as exc:
        dg.parse_braid(text, strands)
    assert exc.value.position == pos
    assert f"at token {pos}" in str(exc.value)


def test_sqp_expand():
    assert str(dg.sqp_expand(1, 2, 5)) == "1"
    assert str(dg.sqp_expand(1, 3, 3)) == "1 2 -1"
    assert str(dg.sqp_expand(2, 4, 4)) == "2 3 -2"
    assert str(dg.sqp_expand(1, 4, 4)) == "1 2 3 -2 -1"
    for bad in ((2, 2, 4), (0, 2, 4), (1, 5, 4)):
        with pytest.raises(dg.DiagramError):
            dg.sqp_expand(*bad)


@given(st.integers(2, 8).flatmap(lambda n: st.tuples(
    st.just(n), st.integers(1, n - 1)).flatmap(lambda p: st.tuples(
        st.just(p[0]), st.just(p[1]), st.integers(p[1] + 1, p[0])))))
def test_sqp_writhe_is_one(args):
    n, i, j = args
    assert dg.braid_stats(dg.sqp_expand(i, j, n)).writhe == 1


def test_braid_stats_examples():
    s = dg.braid_stats(dg.parse_braid("1 1 1"))
    assert (s.components, s.writhe, s.seifert_circles, s.positive) == (1, 3, 2, True)
    s = dg.braid_stats(dg.parse_braid("1 1"))
    assert (s.components, s.writhe, s.seifert_circles, s.positive) == (2, 2, 2, True)
    s = dg.braid_stats(dg.BraidWord(1, ()))
    assert (s.components, s.writhe, s.seifert_circles) == (1, 0, 1)


words = st.integers(2, 5).flatmap(lambda n: st.tuples(
    st.just(n),
    st.lists(st.integers(1, n - 1).flatmap(lambda k: st.sampled_from((k, -k))), max_size=10),
    st.lists(st.integers(1, n - 1).flatmap(lambda k: st.sampled_from((k, -k))), max_size=10)))


@given(words)
def test_writhe_additive(w):
    n, a, b = w
    x, y = dg.BraidWord(n, a), dg.BraidWord(n, b)
    assert dg.braid_stats(x + y).writhe == dg.braid_stats(x).writhe + dg.braid_stats(y).writhe


def test_rasmussen_positive():
    assert dg.rasmussen_positive(dg.parse_braid("1 1")) == 1
    assert dg.rasmussen_positive(dg.parse_braid("1 1 1")) == 2
    assert dg.rasmussen_positive(dg.BraidWord(2, ())) == -1
    with pytest.raises(dg.DiagramError):
        dg.rasmussen_positive(dg.parse_braid("1 -1"))


@given(st.integers(1, 6), st.lists(st.integers(1, 5), max_size=8))
def test_rasmussen_positive_formula(n, letters):
    letters = [x for x in letters if x < n]
    b = dg.BraidWord(n, letters)
    assert dg.rasmussen_positive(b) == len(letters) - n + 1
    if not letters:
        assert dg.rasmussen_positive(b) == 1 - dg.braid_stats(b).components


def test_slice_bennequin():
    assert dg.slice_bennequin_bound(dg.parse_braid("1 1 1")) == -1
    assert dg.slice_bennequin_bound(dg.BraidWord(1, ())) == 1


def test_seifert_matrix_from_braid_examples():
    tr = dg.seifert_matrix_from_braid(dg.parse_braid("1 1 1"))
    table = ki.load_knot_table()
    assert ki.alexander(tr) == ki.alexander(table["trefoil"])
    assert ki.lt_signature(tr, "-1") == ki.lt_signature(table["trefoil"], "-1") == -2
    assert ki.arf(tr) == ki.arf(table["trefoil"])
    f8 = dg.seifert_matrix_from_braid(dg.parse_braid("1 -2 1 -2"))
    assert ki.alexander(f8) == LaurentPoly1.from_coeffs([1, -3, 1])
    assert dg.seifert_matrix_from_braid(dg.parse_braid("1", strands=2)).size == 0
    with pytest.raises(dg.DiagramError):
        dg.seifert_matrix_from_braid(dg.parse_braid("1 1"))


def _random_knot_braid(rng, max_n=4, max_len=9):
    while True:
        n = rng.randint(2, max_n)
        word = [rng.choice((1, -1)) * rng.randint(1, n - 1) for _ in range(rng.randint(1, max_len))]
        b = dg.BraidWord(n, word)
        if dg.braid_stats(b).components == 1:
            return b


def test_braid_alexander_matches_burau():
    rng = random.Random(2024)
    for _ in range(25):
        b = _random_knot_braid(rng)
        a = dg.seifert_matrix_from_braid(b)
        assert ki.alexander(a) == oracles.burau_alexander(b.letters, b.strands), str(b)


def test_braid_invariants_stable_under_markov_conjugation():
    rng = random.Random(99)
    for _ in range(20):
        b = _random_knot_braid(rng)
        rot = dg.BraidWord(b.strands, b.letters[1:] + b.letters[:1])
        stab = dg.BraidWord(b.strands + 1, b.letters + (b.strands,))
        a0 = dg.seifert_matrix_from_braid(b)
        for other in (rot, stab):
            a1 = dg.seifert_matrix_from_braid(other)
            assert ki.alexander(a1) == ki.alexander(a0)
            assert ki.lt_signature(a1, "-1") == ki.lt_signature(a0, "-1")
            assert ki.arf(a1) == ki.arf(a0)


# -- grids ----------------------------------------------------------------------


def test_grid_examples():
    assert dg.tb_grid(dg.TREFOIL_GRID) == 1
    assert dg.tb_grid(dg.TREFOIL_GRID.mirror()) == -6
    square = dg.parse_grid("2; X=[1, 2]; O=[2, 1]")
    c = dg.grid_counts(square)
    assert (c.crossings, c.ne_corners, c.tb) == (0, 1, -1)
    assert dg.grid_counts(dg.TREFOIL_GRID).writhe == 3


def test_trefoil_grid_is_a_trefoil():
    g = dg.TREFOIL_GRID
    assert g.components() == 1
    assert oracles.grid_alexander(g.X, g.O) == LaurentPoly1.from_coeffs([1, -1, 1])


def test_parse_grid_formats():
    g = dg.parse_grid(str(dg.TREFOIL_GRID))
    assert g == dg.TREFOIL_GRID
    assert dg.parse_grid(json.dumps(g.to_json())) == g
    for bad in ("3; X=[1,2,3]; O=[1,3,2]", "3; X=[1,2,3]; O=[2,3]", "nonsense",
                "4; X=[1,2,3]; O=[2,3,1]", '{"X": [1, 2]}'):
        with pytest.raises(dg.DiagramParseError):
            dg.parse_grid(bad)


def test_tb_rejects_links():
    g = dg.GridDiagram((1, 2, 3, 4), (2, 1, 4, 3))
    assert g.components() == 2
    with pytest.raises(dg.DiagramError):
        dg.tb_grid(g)


def _random_grid_knot(rng, n):
    while True:
        xs = list(range(1, n + 1))
        os_ = xs[:]
        rng.shuffle(xs)
        rng.shuffle(os_)
        if any(a == b for a, b in zip(xs, os_)):
            continue
        g = dg.GridDiagram(xs, os_)
        if g.components() == 1:
            return g


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2 ** 32 - 1), st.integers(3, 7))
def test_tb_invariant_under_cyclic_shifts(seed, n):
    g = _random_grid_knot(random.Random(seed), n)
    tb = dg.tb_grid(g)
    col = dg.GridDiagram(g.X[1:] + g.X[:1], g.O[1:] + g.O[:1])
    row = dg.GridDiagram([x % n + 1 for x in g.X], [x % n + 1 for x in g.O])
    assert dg.tb_grid(col) == tb
    assert dg.tb_grid(row) == tb


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2 ** 32 - 1), st.integers(3, 6))
def test_grid_writhe_bounded_by_crossings(seed, n):
    g = _random_grid_knot(random.Random(seed), n)
    c = dg.grid_counts(g)
    assert c.writhe % 2 == c.crossings % 2
    assert abs(c.writhe) <= c.crossings

import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conclab import knot_invariants as ki
from conclab import representations as rp
from conclab.exactmath import IntMatrix, LaurentPoly1, RatMatrix
from conclab.exactmath.ops import char_poly

import oracles

HOPFISH = IntMatrix([[0, 1], [0, 0]])
TABLE = ki.load_knot_table()
TREFOIL, FIGURE8 = TABLE["trefoil"], TABLE["figure8"]

seeds = st.integers(0, 2 ** 32 - 1)


def random_unimodular(rng, n, steps=8):
    m = IntMatrix.identity(n)
    for _ in range(steps if n > 1 else 0):
        i, j = rng.sample(range(n), 2)
        e = [[int(r == c) for c in range(n)] for r in range(n)]
        e[i][j] = rng.randint(-2, 2)
        m = IntMatrix(e) @ m
    return m


def test_from_seifert_examples():
    r = rp.from_seifert(HOPFISH)
    assert r.action == IntMatrix([[0, 0], [0, 1]])
    assert r.form == IntMatrix([[0, 1], [-1, 0]])
    assert rp.from_seifert(TREFOIL).action == IntMatrix([[0, 1], [-1, 1]])
    assert rp.from_seifert(FIGURE8).action == IntMatrix([[0, 1], [1, 1]])
    with pytest.raises(rp.RepresentationError):
        rp.from_seifert(IntMatrix.zeros(0))


def test_invalid_representation_rejected():
    with pytest.raises(rp.RepresentationError, match="hermitian identity"):
        rp.Representation((IntMatrix.identity(2),), IntMatrix.identity(2),
                          IntMatrix([[0, 1], [-1, 0]]))
    with pytest.raises(rp.RepresentationError, match="skew"):
        rp.Representation((IntMatrix.identity(2),), IntMatrix.zeros(2), IntMatrix.identity(2))


def _sympy_charpoly(m):
    import sympy as sp
    return (sp.Matrix(m.tolist()) - oracles.t * sp.eye(m.rows)).det()


def test_hat_examples():
    import sympy as sp
    h = rp.hat(rp.from_seifert(HOPFISH), HOPFISH)
    assert h.dim == 8 and h.m == 2
    assert h.projectors[0] == IntMatrix.diag([1] * 4 + [0] * 4)
    ht = rp.hat(rp.from_seifert(TREFOIL))
    s, phi = ht.action, ht.form
    assert s.T @ phi + phi @ s == phi
    got = LaurentPoly1.from_coeffs([int(c) for c in char_poly(s)])
    want = sp.Poly(_sympy_charpoly(s), oracles.t).all_coeffs()
    assert got == LaurentPoly1.from_coeffs([int(c) for c in reversed(want)])
    # the block pattern forces (s^2 - s)^2 per block, whatever S is
    assert got == LaurentPoly1.from_coeffs([0, -1, 1]) ** 4
    with pytest.raises(rp.RepresentationError):
        rp.hat(rp.from_seifert(TREFOIL), FIGURE8)
    with pytest.raises(rp.RepresentationError):
        rp.hat(ht)


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_invariants_after_from_seifert_and_hat(seed):
    rng = random.Random(seed)
    a = ki.random_seifert(rng, rng.choice((2, 4, 6)))
    r = rp.from_seifert(a)
    assert not r.violations()
    h = rp.hat(r, a)
    assert not h.violations() and h.dim == 4 * a.size


def test_char_poly_simple_examples():
    assert tuple(rp.char_poly_simple(rp.from_seifert(TREFOIL))) == \
        (LaurentPoly1.from_coeffs([1, -1, 1]), True)
    assert tuple(rp.char_poly_simple(rp.from_seifert(FIGURE8))) == \
        (LaurentPoly1.from_coeffs([-1, -1, 1]), True)
    cp = rp.char_poly_simple(rp.from_seifert(HOPFISH))
    assert tuple(cp) == (LaurentPoly1.from_coeffs([0, -1, 1]), False)
    assert str(cp) == str(cp.integer).replace("t", "s")


def test_hom_space_dimensions():
    tr, f8 = rp.from_seifert(TREFOIL), rp.from_seifert(FIGURE8)
    assert len(rp.hom_space(tr, tr)) == 2
    assert len(rp.hom_space(rp.hat(tr), rp.hat(tr))) == 2
    assert rp.hom_space(tr, f8) == []
    for h in rp.hom_space(rp.hat(tr), rp.hat(tr)):
        assert rp.is_hom(h, rp.hat(tr), rp.hat(tr))


def _min_poly_degree(s):
    """Smallest k with I, S, ..., S^k linearly dependent (sympy rank)."""
    import sympy as sp
    m = sp.Matrix(s.tolist())
    powers = [sp.eye(m.rows)]
    while sp.Matrix([list(p) for p in powers]).rank() == len(powers):
        powers.append(powers[-1] * m)
    return len(powers) - 1


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_endomorphism_dims_agree_under_hat(seed):
    rng = random.Random(seed)
    a = ki.random_seifert(rng, rng.choice((2, 4)))
    r = rp.from_seifert(a)
    cp = rp.char_poly_simple(r)
    if not cp.irreducible:
        return
    d = len(rp.hom_space(r, r))
    assert d == _min_poly_degree(r.action)
    assert len(rp.hom_space(rp.hat(r), rp.hat(r))) == d


def test_is_isomorphic_examples():
    tr, f8 = rp.from_seifert(TREFOIL), rp.from_seifert(FIGURE8)
    v = rp.is_isomorphic(tr, tr)
    assert v.verdict == "Yes" and v.witness == IntMatrix.identity(2)
    v = rp.is_isomorphic(tr, f8)
    assert v.verdict == "No" and "characteristic" in v.reason
    assert rp.is_isomorphic(tr, rp.from_seifert(TABLE["stevedore"])).verdict == "No"


def _congruent_pair(seed, a):
    p = random_unimodular(random.Random(seed), a.size)
    b = p @ a.A @ p.T
    return b, p.T.inverse()


@pytest.mark.parametrize("name", ["trefoil", "figure8", "stevedore"])
@pytest.mark.parametrize("seed", [1, 2, 3])
def test_isomorphism_transport_through_hat(name, seed):
    a = TABLE[name]
    b, r = _congruent_pair(seed, a)
    rep, rep2 = rp.from_seifert(a), rp.from_seifert(b)
    assert rp.is_hom(r, rep, rep2) and r.det() != 0
    h, h2 = rp.hat(rep, a), rp.hat(rep2, b)
    w = rp.hat_witness(r)
    assert rp.is_hom(w, h, h2) and w.det() != 0
    v = rp.is_isomorphic(h, h2)
    assert v.verdict == "Yes" and rp.is_hom(v.witness, h, h2) and v.witness.det() != 0


def test_isomorphism_verdicts_agree_on_bundled_corpus():
    reps = {n: rp.from_seifert(a) for n, a in TABLE.items() if a.size}
    for x in reps:
        for y in reps:
            lo = rp.is_isomorphic(reps[x], reps[y]).verdict
            hi = rp.is_isomorphic(rp.hat(reps[x]), rp.hat(reps[y])).verdict
            assert (lo == "Yes") == (hi == "Yes"), (x, y)
            assert lo != "Unknown" and hi != "Unknown"


def test_simplicity_suite_examples():
    r = rp.simplicity_suite(rp.from_seifert(TREFOIL))
    assert r.passes and r.oracle_agrees and r.char_poly.irreducible
    h = rp.simplicity_suite(rp.hat(rp.from_seifert(TREFOIL)))
    assert h.passes and h.cyclic and h.commutant_dim == 2 and h.samples_checked >= 20
    bad = rp.from_seifert(HOPFISH)
    r = rp.simplicity_suite(bad)
    assert not r.passes and not r.cyclic and r.cyclic_failure == 0
    assert rp.is_invariant_subspace(bad, r.certificate)
    assert "det S = 0" in r.warnings
    assert r.oracle_agrees


def test_simplicity_certificate_from_commutant():
    # cyclic but with a reducible characteristic polynomial: S diag-like with distinct roots
    a = IntMatrix([[1, 1], [0, -2]])
    r = rp.from_seifert(a)
    rep = rp.simplicity_suite(r)
    assert not rep.passes
    assert rp.is_invariant_subspace(r, rep.certificate)
    assert rep.oracle_agrees


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_suite_agrees_with_irreducibility(seed):
    rng = random.Random(seed)
    r = rp.from_seifert(ki.random_seifert(rng, rng.choice((2, 4, 6))))
    rep = rp.simplicity_suite(r)
    assert rep.char_poly.irreducible is not None
    assert rep.passes == rep.char_poly.irreducible
    if not rep.passes:
        assert rp.is_invariant_subspace(r, rep.certificate)


def test_invariant_closure():
    r = rp.from_seifert(HOPFISH)
    assert len(rp.invariant_closure(r, [[1, 0]])) == 1
    assert len(rp.invariant_closure(r, [[1, 1]])) == 2
    assert not rp.is_invariant_subspace(r, [[1, 0], [0, 1]])


def test_json_round_trip():
    for a in (TREFOIL, HOPFISH):
        for rep in (rp.from_seifert(a), rp.hat(rp.from_seifert(a))):
            data = json.loads(json.dumps(rep.to_json()))
            assert set(data) == {"dim", "projectors", "action", "form"}
            assert rp.Representation.from_json(data) == rep
    rep = rp.Representation((IntMatrix.identity(2),), RatMatrix([[Fraction(1, 2), 0], [0, Fraction(1, 2)]]),
                            IntMatrix([[0, 1], [-1, 0]]))
    assert rep.to_json()["action"][0][0] == "1/2"
    assert rp.Representation.from_json(rep.to_json()) == rep
    bad = rep.to_json()
    bad["dim"] = 3
    with pytest.raises(rp.RepresentationError):
        rp.Representation.from_json(bad)

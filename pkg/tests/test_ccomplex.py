import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conclab import ccomplex as cc
from conclab.exactmath import CirclePoint, LaurentPoly1

EXACT = [CirclePoint.exact(t) for t in ("-1", "i", "-i")]
angles = st.floats(0.01, 2 * math.pi - 0.01)


def test_bing_double_signature_vanishes():
    d = cc.CComplexData([[0]], [[0]])
    for w1 in EXACT + [CirclePoint.from_angle(1.3)]:
        for w2 in EXACT + [CirclePoint.from_angle(4.1)]:
            assert cc.multivar_signature(d, w1, w2) == 0


def test_twisted_examples():
    m1, i = CirclePoint.exact("-1"), CirclePoint.exact("i")
    assert cc.multivar_signature(cc.CComplexData([[3]], [[3]]), m1, m1) == 1
    assert cc.multivar_signature(cc.CComplexData([[-2]], [[-2]]), i, m1) == -1


def test_pencil_matches_formula():
    d = cc.CComplexData([[1, 2], [0, -1]], [[0, 1], [3, 2]])
    w1, w2 = CirclePoint.from_angle(0.7), CirclePoint.from_angle(2.9)
    z1, z2 = w1.complex, w2.complex
    a, ap = np.array(d.A.tolist(), float), np.array(d.Aprime.tolist(), float)
    want = ((1 - z1.conjugate()) * (1 - z2.conjugate()) * a
            + (1 - z1.conjugate()) * (1 - z2) * ap
            + (1 - z1) * (1 - z2.conjugate()) * ap.T
            + (1 - z1) * (1 - z2) * a.T)
    re, im = cc.pencil(d, w1, w2)
    assert np.allclose(np.array(re, float) + 1j * np.array(im, float), want)


def test_pencil_vanishes_at_one():
    d = cc.CComplexData([[1, 2], [0, -1]], [[0, 1], [3, 2]])
    one = CirclePoint.exact("1")
    for w in EXACT:
        re, im = cc.pencil(d, one, w)
        assert all(x == 0 for row in list(re) + list(im) for x in row)
        assert cc.multivar_signature(d, one, w) == 0


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=3, max_size=3),
       st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=3, max_size=3),
       angles, angles)
def test_conjugation_symmetry(a, ap, t1, t2):
    d = cc.CComplexData(a, ap)
    w1, w2 = CirclePoint.from_angle(t1), CirclePoint.from_angle(t2)
    re, im = cc.pencil(d, w1, w2)
    ev = np.linalg.eigvalsh(np.array(re, float) + 1j * np.array(im, float))
    if np.min(np.abs(ev)) < 1e-6 * max(1.0, np.max(np.abs(ev))):
        return
    assert cc.multivar_signature(d, w1, w2) == \
        cc.multivar_signature(d, w1.conjugate(), w2.conjugate())


@settings(max_examples=40, deadline=None)
@given(st.integers(-5, 5).filter(bool), st.integers(1, 4), angles, angles)
def test_scalar_twist_signature(t, k, t1, t2):
    ident = [[t * (i == j) for j in range(k)] for i in range(k)]
    d = cc.CComplexData(ident, ident)
    s = cc.multivar_signature(d, CirclePoint.from_angle(t1), CirclePoint.from_angle(t2))
    assert s == k * (1 if t > 0 else -1)


def test_alexander_module():
    v = cc.bing_alexander_module(cc.CComplexData([[0]], [[0]]))
    assert v.verdict == "TrivialFree" and v.delta.normalize() == v.delta
    assert v.to_json()["delta"] == {"0,0": 1}
    zero3 = [[0] * 3 for _ in range(3)]
    assert cc.bing_alexander_module(cc.CComplexData(zero3, zero3)).verdict == "TrivialFree"
    assert cc.bing_alexander_module(cc.CComplexData([[1]], [[0]])).verdict == "Other"


def test_murasugi():
    zero = LaurentPoly1()
    assert cc.murasugi_arf(0, 0, zero) == 0
    assert cc.murasugi_arf(1, 0, zero) == 1
    assert cc.murasugi_arf(0, 0, LaurentPoly1.from_coeffs([1, -2, 1])) == 1
    with pytest.raises(ValueError):
        cc.murasugi_arf(2, 0, zero)


def test_ccomplex_json_and_validation():
    d = cc.CComplexData([[1, 2], [0, -1]], [[0, 1], [3, 2]])
    assert cc.CComplexData.from_json(d.to_json()) == d
    assert set(d.to_json()) == {"A", "Aprime"}
    with pytest.raises(ValueError):
        cc.CComplexData([[1]], [[1, 2], [3, 4]])

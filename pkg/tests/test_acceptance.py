"""Acceptance criteria 1-12, each exact (or at its stated tolerance) and timed."""

import math
import random
import time
from contextlib import contextmanager
from fractions import Fraction

from conclab import boundary_forms as bf
from conclab import ccomplex as cc
from conclab import diagrams as dg
from conclab import knot_invariants as ki
from conclab import representations as rp
from conclab import s_calculus as sc
from conclab.cli import main
from conclab.exactmath import CirclePoint, IntMatrix, LaurentPoly1, RatMatrix

TABLE = ki.load_knot_table()


@contextmanager
def criterion(capsys, number, title, limit):
    """Time the block, print one PASS/FAIL line, then enforce the limit."""
    t0 = time.perf_counter()
    ok, why = False, ""
    try:
        yield
        ok = True
    except AssertionError as exc:
        why = f" ({exc})" if str(exc) else ""
        raise
    finally:
        dt = time.perf_counter() - t0
        in_time = dt < limit
        status = "PASS" if ok and in_time else "FAIL"
        with capsys.disabled():
            print(f"\n[{status}] criterion {number}: {title} "
                  f"({dt:.3f}s, limit {limit}s){why}")
    assert in_time, f"criterion {number} took {dt:.3f}s, limit {limit}s"


def random_unimodular(rng, n, steps=8):
    m = IntMatrix.identity(n)
    for _ in range(steps if n > 1 else 0):
        i, j = rng.sample(range(n), 2)
        e = [[int(r == c) for c in range(n)] for r in range(n)]
        e[i][j] = rng.randint(-2, 2)
        m = IntMatrix(e) @ m
    return m


def test_criterion_01_figure8_pipeline(capsys):
    with criterion(capsys, 1, "figure-eight Bing double not boundary slice", 1.0):
        f8 = TABLE["figure8"]
        assert ki.alexander(f8) == LaurentPoly1.from_coeffs([1, -3, 1])
        assert ki.fox_milnor(ki.alexander(f8)).holds is False
        v = ki.algebraically_slice(f8)
        assert isinstance(v, ki.NotSlice) and v.test == "fox_milnor"
        assert main(["bing", "--name", "figure8"]) == 0
        out = capsys.readouterr().out
        assert "B(figure8) not boundary slice" in out


def test_criterion_02_trefoil_integral(capsys):
    with criterion(capsys, 2, "trefoil signature integral -4/3", 2.0):
        est = ki.signature_integral(TABLE["trefoil"], 4096)
        assert est.error_bound <= Fraction(1, 100)
        assert abs(est.value - Fraction(-4, 3)) <= est.error_bound


def test_criterion_03_Shat_display(capsys):
    with criterion(capsys, 3, "S_hat block pattern on table + 50 random", 5.0):
        rng = random.Random(3)
        corpus = list(TABLE.values()) + [ki.random_seifert(rng, rng.choice((2, 4, 6)))
                                         for _ in range(50)]
        for a in corpus:
            that, shat = bf.build_That_Shat(a)   # raises if the pattern fails
            if a.size:
                s = a.T.inverse() @ a.A
                assert shat == bf.shat_pattern(s)
                assert RatMatrix(that.tolist()) @ shat == RatMatrix(bf.build_Ahat(a).tolist())


def test_criterion_04_Qhat_metabolizes(capsys):
    with criterion(capsys, 4, "Q_hat metabolizes B(A) for slice-type A", 1.0):
        for a in (IntMatrix([[0, 1], [0, 0]]), IntMatrix([[1, 1], [0, -2]])):
            v = ki.algebraically_slice(a)
            assert isinstance(v, ki.AlgebraicallySlice)
            qh = bf.build_Qhat(v.certificate)
            assert bf.is_metabolic_collection(bf.bing_double(a), bf.ComponentCongruence((qh, qh)))


def test_criterion_05_R_identity(capsys):
    with criterion(capsys, 5, "R identity on all table pairs", 1.0):
        for a in TABLE.values():
            for b in TABLE.values():
                assert bf.verify_R_identity(a, b)


def test_criterion_06_hermitian_identity(capsys):
    with criterion(capsys, 6, "hermitian identity for from_seifert and hat, 100 random", 5.0):
        rng = random.Random(6)
        for _ in range(100):
            a = ki.random_seifert(rng, rng.choice((2, 4, 6)))
            for rep in (rp.from_seifert(a), rp.hat(rp.from_seifert(a), a)):
                s, phi = rep.action, rep.form
                assert s.T @ phi + phi @ s == phi


def test_criterion_07_endomorphism_dims(capsys):
    with criterion(capsys, 7, "dim Hom = 2 for trefoil and figure-eight and their hats", 2.0):
        for name in ("trefoil", "figure8"):
            rep = rp.from_seifert(TABLE[name])
            cp = rp.char_poly_simple(rep)
            assert cp.irreducible and cp.integer.max_exp == 2
            h = rp.hat(rep)
            assert len(rp.hom_space(rep, rep)) == 2
            assert len(rp.hom_space(h, h)) == 2


def test_criterion_08_simplicity_and_transport(capsys):
    with criterion(capsys, 8, "simplicity suite and isomorphism transport", 10.0):
        for name in ("trefoil", "figure8"):
            r = rp.simplicity_suite(rp.hat(rp.from_seifert(TABLE[name])))
            assert r.passes and r.cyclic and r.commutant_division
        bad = rp.from_seifert(IntMatrix([[0, 1], [0, 0]]))
        r = rp.simplicity_suite(bad)
        assert not r.passes and rp.is_invariant_subspace(bad, r.certificate)
        rng = random.Random(8)
        for name, a in TABLE.items():
            if not a.size:
                continue
            p = random_unimodular(rng, a.size)
            b = p @ a.A @ p.T
            rep, rep2 = rp.from_seifert(a), rp.from_seifert(b)
            v = rp.is_isomorphic(rep, rep2)
            assert v.verdict == "Yes" and rp.is_hom(v.witness, rep, rep2)
            h, h2 = rp.hat(rep, a), rp.hat(rep2, b)
            w = rp.hat_witness(v.witness)
            assert rp.is_hom(w, h, h2) and w.det() != 0
            assert rp.is_isomorphic(h, h2).verdict == "Yes"


def test_criterion_09_braid_pipeline(capsys):
    with criterion(capsys, 9, "braid pipeline for the trefoil and figure-eight", 1.0):
        b = dg.parse_braid("1 1 1")
        a = dg.seifert_matrix_from_braid(b)
        assert ki.alexander(a) == LaurentPoly1.from_coeffs([1, -1, 1])
        assert ki.lt_signature(a, "-1") == -2
        assert ki.arf(a) == 1
        assert dg.rasmussen_positive(b) == 2
        f8 = dg.seifert_matrix_from_braid(dg.parse_braid("1 -2 1 -2"))
        assert ki.alexander(f8) == LaurentPoly1.from_coeffs([1, -3, 1])


def test_criterion_10_s_calculus(capsys):
    with criterion(capsys, 10, "s-value deductions and the Whitehead scenario", 1.0):
        assert sc.solve(sc.bing_hopf_system())["B"].values() == [-1, 1]
        assert sc.solve(sc.whitehead_system([sc.Known("Wh", 2)]))["B"].values() == [1]
        u = sc.SConstraintSystem().add_link("U2", 2).add(sc.PositiveDiagram("U2", 0, 2))
        assert sc.solve(u)["U2"].values() == [-1]
        assert sc.scenario_whitehead().pairs == ((-1, 0), (1, 0), (1, 2))


def test_criterion_11_twisted_bing_signature(capsys):
    with criterion(capsys, 11, "twisted signature = sign(t) on a 16x16 circle grid", 2.0):
        pts = [CirclePoint.from_angle(2 * math.pi * k / 17) for k in range(1, 17)]
        for t in (-3, -1, 2, 5):
            d = cc.CComplexData([[t]], [[t]])
            want = 1 if t > 0 else -1
            for w1 in pts:
                for w2 in pts:
                    assert cc.multivar_signature(d, w1, w2) == want, (t, w1, w2)


def test_criterion_12_tb_trefoil(capsys):
    with criterion(capsys, 12, "tb of the trefoil grid diagram = 1", 1.0):
        assert dg.tb_grid(dg.TREFOIL_GRID) == 1

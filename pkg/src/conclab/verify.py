"""Exact identity checks over the bundled table and random Seifert matrices."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import boundary_forms as bf
from . import ccomplex as cc
from . import diagrams as dg
from . import knot_invariants as ki
from . import representations as rp
from . import s_calculus as sc
from .exactmath import CirclePoint, IntMatrix, LaurentPoly1, congruence

HOPF_SLICE_EXAMPLE = IntMatrix([[0, 1], [0, 0]])


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""

    def to_json(self):
        return {"name": self.name, "ok": self.ok, "detail": self.detail}


@dataclass
class SuiteReport:
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, name: str, fn: Callable[[], tuple[bool, str] | bool]):
        try:
            res = fn()
        except Exception as exc:  # a crash is a failed identity, with its dump
            res = (False, f"{type(exc).__name__}: {exc}")
        ok, detail = res if isinstance(res, tuple) else (bool(res), "")
        self.checks.append(Check(name, bool(ok), detail))

    def to_json(self):
        return {"ok": self.ok, "passed": sum(c.ok for c in self.checks),
                "total": len(self.checks), "checks": [c.to_json() for c in self.checks]}


def _dump(a) -> str:
    return str(ki.as_seifert(a).A.to_json())


def _shat_ok(a):
    that, _ = bf.build_That_Shat(a)
    s = ki.as_seifert(a)
    n = s.size
    ul = that.submatrix(0, 2 * n, 0, 2 * n)
    want = IntMatrix.from_blocks([[IntMatrix.zeros(n), s.T], [s.T, s.T.T]])
    return ul == want, "" if ul == want else f"T_hat corner mismatch for {_dump(a)}"


def _hermitian_ok(a):
    rep = rp.from_seifert(a)
    h = rp.hat(rep)
    for r in (rep, h):
        if r.action.T @ r.form + r.form @ r.action != r.form:
            return False, f"hermitian identity fails for {_dump(a)}"
    return True, ""


def _qhat_ok(a, bound):
    v = ki.algebraically_slice(a, bound)
    if not isinstance(v, ki.AlgebraicallySlice):
        return True, f"skipped ({v.status})"
    qh = bf.build_Qhat(v.certificate) if ki.as_seifert(a).size else IntMatrix.identity(0)
    ok = bf.is_metabolic_collection(bf.bing_double(a), bf.ComponentCongruence((qh, qh)))
    return ok, "" if ok else f"Q_hat does not metabolize B(A) for {_dump(a)}"


def run_suite(table: dict[str, ki.SeifertMatrix], search_bound: int = 5,
              resolution: int = 4096, random_count: int = 0, seed: int = 0) -> SuiteReport:
    rep = SuiteReport()
    knots = dict(table)
    nonempty = {k: v for k, v in knots.items() if v.size}

    if "figure8" in knots:
        rep.add("figure8 fails Fox-Milnor and is not algebraically slice", lambda: (
            isinstance(ki.algebraically_slice(knots["figure8"], search_bound), ki.NotSlice)
            and ki.fox_milnor(ki.alexander(knots["figure8"])).holds is False))
    if "trefoil" in knots:
        def integral():
            est = ki.signature_integral(knots["trefoil"], resolution)
            return (abs(est.value - Fraction(-4, 3)) <= Fraction(1, 100)
                    and est.error_bound <= Fraction(1, 100)), f"{float(est.value):.6f}"
        rep.add("trefoil signature integral is -4/3", integral)

    for name, k in knots.items():
        rep.add(f"S_hat block pattern [{name}]", lambda k=k: _shat_ok(k))
    for n1, k1 in knots.items():
        for n2, k2 in knots.items():
            rep.add(f"R identity [{n1}, {n2}]", lambda k1=k1, k2=k2: bf.verify_R_identity(k1, k2))
    for name, k in list(knots.items()) + [("[[0,1],[0,0]]", ki.SeifertMatrix(HOPF_SLICE_EXAMPLE))]:
        rep.add(f"Q_hat metabolizes B(A) [{name}]", lambda k=k: _qhat_ok(k, search_bound))
    for name, k in nonempty.items():
        rep.add(f"block congruence B(A) -> A_hat [{name}]", lambda k=k: bf.verify_block_congruence(
            bf.bing_double(k), bf.ahat_collection(k), bf.standard_bing_witness(k)))
        rep.add(f"hermitian identity [{name}]", lambda k=k: _hermitian_ok(k))

    for name, k in nonempty.items():
        r = rp.from_seifert(k)
        if rp.char_poly_simple(r).irreducible:
            def endo_dims(r=r):
                a, b = len(rp.hom_space(r, r)), len(rp.hom_space(rp.hat(r), rp.hat(r)))
                return a == b == r.dim, f"dims {a}, {b}"
            rep.add(f"endomorphism dimensions agree [{name}]", endo_dims)
            rep.add(f"hat is simple [{name}]",
                    lambda r=r: rp.simplicity_suite(rp.hat(r)).passes)
    rep.add("invariant subspace detected for [[0,1],[0,0]]", lambda: (
        lambda s: not s.passes and s.certificate is not None)(
            rp.simplicity_suite(rp.from_seifert(HOPF_SLICE_EXAMPLE))))

    def transport():
        reps = {n: rp.from_seifert(k) for n, k in nonempty.items()}
        for n1, r1 in reps.items():
            for n2, r2 in reps.items():
                v = rp.is_isomorphic(r1, r2)
                vh = rp.is_isomorphic(rp.hat(r1), rp.hat(r2))
                if (v.verdict == "Yes") != (vh.verdict == "Yes"):
                    return False, f"{n1} vs {n2}: {v.verdict} but hats {vh.verdict}"
                if v.verdict == "Yes" and not rp.is_hom(rp.hat_witness(v.witness),
                                                       rp.hat(r1), rp.hat(r2)):
                    return False, f"R^4 is not a hat isomorphism for {n1}, {n2}"
        return True, ""
    rep.add("isomorphism transports through hat", transport)

    rep.add("s(B(K)) in {-1, 1}", lambda: sc.solve(sc.bing_hopf_system())["B"].values() == [-1, 1])
    rep.add("whitehead scenario pairs", lambda: sc.scenario_whitehead().pairs
            == ((-1, 0), (1, 0), (1, 2)))
    rep.add("s(Wh) = 2 forces s(B) = 1", lambda: sc.scenario_whitehead(s_wh=2).pairs == ((1, 2),))
    unlink = sc.SConstraintSystem().add_link("U2", 2)
    unlink.add(sc.PositiveDiagram("U2", 0, 2))
    rep.add("2-component unlink has s = -1", lambda: sc.solve(unlink)["U2"].values() == [-1])

    pts = [CirclePoint.exact(t) for t in ("-1", "i", "-i")]
    zero = cc.CComplexData([[0]], [[0]])
    rep.add("Bing double C-complex signature vanishes", lambda: all(
        cc.multivar_signature(zero, w1, w2) == 0 for w1 in pts for w2 in pts))
    rep.add("twisted Bing double signature is sign(t)", lambda: all(
        cc.multivar_signature(cc.CComplexData([[t]], [[t]]), w1, w2) == (1 if t > 0 else -1)
        for t in (-3, -1, 2, 5) for w1 in pts for w2 in pts))
    rep.add("Bing double Alexander module is free", lambda:
            cc.bing_alexander_module(zero).verdict == "TrivialFree")
    rep.add("Murasugi congruence for Bing doubles", lambda:
            cc.murasugi_arf(0, 0, LaurentPoly1()) == 0)
    rep.add("trefoil grid has tb = 1", lambda: dg.tb_grid(dg.TREFOIL_GRID) == 1)

    if random_count:
        rng = random.Random(seed)
        for k in range(random_count):
            a = ki.random_seifert(rng, rng.choice((2, 4, 6)))
            b = ki.random_seifert(rng, rng.choice((0, 2)))
            rep.add(f"random #{k}: S_hat pattern", lambda a=a: _shat_ok(a))
            rep.add(f"random #{k}: hermitian identity", lambda a=a: _hermitian_ok(a))
            rep.add(f"random #{k}: R identity", lambda a=a, b=b: bf.verify_R_identity(a, b))
            rep.add(f"random #{k}: B(A) invariants", lambda a=a: bf.bing_double(a) is not None)

            def alex_inv(a=a, rng_state=rng.random()):
                q = _random_unimodular(random.Random(rng_state), a.size)
                return ki.alexander(congruence(q, a.A)) == ki.alexander(a), _dump(a)
            rep.add(f"random #{k}: alexander congruence invariance", alex_inv)
            if a.size == 2:
                rep.add(f"random #{k}: Q_hat metabolizes B(A)",
                        lambda a=a: _qhat_ok(a, search_bound))
    return rep


def _random_unimodular(rng: random.Random, n: int, steps: int = 6) -> IntMatrix:
    m = IntMatrix.identity(n)
    for _ in range(steps if n > 1 else 0):
        i, j = rng.sample(range(n), 2)
        e = [[int(r == c) for c in range(n)] for r in range(n)]
        e[i][j] = rng.randint(-2, 2)
        m = IntMatrix(e) @ m
    return m

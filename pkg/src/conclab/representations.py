"""Finite-dimensional models of projective P_m-modules with a (-1)-hermitian form.

A :class:`Representation` is ``(projectors, S, phi)`` over Q: orthogonal
idempotents summing to the identity, the action ``S`` of the generator
``s``, and a nonsingular skew form ``phi`` with ``S^T phi + phi S = phi``.
Homomorphism spaces are solved exactly, which drives the simplicity,
isomorphism and endomorphism-ring checks.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Sequence

from .boundary_forms import build_That_Shat
from .exactmath import (FactorizationBoundError, IntMatrix, LaurentPoly1, Matrix, RatMatrix,
                        factor_integer_poly, solve_homogeneous)
from .exactmath.ops import char_poly
from .knot_invariants import SeifertMatrix, as_seifert

DEFAULT_SEED = 20070


class RepresentationError(ValueError):
    pass


@dataclass(frozen=True)
class Representation:
    projectors: tuple[Matrix, ...]
    action: Matrix
    form: Matrix

    def __post_init__(self):
        object.__setattr__(self, "projectors", tuple(self.projectors))
        problems = self.violations()
        if problems:
            raise RepresentationError("; ".join(problems))

    @property
    def dim(self) -> int:
        return self.action.rows

    @property
    def m(self) -> int:
        return len(self.projectors)

    def violations(self) -> list[str]:
        n = self.dim
        out = []
        ident = IntMatrix.identity(n)
        pis = self.projectors
        if any(p.shape != (n, n) for p in pis) or self.form.shape != (n, n):
            return ["shape mismatch"]
        for i, p in enumerate(pis):
            if p @ p != p:
                out.append(f"pi_{i + 1} is not idempotent")
            for j, q in enumerate(pis):
                if i != j and not (p @ q).is_zero():
                    out.append(f"pi_{i + 1} pi_{j + 1} != 0")
            if p.T @ self.form != self.form @ p:
                out.append(f"form does not respect pi_{i + 1}")
        if sum(pis, IntMatrix.zeros(n)) != ident:
            out.append("projectors do not sum to the identity")
        if self.form.T != -self.form:
            out.append("form is not skew")
        if n and self.form.det() == 0:
            out.append("form is singular")
        if self.action.T @ self.form + self.form @ self.action != self.form:
            out.append("hermitian identity S^T phi + phi S = phi fails")
        return out

    def to_json(self):
        return {"dim": self.dim, "projectors": [p.to_json() for p in self.projectors],
                "action": self.action.to_json(), "form": self.form.to_json()}

    @classmethod
    def from_json(cls, data) -> "Representation":
        rep = cls(tuple(RatMatrix.from_json(p) for p in data["projectors"]),
                  RatMatrix.from_json(data["action"]), RatMatrix.from_json(data["form"]))
        if rep.dim != data["dim"]:
            raise RepresentationError("dim field disagrees with the matrices")
        return rep


def from_seifert(a) -> Representation:
    s = as_seifert(a)
    if s.size == 0:
        raise RepresentationError("from_seifert needs a nonempty Seifert matrix")
    t = s.T
    return Representation((IntMatrix.identity(s.size),), t.inverse() @ s.A, t)


def seifert_of(rep: Representation) -> SeifertMatrix:
    """Recover ``A = phi S`` from an m = 1 representation."""
    a = rep.form @ rep.action
    return SeifertMatrix(IntMatrix(a.tolist()))


def hat(rep: Representation, a=None) -> Representation:
    """The m = 2 object on ``M^4`` with action S_hat and form T_hat."""
    if rep.m != 1:
        raise RepresentationError("hat takes an m = 1 representation")
    s = as_seifert(a) if a is not None else seifert_of(rep)
    if a is not None and from_seifert(s) != rep:
        raise RepresentationError("rep is not from_seifert(A)")
    that, shat = build_That_Shat(s)
    h = 2 * s.size
    p1 = IntMatrix.diag([1] * h + [0] * h)
    p2 = IntMatrix.diag([0] * h + [1] * h)
    return Representation((p1, p2), shat, that)


def hat_witness(r: Matrix) -> Matrix:
    """``R ⊕ R ⊕ R ⊕ R``."""
    return Matrix.block_diag(r, r, r, r)


# -- characteristic polynomial ------------------------------------------


@dataclass(frozen=True)
class CharPoly:
    coeffs: tuple[Fraction, ...]       # det(S - s I), low -> high
    integer: LaurentPoly1              # denominators cleared, primitive
    irreducible: bool | None           # None when factorization was refused

    def __iter__(self):
        return iter((self.integer, self.irreducible))

    def __str__(self):
        return str(self.integer).replace("t", "s")


def char_poly_simple(rep: Representation, max_degree: int = 16) -> CharPoly:
    if rep.m != 1:
        raise RepresentationError("char_poly_simple is for m = 1")
    coeffs = tuple(char_poly(rep.action))
    den = lcm(*(c.denominator for c in coeffs))
    ints = LaurentPoly1.from_coeffs([int(c * den) for c in coeffs])
    ints = LaurentPoly1({e: c // ints.content() for e, c in ints.terms.items()})
    if ints.leading_coeff < 0:
        ints = -ints
    # factor_integer_poly works up to Laurent units, so a factor s must be caught here
    try:
        if ints.max_exp == 0 or ints.min_exp > 0:
            irr = ints.max_exp == 1
        else:
            irr = factor_integer_poly(ints, max_degree).is_irreducible
    except FactorizationBoundError:
        irr = None
    return CharPoly(coeffs, ints, irr)


# -- homomorphisms --------------------------------------------------------


def _grading(rep: Representation) -> list[int] | None:
    """Grade of each basis vector when all projectors are diagonal 0/1."""
    n = rep.dim
    grade = [None] * n
    for k, p in enumerate(rep.projectors):
        for a in range(n):
            for b in range(n):
                v = p[a, b]
                if (a != b and v) or v not in (0, 1):
                    return None
            if p[a, a] == 1:
                grade[a] = k
    return grade if None not in grade else None


def hom_space(rep: Representation, rep2: Representation) -> list[Matrix]:
    """Basis of ``{H : H pi_i = pi'_i H, H S = S' H}``; H maps rep -> rep2."""
    if rep.m != rep2.m:
        raise RepresentationError("hom_space needs equal m")
    n, n2 = rep.dim, rep2.dim
    g1, g2 = _grading(rep), _grading(rep2)
    if g1 is not None and g2 is not None:
        cells = [(a, b) for a in range(n2) for b in range(n) if g2[a] == g1[b]]
        pieces = [("S", rep.action, rep2.action)]
    else:
        cells = [(a, b) for a in range(n2) for b in range(n)]
        pieces = [("S", rep.action, rep2.action)] + [
            ("pi", p, q) for p, q in zip(rep.projectors, rep2.projectors)]
    index = {c: k for k, c in enumerate(cells)}
    eqs = []
    for _, x, y in pieces:
        xnz = [[(k, x[k, b]) for k in range(n) if x[k, b]] for b in range(n)]
        ynz = [[(k, y[a, k]) for k in range(n2) if y[a, k]] for a in range(n2)]
        # (H X - Y H)[a, b] = sum_k H[a,k] X[k,b] - sum_k Y[a,k] H[k,b]
        for a in range(n2):
            for b in range(n):
                eq: dict[int, Fraction] = {}
                for k, v in xnz[b]:
                    idx = index.get((a, k))
                    if idx is not None:
                        eq[idx] = eq.get(idx, 0) + v
                for k, v in ynz[a]:
                    idx = index.get((k, b))
                    if idx is not None:
                        eq[idx] = eq.get(idx, 0) - v
                if any(eq.values()):
                    eqs.append(eq)
    basis = []
    for vec in solve_homogeneous(eqs, len(cells)):
        h = [[Fraction(0)] * n for _ in range(n2)]
        for (a, b), v in zip(cells, vec):
            h[a][b] = v
        basis.append(_tidy(RatMatrix(h, n2, n) if n2 and n else IntMatrix.zeros(n2, n)))
    return basis


def _tidy(m: Matrix) -> Matrix:
    return _as_exact(m.tolist(), m.rows, m.cols)


def _as_exact(rows, r, c) -> Matrix:
    vals = [[x.numerator if isinstance(x, Fraction) and x.denominator == 1 else x for x in row]
            for row in rows]
    if all(isinstance(x, int) for row in vals for x in row):
        return IntMatrix(vals, r, c) if r else IntMatrix.zeros(r, c)
    return RatMatrix(vals, r, c)


def is_hom(h: Matrix, rep: Representation, rep2: Representation) -> bool:
    if h.shape != (rep2.dim, rep.dim):
        return False
    if h @ rep.action != rep2.action @ h:
        return False
    return all(h @ p == q @ h for p, q in zip(rep.projectors, rep2.projectors))


def _combo(basis: Sequence[Matrix], coeffs: Sequence[int]) -> Matrix:
    out = basis[0].scale(coeffs[0])
    for b, c in zip(basis[1:], coeffs[1:]):
        if c:
            out = out + b.scale(c)
    return out


# -- isomorphism ----------------------------------------------------------


@dataclass(frozen=True)
class Yes:
    witness: Matrix
    verdict = "Yes"


@dataclass(frozen=True)
class No:
    reason: str
    verdict = "No"


@dataclass(frozen=True)
class Unknown:
    reason: str
    verdict = "Unknown"


def is_isomorphic(rep: Representation, rep2: Representation, seed: int = DEFAULT_SEED,
                  tries: int = 20, grid_limit: int = 729):
    if rep.m != rep2.m:
        raise RepresentationError("is_isomorphic needs equal m")
    if rep.dim != rep2.dim:
        return No(f"dimensions differ ({rep.dim} vs {rep2.dim})")
    if char_poly(rep.action) != char_poly(rep2.action):
        return No("characteristic polynomials differ")
    ident = IntMatrix.identity(rep.dim)
    if is_hom(ident, rep, rep2):
        return Yes(ident)
    basis = hom_space(rep, rep2)
    if not basis:
        return No("hom_space is zero")
    rng = random.Random(seed)
    for _ in range(tries):
        h = _combo(basis, [rng.randint(-9, 9) for _ in basis])
        if h.det() != 0:
            return Yes(h)
    # small-grid fallback over coefficients in {-1, 0, 1}
    k = len(basis)
    for idx in range(min(3 ** k, grid_limit)):
        coeffs = [(idx // 3 ** j) % 3 - 1 for j in range(k)]
        if any(coeffs):
            h = _combo(basis, coeffs)
            if h.det() != 0:
                return Yes(h)
    return Unknown(f"no invertible element among {tries} random and grid combinations")


# -- simplicity -----------------------------------------------------------


def _echelon_insert(basis: dict[int, list[Fraction]], v: list[Fraction]) -> list[Fraction] | None:
    """Reduce ``v`` against a pivot-keyed basis; insert and return it if new."""
    v = list(v)
    for p, row in basis.items():
        if v[p]:
            f = v[p]
            v = [x - f * y for x, y in zip(v, row)]
    piv = next((i for i, x in enumerate(v) if x), None)
    if piv is None:
        return None
    c = v[piv]
    v = [x / c for x in v]
    for p, row in basis.items():
        if row[piv]:
            f = row[piv]
            basis[p] = [x - f * y for x, y in zip(row, v)]
    basis[piv] = v
    return v


def invariant_closure(rep: Representation, seeds: Sequence[Sequence]) -> list[list[Fraction]]:
    """Basis of the smallest subspace containing ``seeds`` stable under pi_i and S."""
    ops = list(rep.projectors) + [rep.action]
    basis: dict[int, list[Fraction]] = {}
    queue = []
    for s in seeds:
        v = _echelon_insert(basis, [Fraction(x) for x in s])
        if v is not None:
            queue.append(v)
    while queue:
        v = queue.pop()
        for op in ops:
            w = _echelon_insert(basis, op.apply(v))
            if w is not None:
                queue.append(w)
    return [basis[p] for p in sorted(basis)]


def is_invariant_subspace(rep: Representation, vectors: Sequence[Sequence]) -> bool:
    if not vectors:
        return False
    span = RatMatrix(vectors)
    r = span.rank()
    if not 0 < r < rep.dim:
        return False
    for op in list(rep.projectors) + [rep.action]:
        imgs = [op.apply(v) for v in vectors]
        if RatMatrix(list(vectors) + imgs).rank() != r:
            return False
    return True


def _kernel(m: Matrix) -> list[list[Fraction]]:
    return m.nullspace()


def _poly_at(coeffs: Sequence[Fraction], x: Matrix) -> Matrix:
    n = x.rows
    out = IntMatrix.zeros(n)
    for c in reversed(coeffs):
        out = out @ x + IntMatrix.identity(n).scale(c)
    return out


@dataclass
class SimplicityReport:
    dim: int
    m: int
    cyclic: bool
    cyclic_failure: int | None = None           # index of a non-generating basis vector
    commutant_dim: int = 0
    samples_checked: int = 0
    commutant_division: bool = True
    certificate: list[list[Fraction]] | None = None   # proper invariant subspace
    certificate_source: str = ""
    char_poly: CharPoly | None = None
    oracle_agrees: bool | None = None
    warnings: list[str] = field(default_factory=list)

    @property
    def passes(self) -> bool:
        return self.cyclic and self.commutant_division

    def to_json(self):
        return {
            "dim": self.dim, "m": self.m, "passes": self.passes, "cyclic": self.cyclic,
            "cyclic_failure": self.cyclic_failure, "commutant_dim": self.commutant_dim,
            "samples_checked": self.samples_checked,
            "commutant_division": self.commutant_division,
            "certificate": ([[str(x) for x in v] for v in self.certificate]
                            if self.certificate else None),
            "certificate_source": self.certificate_source,
            "char_poly": str(self.char_poly) if self.char_poly else None,
            "char_poly_irreducible": self.char_poly.irreducible if self.char_poly else None,
            "oracle_agrees": self.oracle_agrees, "warnings": self.warnings,
        }


def simplicity_suite(rep: Representation, seed: int = DEFAULT_SEED,
                     samples: int = 20) -> SimplicityReport:
    """Cyclicity plus commutant-division checks, with certificates for failure.

    A failure always comes with a proper invariant subspace: the closure of
    a non-generating basis vector, the kernel of a singular commutant
    element, or ``ker p(X)`` for an irreducible factor p of a reducible
    minimal polynomial of a commutant element X.
    """
    n = rep.dim
    rep_out = SimplicityReport(dim=n, m=rep.m, cyclic=True)
    # the hat construction assumes these for the underlying m = 1 object
    if rep.m == 1 and n and rep.action.det() == 0:
        rep_out.warnings.append("det S = 0")
    if rep.m == 1 and n and (rep.action - IntMatrix.identity(n)).det() == 0:
        rep_out.warnings.append("det(S - I) = 0")

    for k in range(n):
        e = [0] * n
        e[k] = 1
        span = invariant_closure(rep, [e])
        if len(span) < n:
            rep_out.cyclic = False
            rep_out.cyclic_failure = k
            rep_out.certificate = span
            rep_out.certificate_source = f"closure of e_{k + 1}"
            break

    basis = hom_space(rep, rep)
    rep_out.commutant_dim = len(basis)
    rng = random.Random(seed)
    elements = list(basis)
    for _ in range(samples if basis else 0):
        elements.append(_combo(basis, [rng.randint(-5, 5) for _ in basis]))
    for x in elements:
        if x.is_zero():
            continue
        rep_out.samples_checked += 1
        if x.det() == 0:
            rep_out.commutant_division = False
            if rep_out.certificate is None:
                rep_out.certificate = _kernel(x)
                rep_out.certificate_source = "kernel of a singular commutant element"
            break
        cert = _reducible_min_poly_certificate(x)
        if cert is not None:
            rep_out.commutant_division = False
            if rep_out.certificate is None:
                rep_out.certificate = cert
                rep_out.certificate_source = "kernel of a factor of a minimal polynomial"
            break

    if rep.m == 1:
        cp = char_poly_simple(rep)
        rep_out.char_poly = cp
        if cp.irreducible is not None:
            rep_out.oracle_agrees = cp.irreducible == rep_out.passes
    if rep_out.certificate is not None:
        assert is_invariant_subspace(rep, rep_out.certificate)
    return rep_out


def _reducible_min_poly_certificate(x: Matrix):
    """``ker f(X)`` for an irreducible factor f of det(X - sI), unless f(X) = 0.

    The minimal polynomial has the same irreducible factors as the
    characteristic one, so it is reducible exactly when f(X) != 0 for the
    first factor f, and then ``ker f(X)`` is proper and nonzero.
    """
    cp = char_poly(x)
    den = lcm(*(c.denominator for c in cp))
    p = LaurentPoly1.from_coeffs([int(c * den) for c in cp])
    if p.min_exp > 0:
        f = LaurentPoly1.t()
    else:
        try:
            fac = factor_integer_poly(p)
        except FactorizationBoundError:
            return None
        f = fac.factors[0][0]
    # with X = Y / d, f(X) and sum c_i d^(k-i) Y^i have the same kernel
    d = lcm(*(Fraction(v).denominator for v in x.entries()))
    y = IntMatrix([[int(v * d) for v in row] for row in x.tolist()])
    cs = f.coeffs()
    k = len(cs) - 1
    fx = _poly_at([c * d ** (k - i) for i, c in enumerate(cs)], y)
    if fx.is_zero():
        return None
    return _kernel(fx)

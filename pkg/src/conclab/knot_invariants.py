"""Classical concordance invariants computed from a Seifert matrix.

Every routine takes a :class:`SeifertMatrix` (or anything that coerces
to one) and works in exact arithmetic, except the signature integral,
which samples the circle in double precision and reports an explicit
error bound.
"""

from __future__ import annotations

import json
import math
import os
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from itertools import product
from math import isqrt
from typing import Iterable, Sequence

import numpy as np

from .exactmath import (CirclePoint, ConditioningWarning, FactorizationBoundError, IntMatrix,
                        LaurentPoly1, MatrixError, as_int_matrix, congruence,
                        factor_integer_poly, hermitian_signature, is_unimodular)
from .exactmath.ops import complete_to_unimodular, det_poly, is_direct_summand_basis, primitive

DEFAULT_SEARCH_BOUND = 5
DEFAULT_RESOLUTION = 4096
ARF_MAX_SIZE = 24
# Largest box (2b+1)^n the metabolizer search will enumerate.
SEARCH_CAP = 2_000_000


class SeifertMatrixError(ValueError):
    pass


@dataclass(frozen=True)
class SeifertMatrix:
    A: IntMatrix
    name: str | None = None

    def __post_init__(self):
        a = as_int_matrix(self.A)
        object.__setattr__(self, "A", a)
        if not a.is_square:
            raise SeifertMatrixError(f"Seifert matrix must be square, got shape {a.shape}")
        if not is_unimodular(a - a.T):
            raise SeifertMatrixError(
                f"A - A^T is not unimodular (det {(a - a.T).det()})"
                + (f" for {self.name}" if self.name else ""))

    @property
    def size(self) -> int:
        return self.A.rows

    @property
    def genus(self) -> int:
        return self.A.rows // 2

    @property
    def T(self) -> IntMatrix:
        """Intersection form ``A - A^T``."""
        return self.A - self.A.T

    def direct_sum(self, other: "SeifertMatrix") -> "SeifertMatrix":
        return SeifertMatrix(IntMatrix.block_diag(self.A, other.A))

    def __neg__(self) -> "SeifertMatrix":
        return SeifertMatrix(-self.A)

    def to_json(self):
        return {"name": self.name, "seifert_matrix": self.A.to_json()}


def as_seifert(a) -> SeifertMatrix:
    if isinstance(a, SeifertMatrix):
        return a
    return SeifertMatrix(as_int_matrix(a))


# -- Alexander polynomial and signatures ------------------------------


def alexander(a) -> LaurentPoly1:
    """``det(A - t A^T)``, unit-normalized."""
    s = as_seifert(a)
    if s.size == 0:
        return LaurentPoly1.constant(1)
    return det_poly(s.A, -s.A.T).normalize()


def lt_matrix(a, omega: CirclePoint):
    """Real and imaginary parts of ``(1 - w) A + (1 - conj w) A^T``."""
    s = as_seifert(a)
    re, im = omega.re, omega.im
    sym = s.A + s.A.T
    skew = s.A.T - s.A
    if omega.is_exact:
        return sym.scale(1 - re), skew.scale(im)
    return (np.array(sym.tolist(), dtype=float) * (1 - re),
            np.array(skew.tolist(), dtype=float) * im)


def lt_signature(a, omega: CirclePoint | str | float) -> int:
    omega = _circle(omega)
    if omega.is_one:
        return 0
    re, im = lt_matrix(a, omega)
    return hermitian_signature(re, im)


def _circle(w) -> CirclePoint:
    if isinstance(w, CirclePoint):
        return w
    if isinstance(w, str):
        return CirclePoint.parse(w)
    return CirclePoint.from_angle(float(w))


@dataclass(frozen=True)
class IntegralEstimate:
    """Normalized circle average of the signature function."""

    value: Fraction
    error_bound: Fraction
    resolution: int
    # bracketed jump locations as fractions of a full turn
    jumps: tuple[tuple[Fraction, Fraction, int], ...] = ()

    def __float__(self):
        return float(self.value)


def signature_integral(a, resolution: int = DEFAULT_RESOLUTION) -> IntegralEstimate:
    """``(1/2pi) * integral of sigma(e^{i theta})`` over the circle.

    The circle is parametrized by ``u = theta / 2pi``.  The signature is
    sampled at the cell centres ``(k + 1/2)/N``; wherever two neighbouring
    samples disagree the jump is bracketed by bisection to width
    ``1/(64 N)`` and the midpoint of the bracket is taken as the jump.
    The returned value is exact for that piecewise-constant model and the
    error bound is ``sum |jump| * bracket width``.  Jumps that cancel
    inside a single sampling cell are invisible to the sampler.
    """
    if resolution < 16:
        raise ValueError("resolution must be at least 16")
    s = as_seifert(a)
    n = resolution
    if s.size == 0:
        return IntegralEstimate(Fraction(0), Fraction(0), n)
    sym = np.array((s.A + s.A.T).tolist(), dtype=float)
    skew = np.array((s.A.T - s.A).tolist(), dtype=float)

    def sigma(u: Fraction) -> int:
        theta = 2 * math.pi * float(u)
        h = sym * (1 - math.cos(theta)) + 1j * skew * math.sin(theta)
        return _float_sig(h)

    width = Fraction(1, 64 * n)
    pts = [Fraction(2 * k + 1, 2 * n) for k in range(n)]
    vals = [sigma(u) for u in pts]
    total = Fraction(0)
    err = Fraction(0)
    jumps = []
    for k in range(n):
        lo, vlo = pts[k], vals[k]
        hi = pts[k + 1] if k + 1 < n else pts[0] + 1
        vhi = vals[(k + 1) % n]
        if vlo == vhi:
            total += vlo * (hi - lo)
            continue
        # bisect for the jump; the wrap cell is evaluated mod 1 (sigma(1) = 0 and
        # sigma vanishes near 1 for knots, so the seam is harmless)
        while hi - lo > width:
            mid = (lo + hi) / 2
            vm = sigma(mid % 1)
            if vm == vlo:
                lo = mid
            else:
                hi, vhi = mid, vm
        cut = (lo + hi) / 2
        start = pts[k]
        end = pts[k + 1] if k + 1 < n else pts[0] + 1
        # values on either side of the bracket; any jumps between hi and end were
        # missed by the same-cell caveat above
        total += vlo * (cut - start) + vals[(k + 1) % n] * (end - cut)
        jump = abs(vals[(k + 1) % n] - vlo)
        err += jump * (hi - lo)
        jumps.append((lo % 1, hi % 1, vals[(k + 1) % n] - vlo))
    return IntegralEstimate(total, err, n, tuple(jumps))


def _float_sig(h: np.ndarray) -> int:
    eig = np.linalg.eigvalsh(h)
    norm = float(np.max(np.abs(eig)))
    if norm == 0.0:
        return 0
    keep = np.abs(eig) >= 1e-9 * norm
    return int(np.sum(eig[keep] > 0) - np.sum(eig[keep] < 0))


# -- Arf invariant ----------------------------------------------------


def arf(a) -> int:
    """Arf invariant of ``q(x) = x^T A x mod 2`` by counting zeros of q."""
    s = as_seifert(a)
    n = s.size
    if n > ARF_MAX_SIZE:
        raise ValueError(f"Arf enumeration refused for size {n} > {ARF_MAX_SIZE}")
    if n == 0:
        return 0
    g = n // 2
    diag = [s.A[i, i] & 1 for i in range(n)]
    sym = s.A + s.A.T
    rows = [sum(1 << j for j in range(n) if sym[i, j] & 1) for i in range(n)]
    # Gray-code walk: flipping bit i changes q by A_ii + (A + A^T)_i . x
    x = q = 0
    zeros = 1
    for k in range(1, 1 << n):
        i = (k & -k).bit_length() - 1
        q ^= diag[i] ^ (bin(rows[i] & x).count("1") & 1)
        x ^= 1 << i
        zeros += q == 0
    return 0 if zeros == 2 ** (2 * g - 1) + 2 ** (g - 1) else 1


# -- Fox-Milnor -------------------------------------------------------


@dataclass(frozen=True)
class FoxMilnorResult:
    holds: bool | None  # None when factorization was refused
    witness: LaurentPoly1 | None = None
    reason: str = ""

    def __bool__(self):
        return bool(self.holds)


def fox_milnor(delta: LaurentPoly1, max_degree: int = 16) -> FoxMilnorResult:
    """Is ``delta`` of the form ``f(t) f(t^-1)`` up to units?"""
    if abs(delta(1)) != 1:
        raise ValueError(f"Fox-Milnor needs delta(1) = +-1, got {delta(1)}")
    try:
        fac = factor_integer_poly(delta, max_degree)
    except FactorizationBoundError as exc:
        return FoxMilnorResult(None, None, str(exc))
    mult = {f: m for f, m in fac.factors}
    witness = LaurentPoly1.constant(1)
    seen = set()
    for f, m in fac.factors:
        if f in seen:
            continue
        partner = f.reciprocal().normalize()
        seen.update((f, partner))
        if partner == f:
            if m % 2:
                return FoxMilnorResult(False, None,
                                       f"self-reciprocal factor {f} has odd multiplicity {m}")
            witness = witness * f ** (m // 2)
            continue
        pm = mult.get(partner, 0)
        if pm != m:
            return FoxMilnorResult(False, None,
                                   f"factor {f} (multiplicity {m}) has reciprocal partner "
                                   f"{partner} with multiplicity {pm}")
        pick = max(f, partner, key=lambda p: tuple(reversed(p.coeffs())))
        witness = witness * pick ** m
    witness = witness.normalize()
    assert (witness * witness.reciprocal()).normalize() == delta.normalize()
    return FoxMilnorResult(True, witness, "")


# -- algebraic sliceness ------------------------------------------------


@dataclass(frozen=True)
class AlgebraicallySlice:
    certificate: IntMatrix

    status = "AlgebraicallySlice"

    def verify(self, a) -> bool:
        s = as_seifert(a)
        g = s.genus
        if not is_unimodular(self.certificate):
            return False
        return congruence(self.certificate, s.A).submatrix(0, g, 0, g).is_zero()

    def to_json(self):
        return {"status": self.status, "certificate": self.certificate.to_json()}


@dataclass(frozen=True)
class NotSlice:
    test: str
    value: object

    status = "NotSlice"

    def to_json(self):
        return {"status": self.status, "test": self.test, "value": str(self.value)}


@dataclass(frozen=True)
class Inconclusive:
    search_bound: int
    reason: str = ""

    status = "Inconclusive"

    def to_json(self):
        return {"status": self.status, "search_bound": self.search_bound,
                "reason": self.reason}


SliceVerdict = AlgebraicallySlice | NotSlice | Inconclusive


def algebraically_slice(a, search_bound: int = DEFAULT_SEARCH_BOUND) -> SliceVerdict:
    """Decide (g = 1) or search for (g >= 2) a metabolizer of A."""
    if search_bound < 1:
        raise ValueError("search bound must be at least 1")
    s = as_seifert(a)
    g = s.genus
    if g == 0:
        return AlgebraicallySlice(IntMatrix.identity(0))
    delta = alexander(s)
    fm = fox_milnor(delta)
    if fm.holds is False:
        return NotSlice("fox_milnor", delta)
    for tag in ("-1", "i"):
        w = CirclePoint.exact(tag)
        if delta((w.re, w.im)) != (0, 0):
            sig = lt_signature(s, w)
            if sig:
                return NotSlice(f"signature({tag})", sig)
    if g == 1:
        return _genus_one(s)
    basis = find_metabolizer(s.A, search_bound)
    if isinstance(basis, str):
        return Inconclusive(search_bound, basis)
    q = complete_to_unimodular(basis)
    verdict = AlgebraicallySlice(q)
    assert verdict.verify(s)
    return verdict


def _genus_one(s: SeifertMatrix) -> SliceVerdict:
    (a, b), (c, d) = s.A.tolist()
    bb = b + c
    disc = bb * bb - 4 * a * d
    if disc < 0 or isqrt(disc) ** 2 != disc:
        return NotSlice("isotropic_discriminant", disc)
    if a == 0:
        v = (1, 0)
    else:
        v = primitive((-bb + isqrt(disc), 2 * a))
    q = complete_to_unimodular([list(v)])
    verdict = AlgebraicallySlice(q)
    assert verdict.verify(s)
    return verdict


def isotropic_vectors(a: IntMatrix, bound: int) -> list[tuple[int, ...]]:
    """Primitive ``v`` with ``v A v^T = 0``, ``|v_i| <= bound``, first nonzero entry > 0."""
    n = a.rows
    rng = np.arange(-bound, bound + 1, dtype=np.int64)
    grid = np.stack(np.meshgrid(*([rng] * n), indexing="ij"), -1).reshape(-1, n)
    amat = np.array(a.tolist(), dtype=np.int64)
    vals = np.einsum("ki,ij,kj->k", grid, amat, grid)
    out = []
    for v in grid[vals == 0]:
        v = tuple(int(x) for x in v)
        if any(v) and primitive(v) == v:
            out.append(v)
    out.sort(key=lambda v: (sum(abs(x) for x in v), v))
    return out


def find_metabolizer(a: IntMatrix, bound: int, node_cap: int = 200_000):
    """Basis of a rank-g direct summand on which A vanishes, or a reason string.

    Grows the entry bound from 1 up to ``bound`` so small certificates are
    found first.  Candidates are cliques of isotropic vectors that pair to
    zero in both orders; every partial clique must already span a direct
    summand, which loses nothing since prefixes of a summand basis span
    summands.
    """
    n = a.rows
    g = n // 2
    for b in range(1, bound + 1):
        if (2 * b + 1) ** n > SEARCH_CAP:
            return f"search box exceeded at entry bound {b} (size {n})"
        vecs = isotropic_vectors(a, b)
        res = _clique_search(a, vecs, g, node_cap)
        if res is not None:
            return res
    return f"no metabolizer with entries bounded by {bound}"


def _clique_search(a: IntMatrix, vecs, g, node_cap):
    av = [a.apply(v) for v in vecs]
    dot = lambda u, w: sum(x * y for x, y in zip(u, w))
    budget = [node_cap]

    def extend(chosen: list[int], cands: list[int]):
        if len(chosen) == g:
            return [list(vecs[i]) for i in chosen]
        for pos, i in enumerate(cands):
            budget[0] -= 1
            if budget[0] < 0:
                return None
            basis = [vecs[j] for j in chosen] + [vecs[i]]
            if not is_direct_summand_basis(basis):
                continue
            nxt = [j for j in cands[pos + 1:]
                   if dot(vecs[i], av[j]) == 0 and dot(vecs[j], av[i]) == 0]
            if len(nxt) < g - len(chosen) - 1:
                continue
            found = extend(chosen + [i], nxt)
            if found is not None:
                return found
        return None

    return extend([], list(range(len(vecs))))


# -- knot table -------------------------------------------------------


TABLE_ENV = "CONCLAB_TABLE"


class KnotTableError(ValueError):
    pass


def load_knot_table(path: str | os.PathLike | None = None) -> dict[str, SeifertMatrix]:
    """Read and validate a knot table.

    Entries may carry ``alexander`` and ``signature`` fields; when present
    they are recomputed and must agree.
    """
    path = path or os.environ.get(TABLE_ENV)
    try:
        if path:
            with open(path) as fh:
                raw = json.load(fh)
        else:
            raw = json.loads(resources.files("conclab.data").joinpath("knots.json").read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise KnotTableError(f"cannot load knot table: {exc}") from exc
    if not isinstance(raw, list) or not all(isinstance(e, dict) for e in raw):
        raise KnotTableError("knot table must be a JSON list of objects")
    table = {}
    for entry in raw:
        name = entry.get("name")
        if not isinstance(name, str) or name in table:
            raise KnotTableError(f"missing or duplicate knot name {name!r}")
        try:
            sm = SeifertMatrix(IntMatrix.from_json(entry["seifert_matrix"]), name)
        except (SeifertMatrixError, MatrixError, KeyError, ValueError, TypeError) as exc:
            raise KnotTableError(f"bad table entry {name!r}: {exc}") from exc
        if "alexander" in entry:
            want = LaurentPoly1.from_json(entry["alexander"]).normalize()
            if alexander(sm) != want:
                raise KnotTableError(f"{name}: alexander {alexander(sm)} != recorded {want}")
        for tag, val in entry.get("signature", {}).items():
            got = lt_signature(sm, CirclePoint.parse(tag))
            if got != val:
                raise KnotTableError(f"{name}: signature at {tag} is {got}, recorded {val}")
        table[name] = sm
    return table


def random_seifert(rng, size: int, entry: int = 2, mix: int = 3) -> SeifertMatrix:
    """Random Seifert matrix of even ``size``.

    Starts from ``sym + [[0, I], [0, 0]]`` (skew part the standard
    symplectic form) and applies ``mix`` random elementary congruences.
    ``rng`` is a ``random.Random``.
    """
    if size % 2:
        raise ValueError("Seifert matrices have even size")
    g = size // 2
    a = [[0] * size for _ in range(size)]
    for i in range(size):
        for j in range(i, size):
            a[i][j] = a[j][i] = rng.randint(-entry, entry)
    for i in range(g):
        a[i][g + i] += 1
    m = IntMatrix(a) if size else IntMatrix.zeros(0)
    for _ in range(mix if size > 1 else 0):
        i, j = rng.sample(range(size), 2)
        e = [[int(r == c) for c in range(size)] for r in range(size)]
        e[i][j] = rng.choice((-1, 1))
        m = congruence(IntMatrix(e), m)
    return SeifertMatrix(m)

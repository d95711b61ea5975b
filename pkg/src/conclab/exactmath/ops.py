"""Integer-matrix operations used across the package."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

from .laurent import LaurentPoly1
from .matrix import IntMatrix, Matrix, MatrixError, as_int_matrix


def is_unimodular(m: Matrix) -> bool:
    if not m.is_square:
        raise MatrixError("is_unimodular needs a square matrix")
    return m.det() in (1, -1)


def congruence(q: Matrix, a: Matrix) -> Matrix:
    """``Q A Q^T`` for unimodular ``Q``."""
    if not q.is_square or q.cols != a.rows or not a.is_square:
        raise MatrixError(f"incompatible shapes {q.shape} and {a.shape}")
    if not is_unimodular(q):
        raise MatrixError("congruence matrix is not unimodular")
    return q @ a @ q.T


def det_poly(a: Matrix, b: Matrix) -> LaurentPoly1:
    """``det(A + t B)`` as a polynomial, by exact interpolation at 0..n."""
    n = a.rows
    if a.shape != b.shape or not a.is_square:
        raise MatrixError("det_poly needs square matrices of equal shape")
    xs = list(range(n + 1))
    ys = [(a + b.scale(x)).det() for x in xs]
    coeffs = _interpolate(xs, ys)
    if any(Fraction(c).denominator != 1 for c in coeffs):
        raise ArithmeticError("non-integral interpolation of an integer determinant")
    return LaurentPoly1.from_coeffs([int(c) for c in coeffs])


def char_poly(s: Matrix) -> list[Fraction]:
    """Coefficients (low->high) of ``det(S - x I)``."""
    n = s.rows
    ident = Matrix.identity(n)
    xs = list(range(n + 1))
    ys = [(s - ident.scale(x)).det() for x in xs]
    return _interpolate(xs, ys)


def _interpolate(xs: Sequence[int], ys: Sequence) -> list[Fraction]:
    """Newton interpolation; coefficients low->high."""
    n = len(xs)
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = [Fraction(0)] * n
    poly[0] = coef[-1]
    deg = 0
    for k in range(n - 2, -1, -1):
        # poly = poly * (x - xs[k]) + coef[k]
        new = [Fraction(0)] * n
        for d in range(deg + 1):
            new[d + 1] += poly[d]
            new[d] -= xs[k] * poly[d]
        new[0] += coef[k]
        poly = new
        deg += 1
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return poly


def smith_invariants(m: Matrix) -> list[int]:
    """Invariant factors d1 | d2 | ... of an integer matrix (nonzero ones)."""
    a = [list(r) for r in as_int_matrix(m)]
    rows, cols = m.rows, m.cols
    out = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        while True:
            piv = min(((abs(a[i][j]), i, j) for i in range(r, rows) for j in range(c, cols)
                       if a[i][j]), default=None)
            if piv is None:
                return out
            _, pi, pj = piv
            a[r], a[pi] = a[pi], a[r]
            for row in a:
                row[c], row[pj] = row[pj], row[c]
            p = a[r][c]
            clean = True
            for i in range(r + 1, rows):
                q = a[i][c] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                if a[i][c]:
                    clean = False
            for j in range(c + 1, cols):
                q = a[r][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[c]
                if a[r][j]:
                    clean = False
            if not clean:
                continue
            bad = next(((i, j) for i in range(r + 1, rows) for j in range(c + 1, cols)
                        if a[i][j] % p), None)
            if bad is None:
                break
            a[r] = [x + y for x, y in zip(a[r], a[bad[0]])]
        out.append(abs(a[r][c]))
        r += 1
    return out


def is_direct_summand_basis(rows: Sequence[Sequence[int]]) -> bool:
    """Do these integer vectors form a basis of a direct summand of Z^n?"""
    if not rows:
        return True
    inv = smith_invariants(IntMatrix(rows))
    return len(inv) == len(rows) and all(d == 1 for d in inv)


def complete_to_unimodular(rows: Sequence[Sequence[int]], n: int | None = None) -> IntMatrix:
    """Unimodular matrix whose first rows are the given summand basis.

    Column operations reduce ``V`` to ``[I | 0]``; tracking them in ``U``
    gives ``V U = [I | 0]``, hence ``V`` is the top of ``U^-1``.
    """
    k = len(rows)
    n = n if n is not None else (len(rows[0]) if rows else 0)
    v = [list(r) for r in rows]
    u = [[int(i == j) for j in range(n)] for i in range(n)]

    def colop(j1, j2, a, b, c, d):
        # (col j1, col j2) <- (a*c1 + b*c2, c*c1 + d*c2), determinant ad - bc = +-1
        for mat in (v, u):
            for row in mat:
                x, y = row[j1], row[j2]
                row[j1], row[j2] = a * x + b * y, c * x + d * y

    for r in range(k):
        for j in range(r + 1, n):
            x, y = v[r][r], v[r][j]
            if y == 0:
                continue
            g, s, t = _xgcd(x, y)
            # new col r = s*c_r + t*c_j (value g); new col j = (-y/g)*c_r + (x/g)*c_j (value 0)
            colop(r, j, s, t, -y // g, x // g)
        if abs(v[r][r]) != 1:
            raise MatrixError("vectors do not span a direct summand")
        if v[r][r] == -1:
            for mat in (v, u):
                for row in mat:
                    row[r] = -row[r]
        for j in range(r):
            f = v[r][j]
            if f:
                for mat in (v, u):
                    for row in mat:
                        row[j] -= f * row[r]
    return as_int_matrix(IntMatrix(u).inverse())


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """``g, s, t`` with ``s*a + t*b = g = gcd(a, b) >= 0``."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        return tuple(v)
    v = [x // g for x in v]
    first = next(x for x in v if x)
    return tuple(-x for x in v) if first < 0 else tuple(v)

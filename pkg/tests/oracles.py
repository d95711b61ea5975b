"""Independent reference computations (sympy / brute force) for cross-checks."""

from __future__ import annotations

import math
import random
from itertools import product

import sympy as sp
from sympy.polys.matrices import DomainMatrix

from conclab.exactmath import LaurentPoly1

t = sp.symbols("t")


def to_laurent(expr) -> LaurentPoly1:
    """sympy Laurent polynomial in ``t`` -> normalized LaurentPoly1."""
    poly = sp.Poly(sp.expand(sp.cancel(expr) * t ** 64), t)
    coeffs = [int(c) for c in reversed(poly.all_coeffs())]
    return LaurentPoly1.from_coeffs(coeffs).normalize()


def alexander_sympy(rows) -> LaurentPoly1:
    if not rows:
        return LaurentPoly1.constant(1)
    a = sp.Matrix(rows)
    dm = DomainMatrix.from_Matrix(a - t * a.T)
    return to_laurent(dm.domain.to_sympy(dm.det()))


def factor_sympy(coeffs_low_to_high) -> list[tuple[tuple[int, ...], int]]:
    """Irreducible primitive factors (low-to-high coefficients) with multiplicity."""
    poly = sp.Poly(list(reversed(coeffs_low_to_high)), t)
    _, facs = sp.factor_list(poly)
    out = []
    for f, m in facs:
        f = sp.Poly(f, t)
        if f.degree() == 0:
            continue
        c = [int(x) for x in reversed(f.all_coeffs())]
        while c and c[0] == 0:
            c = c[1:]
        if c[-1] < 0:
            c = [-x for x in c]
        if c == [1]:
            continue
        out.append((tuple(c), m))
    return sorted(out)


def burau_alexander(word, n) -> LaurentPoly1:
    """Alexander polynomial of a braid knot: a corner minor of ``I - Burau(word)``."""
    m = sp.eye(n)
    for letter in word:
        i = abs(letter) - 1
        b = sp.eye(n)
        blk = sp.Matrix([[1 - t, t], [1, 0]])
        if letter < 0:
            blk = blk.inv()
        b[i:i + 2, i:i + 2] = blk
        m = m * b
    return to_laurent((sp.eye(n) - m)[: n - 1, : n - 1].det())


def grid_alexander(xs, os_) -> LaurentPoly1:
    """Alexander polynomial of a grid knot from the winding-number matrix.

    ``det(t^{w(i,j)}) = +-t^k (1-t)^{n-1} Delta(t)`` over lattice points.
    """
    n = len(xs)
    x_col = {r: c for c, r in enumerate(xs)}
    o_col = {r: c for c, r in enumerate(os_)}
    # horizontal segment in row r runs from X to O, at height r - 1/2 (rows 1-based)
    segs = [(x_col[r], o_col[r], r) for r in range(1, n + 1)]

    def winding(i, j):
        w = 0
        for a, b, r in segs:
            if min(a, b) < i - 0.5 < max(a, b) and r - 0.5 > j:
                w += 1 if b > a else -1
        return w

    mat = sp.Matrix(n, n, lambda i, j: t ** winding(i, j))
    d = sp.cancel(mat.det() / (1 - t) ** (n - 1))
    return to_laurent(d)


def isotropic_exists(a, bound=50) -> bool:
    """Primitive v with |v_i| <= bound and v^T A v = 0 (size 2)."""
    (p, q), (r, s) = a
    for x in range(0, bound + 1):
        for y in range(-bound, bound + 1):
            if (x, y) == (0, 0) or math.gcd(x, y) != 1:
                continue
            if x == 0 and y < 0:
                continue
            if p * x * x + (q + r) * x * y + s * y * y == 0:
                return True
    return False


def arf_brute(rows) -> int:
    """Arf via the majority value of q(x) = x^T A x mod 2."""
    n = len(rows)
    if n == 0:
        return 0
    zeros = 0
    for x in product((0, 1), repeat=n):
        q = sum(rows[i][j] * x[i] * x[j] for i in range(n) for j in range(n)) % 2
        zeros += q == 0
    return 0 if zeros > 2 ** (n - 1) else 1


def random_int_poly(rng: random.Random, degree: int, bound: int = 4):
    c = [rng.randint(-bound, bound) for _ in range(degree + 1)]
    if c[-1] == 0:
        c[-1] = rng.choice((-1, 1)) * rng.randint(1, bound)
    return c

"""Factorization of integer polynomials by Kronecker's interpolation method.

Exact and slow; every candidate factor is an interpolating polynomial
through divisors of sampled values, and is accepted only after an exact
division.  Practical up to degree ~16 on the small-coefficient
polynomials that arise from Seifert matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import gcd, lcm

from .laurent import LaurentPoly1, _poly_divide_exact

DEFAULT_MAX_DEGREE = 16


class FactorizationBoundError(ValueError):
    def __init__(self, degree: int, bound: int):
        super().__init__(f"degree {degree} exceeds factorization bound {bound}")
        self.degree = degree
        self.bound = bound


@dataclass(frozen=True)
class Factorization:
    """``sign * content * t^shift * prod(f^m for f, m in factors)``.

    Each factor is primitive, irreducible over Q, has lowest exponent 0
    and a positive leading coefficient.
    """

    sign: int
    content: int
    shift: int
    factors: tuple[tuple[LaurentPoly1, int], ...]

    def expand(self) -> LaurentPoly1:
        out = LaurentPoly1({self.shift: self.sign * self.content})
        for f, m in self.factors:
            out = out * f ** m
        return out

    @property
    def is_irreducible(self) -> bool:
        """True when the polynomial is, up to units, a single irreducible."""
        return self.content == 1 and len(self.factors) == 1 and self.factors[0][1] == 1

    def __str__(self):
        parts = [f"({f})" + (f"^{m}" if m > 1 else "") for f, m in self.factors]
        head = [] if self.content == 1 else [str(self.content)]
        return ("-" if self.sign < 0 else "") + "*".join(head + parts or ["1"])


def factor_integer_poly(p: LaurentPoly1, max_degree: int = DEFAULT_MAX_DEGREE) -> Factorization:
    if p.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    if p.degree > max_degree:
        raise FactorizationBoundError(p.degree, max_degree)
    coeffs = p.coeffs()
    sign = 1 if coeffs[-1] > 0 else -1
    content = p.content()
    prim = [sign * c // content for c in coeffs]

    found: dict[tuple[int, ...], int] = {}
    stack = [prim]
    while stack:
        f = stack.pop()
        if len(f) == 1:
            continue
        g = _smallest_factor(f)
        if g is None:
            key = tuple(f)
            found[key] = found.get(key, 0) + 1
            continue
        q = _divide(f, g)
        stack.append(g)
        stack.append(q)

    factors = tuple(sorted(((LaurentPoly1.from_coeffs(list(k)), m) for k, m in found.items()),
                           key=lambda fm: (fm[0].degree, fm[0].coeffs()[::-1])))
    return Factorization(sign, content, p.min_exp, factors)


def is_irreducible(p: LaurentPoly1, max_degree: int = DEFAULT_MAX_DEGREE) -> bool:
    return factor_integer_poly(p, max_degree).is_irreducible


def _normal(f: list[int]) -> list[int]:
    g = 0
    for c in f:
        g = gcd(g, c)
    s = 1 if f[-1] > 0 else -1
    return [s * c // g for c in f]


def _divide(num: list[int], den: list[int]) -> list[int]:
    q = _poly_divide_exact(num, den)
    if q is None:
        raise ArithmeticError("candidate factor does not divide")
    return _normal(q)


def _eval(f: list[int], x: int) -> int:
    acc = 0
    for c in reversed(f):
        acc = acc * x + c
    return acc


def _divisors(n: int) -> list[int]:
    n = abs(n)
    if n == 0:
        raise ValueError("divisors of 0")
    divs = [1]
    for p, e in _factorint(n).items():
        divs = [d * p ** k for d in divs for k in range(e + 1)]
    return sorted(divs)


def _factorint(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if _is_probable_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.extend((d, m // d))
    return out


def _is_probable_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    if n in small:
        return True
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    if n % 2 == 0:
        return 2
    c = 1
    while True:
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = gcd(abs(x - y), n)
        if d != n:
            return d
        c += 1


def _smallest_factor(f: list[int]) -> list[int] | None:
    """A nontrivial factor of ``f`` (primitive, normalized), or None if irreducible."""
    n = len(f) - 1
    if n <= 1:
        return None
    if f[0] == 0:
        return [0, 1]
    d = _rational_gcd(f, [k * c for k, c in enumerate(f)][1:])
    if len(d) > 1:
        return d
    # degree 1: rational root test
    for p in _divisors(f[0]):
        for q in _divisors(f[-1]):
            if gcd(p, q) != 1:
                continue
            for sp in (p, -p):
                # q*t - sp divides f iff f(sp/q) == 0
                if sum(c * sp ** k * q ** (n - k) for k, c in enumerate(f)) == 0:
                    return _normal([-sp, q])
    for k in sorted(_feasible_degrees(f)):
        if 2 <= k <= n // 2:
            g = _kronecker_degree(f, k)
            if g is not None:
                return g
    return None


def _rational_gcd(a: list[int], b: list[int]) -> list[int]:
    """Primitive normalized gcd over Q of two integer polynomials."""
    a = [Fraction(x) for x in a]
    b = [Fraction(x) for x in b]
    _trim(a)
    _trim(b)
    while b:
        a, b = b, _qrem(a, b)
    if not a:
        return [0]
    den = 1
    for c in a:
        den = lcm(den, c.denominator)
    return _normal([int(c * den) for c in a])


def _trim(f: list) -> list:
    while f and f[-1] == 0:
        f.pop()
    return f


def _qrem(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = list(a)
    lead = b[-1]
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] / lead
        if c:
            for j, bc in enumerate(b):
                a[k + j] -= c * bc
    return _trim(a[:len(b) - 1])


# -- modular degree analysis: prunes impossible factor degrees ---------

_PRIMES = (3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53)


def _feasible_degrees(f: list[int], wanted: int = 6) -> set[int]:
    """Degrees a factor of the squarefree ``f`` can have over Z.

    A factor over Z reduces to a product of irreducible factors mod p, so
    its degree is a subset sum of the mod-p irreducible degrees for every
    prime p of good reduction.
    """
    n = len(f) - 1
    feasible = set(range(n + 1))
    used = 0
    for p in _PRIMES:
        if f[-1] % p == 0:
            continue
        fp = _trim([c % p for c in f])
        if len(_pgcd(fp, _pderiv(fp, p), p)) > 1:
            continue
        sums = {0}
        for d in _ddf_degrees(fp, p):
            sums |= {s + d for s in sums}
        feasible &= sums
        used += 1
        if used >= wanted or feasible <= {0, n}:
            break
    return feasible


def _pmod(a, b, p):
    a = _trim([x % p for x in a])
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    while a and len(a) - 1 >= db:
        c = a[-1] * inv % p
        shift = len(a) - 1 - db
        for j, bc in enumerate(b):
            a[shift + j] = (a[shift + j] - c * bc) % p
        _trim(a)
    return a


def _pdiv(a, b, p):
    a = [x % p for x in a]
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    q = [0] * max(0, len(a) - db)
    for k in range(len(a) - 1 - db, -1, -1):
        c = a[k + db] * inv % p
        q[k] = c
        for j, bc in enumerate(b):
            a[k + j] = (a[k + j] - c * bc) % p
    return _trim(q)


def _pmulmod(a, b, m, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _pmod(out, m, p)


def _pgcd(a, b, p):
    a = _trim([x % p for x in a])
    b = _trim([x % p for x in b])
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _pderiv(f, p):
    return _trim([(k * c) % p for k, c in enumerate(f)][1:])


def _ppow(base, e, m, p):
    result = [1]
    base = _pmod(base, m, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, m, p)
        base = _pmulmod(base, base, m, p)
        e >>= 1
    return result


def _ddf_degrees(f, p) -> list[int]:
    """Degrees of the irreducible factors of squarefree ``f`` mod ``p``."""
    f = _trim([x % p for x in f])
    out = []
    h = [0, 1]
    i = 0
    while len(f) - 1 >= 2 * (i + 1):
        i += 1
        h = _ppow(h, p, f, p)
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % p
        g = _pgcd(f, _trim(diff), p)
        if len(g) > 1:
            out.extend([i] * ((len(g) - 1) // i))
            f = _pdiv(f, g, p)
            h = _pmod(h, f, p)
    if len(f) > 1:
        out.append(len(f) - 1)
    return out


def _kronecker_degree(f: list[int], k: int) -> list[int] | None:
    """Search for a factor of exact degree ``k`` (no factor of smaller degree exists)."""
    n = len(f) - 1
    candidates = []
    x = 0
    span = max(3 * n + 8, 2 * k + 6)
    values = []
    while len(values) < span:
        for pt in ((x,) if x == 0 else (x, -x)):
            v = _eval(f, pt)
            if v != 0:
                values.append((abs(v), pt, v))
        x += 1
    values.sort()
    candidates = sorted((len(_divisors(v)), abs(pt), pt, v) for _, pt, v in values[:2 * k + 8])
    chosen = candidates[:k + 1]
    extra = [(pt, v) for _, _, pt, v in candidates[k + 1:k + 7]]
    xs = [pt for _, _, pt, _ in chosen]
    basis, denom = _lagrange_basis(xs)
    choices = []
    for idx, (_, _, _, v) in enumerate(chosen):
        ds = _divisors(v)
        choices.append(ds if idx == 0 else [s * d for d in ds for s in (1, -1)])
    for values in product(*choices):
        scaled = [0] * (k + 1)
        for b, row in zip(values, basis):
            if b:
                for j in range(k + 1):
                    scaled[j] += b * row[j]
        if scaled[k] == 0 or any(c % denom for c in scaled):
            continue
        g = [c // denom for c in scaled]
        if any(_eval(g, pt) == 0 or fv % _eval(g, pt) for pt, fv in extra):
            continue
        if _poly_divide_exact(f, g) is not None:
            return _normal(g)
    return None


def _lagrange_basis(xs: list[int]) -> tuple[list[list[int]], int]:
    """Integer-scaled Lagrange basis: ``L_i = basis[i] / denom`` (coeffs low->high)."""
    m = len(xs)
    rows = []
    for i, xi in enumerate(xs):
        num = [Fraction(1)]
        den = Fraction(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            num = [Fraction(0)] + num
            for t in range(len(num) - 1):
                num[t] -= xj * num[t + 1]
            den *= xi - xj
        rows.append([c / den for c in num])
    denom = 1
    for row in rows:
        for c in row:
            denom = lcm(denom, c.denominator)
    return [[int(c * denom) for c in row] for row in rows], denom

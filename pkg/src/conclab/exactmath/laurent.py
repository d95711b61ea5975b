"""Integer Laurent polynomials in one and two variables.

Polynomials are stored as ``{exponent: coefficient}`` with zero
coefficients dropped.  ``normalize`` picks the canonical representative
of the class modulo units ``±t^k`` (lowest exponent 0, leading
coefficient positive), so "equal up to units" becomes plain ``==`` on
normal forms.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence


class LaurentPoly1:
    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, int] | None = None):
        self._terms = {int(e): int(c) for e, c in (terms or {}).items() if c}

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[int], shift: int = 0) -> "LaurentPoly1":
        """``coeffs[k]`` is the coefficient of ``t^(k + shift)``."""
        return cls({k + shift: c for k, c in enumerate(coeffs)})

    @classmethod
    def constant(cls, c: int) -> "LaurentPoly1":
        return cls({0: c})

    @classmethod
    def t(cls) -> "LaurentPoly1":
        return cls({1: 1})

    # -- structure ----------------------------------------------------

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    @property
    def min_exp(self) -> int:
        return min(self._terms) if self._terms else 0

    @property
    def max_exp(self) -> int:
        return max(self._terms) if self._terms else 0

    @property
    def degree(self) -> int:
        """Span ``max_exp - min_exp``; 0 for constants and for zero."""
        return self.max_exp - self.min_exp

    @property
    def leading_coeff(self) -> int:
        return self._terms[self.max_exp] if self._terms else 0

    def coeffs(self) -> list[int]:
        """Dense coefficients from ``min_exp`` up to ``max_exp``."""
        if not self._terms:
            return []
        lo = self.min_exp
        return [self._terms.get(lo + k, 0) for k in range(self.degree + 1)]

    def content(self) -> int:
        from math import gcd
        g = 0
        for c in self._terms.values():
            g = gcd(g, c)
        return g

    # -- normal forms -------------------------------------------------

    def normalize(self) -> "LaurentPoly1":
        if not self._terms:
            return self
        lo = self.min_exp
        sign = 1 if self.leading_coeff > 0 else -1
        return LaurentPoly1({e - lo: sign * c for e, c in self._terms.items()})

    def is_normalized(self) -> bool:
        return self == self.normalize()

    def reciprocal(self) -> "LaurentPoly1":
        """``p(t^-1)``, not renormalized."""
        return LaurentPoly1({-e: c for e, c in self._terms.items()})

    def shift(self, k: int) -> "LaurentPoly1":
        return LaurentPoly1({e + k: c for e, c in self._terms.items()})

    def is_symmetric(self) -> bool:
        """Invariant under ``t -> t^-1`` up to units."""
        return self.normalize() == self.reciprocal().normalize()

    # -- arithmetic ---------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly1.constant(other)
        if not isinstance(other, LaurentPoly1):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other):
        other = _lift1(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly1(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly1({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-_lift1(other))

    def __rsub__(self, other):
        return _lift1(other) - self

    def __mul__(self, other):
        other = _lift1(other)
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly1(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = LaurentPoly1.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def divmod_exact(self, other: "LaurentPoly1") -> "LaurentPoly1 | None":
        """Quotient if ``other`` divides ``self`` over Z[t, t^-1], else None."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if self.is_zero():
            return LaurentPoly1()
        num = self.coeffs()
        den = other.coeffs()
        q = _poly_divide_exact(num, den)
        if q is None:
            return None
        return LaurentPoly1.from_coeffs(q, self.min_exp - other.min_exp)

    def __call__(self, x):
        """Evaluate; ``x`` may be int, Fraction, float or complex.

        Gaussian-rational points are passed as ``(re, im)`` tuples of
        Fractions and return such a tuple.
        """
        if isinstance(x, tuple):
            return _eval_gaussian(self._terms, x)
        if isinstance(x, int):
            x = Fraction(x)
        return sum((c * x ** e for e, c in self._terms.items()), 0)

    def derivative(self) -> "LaurentPoly1":
        return LaurentPoly1({e - 1: e * c for e, c in self._terms.items() if e})

    # -- display / serialization --------------------------------------

    def __repr__(self):
        return f"LaurentPoly1({self})"

    def __str__(self):
        return format_poly(self._terms, "t")

    def to_json(self) -> dict[str, int]:
        return {str(e): c for e, c in sorted(self._terms.items())}

    @classmethod
    def from_json(cls, data: Mapping[str, int]) -> "LaurentPoly1":
        return cls({int(k): int(v) for k, v in data.items()})


class LaurentPoly2:
    """Laurent polynomial in ``t1, t2``; keys are exponent pairs."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[int, int], int] | None = None):
        self._terms = {(int(a), int(b)): int(c) for (a, b), c in (terms or {}).items() if c}

    @classmethod
    def constant(cls, c: int) -> "LaurentPoly2":
        return cls({(0, 0): c})

    @property
    def terms(self):
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def normalize(self) -> "LaurentPoly2":
        """Shift each variable's lowest exponent to 0; lexicographically
        largest term gets a positive coefficient."""
        if not self._terms:
            return self
        lo1 = min(a for a, _ in self._terms)
        lo2 = min(b for _, b in self._terms)
        lead = self._terms[max(self._terms)]
        sign = 1 if lead > 0 else -1
        return LaurentPoly2({(a - lo1, b - lo2): sign * c for (a, b), c in self._terms.items()})

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly2.constant(other)
        if not isinstance(other, LaurentPoly2):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other):
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return LaurentPoly2(out)

    def __mul__(self, other):
        out: dict[tuple[int, int], int] = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                k = (a1 + a2, b1 + b2)
                out[k] = out.get(k, 0) + c1 * c2
        return LaurentPoly2(out)

    def reciprocal(self) -> "LaurentPoly2":
        return LaurentPoly2({(-a, -b): c for (a, b), c in self._terms.items()})

    def diagonal(self) -> LaurentPoly1:
        """Substitute ``t1 = t2 = t``."""
        out: dict[int, int] = {}
        for (a, b), c in self._terms.items():
            out[a + b] = out.get(a + b, 0) + c
        return LaurentPoly1(out)

    def __call__(self, x1, x2):
        return sum(c * x1 ** a * x2 ** b for (a, b), c in self._terms.items())

    def __repr__(self):
        return f"LaurentPoly2({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for (a, b), c in sorted(self._terms.items(), reverse=True):
            mono = "*".join(m for m in (_mono("t1", a), _mono("t2", b)) if m)
            parts.append((c, mono))
        return _join_terms(parts)

    def to_json(self) -> dict[str, int]:
        return {f"{a},{b}": c for (a, b), c in sorted(self._terms.items())}

    @classmethod
    def from_json(cls, data: Mapping[str, int]) -> "LaurentPoly2":
        out = {}
        for k, v in data.items():
            a, b = k.split(",")
            out[(int(a), int(b))] = int(v)
        return cls(out)


def _lift1(x) -> LaurentPoly1:
    if isinstance(x, LaurentPoly1):
        return x
    if isinstance(x, int):
        return LaurentPoly1.constant(x)
    raise TypeError(f"cannot combine LaurentPoly1 with {type(x).__name__}")


def _poly_divide_exact(num: list[int], den: list[int]) -> list[int] | None:
    """Exact long division of dense integer coefficient lists (low->high)."""
    num = list(num)
    dn = len(den) - 1
    lead = den[-1]
    if len(num) - 1 < dn:
        return None if any(num) else []
    q = [0] * (len(num) - dn)
    for k in range(len(num) - 1 - dn, -1, -1):
        c = num[k + dn]
        if c % lead:
            return None
        qk = c // lead
        q[k] = qk
        if qk:
            for j, d in enumerate(den):
                num[k + j] -= qk * d
    if any(num[:dn]):
        return None
    return q


def _eval_gaussian(terms, z):
    re, im = Fraction(z[0]), Fraction(z[1])
    norm = re * re + im * im
    inv = (re / norm, -im / norm) if norm else None
    tot_re = tot_im = Fraction(0)
    for e, c in terms.items():
        base = (re, im) if e >= 0 else inv
        if base is None:
            raise ZeroDivisionError("negative power at 0")
        pr, pi = Fraction(1), Fraction(0)
        for _ in range(abs(e)):
            pr, pi = pr * base[0] - pi * base[1], pr * base[1] + pi * base[0]
        tot_re += c * pr
        tot_im += c * pi
    return tot_re, tot_im


def _mono(var: str, e: int) -> str:
    if e == 0:
        return ""
    if e == 1:
        return var
    return f"{var}^{e}" if e > 0 else f"{var}^({e})"


def _join_terms(parts: list[tuple[int, str]]) -> str:
    out = ""
    for i, (c, mono) in enumerate(parts):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = mono if (mag == 1 and mono) else (f"{mag}*{mono}" if mono else str(mag))
        if i == 0:
            out = ("-" if c < 0 else "") + body
        else:
            out += f" {sign} {body}"
    return out


def format_poly(terms: Mapping[int, int], var: str = "t") -> str:
    if not terms:
        return "0"
    return _join_terms([(terms[e], _mono(var, e)) for e in sorted(terms, reverse=True)])

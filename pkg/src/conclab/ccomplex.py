"""Two-component C-complex data: multivariable signature, Alexander-module
verdict for the Bing-double case, and the Murasugi Arf congruence."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exactmath import (CirclePoint, IntMatrix, LaurentPoly1, LaurentPoly2, as_int_matrix,
                        hermitian_signature)


@dataclass(frozen=True)
class CComplexData:
    A: IntMatrix
    Aprime: IntMatrix

    def __post_init__(self):
        a, ap = as_int_matrix(self.A), as_int_matrix(self.Aprime)
        object.__setattr__(self, "A", a)
        object.__setattr__(self, "Aprime", ap)
        if not a.is_square or a.shape != ap.shape:
            raise ValueError(f"A and A' must be square of equal size, got {a.shape}, {ap.shape}")

    def to_json(self):
        return {"A": self.A.to_json(), "Aprime": self.Aprime.to_json()}

    @classmethod
    def from_json(cls, data) -> "CComplexData":
        return cls(IntMatrix.from_json(data["A"]), IntMatrix.from_json(data["Aprime"]))


def _gmul(x, y):
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def pencil(d: CComplexData, w1: CirclePoint, w2: CirclePoint):
    """Real and imaginary parts of the hermitian matrix H(w1, w2)."""
    exact = w1.is_exact and w2.is_exact
    one = Fraction(1) if exact else 1.0
    u1 = (one - w1.re, -w1.im)      # 1 - w1
    u2 = (one - w2.re, -w2.im)
    c1 = (u1[0], -u1[1])            # 1 - conj(w1)
    c2 = (u2[0], -u2[1])
    terms = [(_gmul(c1, c2), d.A), (_gmul(c1, u2), d.Aprime),
             (_gmul(u1, c2), d.Aprime.T), (_gmul(u1, u2), d.A.T)]
    if exact:
        re = sum((m.scale(c[0]) for c, m in terms), IntMatrix.zeros(d.A.rows))
        im = sum((m.scale(c[1]) for c, m in terms), IntMatrix.zeros(d.A.rows))
        return re, im
    re = sum(float(c[0]) * np.array(m.tolist(), dtype=float) for c, m in terms)
    im = sum(float(c[1]) * np.array(m.tolist(), dtype=float) for c, m in terms)
    return re, im


def multivar_signature(d: CComplexData, w1: CirclePoint, w2: CirclePoint) -> int:
    if d.A.rows == 0:
        return 0
    re, im = pencil(d, w1, w2)
    return hermitian_signature(re, im)


@dataclass(frozen=True)
class AlexanderModuleVerdict:
    verdict: str                 # "TrivialFree" or "Other"
    delta: LaurentPoly2 | None   # reduced Alexander polynomial when known

    def to_json(self):
        return {"verdict": self.verdict,
                "delta": self.delta.to_json() if self.delta is not None else None}


def bing_alexander_module(d: CComplexData) -> AlexanderModuleVerdict:
    """TrivialFree when both C-complex matrices vanish; no claim otherwise."""
    if d.A.is_zero() and d.Aprime.is_zero():
        return AlexanderModuleVerdict("TrivialFree", LaurentPoly2.constant(1))
    return AlexanderModuleVerdict("Other", None)


def murasugi_arf(arf1: int, arf2: int, diag: LaurentPoly1) -> int:
    """``Arf(L1) + Arf(L2) + (1/2) d^2/dt^2 diag |_{t=1}  (mod 2)``.

    ``diag`` is used as given (no renormalization), since shifting by a
    unit changes the second derivative.
    """
    if arf1 not in (0, 1) or arf2 not in (0, 1):
        raise ValueError("Arf invariants are 0 or 1")
    half = Fraction(diag.derivative().derivative()(1)) / 2
    if half.denominator != 1:
        raise ValueError(f"half second derivative at 1 is not an integer: {half}")
    return (arf1 + arf2 + int(half)) % 2

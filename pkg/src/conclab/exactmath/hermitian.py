"""Signatures of hermitian matrices, exactly or in double precision.

A hermitian matrix is passed as a pair (real part, imaginary part).
When every entry is an int or Fraction the signature is computed
exactly: ``H = X + iY`` has half the signature of the real symmetric
matrix ``[[X, -Y], [Y, X]]``, which is diagonalized by symmetric
pivoting.  Anything else goes through ``numpy.linalg.eigvalsh``.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .matrix import Matrix

FLOAT_TOL = 1e-9
WARN_BAND = (1e-12, 1e-6)


class NonHermitianError(ValueError):
    def __init__(self, asymmetry):
        super().__init__(f"matrix is not hermitian (max asymmetry {float(asymmetry):.3g})")
        self.max_asymmetry = asymmetry


class ConditioningWarning(UserWarning):
    """An eigenvalue landed close to the float zero threshold."""


_TAGS = {"1": (1, 0), "-1": (-1, 0), "i": (0, 1), "-i": (0, -1)}


@dataclass(frozen=True)
class CirclePoint:
    """A point of the unit circle: an exact 4th root of unity, or an angle."""

    tag: str | None = None
    angle: float | None = None

    def __post_init__(self):
        if (self.tag is None) == (self.angle is None):
            raise ValueError("give exactly one of tag or angle")
        if self.tag is not None and self.tag not in _TAGS:
            raise ValueError(f"exact circle points are 1, -1, i, -i; got {self.tag!r}")
        if self.angle is not None:
            z = cmath.exp(1j * self.angle)
            if abs(abs(z) - 1) > 1e-12:
                raise ValueError("angle does not give a unit complex number")

    @classmethod
    def exact(cls, tag: str) -> "CirclePoint":
        return cls(tag=tag)

    @classmethod
    def from_angle(cls, theta: float) -> "CirclePoint":
        return cls(angle=float(theta))

    @classmethod
    def parse(cls, text: str) -> "CirclePoint":
        text = text.strip()
        if text in _TAGS:
            return cls.exact(text)
        return cls.from_angle(float(text))

    @property
    def is_exact(self) -> bool:
        return self.tag is not None

    @property
    def re(self):
        return Fraction(_TAGS[self.tag][0]) if self.tag else math.cos(self.angle)

    @property
    def im(self):
        return Fraction(_TAGS[self.tag][1]) if self.tag else math.sin(self.angle)

    @property
    def complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    @property
    def is_one(self) -> bool:
        return self.tag == "1" if self.tag else self.angle % (2 * math.pi) == 0.0

    def conjugate(self) -> "CirclePoint":
        if self.tag:
            return CirclePoint.exact({"i": "-i", "-i": "i"}.get(self.tag, self.tag))
        return CirclePoint.from_angle(-self.angle)

    def __str__(self):
        return self.tag if self.tag else f"exp({self.angle:.6g}i)"


@dataclass(frozen=True)
class SignatureReport:
    signature: int
    exact: bool
    # smallest |eigenvalue| / ||H|| among eigenvalues counted nonzero (float mode)
    min_relative_eigenvalue: float | None = None
    tolerance: float | None = None
    ill_conditioned: bool = False


def _rows(m):
    if m is None:
        return None
    if isinstance(m, Matrix):
        return m.tolist()
    if isinstance(m, np.ndarray):
        return m.tolist()
    return [list(r) for r in m]


def _is_exact(rows) -> bool:
    return all(isinstance(x, (int, Fraction)) for r in rows for x in r)


def hermitian_signature(real, imag=None) -> int:
    """Signature (#positive - #negative eigenvalues) of ``real + i*imag``."""
    return hermitian_signature_report(real, imag).signature


def hermitian_signature_report(real, imag=None) -> SignatureReport:
    x = _rows(real)
    n = len(x)
    y = _rows(imag) if imag is not None else [[0] * n for _ in range(n)]
    if any(len(r) != n for r in x) or len(y) != n or any(len(r) != n for r in y):
        raise ValueError("hermitian_signature expects square matrices of equal size")
    if n == 0:
        return SignatureReport(0, True)
    if _is_exact(x) and _is_exact(y):
        asym = max(max(abs(x[i][j] - x[j][i]), abs(y[i][j] + y[j][i]))
                   for i in range(n) for j in range(n))
        if asym != 0:
            raise NonHermitianError(asym)
        big = [[Fraction(v) for v in x[i]] + [Fraction(-v) for v in y[i]] for i in range(n)]
        big += [[Fraction(v) for v in y[i]] + [Fraction(v) for v in x[i]] for i in range(n)]
        return SignatureReport(symmetric_signature(big) // 2, True)
    return _float_signature(np.array(x, dtype=float) + 1j * np.array(y, dtype=float))


def _float_signature(h: np.ndarray) -> SignatureReport:
    asym = float(np.max(np.abs(h - h.conj().T))) if h.size else 0.0
    if asym > FLOAT_TOL:
        raise NonHermitianError(asym)
    h = (h + h.conj().T) / 2
    eig = np.linalg.eigvalsh(h)
    norm = float(np.max(np.abs(eig))) if eig.size else 0.0
    if norm == 0.0:
        return SignatureReport(0, False, None, FLOAT_TOL)
    rel = np.abs(eig) / norm
    nonzero = rel >= FLOAT_TOL
    sig = int(np.sum(eig[nonzero] > 0) - np.sum(eig[nonzero] < 0))
    lo, hi = WARN_BAND
    ill = bool(np.any((rel > lo) & (rel < hi)))
    if ill:
        warnings.warn(f"eigenvalue of relative size {float(np.min(rel[rel > lo])):.2e} "
                      f"near the zero threshold {FLOAT_TOL:g}", ConditioningWarning,
                      stacklevel=3)
    smallest = float(np.min(rel[nonzero])) if np.any(nonzero) else None
    return SignatureReport(sig, False, smallest, FLOAT_TOL, ill)


def symmetric_signature(m) -> int:
    """Exact signature of a rational symmetric matrix by symmetric pivoting.

    Uses a 1x1 pivot on a nonzero diagonal entry when there is one and a
    2x2 hyperbolic pivot (signature 0) otherwise.
    """
    a = [[Fraction(v) for v in row] for row in _rows(m)]
    n = len(a)
    for i in range(n):
        for j in range(i):
            if a[i][j] != a[j][i]:
                raise NonHermitianError(abs(a[i][j] - a[j][i]))
    sig = 0
    idx = list(range(n))
    while idx:
        p = next((i for i in idx if a[i][i] != 0), None)
        if p is not None:
            d = a[p][p]
            sig += 1 if d > 0 else -1
            rest = [i for i in idx if i != p]
            for i in rest:
                f = a[i][p] / d
                if f:
                    for j in rest:
                        a[i][j] -= f * a[p][j]
            idx = rest
            continue
        pair = next(((i, j) for i in idx for j in idx if i < j and a[i][j] != 0), None)
        if pair is None:
            break
        i0, j0 = pair
        b = a[i0][j0]
        rest = [i for i in idx if i not in pair]
        # Schur complement against E = [[0, b], [b, 0]], E^-1 = [[0, 1/b], [1/b, 0]]
        for i in rest:
            ui, vi = a[i][i0], a[i][j0]
            if not (ui or vi):
                continue
            for j in rest:
                uj, vj = a[i0][j], a[j0][j]
                a[i][j] -= (ui * vj + vi * uj) / b
        idx = rest
    return sig

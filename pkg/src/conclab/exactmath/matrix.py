"""Immutable exact matrices over the integers and the rationals.

``IntMatrix`` and ``RatMatrix`` share one implementation.  Arithmetic
returns an ``IntMatrix`` whenever every resulting entry is a Python
``int`` and a ``RatMatrix`` otherwise, so integrality is tracked for
free.  Shapes are explicit, which lets 0x0 (and 0xn) matrices behave.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence


class MatrixError(ValueError):
    pass


def _coerce(x):
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    if isinstance(x, str):
        return Fraction(x) if "/" in x else int(x)
    raise TypeError(f"exact matrix entries must be int or Fraction, got {type(x).__name__}")


def _make(data, rows, cols):
    if all(type(x) is int for row in data for x in row):
        return IntMatrix._raw(data, rows, cols)
    data = tuple(tuple(Fraction(x) for x in row) for row in data)
    return RatMatrix._raw(data, rows, cols)


class Matrix:
    """Base class; construct through ``IntMatrix`` or ``RatMatrix``."""

    __slots__ = ("rows", "cols", "_data", "_hash")

    def __init__(self, entries: Iterable[Sequence] = (), rows: int | None = None,
                 cols: int | None = None):
        data = tuple(tuple(_coerce(x) for x in row) for row in entries)
        r = len(data)
        c = len(data[0]) if data else (cols or 0)
        if any(len(row) != c for row in data):
            raise MatrixError("ragged rows")
        if (rows is not None and rows != r) or (cols is not None and cols != c):
            raise MatrixError(f"entries have shape {(r, c)}, expected {(rows, cols)}")
        self._init(data, r, c)

    def _init(self, data, rows, cols):
        self._data = data
        self.rows = rows
        self.cols = cols
        self._hash = None
        self._validate()

    def _validate(self):
        pass

    @classmethod
    def _raw(cls, data, rows, cols):
        obj = object.__new__(cls)
        obj._init(data, rows, cols)
        return obj

    # -- constructors -------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "IntMatrix":
        cols = rows if cols is None else cols
        return IntMatrix._raw(tuple((0,) * cols for _ in range(rows)), rows, cols)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return IntMatrix._raw(
            tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n, n)

    @classmethod
    def diag(cls, values: Sequence) -> "Matrix":
        n = len(values)
        return _make(tuple(tuple(_coerce(values[i]) if i == j else 0 for j in range(n))
                           for i in range(n)), n, n)

    @classmethod
    def block_diag(cls, *blocks: "Matrix") -> "Matrix":
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        out = [[0] * cols for _ in range(rows)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                out[r0 + i][c0:c0 + b.cols] = b._data[i]
            r0 += b.rows
            c0 += b.cols
        return _make(tuple(map(tuple, out)), rows, cols)

    @classmethod
    def from_blocks(cls, grid: Sequence[Sequence["Matrix"]]) -> "Matrix":
        """Assemble a block matrix; block heights/widths must line up."""
        if not grid:
            return cls.zeros(0)
        heights = [row[0].rows for row in grid]
        widths = [b.cols for b in grid[0]]
        for i, row in enumerate(grid):
            if len(row) != len(widths):
                raise MatrixError("ragged block grid")
            for j, b in enumerate(row):
                if b.rows != heights[i] or b.cols != widths[j]:
                    raise MatrixError(f"block ({i},{j}) has shape {b.shape}, "
                                      f"expected {(heights[i], widths[j])}")
        data = []
        for i, row in enumerate(grid):
            for r in range(heights[i]):
                line = []
                for b in row:
                    line.extend(b._data[r])
                data.append(tuple(line))
        return _make(tuple(data), sum(heights), sum(widths))

    # -- basic protocol -----------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, idx):
        i, j = idx
        return self._data[i][j]

    def row(self, i: int) -> tuple:
        return self._data[i]

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self._data)

    def tolist(self) -> list[list]:
        return [list(row) for row in self._data]

    def entries(self):
        for row in self._data:
            yield from row

    def __iter__(self):
        return iter(self._data)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self._data))
        return self._hash

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in self._data)
        return f"{type(self).__name__}([{body}])" if self.rows else \
            f"{type(self).__name__}.zeros({self.rows}, {self.cols})"

    # -- arithmetic ---------------------------------------------------

    def _check_same(self, other):
        if not isinstance(other, Matrix):
            raise TypeError("operand must be a Matrix")
        if self.shape != other.shape:
            raise MatrixError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other):
        self._check_same(other)
        return _make(tuple(tuple(a + b for a, b in zip(r, s))
                           for r, s in zip(self._data, other._data)), self.rows, self.cols)

    def __sub__(self, other):
        self._check_same(other)
        return _make(tuple(tuple(a - b for a, b in zip(r, s))
                           for r, s in zip(self._data, other._data)), self.rows, self.cols)

    def __neg__(self):
        return _make(tuple(tuple(-a for a in r) for r in self._data), self.rows, self.cols)

    def scale(self, c) -> "Matrix":
        c = _coerce(c)
        return _make(tuple(tuple(c * a for a in r) for r in self._data), self.rows, self.cols)

    def __rmul__(self, c):
        if isinstance(c, (int, Fraction)):
            return self.scale(c)
        return NotImplemented

    def __matmul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.cols != other.rows:
            raise MatrixError(f"cannot multiply {self.shape} by {other.shape}")
        cols = other._columns()
        data = tuple(tuple(sum(a * b for a, b in zip(r, c) if a and b) for c in cols)
                     for r in self._data)
        return _make(data, self.rows, other.cols)

    def _columns(self):
        if not self.rows:
            return tuple(() for _ in range(self.cols))
        return tuple(zip(*self._data))

    @property
    def T(self) -> "Matrix":
        return self.transpose()

    def transpose(self) -> "Matrix":
        return type(self)._raw(self._columns(), self.cols, self.rows)

    def apply(self, vec: Sequence) -> list:
        return [sum(a * b for a, b in zip(r, vec)) for r in self._data]

    def submatrix(self, r0: int, r1: int, c0: int, c1: int) -> "Matrix":
        return _make(tuple(tuple(row[c0:c1]) for row in self._data[r0:r1]),
                     max(0, r1 - r0), max(0, c1 - c0))

    def block(self, sizes_r: Sequence[int], sizes_c: Sequence[int], i: int, j: int):
        r0 = sum(sizes_r[:i])
        c0 = sum(sizes_c[:j])
        return self.submatrix(r0, r0 + sizes_r[i], c0, c0 + sizes_c[j])

    def permute_rows(self, perm: Sequence[int]) -> "Matrix":
        return type(self)._raw(tuple(self._data[p] for p in perm), self.rows, self.cols)

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries())

    def max_abs(self):
        return max((abs(x) for x in self.entries()), default=0)

    # -- exact linear algebra -----------------------------------------

    def det(self):
        if not self.is_square:
            raise MatrixError("determinant of a non-square matrix")
        if isinstance(self, IntMatrix):
            return _bareiss_det([list(r) for r in self._data])
        return _fraction_det([list(r) for r in self._data])

    def rref(self) -> tuple["RatMatrix", list[int]]:
        m = [[Fraction(x) for x in row] for row in self._data]
        pivots = _rref_inplace(m, self.cols)
        return RatMatrix._raw(tuple(map(tuple, m)), self.rows, self.cols), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self) -> list[list[Fraction]]:
        """Basis of the right kernel, one vector per free column."""
        m = [[Fraction(x) for x in row] for row in self._data]
        pivots = _rref_inplace(m, self.cols)
        free = [j for j in range(self.cols) if j not in set(pivots)]
        basis = []
        for f in free:
            v = [Fraction(0)] * self.cols
            v[f] = Fraction(1)
            for i, p in enumerate(pivots):
                v[p] = -m[i][f]
            basis.append(v)
        return basis

    def inverse(self) -> "Matrix":
        if not self.is_square:
            raise MatrixError("inverse of a non-square matrix")
        n = self.rows
        m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
             for i, row in enumerate(self._data)]
        pivots = _rref_inplace(m, n)
        if len(pivots) != n:
            raise MatrixError("matrix is singular")
        inv = tuple(tuple(row[n:]) for row in m)
        return _make(tuple(tuple(x.numerator if x.denominator == 1 else x for x in r)
                           for r in inv), n, n) if isinstance(self, IntMatrix) \
            else RatMatrix._raw(inv, n, n)

    # -- serialization ------------------------------------------------

    def to_json(self) -> list[list[str]]:
        return [[str(x) for x in row] for row in self._data]


class IntMatrix(Matrix):
    """Matrix with arbitrary-precision integer entries."""

    __slots__ = ()

    def _validate(self):
        for row in self._data:
            for x in row:
                if type(x) is not int:
                    if isinstance(x, Fraction) and x.denominator == 1:
                        raise MatrixError("IntMatrix entries must be int, not Fraction")
                    raise MatrixError(f"non-integer entry {x!r} in IntMatrix")

    @classmethod
    def from_json(cls, data) -> "IntMatrix":
        return cls([[int(x) for x in row] for row in data], rows=len(data),
                   cols=len(data[0]) if data else 0)


class RatMatrix(Matrix):
    """Matrix with exact rational (``Fraction``) entries."""

    __slots__ = ()

    def __init__(self, entries: Iterable[Sequence] = (), rows=None, cols=None):
        super().__init__([[Fraction(_coerce(x)) for x in row] for row in entries],
                         rows=rows, cols=cols)

    def _validate(self):
        if any(type(x) is not Fraction for row in self._data for x in row):
            self._data = tuple(tuple(Fraction(x) for x in row) for row in self._data)

    @classmethod
    def from_json(cls, data) -> "RatMatrix":
        return cls([[Fraction(x) for x in row] for row in data], rows=len(data),
                   cols=len(data[0]) if data else 0)

    def to_int(self) -> IntMatrix:
        if any(x.denominator != 1 for x in self.entries()):
            raise MatrixError("matrix has non-integral entries")
        return IntMatrix._raw(tuple(tuple(x.numerator for x in row) for row in self._data),
                              self.rows, self.cols)


def as_int_matrix(m) -> IntMatrix:
    if isinstance(m, IntMatrix):
        return m
    if isinstance(m, RatMatrix):
        return m.to_int()
    return IntMatrix(m)


def as_matrix(m) -> Matrix:
    if isinstance(m, Matrix):
        return m
    rows = [list(r) for r in m]
    return _make(tuple(tuple(_coerce(x) for x in r) for r in rows), len(rows),
                 len(rows[0]) if rows else 0)


def _bareiss_det(m: list[list[int]]) -> int:
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - mik * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def _fraction_det(m: list[list]) -> Fraction:
    n = len(m)
    det = Fraction(1)
    m = [[Fraction(x) for x in row] for row in m]
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        p = m[k][k]
        det *= p
        for i in range(k + 1, n):
            f = m[i][k] / p
            if f:
                row_i, row_k = m[i], m[k]
                for j in range(k, n):
                    row_i[j] -= f * row_k[j]
    return det


def _rref_inplace(m: list[list[Fraction]], ncols: int) -> list[int]:
    """Reduce rows of ``m`` (first ``ncols`` columns drive pivoting)."""
    pivots = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        if p != 1:
            m[r] = [x / p for x in m[r]]
        row_r = m[r]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], row_r)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def solve_homogeneous(equations: Iterable[dict[int, Fraction]], nvars: int) -> list[list[Fraction]]:
    """Kernel basis of a sparse linear system given as ``{var: coeff}`` rows.

    Sparse Gauss-Jordan elimination; far faster than the dense path on the
    intertwiner systems, whose rows carry only a handful of terms.
    """
    pivot_rows: dict[int, dict[int, Fraction]] = {}
    for eq in equations:
        row = {k: Fraction(v) for k, v in eq.items() if v}
        # pivot rows are kept fully reduced, so one pass suffices
        for var in [v for v in row if v in pivot_rows]:
            f = row[var]
            for k, v in pivot_rows[var].items():
                nv = row.get(k, 0) - f * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
        if not row:
            continue
        p = min(row)
        pv = row[p]
        row = {k: v / pv for k, v in row.items()}
        # back-substitute into existing pivot rows to keep them reduced
        for q, prow in pivot_rows.items():
            if p in prow:
                f = prow[p]
                for k, v in row.items():
                    nv = prow.get(k, 0) - f * v
                    if nv:
                        prow[k] = nv
                    else:
                        prow.pop(k, None)
        pivot_rows[p] = row
    free = [v for v in range(nvars) if v not in pivot_rows]
    basis = []
    for f in free:
        vec = [Fraction(0)] * nvars
        vec[f] = Fraction(1)
        for p, prow in pivot_rows.items():
            c = prow.get(f)
            if c:
                vec[p] = -c
        basis.append(vec)
    return basis

"""Braid words and grid diagrams.

Braid letters are nonzero integers, ``+i`` for ``sigma_i`` and ``-i`` for
its inverse.  Grid diagrams list, for each column ``i`` (1-based), the row
of its X marking and of its O marking.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Sequence

from .exactmath import IntMatrix
from .knot_invariants import SeifertMatrix, SeifertMatrixError


class DiagramParseError(ValueError):
    def __init__(self, message: str, position: int | None = None):
        where = f" at token {position}" if position is not None else ""
        super().__init__(message + where)
        self.position = position


class DiagramError(ValueError):
    pass


# -- braids ---------------------------------------------------------------


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))
        if self.strands < 1:
            raise DiagramError("a braid needs at least one strand")
        for k, x in enumerate(self.letters, 1):
            if x == 0 or abs(x) >= self.strands:
                raise DiagramError(f"letter {x} at position {k} invalid on {self.strands} strands")

    def __len__(self):
        return len(self.letters)

    def __add__(self, other: "BraidWord") -> "BraidWord":
        if self.strands != other.strands:
            raise DiagramError("concatenation needs a common strand count")
        return BraidWord(self.strands, self.letters + other.letters)

    def __str__(self):
        return " ".join(str(x) for x in self.letters)

    def to_json(self):
        return {"strands": self.strands, "letters": list(self.letters)}


def parse_braid(text: str, strands: int | None = None) -> BraidWord:
    """Whitespace- or comma-separated signed integers."""
    tokens = [t for t in re.split(r"[\s,]+", text.strip()) if t]
    letters = []
    for k, tok in enumerate(tokens, 1):
        try:
            x = int(tok)
        except ValueError:
            raise DiagramParseError(f"not an integer: {tok!r}", k) from None
        if x == 0:
            raise DiagramParseError("zero is not a braid letter", k)
        if strands is not None and abs(x) >= strands:
            raise DiagramParseError(f"letter {x} needs more than {strands} strands", k)
        letters.append(x)
    n = strands if strands is not None else max((abs(x) for x in letters), default=0) + 1
    if n < 1:
        raise DiagramParseError("strand count must be positive")
    return BraidWord(n, tuple(letters))


def sqp_expand(i: int, j: int, n: int) -> BraidWord:
    """Band generator ``sigma_ij`` as a conjugate of ``sigma_{j-1}``."""
    if not 1 <= i < j <= n:
        raise DiagramError(f"sigma_{{{i},{j}}} needs 1 <= i < j <= n (n = {n})")
    conj = list(range(i, j - 1))
    return BraidWord(n, tuple(conj + [j - 1] + [-x for x in reversed(conj)]))


def _permutation(b: BraidWord) -> list[int]:
    p = list(range(b.strands))
    for x in b.letters:
        i = abs(x) - 1
        p[i], p[i + 1] = p[i + 1], p[i]
    return p


def _cycles(p: Sequence[int]) -> int:
    seen = set()
    count = 0
    for s in range(len(p)):
        if s in seen:
            continue
        count += 1
        while s not in seen:
            seen.add(s)
            s = p[s]
    return count


@dataclass(frozen=True)
class BraidStats:
    components: int
    writhe: int
    seifert_circles: int
    positive: bool

    def to_json(self):
        return {"components": self.components, "writhe": self.writhe,
                "seifert_circles": self.seifert_circles, "positive": self.positive}


def braid_stats(b: BraidWord) -> BraidStats:
    return BraidStats(components=_cycles(_permutation(b)),
                      writhe=sum(1 if x > 0 else -1 for x in b.letters),
                      seifert_circles=b.strands,
                      positive=all(x > 0 for x in b.letters))


def rasmussen_positive(b: BraidWord) -> int:
    """``s = crossings - Seifert circles + 1`` for a positive diagram."""
    if not all(x > 0 for x in b.letters):
        raise DiagramError("rasmussen_positive needs a positive braid")
    return len(b.letters) - b.strands + 1


def slice_bennequin_bound(b: BraidWord) -> int:
    """Upper bound ``n - writhe`` for the slice Euler characteristic."""
    return b.strands - braid_stats(b).writhe


def seifert_matrix_from_braid(b: BraidWord) -> SeifertMatrix:
    """Seifert matrix of the Bennequin surface of the closure.

    The surface is one disk per strand with a half-twisted band per
    letter.  ``H_1`` is generated by loops through consecutive bands in the
    same column.  Loops meet only when they share a band (same column) or
    interleave across neighbouring columns; the signs below reproduce the
    Burau Alexander polynomial and the torus-knot signatures, with the
    positive trefoil at signature -2.
    """
    n = b.strands
    if braid_stats(b).components != 1:
        raise DiagramError("closure has more than one component")
    sign = [1 if x > 0 else -1 for x in b.letters]
    loops = []
    for col in range(1, n):
        pos = [k for k, x in enumerate(b.letters) if abs(x) == col]
        loops += [(col, p, q) for p, q in zip(pos, pos[1:])]
    rank = len(b.letters) - n + 1
    if len(loops) != rank:
        raise AssertionError(f"band basis has {len(loops)} loops, expected {rank}")
    a = [[0] * rank for _ in range(rank)]
    for x, (c, p, q) in enumerate(loops):
        a[x][x] = -(sign[p] + sign[q]) // 2
        for y, (c2, r, s) in enumerate(loops):
            if c2 == c and r == q:
                # consecutive loops sharing band q
                if sign[q] > 0:
                    a[x][y] += 1
                else:
                    a[y][x] -= 1
            elif c2 == c + 1:
                if p < r < q < s:
                    a[x][y] += 1
                elif r < p < s < q:
                    a[x][y] -= 1
    m = IntMatrix(a) if rank else IntMatrix.zeros(0)
    try:
        return SeifertMatrix(m, name=f"braid[{b}]")
    except SeifertMatrixError as exc:
        raise AssertionError(f"band basis gave a non-unimodular skew part: {exc}") from exc


# -- grid diagrams ----------------------------------------------------------


@dataclass(frozen=True)
class GridDiagram:
    """``X[i]``, ``O[i]``: rows (1-based) of the markings in column ``i + 1``."""

    X: tuple[int, ...]
    O: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "X", tuple(int(v) for v in self.X))
        object.__setattr__(self, "O", tuple(int(v) for v in self.O))
        n = len(self.X)
        if len(self.O) != n or n < 2:
            raise DiagramError("X and O must be permutations of the same size >= 2")
        full = set(range(1, n + 1))
        if set(self.X) != full or set(self.O) != full:
            raise DiagramError(f"X and O must be permutations of 1..{n}")
        bad = [i + 1 for i in range(n) if self.X[i] == self.O[i]]
        if bad:
            raise DiagramError(f"X and O share a cell in column(s) {bad}")

    @property
    def size(self) -> int:
        return len(self.X)

    def mirror(self) -> "GridDiagram":
        """Reflect columns left-right (horizontal still over vertical)."""
        return GridDiagram(self.X[::-1], self.O[::-1])

    def components(self) -> int:
        n = self.size
        o_col = {r: c for c, r in enumerate(self.O)}
        # from column c, the X at row X[c] joins horizontally to that row's O
        step = [o_col[self.X[c]] for c in range(n)]
        return _cycles(step)

    def __str__(self):
        return f"{self.size}; X={list(self.X)}; O={list(self.O)}"

    def to_json(self):
        return {"size": self.size, "X": list(self.X), "O": list(self.O)}


# right-handed trefoil, maximal tb = 1
TREFOIL_GRID = GridDiagram((1, 2, 3, 4, 5), (4, 5, 1, 2, 3))

_GRID_RE = re.compile(r"^\s*(\d+)\s*;\s*X\s*=\s*\[([^\]]*)\]\s*;\s*O\s*=\s*\[([^\]]*)\]\s*$")


def parse_grid(text: str) -> GridDiagram:
    """``"n; X=[...]; O=[...]"`` or the equivalent JSON object."""
    text = text.strip()
    if text.startswith("{"):
        try:
            data = json.loads(text)
            g = GridDiagram(tuple(data["X"]), tuple(data["O"]))
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise DiagramParseError(f"bad grid JSON: {exc}") from None
        except DiagramError as exc:
            raise DiagramParseError(str(exc)) from None
        if "size" in data and data["size"] != g.size:
            raise DiagramParseError("size field disagrees with the permutations")
        return g
    m = _GRID_RE.match(text)
    if not m:
        raise DiagramParseError("expected 'n; X=[...]; O=[...]'")
    n = int(m.group(1))
    try:
        xs = tuple(int(v) for v in m.group(2).split(",") if v.strip())
        os_ = tuple(int(v) for v in m.group(3).split(",") if v.strip())
        g = GridDiagram(xs, os_)
    except (ValueError, DiagramError) as exc:
        raise DiagramParseError(str(exc)) from None
    if g.size != n:
        raise DiagramParseError(f"declared size {n} but permutations have size {g.size}")
    return g


@dataclass(frozen=True)
class GridCount:
    writhe: int
    crossings: int
    ne_corners: int

    @property
    def tb(self) -> int:
        return self.writhe - self.ne_corners


def grid_counts(g: GridDiagram) -> GridCount:
    """Writhe and north-east corner count of the rectilinear diagram.

    Rows are oriented X -> O, columns O -> X, horizontal strands pass over
    vertical ones, rows increase northwards and columns eastwards.
    """
    n = g.size
    x_col = {r: c for c, r in enumerate(g.X)}
    o_col = {r: c for c, r in enumerate(g.O)}
    writhe = crossings = 0
    for c in range(n):
        lo, hi = sorted((g.X[c], g.O[c]))
        v = 1 if g.X[c] > g.O[c] else -1
        for r in range(lo + 1, hi):
            a, b = x_col[r], o_col[r]
            if min(a, b) < c < max(a, b):
                h = 1 if b > a else -1
                writhe += h * v
                crossings += 1
    ne = 0
    for c in range(n):
        for row, other_row in ((g.X[c], g.O[c]), (g.O[c], g.X[c])):
            partner_col = o_col[row] if g.X[c] == row else x_col[row]
            if partner_col < c and other_row < row:
                ne += 1
    return GridCount(writhe, crossings, ne)


def tb_grid(g: GridDiagram) -> int:
    if g.components() != 1:
        raise DiagramError(f"grid traces {g.components()} components; tb needs a knot")
    return grid_counts(g).tb

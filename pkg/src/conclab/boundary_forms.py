"""Collections of Seifert-type blocks for m-component boundary links.

A :class:`BoundaryPairMatrix` is the m x m grid ``{A_ij}``; the Bing
doubling map ``A -> B(A)`` and the auxiliary matrices ``Q_hat``, ``R``,
``A_hat``, ``T_hat``, ``S_hat`` are built here together with exact checks
of the identities relating them.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

import numpy as np

from .exactmath import IntMatrix, Matrix, MatrixError, RatMatrix, as_int_matrix, is_unimodular
from .exactmath.ops import complete_to_unimodular, is_direct_summand_basis, primitive
from .knot_invariants import SEARCH_CAP, SeifertMatrix, as_seifert


class CollectionError(ValueError):
    pass


class DisplayIdentityError(AssertionError):
    """A displayed matrix identity failed; this is an implementation bug."""


@dataclass(frozen=True)
class BoundaryPairMatrix:
    blocks: tuple[tuple[IntMatrix, ...], ...]

    def __post_init__(self):
        grid = tuple(tuple(as_int_matrix(b) for b in row) for row in self.blocks)
        object.__setattr__(self, "blocks", grid)
        m = len(grid)
        if any(len(row) != m for row in grid):
            raise CollectionError("blocks must form an m x m grid")
        sizes = [grid[i][i].rows for i in range(m)]
        for i, j in product(range(m), repeat=2):
            if grid[i][j].shape != (sizes[i], sizes[j]):
                raise CollectionError(f"block ({i + 1},{j + 1}) has shape {grid[i][j].shape}, "
                                      f"expected {(sizes[i], sizes[j])}")
            if i != j and grid[i][j] != grid[j][i].T:
                raise CollectionError(f"A_{i + 1}{j + 1} is not the transpose of A_{j + 1}{i + 1}")
        for i in range(m):
            a = grid[i][i]
            if not is_unimodular(a - a.T):
                raise CollectionError(f"A_{i + 1}{i + 1} - A_{i + 1}{i + 1}^T is not unimodular")

    @property
    def m(self) -> int:
        return len(self.blocks)

    @property
    def sizes(self) -> list[int]:
        return [self.blocks[i][i].rows for i in range(self.m)]

    def __getitem__(self, ij) -> IntMatrix:
        i, j = ij
        return self.blocks[i][j]

    def __neg__(self) -> "BoundaryPairMatrix":
        return BoundaryPairMatrix(tuple(tuple(-b for b in row) for row in self.blocks))

    def to_json(self):
        return {"m": self.m, "sizes": self.sizes,
                "blocks": [[b.to_json() for b in row] for row in self.blocks]}

    @classmethod
    def from_json(cls, data) -> "BoundaryPairMatrix":
        m = data["m"]
        sizes = data["sizes"]
        blocks = []
        for i in range(m):
            row = []
            for j in range(m):
                raw = data["blocks"][i][j]
                row.append(IntMatrix.from_json(raw) if raw else IntMatrix.zeros(sizes[i], sizes[j]))
            blocks.append(tuple(row))
        return cls(tuple(blocks))

    @classmethod
    def empty(cls, m: int) -> "BoundaryPairMatrix":
        return cls(tuple(tuple(IntMatrix.zeros(0) for _ in range(m)) for _ in range(m)))


@dataclass(frozen=True)
class ComponentCongruence:
    matrices: tuple[IntMatrix, ...]

    def __post_init__(self):
        mats = tuple(as_int_matrix(q) for q in self.matrices)
        object.__setattr__(self, "matrices", mats)
        for k, q in enumerate(mats):
            if not q.is_square or not is_unimodular(q):
                raise CollectionError(f"Q_{k + 1} is not square unimodular")

    def apply(self, x: BoundaryPairMatrix) -> BoundaryPairMatrix:
        q = self.matrices
        if len(q) != x.m or any(qi.rows != n for qi, n in zip(q, x.sizes)):
            raise CollectionError("congruence does not match the collection's sizes")
        return BoundaryPairMatrix(tuple(tuple(q[i] @ x[i, j] @ q[j].T for j in range(x.m))
                                        for i in range(x.m)))

    def to_json(self):
        return {"kind": "component_congruence", "matrices": [q.to_json() for q in self.matrices]}

    @classmethod
    def from_json(cls, data) -> "ComponentCongruence":
        if data.get("kind") != "component_congruence":
            raise CollectionError(f"unknown certificate kind {data.get('kind')!r}")
        return cls(tuple(IntMatrix.from_json(q) for q in data["matrices"]))


# -- Bing doubling ------------------------------------------------------


def bing_double(a) -> BoundaryPairMatrix:
    s = as_seifert(a)
    A, At = s.A, s.A.T
    a11 = IntMatrix.from_blocks([[A, A], [At, At]])
    a12 = IntMatrix.from_blocks([[A, A], [At, A]])
    return BoundaryPairMatrix(((a11, a12), (a12.T, a11)))


def block_sum(x: BoundaryPairMatrix, y: BoundaryPairMatrix) -> BoundaryPairMatrix:
    if x.m != y.m:
        raise CollectionError(f"cannot add collections with m = {x.m} and m = {y.m}")
    return BoundaryPairMatrix(tuple(
        tuple(_direct_sum_rect(x[i, j], y[i, j]) for j in range(x.m)) for i in range(x.m)))


def _direct_sum_rect(p: Matrix, q: Matrix) -> IntMatrix:
    return IntMatrix.from_blocks([[p, IntMatrix.zeros(p.rows, q.cols)],
                                  [IntMatrix.zeros(q.rows, p.cols), q]])


def is_metabolic_collection(x: BoundaryPairMatrix, c: ComponentCongruence) -> bool:
    odd = [n for n in x.sizes if n % 2]
    if odd:
        raise CollectionError(f"metabolic test needs even block sizes, got {x.sizes}")
    y = c.apply(x)
    for i, j in product(range(x.m), repeat=2):
        hi, hj = x.sizes[i] // 2, x.sizes[j] // 2
        if not y[i, j].submatrix(0, hi, 0, hj).is_zero():
            return False
    return True


# -- the explicit matrices ----------------------------------------------


def _perm_blocks(sizes: Sequence[int], order: Sequence[int]) -> IntMatrix:
    """Permutation placing input block ``order[k]`` in output position k."""
    offs = [sum(sizes[:k]) for k in range(len(sizes))]
    n = sum(sizes)
    rows = []
    for k in order:
        for r in range(sizes[k]):
            row = [0] * n
            row[offs[k] + r] = 1
            rows.append(row)
    return IntMatrix(rows, n, n)


def build_Qhat(q) -> IntMatrix:
    q = as_int_matrix(q)
    if not q.is_square or q.rows % 2 or not is_unimodular(q):
        raise MatrixError("build_Qhat needs a unimodular matrix of even size")
    g = q.rows // 2
    p = _perm_blocks([g] * 4, [0, 2, 1, 3])
    return p @ IntMatrix.block_diag(q, q)


def build_R(size: int, size_prime: int) -> IntMatrix:
    """Reorders coordinates ``(a, a', a, a')`` into ``(a, a, a', a')``."""
    return _perm_blocks([size, size_prime, size, size_prime], [0, 2, 1, 3])


def verify_R_identity(a, a_prime) -> bool:
    s, sp = as_seifert(a), as_seifert(a_prime)
    r = build_R(s.size, sp.size)
    lhs = ComponentCongruence((r, r)).apply(bing_double(s.direct_sum(sp)))
    return lhs == block_sum(bing_double(s), bing_double(sp))


def build_Ahat(a) -> IntMatrix:
    s = as_seifert(a)
    A, T = s.A, s.T
    n = s.size
    Z = IntMatrix.zeros(n)
    return IntMatrix.from_blocks([
        [Z, T, T, Z],
        [Z, A.T, T.T, A],
        [T.T, T, Z, T],
        [Z, A.T, Z, A.T],
    ])


def ahat_collection(a) -> BoundaryPairMatrix:
    """``A_hat`` read as a 2-component collection (grading 4g + 4g)."""
    s = as_seifert(a)
    ah = build_Ahat(s)
    h = 2 * s.size
    return BoundaryPairMatrix(tuple(tuple(ah.block([h, h], [h, h], i, j) for j in range(2))
                                    for i in range(2)))


def shat_pattern(s_mat: Matrix) -> Matrix:
    n = s_mat.rows
    Z = IntMatrix.zeros(n)
    I = IntMatrix.identity(n)
    return Matrix.from_blocks([
        [Z, s_mat, Z, s_mat],
        [Z, I, I, Z],
        [-I, s_mat, Z, s_mat],
        [-I, I, Z, I],
    ])


def build_That_Shat(a) -> tuple[IntMatrix, RatMatrix]:
    s = as_seifert(a)
    ah = build_Ahat(s)
    that = ah - ah.T
    if not is_unimodular(that):
        raise DisplayIdentityError("T_hat is not unimodular")
    shat = that.inverse() @ ah
    small_s = s.T.inverse() @ s.A
    if shat != shat_pattern(small_s):
        raise DisplayIdentityError("S_hat does not match the block pattern")
    return that, shat


# -- block congruence B(A) ~ A_hat ----------------------------------------


def verify_block_congruence(x: BoundaryPairMatrix, y: BoundaryPairMatrix,
                            c: ComponentCongruence) -> bool:
    """Does ``c`` carry ``x`` onto ``y`` blockwise?"""
    try:
        return c.apply(x) == y
    except CollectionError:
        return False


def standard_bing_witness(a) -> ComponentCongruence:
    """``Q_1 = Q_2 = [[I, -I], [0, I]]`` (blocks of size 2g)."""
    n = as_seifert(a).size
    I = IntMatrix.identity(n)
    q = IntMatrix.from_blocks([[I, -I], [IntMatrix.zeros(n), I]])
    return ComponentCongruence((q, q))


def search_block_congruence(a, bound: int = 1, max_size: int = 4) -> ComponentCongruence | None:
    """Bounded search for a congruence ``B(A) -> A_hat``.

    Candidates have the block-scalar form ``[[c11 I, c12 I], [c21 I, c22 I]]``
    per component with ``|c| <= bound``; the first one carrying B(A) onto
    A_hat exactly is returned.
    """
    s = as_seifert(a)
    if s.size > max_size:
        raise ValueError(f"block congruence search limited to 2g <= {max_size}")
    x, y = bing_double(s), ahat_collection(s)
    n = s.size
    I = IntMatrix.identity(n)
    cands = []
    rng = range(-bound, bound + 1)
    for c11, c12, c21, c22 in product(rng, repeat=4):
        if abs(c11 * c22 - c12 * c21) == 1:
            cands.append(IntMatrix.from_blocks([[I.scale(c11), I.scale(c12)],
                                                [I.scale(c21), I.scale(c22)]]))
    # component 1 only needs to match the (1,1) block, which prunes the pairs
    first = [q for q in cands if q @ x[0, 0] @ q.T == y[0, 0]]
    for q1 in first:
        for q2 in cands:
            c = ComponentCongruence((q1, q2))
            if verify_block_congruence(x, y, c):
                return c
    return None


# -- metabolizer search for collections -----------------------------------


@dataclass(frozen=True)
class CollectionInconclusive:
    search_bound: int
    reason: str


def find_collection_metabolizer(x: BoundaryPairMatrix, bound: int = 5,
                                node_cap: int = 200_000):
    """Search for summands ``L_i`` (rank n_i/2) with ``L_i A_ij L_j = 0``.

    Returns a :class:`ComponentCongruence` whose transformed blocks all
    have vanishing upper-left quadrants, or :class:`CollectionInconclusive`.
    """
    if any(n % 2 for n in x.sizes):
        raise CollectionError("metabolizer search needs even block sizes")
    m = x.m
    need = [n // 2 for n in x.sizes]
    reason = f"no metabolizer with entries bounded by {bound}"
    for b in range(1, bound + 1):
        if any((2 * b + 1) ** n > SEARCH_CAP for n in x.sizes):
            reason = f"search box exceeded at entry bound {b} (sizes {x.sizes})"
            break
        nodes = []
        for i in range(m):
            for v in _isotropic(x[i, i], b):
                nodes.append((i, v))
        found = _collection_clique(x, nodes, need, node_cap)
        if found is not None:
            mats = tuple(complete_to_unimodular(found[i], x.sizes[i]) if x.sizes[i]
                         else IntMatrix.identity(0) for i in range(m))
            cert = ComponentCongruence(mats)
            assert is_metabolic_collection(x, cert)
            return cert
    return CollectionInconclusive(bound, reason)


def _isotropic(a: IntMatrix, bound: int):
    n = a.rows
    if n == 0:
        return []
    rng = np.arange(-bound, bound + 1, dtype=np.int64)
    grid = np.stack(np.meshgrid(*([rng] * n), indexing="ij"), -1).reshape(-1, n)
    vals = np.einsum("ki,ij,kj->k", grid, np.array(a.tolist(), dtype=np.int64), grid)
    out = []
    for v in grid[vals == 0]:
        v = tuple(int(t) for t in v)
        if any(v) and primitive(v) == v:
            out.append(v)
    out.sort(key=lambda v: (sum(abs(t) for t in v), v))
    return out


def _collection_clique(x, nodes, need, node_cap):
    def pair(u, w):
        (i, v), (j, z) = u, w
        return x[i, j].apply(z), x[j, i].apply(v)

    def ok(u, w):
        (i, v), (j, z) = u, w
        az, av = pair(u, w)
        return sum(p * q for p, q in zip(v, az)) == 0 and sum(p * q for p, q in zip(z, av)) == 0

    budget = [node_cap]
    m = len(need)

    def extend(chosen, cands):
        counts = [sum(1 for i, _ in chosen if i == k) for k in range(m)]
        if counts == need:
            return [[list(v) for i, v in chosen if i == k] for k in range(m)]
        for pos, u in enumerate(cands):
            budget[0] -= 1
            if budget[0] < 0:
                return None
            i, v = u
            if counts[i] >= need[i]:
                continue
            basis = [list(w) for k, w in chosen if k == i] + [list(v)]
            if not is_direct_summand_basis(basis):
                continue
            nxt = [w for w in cands[pos + 1:] if ok(u, w)]
            found = extend(chosen + [u], nxt)
            if found is not None:
                return found
        return None

    return extend([], nodes)


def equivalent_in_G(x: BoundaryPairMatrix, y: BoundaryPairMatrix, bound: int = 3):
    """Certificate that ``x ⊕ (-y)`` is metabolic, or an Inconclusive marker."""
    return find_collection_metabolizer(block_sum(x, -y), bound)

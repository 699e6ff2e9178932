"""Matrices over F_q, block/parabolic combinatorics, and GL enumeration.

Matrices are stored as numpy grids of canonical field-element indices; all
arithmetic goes through the context's tables, so the same code path serves
prime fields and extensions.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .field import ContextMismatchError, FqContext, FqElem


class ShapeError(ValueError):
    """Mismatched matrix or block sizes."""


class SingularMatrixError(ValueError):
    """Inversion of a singular matrix."""


class ResourceBudgetError(RuntimeError):
    """An enumeration would exceed the configured budget."""

    def __init__(self, needed, budget):
        super().__init__(f"enumeration needs {needed} > budget {budget}")
        self.needed = needed
        self.budget = budget


DEFAULT_BUDGET = 1 << 20


# ---------------------------------------------------------------------------
# batched table arithmetic on index arrays

def batch_add(ctx, a, b):
    return ctx.ADD[a, b]


def batch_sub(ctx, a, b):
    return ctx.SUB[a, b]


def batch_neg(ctx, a):
    return ctx.NEG[a]


def batch_matmul(ctx, a, b):
    """Stacked matrix product; a: (..., n, m), b: (..., m, r)."""
    m = a.shape[-1]
    if m == 0:
        shape = np.broadcast_shapes(a.shape[:-2], b.shape[:-2])
        return np.zeros(shape + (a.shape[-2], b.shape[-1]), dtype=np.int16)
    prod = ctx.MUL[a[..., :, :, None], b[..., None, :, :]]  # (..., i, k, j)
    acc = prod[..., 0, :]
    for k in range(1, m):
        acc = ctx.ADD[acc, prod[..., k, :]]
    return acc


def batch_det(ctx, a):
    """Determinants of a stack of square matrices, by cofactor expansion."""
    n = a.shape[-1]
    if n == 0:
        return np.ones(a.shape[:-2], dtype=np.int16)
    if n == 1:
        return a[..., 0, 0]
    acc = None
    for j in range(n):
        minor = np.delete(a[..., 1:, :], j, axis=-1)
        term = ctx.MUL[a[..., 0, j], batch_det(ctx, minor)]
        if j % 2:
            term = ctx.NEG[term]
        acc = term if acc is None else ctx.ADD[acc, term]
    return acc


def _fq_row_reduce(ctx, rows):
    """In-place Gauss-Jordan on a list-of-lists of indices; returns pivot cols."""
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    MUL, SUB, INV = ctx.MUL, ctx.SUB, ctx.INV
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = int(INV[rows[r][c]])
        rows[r] = [int(MUL[inv, x]) for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [int(SUB[x, MUL[f, y]]) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return pivots


def fq_rank(ctx, a) -> int:
    rows = [list(map(int, row)) for row in np.asarray(a)]
    return len(_fq_row_reduce(ctx, rows))


def fq_kernel(ctx, a):
    """Basis of the right kernel of an index-matrix, as a list of index vectors."""
    a = np.asarray(a)
    nrows, ncols = a.shape
    rows = [list(map(int, row)) for row in a]
    pivots = _fq_row_reduce(ctx, rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [0] * ncols
        vec[f] = 1
        for r, c in enumerate(pivots):
            vec[c] = int(ctx.NEG[rows[r][f]])
        basis.append(vec)
    return basis


# ---------------------------------------------------------------------------


class Matrix:
    """A square matrix over one F_q context."""

    __slots__ = ("ctx", "n", "a")

    def __init__(self, ctx: FqContext, a):
        a = np.asarray(a, dtype=np.int16)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ShapeError(f"not square: {a.shape}")
        if a.size and (a.min() < 0 or a.max() >= ctx.q):
            raise ValueError("entry index out of range")
        a = a.copy()
        a.setflags(write=False)
        self.ctx = ctx
        self.n = a.shape[0]
        self.a = a

    @classmethod
    def zero(cls, ctx, n):
        return cls(ctx, np.zeros((n, n), dtype=np.int16))

    @classmethod
    def identity(cls, ctx, n):
        return cls(ctx, np.eye(n, dtype=np.int16))

    @classmethod
    def from_rows(cls, ctx, rows):
        grid = [[ctx.element(e).v for e in row] for row in rows]
        return cls(ctx, np.array(grid, dtype=np.int16).reshape(len(grid), len(grid)))

    def _check(self, other):
        if not isinstance(other, Matrix):
            raise TypeError("expected a Matrix")
        if other.ctx != self.ctx:
            raise ContextMismatchError("mixed field contexts")
        if other.n != self.n:
            raise ShapeError(f"size mismatch {self.n} vs {other.n}")
        return other

    def __add__(self, other):
        other = self._check(other)
        return Matrix(self.ctx, self.ctx.ADD[self.a, other.a])

    def __sub__(self, other):
        other = self._check(other)
        return Matrix(self.ctx, self.ctx.SUB[self.a, other.a])

    def __neg__(self):
        return Matrix(self.ctx, self.ctx.NEG[self.a])

    def __matmul__(self, other):
        other = self._check(other)
        return Matrix(self.ctx, batch_matmul(self.ctx, self.a, other.a))

    def __getitem__(self, ij) -> FqElem:
        i, j = ij
        return FqElem(self.ctx, int(self.a[i, j]))

    def transpose(self):
        return Matrix(self.ctx, self.a.T)

    def trace(self) -> FqElem:
        acc = 0
        for i in range(self.n):
            acc = int(self.ctx.ADD[acc, self.a[i, i]])
        return FqElem(self.ctx, acc)

    def det(self) -> FqElem:
        return FqElem(self.ctx, int(batch_det(self.ctx, self.a[None])[0]))

    def rank(self) -> int:
        return fq_rank(self.ctx, self.a)

    def is_invertible(self) -> bool:
        return self.rank() == self.n

    def inverse(self) -> "Matrix":
        n = self.n
        if n == 0:
            return Matrix(self.ctx, np.zeros((0, 0), dtype=np.int16))
        rows = [list(map(int, row)) + [1 if i == j else 0 for j in range(n)]
                for i, row in enumerate(self.a)]
        pivots = _fq_row_reduce(self.ctx, rows)
        if pivots != list(range(n)):
            raise SingularMatrixError("matrix is singular")
        inv = np.array([row[n:] for row in rows], dtype=np.int16)
        return Matrix(self.ctx, inv)

    def __eq__(self, other):
        return (isinstance(other, Matrix) and other.ctx == self.ctx
                and other.n == self.n and np.array_equal(other.a, self.a))

    def __hash__(self):
        return hash((self.ctx, self.n, self.a.tobytes()))

    # row-major; entries in FqElem coefficient serialization, rows ';'-separated
    def serialize(self) -> str:
        def ser(v):
            return ",".join(str(c) for c in self.ctx._coeffs[v])
        return ";".join(" ".join(ser(int(v)) for v in row) for row in self.a)

    @classmethod
    def parse(cls, ctx, s: str) -> "Matrix":
        rows = []
        for row in s.split(";"):
            entries = []
            for tok in row.split():
                entries.append(ctx.from_coeffs(int(c) for c in tok.split(",")).v)
            rows.append(entries)
        return cls(ctx, np.array(rows, dtype=np.int16))

    def __repr__(self):
        return f"Matrix({self.ctx.serialize()}, {self.a.tolist()})"


def conjugate(g: Matrix, x: Matrix) -> Matrix:
    """The adjoint action g x g^-1."""
    return g @ x @ g.inverse()


# ---------------------------------------------------------------------------
# block combinatorics


@dataclass(frozen=True)
class Composition:
    parts: tuple

    def __init__(self, parts):
        parts = tuple(int(p) for p in parts)
        if not parts or any(p < 1 for p in parts):
            raise ValueError(f"parts must be positive: {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def n(self):
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def serialize(self) -> str:
        return "+".join(str(p) for p in self.parts)

    @classmethod
    def parse(cls, s: str) -> "Composition":
        return cls(tuple(int(t) for t in s.split("+")))


def compositions(n: int):
    """All compositions of n, in a fixed (binary cut-pattern) order."""
    if n == 0:
        return
    for mask in range(1 << (n - 1)):
        parts, run = [], 1
        for i in range(n - 1):
            if mask >> i & 1:
                parts.append(run)
                run = 1
            else:
                run += 1
        parts.append(run)
        yield Composition(tuple(parts))


def _block_starts(parts):
    starts, s = [], 0
    for p in parts:
        starts.append(s)
        s += p
    return starts, s


@lru_cache(maxsize=None)
def _shape_mask(parts: tuple, kind: str):
    """Boolean mask of the positions that must vanish for the given shape."""
    starts, n = _block_starts(parts)
    block_of = np.zeros(n, dtype=int)
    for b, (s, p) in enumerate(zip(starts, parts)):
        block_of[s:s + p] = b
    rows = block_of[:, None]
    cols = block_of[None, :]
    if kind == "levi":
        return rows != cols
    if kind == "parabolic-upper":
        return rows > cols
    if kind == "parabolic-lower":
        return rows < cols
    raise ValueError(f"unknown kind {kind!r}")


@dataclass(frozen=True)
class BlockWitness:
    composition: Composition
    kind: str = "levi"

    def __post_init__(self):
        if self.kind not in ("levi", "parabolic-upper", "parabolic-lower"):
            raise ValueError(f"unknown kind {self.kind!r}")


def in_shape(x: Matrix, witness: BlockWitness) -> bool:
    parts = witness.composition.parts
    if sum(parts) != x.n:
        raise ShapeError("composition does not match matrix size")
    mask = _shape_mask(parts, witness.kind)
    return not np.any(x.a[mask])


def _project_blocks(a: np.ndarray, parts):
    starts, n = _block_starts(parts)
    if a.shape[-1] != n:
        raise ShapeError("composition does not match matrix size")
    return [a[..., s:s + p, s:s + p] for s, p in zip(starts, parts)]


def _embed_blocks(arrays, parts):
    starts, n = _block_starts(parts)
    lead = arrays[0].shape[:-2] if arrays else ()
    out = np.zeros(lead + (n, n), dtype=np.int16)
    for arr, s, p in zip(arrays, starts, parts):
        if arr.shape[-2:] != (p, p):
            raise ShapeError("block size does not match composition part")
        out[..., s:s + p, s:s + p] = arr
    return out


def levi_project(x: Matrix, c: Composition):
    """Diagonal blocks of x in the pattern of c, one Matrix per part."""
    return [Matrix(x.ctx, b) for b in _project_blocks(x.a, c.parts)]


def block_embed(xs, c: Composition) -> Matrix:
    if len(xs) != len(c.parts):
        raise ShapeError("need one block per part")
    ctx = xs[0].ctx
    return Matrix(ctx, _embed_blocks([x.a for x in xs], c.parts))


# ---------------------------------------------------------------------------
# enumeration


def _matrix_codes_budget(ctx, n, budget):
    total = ctx.q ** (n * n)
    if budget is not None and total > budget:
        raise ResourceBudgetError(total, budget)
    return total


@lru_cache(maxsize=None)
def all_matrices(ctx: FqContext, n: int, budget: int = DEFAULT_BUDGET):
    """All q^(n^2) matrices as one stacked array, in code order."""
    total = _matrix_codes_budget(ctx, n, budget)
    codes = np.arange(total, dtype=np.int64)
    flat = np.zeros((total, n * n), dtype=np.int16)
    t = codes
    for i in range(n * n):
        flat[:, i] = t % ctx.q
        t = t // ctx.q
    out = flat.reshape(total, n, n)
    out.setflags(write=False)
    return out


def encode_matrices(ctx, a) -> np.ndarray:
    """Inverse of the all_matrices code order (row-major digits, ascending powers)."""
    n = a.shape[-1]
    flat = a.reshape(a.shape[:-2] + (n * n,)).astype(np.int64)
    powers = ctx.q ** np.arange(n * n, dtype=np.int64)
    return flat @ powers


@lru_cache(maxsize=None)
def gl_mask(ctx: FqContext, n: int, budget: int = DEFAULT_BUDGET):
    mats = all_matrices(ctx, n, budget)
    mask = batch_det(ctx, mats) != 0
    mask.setflags(write=False)
    return mask


@lru_cache(maxsize=None)
def gl_arrays(ctx: FqContext, n: int, budget: int = DEFAULT_BUDGET):
    """(G, Ginv): stacked invertible matrices and their inverses."""
    mats = all_matrices(ctx, n, budget)
    G = mats[gl_mask(ctx, n, budget)]
    Ginv = np.stack([Matrix(ctx, g).inverse().a for g in G]) if len(G) else \
        np.zeros((0, n, n), dtype=np.int16)
    G.setflags(write=False)
    Ginv.setflags(write=False)
    return G, Ginv


def enumerate_gl(n: int, ctx: FqContext, budget: int = DEFAULT_BUDGET):
    """Invertible matrices, in row-major-lexicographic code order."""
    G, _ = gl_arrays(ctx, n, budget)
    for g in G:
        yield Matrix(ctx, g)


def enumerate_gl_order(n: int, ctx: FqContext, budget: int = DEFAULT_BUDGET) -> int:
    if n == 0:
        return 1
    # closed form; cross-checked against the scan in tests
    q = ctx.q
    order = 1
    for i in range(n):
        order *= q ** n - q ** i
    return order


def parabolic_order(ctx: FqContext, parts: tuple, budget: int = DEFAULT_BUDGET) -> int:
    """|P^F| for the standard block-upper parabolic, counted by enumeration."""
    n = sum(parts)
    if n == 0:
        return 1
    mats = all_matrices(ctx, n, budget)
    mask = gl_mask(ctx, n, budget).copy()
    shape = _shape_mask(tuple(parts), "parabolic-upper")
    in_par = ~np.any(mats[:, shape], axis=1) if shape.any() else np.ones(len(mats), bool)
    return int(np.count_nonzero(mask & in_par))


def unipotent_radical_order(ctx: FqContext, parts) -> int:
    parts = tuple(parts)
    e = sum(parts[i] * parts[j] for i in range(len(parts)) for j in range(i + 1, len(parts)))
    return ctx.q ** e


def unipotent_radical_elems(ctx: FqContext, parts, lower=False) -> np.ndarray:
    """All strictly-upper-block (or lower) matrices for the composition."""
    parts = tuple(parts)
    n = sum(parts)
    # positions free in U are exactly those killed by the opposite condition
    free = _shape_mask(parts, "parabolic-lower" if not lower else "parabolic-upper")
    pos = np.argwhere(free)
    m = len(pos)
    total = ctx.q ** m
    out = np.zeros((total, n, n), dtype=np.int16)
    codes = np.arange(total, dtype=np.int64)
    t = codes
    for idx, (i, j) in enumerate(pos):
        out[:, i, j] = t % ctx.q
        t = t // ctx.q
    return out


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WeylRep:
    """Canonical block-permutation representative for a 2x2 degree matrix."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if min(self.a, self.b, self.c, self.d) < 0:
            raise ValueError("block sizes must be nonnegative")

    @property
    def n(self):
        return self.a + self.b + self.c + self.d

    def permutation(self):
        """sigma with w e_j = e_sigma(j); blocks (a, b, c, d) -> rows (a, c, b, d)."""
        a, b, c, d = self.a, self.b, self.c, self.d
        sigma = list(range(a))
        sigma += [a + c + i for i in range(b)]
        sigma += [a + i for i in range(c)]
        sigma += [a + b + c + i for i in range(d)]
        return tuple(sigma)

    def matrix(self, ctx: FqContext) -> Matrix:
        n = self.n
        w = np.zeros((n, n), dtype=np.int16)
        for j, i in enumerate(self.permutation()):
            w[i, j] = 1
        return Matrix(ctx, w)


def weyl_rep(a: int, b: int, c: int, d: int) -> WeylRep:
    return WeylRep(a, b, c, d)

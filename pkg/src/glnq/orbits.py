"""Adjoint (= similarity) orbits of gl_n(F_q): canonical labels, enumeration,
sizes, and a brute-force conjugation oracle.

Orbits are labelled by finite maps {monic irreducible f} -> {partition}, with
total weight sum(deg f * |lambda|) = n; the representative of a label is the
block-diagonal sum of companion matrices of the elementary divisors f^lambda_i.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .field import FqContext
from .glmat import (DEFAULT_BUDGET, Matrix, ResourceBudgetError, all_matrices,
                    batch_matmul, encode_matrices, enumerate_gl_order, fq_rank)

LOOKUP_BUDGET = 1 << 17
SPAN_BUDGET = 1 << 17


# ---------------------------------------------------------------------------
# polynomials over F_q: tuples of element indices, ascending, no trailing zeros


def poly_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def poly_add(ctx, a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return poly_trim(int(ctx.ADD[x, y]) for x, y in zip(a, b))


def poly_sub(ctx, a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return poly_trim(int(ctx.SUB[x, y]) for x, y in zip(a, b))


def poly_mul(ctx, a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] = int(ctx.ADD[out[i + j], ctx.MUL[x, y]])
    return poly_trim(out)


def poly_divmod(ctx, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    quot = [0] * max(len(a) - len(b) + 1, 0)
    binv = int(ctx.INV[b[-1]])
    while len(a) >= len(b) and poly_trim(a):
        a = list(poly_trim(a))
        if len(a) < len(b):
            break
        coef = int(ctx.MUL[a[-1], binv])
        shift = len(a) - len(b)
        quot[shift] = coef
        for i, c in enumerate(b):
            a[shift + i] = int(ctx.SUB[a[shift + i], ctx.MUL[coef, c]])
    return poly_trim(quot), poly_trim(a)


def poly_pow(ctx, a, e):
    r = (1,)
    for _ in range(e):
        r = poly_mul(ctx, r, a)
    return r


def poly_t(ctx=None):
    return (0, 1)


@lru_cache(maxsize=None)
def irreducibles(ctx: FqContext, max_deg: int):
    """Monic irreducibles over F_q of degree <= max_deg, by (degree, lex)."""
    out = []
    for deg in range(1, max_deg + 1):
        lower = [f for f in out if (len(f) - 1) * 2 <= deg]
        for code in range(ctx.q ** deg):
            c, t = [], code
            for _ in range(deg):
                c.append(t % ctx.q)
                t //= ctx.q
            f = tuple(c) + (1,)
            if all(poly_divmod(ctx, f, g)[1] for g in lower):
                out.append(f)
    return tuple(sorted(out, key=lambda f: (len(f), f)))


def companion(ctx: FqContext, f) -> Matrix:
    d = len(f) - 1
    a = np.zeros((d, d), dtype=np.int16)
    for i in range(1, d):
        a[i, i - 1] = 1
    for i in range(d):
        a[i, d - 1] = ctx.NEG[f[i]]
    return Matrix(ctx, a)


def char_poly(x: Matrix):
    """Characteristic polynomial det(tI - x) over F_q[t]."""
    ctx = x.ctx
    grid = [[(int(ctx.NEG[x.a[i, j]]), 1) if i == j else (int(ctx.NEG[x.a[i, j]]),)
             for j in range(x.n)] for i in range(x.n)]
    grid = [[poly_trim(e) for e in row] for row in grid]

    def det(rows, cols):
        if not rows:
            return (1,)
        i = rows[0]
        acc = ()
        for pos, j in enumerate(cols):
            entry = grid[i][j]
            if not entry:
                continue
            sub = det(rows[1:], cols[:pos] + cols[pos + 1:])
            term = poly_mul(ctx, entry, sub)
            if pos % 2:
                term = poly_sub(ctx, (), term)
            acc = poly_add(ctx, acc, term)
        return acc

    return det(tuple(range(x.n)), tuple(range(x.n)))


def poly_at_matrix(f, x: Matrix) -> Matrix:
    acc = Matrix.zero(x.ctx, x.n)
    for c in reversed(f):
        acc = acc @ x
        if c:
            scal = np.full((x.n, x.n), 0, dtype=np.int16)
            np.fill_diagonal(scal, c)
            acc = acc + Matrix(x.ctx, scal)
    return acc


# ---------------------------------------------------------------------------


def partitions(n: int):
    """Integer partitions of n as descending tuples."""
    if n == 0:
        yield ()
        return

    def rec(rem, mx):
        if rem == 0:
            yield ()
            return
        for first in range(min(rem, mx), 0, -1):
            for rest in rec(rem - first, first):
                yield (first,) + rest

    yield from rec(n, n)


@dataclass(frozen=True)
class OrbitLabel:
    """Sorted pairs (irreducible polynomial, partition) of total weight n."""

    pairs: tuple

    def __init__(self, pairs):
        pairs = tuple(sorted((tuple(f), tuple(lam)) for f, lam in pairs))
        polys = [f for f, _ in pairs]
        if len(set(polys)) != len(polys):
            raise ValueError("polynomials must be distinct")
        for f, lam in pairs:
            if not lam or list(lam) != sorted(lam, reverse=True) or min(lam) < 1:
                raise ValueError(f"bad partition {lam}")
            if f[-1] != 1:
                raise ValueError("polynomials must be monic")
        object.__setattr__(self, "pairs", pairs)

    @property
    def weight(self):
        return sum((len(f) - 1) * sum(lam) for f, lam in self.pairs)

    @property
    def is_nilpotent(self):
        return self.pairs == () or (len(self.pairs) == 1 and self.pairs[0][0] == (0, 1))

    def serialize(self) -> str:
        return "|".join(",".join(str(c) for c in f) + ":" +
                        ",".join(str(p) for p in lam) for f, lam in self.pairs)

    @classmethod
    def parse(cls, s: str) -> "OrbitLabel":
        if not s:
            return cls(())
        pairs = []
        for chunk in s.split("|"):
            fs, ls = chunk.split(":")
            pairs.append((tuple(int(c) for c in fs.split(",")),
                          tuple(int(p) for p in ls.split(","))))
        return cls(tuple(pairs))

    def __repr__(self):
        return f"OrbitLabel({self.serialize()!r})"


def matrix_label(x: Matrix) -> OrbitLabel:
    """Similarity-class label via elementary divisors (kernel filtration ranks)."""
    ctx, n = x.ctx, x.n
    if n == 0:
        return OrbitLabel(())
    f = char_poly(x)
    pairs = []
    remaining = f
    for g in irreducibles(ctx, n):
        mult = 0
        while True:
            quot, rem = poly_divmod(ctx, remaining, g)
            if rem:
                break
            remaining = quot
            mult += 1
        if not mult:
            continue
        d = len(g) - 1
        gx = poly_at_matrix(g, x)
        power = Matrix.identity(ctx, n)
        nullities = [0]
        blocks_ge = []
        while True:
            power = power @ gx
            nullities.append(n - power.rank())
            ge = (nullities[-1] - nullities[-2]) // d
            if ge == 0:
                break
            blocks_ge.append(ge)
        lam = []
        for j, ge in enumerate(blocks_ge, start=1):
            nxt = blocks_ge[j] if j < len(blocks_ge) else 0
            lam.extend([j] * (ge - nxt))
        lam.sort(reverse=True)
        assert sum(lam) == mult
        pairs.append((g, tuple(lam)))
        if len(remaining) == 1:
            break
    return OrbitLabel(tuple(pairs))


# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def conjugation_generators(ctx: FqContext, n: int):
    """Generating set of GL_n(F_q): elementary transvections + a torus generator."""
    gens = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for lam in range(1, ctx.q):
                e = np.eye(n, dtype=np.int16)
                e[i, j] = lam
                gens.append(Matrix(ctx, e))
    if ctx.q > 2 and n > 0:
        d = np.eye(n, dtype=np.int16)
        d[0, 0] = ctx.generator_index()
        gens.append(Matrix(ctx, d))
    return tuple((g.a, g.inverse().a) for g in gens)


def _expand_orbit(ctx, n, seed_codes, claim, marker, budget=DEFAULT_BUDGET):
    """Mark every code conjugate to the seeds in `claim` with `marker`.

    Returns the number of codes marked. `claim` entries must be -1 where
    unvisited.
    """
    gens = conjugation_generators(ctx, n)
    frontier = np.unique(np.asarray(seed_codes, dtype=np.int64))
    fresh = frontier[claim[frontier] == -1]
    claim[fresh] = marker
    frontier = fresh
    count = len(fresh)
    while len(frontier):
        mats = _decode_codes(ctx, n, frontier)
        nxt = []
        for g, gi in gens:
            conj = batch_matmul(ctx, batch_matmul(ctx, g, mats), gi)
            codes = encode_matrices(ctx, conj)
            codes = np.unique(codes)
            fresh = codes[claim[codes] == -1]
            if len(fresh):
                claim[fresh] = marker
                count += len(fresh)
                nxt.append(fresh)
        frontier = np.unique(np.concatenate(nxt)) if nxt else np.empty(0, np.int64)
    return count


def _decode_codes(ctx, n, codes):
    codes = np.asarray(codes, dtype=np.int64)
    flat = np.zeros((len(codes), n * n), dtype=np.int16)
    t = codes.copy()
    for i in range(n * n):
        flat[:, i] = t % ctx.q
        t = t // ctx.q
    return flat.reshape(len(codes), n, n)


def centralizer_order(x: Matrix, budget: int = SPAN_BUDGET) -> int:
    """|{g in GL_n : g x = x g}|, by enumerating the commutant algebra."""
    ctx, n = x.ctx, x.n
    if n == 0:
        return 1
    # (AY - YA)[i,j] as linear forms in Y[k,l]
    rows = []
    for i in range(n):
        for j in range(n):
            row = [0] * (n * n)
            for k in range(n):
                row[k * n + j] = int(ctx.ADD[row[k * n + j], x.a[i, k]])
            for l in range(n):
                v = int(ctx.NEG[x.a[l, j]])
                row[i * n + l] = int(ctx.ADD[row[i * n + l], v])
            rows.append(row)
    from .glmat import batch_det, fq_kernel
    basis = fq_kernel(ctx, np.array(rows, dtype=np.int16))
    d = len(basis)
    if ctx.q ** d > budget:
        raise ResourceBudgetError(ctx.q ** d, budget)
    span = np.zeros((1, n, n), dtype=np.int16)
    for vec in basis:
        b = np.array(vec, dtype=np.int16).reshape(n, n)
        scaled = ctx.MUL[np.arange(ctx.q, dtype=np.int16)[:, None, None], b]
        span = ctx.ADD[span[:, None], scaled[None, :]].reshape(-1, n, n)
    dets = batch_det(ctx, span)
    return int(np.count_nonzero(dets))


class OrbitTable:
    """Canonical enumeration of the adjoint orbits of gl_n(F_q)."""

    def __init__(self, ctx, n, labels, reps, sizes, lookup=None):
        self.ctx = ctx
        self.n = n
        self.labels = tuple(labels)
        self.reps = tuple(reps)
        self.sizes = tuple(sizes)
        self.lookup = lookup
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        self.gl_order = enumerate_gl_order(n, ctx)
        self._label_memo = {}
        assert sum(self.sizes) == ctx.q ** (n * n)

    def __len__(self):
        return len(self.labels)

    def index_of_label(self, label: OrbitLabel) -> int:
        if label not in self.index:
            raise KeyError(f"unknown orbit label {label}")
        return self.index[label]

    def index_of_matrix(self, x: Matrix) -> int:
        if x.ctx != self.ctx or x.n != self.n:
            raise ValueError("matrix does not match table")
        if self.lookup is not None:
            return int(self.lookup[int(encode_matrices(self.ctx, x.a[None])[0])])
        key = x.a.tobytes()
        if key not in self._label_memo:
            self._label_memo[key] = self.index_of_label(matrix_label(x))
        return self._label_memo[key]

    def codes_of_orbit(self, i: int) -> np.ndarray:
        if self.lookup is None:
            raise ResourceBudgetError(self.ctx.q ** (self.n * self.n), LOOKUP_BUDGET)
        return np.nonzero(self.lookup == i)[0]

    def to_json(self):
        return {
            "q": self.ctx.serialize(),
            "n": self.n,
            "orbits": [
                {"label": lab.serialize(), "representative": rep.serialize(),
                 "size": size}
                for lab, rep, size in zip(self.labels, self.reps, self.sizes)
            ],
        }


def _label_candidates(ctx, n):
    if n == 0:
        yield OrbitLabel(())
        return
    irrs = irreducibles(ctx, n)

    def rec(idx, remaining):
        if remaining == 0:
            yield ()
            return
        if idx == len(irrs):
            return
        f = irrs[idx]
        d = len(f) - 1
        for m in range(remaining // d, -1, -1):
            if m == 0:
                yield from rec(idx + 1, remaining)
                continue
            for lam in partitions(m):
                for rest in rec(idx + 1, remaining - d * m):
                    yield ((f, lam),) + rest

    for pairs in rec(0, n):
        yield OrbitLabel(pairs)


def representative(ctx, label: OrbitLabel, n: int) -> Matrix:
    blocks = []
    for f, lam in label.pairs:
        for part in lam:
            blocks.append(companion(ctx, poly_pow(ctx, f, part)).a)
    if not blocks:
        return Matrix.zero(ctx, n)
    from .glmat import _embed_blocks
    parts = tuple(b.shape[0] for b in blocks)
    return Matrix(ctx, _embed_blocks(blocks, parts))


@lru_cache(maxsize=None)
def enumerate_orbits(n: int, ctx: FqContext,
                     lookup_budget: int = LOOKUP_BUDGET) -> OrbitTable:
    labels = sorted(_label_candidates(ctx, n), key=lambda lab: lab.pairs)
    reps = [representative(ctx, lab, n) for lab in labels]
    gl = enumerate_gl_order(n, ctx)
    sizes = [gl // centralizer_order(rep) for rep in reps]
    lookup = None
    total = ctx.q ** (n * n)
    if total <= lookup_budget:
        lookup = np.full(total, -1, dtype=np.int32)
        for i, rep in enumerate(reps):
            seed = encode_matrices(ctx, rep.a[None])
            count = _expand_orbit(ctx, n, seed, lookup, i)
            assert count == sizes[i], (labels[i], count, sizes[i])
        assert np.all(lookup >= 0)
        lookup.setflags(write=False)
    return OrbitTable(ctx, n, labels, reps, sizes, lookup)


def orbit_of(x: Matrix, table: OrbitTable) -> OrbitLabel:
    if x.ctx != table.ctx or x.n != table.n:
        raise ValueError("matrix does not match table")
    return table.labels[table.index_of_label(matrix_label(x))]


def orbit_table_bruteforce(n: int, ctx: FqContext,
                           budget: int = LOOKUP_BUDGET):
    """Independent BFS partition of all q^(n^2) matrices into conjugacy classes.

    Returns (class_id array in code order, list of class sizes).
    """
    total = ctx.q ** (n * n)
    if total > budget:
        raise ResourceBudgetError(total, budget)
    claim = np.full(total, -1, dtype=np.int32)
    sizes = []
    for code in range(total):
        if claim[code] != -1:
            continue
        sizes.append(_expand_orbit(ctx, n, [code], claim, len(sizes)))
    return claim, sizes


def nilpotent_orbit_count(table: OrbitTable) -> int:
    return sum(1 for lab in table.labels if lab.pairs and lab.is_nilpotent)

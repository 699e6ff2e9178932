"""Harish-Chandra restriction and induction for block compositions, as exact
rational matrices over the indicator bases, plus Mackey/adjunction/
transitivity/parabolic-independence verifiers.

Internally a "split" is a tuple of nonnegative integers (zero parts mean
degree-0 tensor factors); the public Composition type has positive parts.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

import numpy as np

from .field import Cyclotomic, FqContext
from .glmat import (Composition, _shape_mask, all_matrices, batch_matmul,
                    encode_matrices, gl_arrays, gl_mask,
                    unipotent_radical_elems, unipotent_radical_order, weyl_rep)
from .invfun import InvariantFunction, TensorFunction, tensor_inner_product
from .orbits import enumerate_orbits


@dataclass
class HCReport:
    name: str
    params: dict
    passed: bool
    witness: str | None = None

    def __post_init__(self):
        if not self.passed and self.witness is None:
            raise ValueError("failing report requires a witness")

    def to_json(self):
        return {"name": self.name, "params": self.params,
                "passed": self.passed, "witness": self.witness}


def _parts(c):
    if isinstance(c, Composition):
        return c.parts
    return tuple(int(p) for p in c)


def split_tables(ctx: FqContext, parts):
    return tuple(enumerate_orbits(p, ctx) for p in _parts(parts))


def _flat_index(idx, dims):
    out = 0
    for i, d in zip(idx, dims):
        out = out * d + i
    return out


def _tuple_count(dims):
    out = 1
    for d in dims:
        out *= d
    return out


@lru_cache(maxsize=None)
def _conjugated_stack(ctx: FqContext, n: int, rep_index: int):
    """g x g^-1 for every g in GL_n, for the rep of the given orbit index."""
    G, Gi = gl_arrays(ctx, n)
    rep = enumerate_orbits(n, ctx).reps[rep_index]
    out = batch_matmul(ctx, batch_matmul(ctx, G, rep.a), Gi)
    out.setflags(write=False)
    return out


@lru_cache(maxsize=None)
def levi_order(ctx: FqContext, parts: tuple) -> int:
    from .glmat import enumerate_gl_order
    order = 1
    for p in parts:
        order *= enumerate_gl_order(p, ctx)
    return order


@lru_cache(maxsize=None)
def parabolic_group_order(ctx: FqContext, parts: tuple, lower: bool = False) -> int:
    """|P^F| counted by enumerating GL_n and testing the block shape."""
    n = sum(parts)
    if n == 0:
        return 1
    mats = all_matrices(ctx, n)
    inv = gl_mask(ctx, n)
    kind = "parabolic-lower" if lower else "parabolic-upper"
    shape = _shape_mask(parts, kind)
    if shape.any():
        ok = ~np.any(mats[:, shape], axis=1)
    else:
        ok = np.ones(len(mats), dtype=bool)
    return int(np.count_nonzero(inv & ok))


def _block_lookup(ctx, sub, starts, parts, tabs):
    """Flat tuple codes for the diagonal blocks of a stack of matrices."""
    m = len(sub)
    codes = np.zeros(m, dtype=np.int64)
    for s, p, tab in zip(starts, parts, tabs):
        block = sub[:, s:s + p, s:s + p]
        bc = encode_matrices(ctx, block)
        codes = codes * len(tab) + tab.lookup[bc]
    return codes


def _starts(parts):
    starts, s = [], 0
    for p in parts:
        starts.append(s)
        s += p
    return starts


@lru_cache(maxsize=None)
def restriction_matrix(ctx: FqContext, parts: tuple, lower: bool = False):
    """Matrix of *R along the split, rows = Levi label tuples, cols = orbits
    of gl_n; entries are exact rationals."""
    parts = tuple(parts)
    n = sum(parts)
    tabs = split_tables(ctx, parts)
    table_n = enumerate_orbits(n, ctx)
    if table_n.lookup is None:
        raise RuntimeError("restriction matrix needs the full orbit lookup")
    dims = [len(t) for t in tabs]
    U = unipotent_radical_elems(ctx, parts, lower=lower)
    nu = len(U)
    starts = _starts(parts)
    rows = []
    for idx in product(*(range(d) for d in dims)):
        emb = np.zeros((n, n), dtype=np.int16)
        for s, p, tab, i in zip(starts, parts, tabs, idx):
            emb[s:s + p, s:s + p] = tab.reps[i].a
        shifted = ctx.ADD[emb[None], U]
        codes = encode_matrices(ctx, shifted)
        orb = table_n.lookup[codes]
        counts = np.bincount(orb, minlength=len(table_n))
        rows.append([Fraction(int(c), nu) for c in counts])
    return rows


@lru_cache(maxsize=None)
def induction_matrix(ctx: FqContext, parts: tuple, lower: bool = False):
    """Matrix of R along the split, rows = orbits of gl_n, cols = Levi label
    tuples (flattened); entries are exact rationals."""
    parts = tuple(parts)
    n = sum(parts)
    tabs = split_tables(ctx, parts)
    table_n = enumerate_orbits(n, ctx)
    dims = [len(t) for t in tabs]
    ntuples = _tuple_count(dims)
    porder = parabolic_group_order(ctx, parts, lower)
    kind = "parabolic-lower" if lower else "parabolic-upper"
    shape = _shape_mask(parts, kind)
    starts = _starts(parts)
    rows = []
    for r in range(len(table_n)):
        conj = _conjugated_stack(ctx, n, r)
        if shape.any():
            ok = ~np.any(conj[:, shape], axis=1)
            sub = conj[ok]
        else:
            sub = conj
        codes = _block_lookup(ctx, sub, starts, parts, tabs)
        counts = np.bincount(codes, minlength=ntuples)
        rows.append([Fraction(int(c), porder) for c in counts])
    return rows


def hc_restrict(f: InvariantFunction, c, lower: bool = False) -> TensorFunction:
    """*R of f along the composition, as a tensor over the part tables."""
    parts = _parts(c)
    if sum(parts) != f.n:
        raise ValueError("degree of f must equal the composition size")
    ctx = f.table.ctx
    tabs = split_tables(ctx, parts)
    mat = restriction_matrix(ctx, parts, lower)
    dims = [len(t) for t in tabs]
    zero = Cyclotomic.rational(ctx.p, 0)
    vals = {}
    for pos, idx in enumerate(product(*(range(d) for d in dims))):
        acc = zero
        for j, coef in enumerate(mat[pos]):
            if coef:
                acc = acc + f.values[j] * coef
        vals[idx] = acc
    return TensorFunction(tabs, vals)


def hc_induce(t: TensorFunction, c, lower: bool = False) -> InvariantFunction:
    """R of a tensor along the composition, landing in gl_n."""
    parts = _parts(c)
    ctx = t.tables[0].ctx if t.tables else None
    if t.degrees != tuple(parts):
        raise ValueError("tensor degrees must match the composition parts")
    table_n = enumerate_orbits(sum(parts), ctx)
    mat = induction_matrix(ctx, parts, lower)
    dims = [len(tab) for tab in t.tables]
    zero = Cyclotomic.rational(ctx.p, 0)
    values = []
    for r in range(len(table_n)):
        acc = zero
        row = mat[r]
        for idx, v in t.values.items():
            coef = row[_flat_index(idx, dims)]
            if coef and not v.is_zero():
                acc = acc + v * coef
        values.append(acc)
    return InvariantFunction(table_n, values)


# ---------------------------------------------------------------------------
# tensor-level staging helpers


def tensor_concat(a: TensorFunction, b: TensorFunction) -> TensorFunction:
    tables = a.tables + b.tables
    vals = {}
    for ia, va in a.values.items():
        for ib, vb in b.values.items():
            vals[ia + ib] = va * vb
    return TensorFunction(tables, vals)


def tensor_restrict_factor(t: TensorFunction, pos: int, subparts,
                           lower: bool = False) -> TensorFunction:
    """Expand one tensor factor by *R along subparts."""
    subparts = _parts(subparts)
    ctx = t.tables[pos].ctx
    if sum(subparts) != t.tables[pos].n:
        raise ValueError("subcomposition size mismatch")
    subtabs = split_tables(ctx, subparts)
    mat = restriction_matrix(ctx, subparts, lower)
    subdims = [len(x) for x in subtabs]
    tables = t.tables[:pos] + subtabs + t.tables[pos + 1:]
    zero = Cyclotomic.rational(ctx.p, 0)
    vals = {}
    for pre in product(*(range(len(x)) for x in t.tables[:pos])):
        for post in product(*(range(len(x)) for x in t.tables[pos + 1:])):
            for spos, sidx in enumerate(product(*(range(d) for d in subdims))):
                acc = zero
                for j in range(len(t.tables[pos])):
                    coef = mat[spos][j]
                    if coef:
                        acc = acc + t.values[pre + (j,) + post] * coef
                vals[pre + sidx + post] = acc
    return TensorFunction(tables, vals)


def tensor_induce_span(t: TensorFunction, start: int, count: int,
                       lower: bool = False) -> TensorFunction:
    """Induce the consecutive factors [start, start+count) into one factor."""
    ctx = t.tables[start].ctx
    subparts = tuple(t.tables[start + i].n for i in range(count))
    target = enumerate_orbits(sum(subparts), ctx)
    mat = induction_matrix(ctx, subparts, lower)
    subdims = [len(t.tables[start + i]) for i in range(count)]
    tables = t.tables[:start] + (target,) + t.tables[start + count:]
    zero = Cyclotomic.rational(ctx.p, 0)
    vals = {}
    for pre in product(*(range(len(x)) for x in t.tables[:start])):
        for post in product(*(range(len(x)) for x in t.tables[start + count:])):
            for r in range(len(target)):
                acc = zero
                row = mat[r]
                for sidx in product(*(range(d) for d in subdims)):
                    coef = row[_flat_index(sidx, subdims)]
                    if coef:
                        v = t.values[pre + sidx + post]
                        if not v.is_zero():
                            acc = acc + v * coef
                vals[pre + (r,) + post] = acc
    return TensorFunction(tables, vals)


# ---------------------------------------------------------------------------
# verifiers


def verify_adjunction(t: TensorFunction, g: InvariantFunction, c) -> HCReport:
    """(R t, g) = (t, *R g), exactly."""
    parts = _parts(c)
    from .invfun import inner_product
    lhs = inner_product(hc_induce(t, parts), g)
    rhs = tensor_inner_product(t, hc_restrict(g, parts))
    passed = lhs == rhs
    return HCReport("adjunction", {"parts": list(parts), "q": t.tables[0].ctx.q},
                    passed, None if passed else f"{lhs!r} != {rhs!r}")


def verify_transitivity(f: InvariantFunction, outer, subcomps) -> HCReport:
    """Restricting in stages equals restricting in one step."""
    outer_parts = _parts(outer)
    subs = [_parts(s) for s in subcomps]
    if len(subs) != len(outer_parts) or any(sum(s) != p for s, p in
                                            zip(subs, outer_parts)):
        raise ValueError("subcompositions must refine the outer composition")
    staged = hc_restrict(f, outer_parts)
    for pos in reversed(range(len(outer_parts))):
        staged = tensor_restrict_factor(staged, pos, subs[pos])
    direct = hc_restrict(f, tuple(x for s in subs for x in s))
    passed = staged == direct
    return HCReport("transitivity-restriction",
                    {"outer": list(outer_parts), "subs": [list(s) for s in subs]},
                    passed, None if passed else "staged != direct")


def verify_transitivity_induction(t: TensorFunction, outer, subcomps) -> HCReport:
    """Inducing in stages equals inducing in one step."""
    outer_parts = _parts(outer)
    subs = [_parts(s) for s in subcomps]
    staged = t
    start = 0
    for s in subs:
        staged = tensor_induce_span(staged, start, len(s))
        start += 1
    staged = tensor_induce_span(staged, 0, len(outer_parts))
    direct = tensor_induce_span(t, 0, sum(len(s) for s in subs))
    passed = staged == direct
    return HCReport("transitivity-induction",
                    {"outer": list(outer_parts), "subs": [list(s) for s in subs]},
                    passed, None if passed else "staged != direct")


def verify_parabolic_independence(ctx: FqContext, n: int, c) -> HCReport:
    """Upper and lower parabolics give the same R and *R."""
    parts = _parts(c)
    up_r = restriction_matrix(ctx, parts, lower=False)
    lo_r = restriction_matrix(ctx, parts, lower=True)
    up_i = induction_matrix(ctx, parts, lower=False)
    lo_i = induction_matrix(ctx, parts, lower=True)
    if up_r != lo_r:
        return HCReport("parabolic-independence", {"n": n, "parts": list(parts)},
                        False, "restriction matrices differ")
    if up_i != lo_i:
        return HCReport("parabolic-independence", {"n": n, "parts": list(parts)},
                        False, "induction matrices differ")
    return HCReport("parabolic-independence", {"n": n, "parts": list(parts)}, True)


def mackey_index_set(n1, n2, s, t):
    """The 2x2 nonnegative matrices with row sums (n1, n2), column sums (s, t)."""
    out = []
    for a in range(min(n1, s) + 1):
        b, c = n1 - a, s - a
        d = n2 - c
        if b >= 0 and c >= 0 and d >= 0 and b + d == t:
            out.append((a, b, c, d))
    return out


def mackey_rhs(rho1: InvariantFunction, rho2: InvariantFunction,
               s: int, t: int) -> TensorFunction:
    """The double-coset side of the Mackey formula, assembled over the
    canonical Weyl representatives."""
    n1, n2 = rho1.n, rho2.n
    ctx = rho1.table.ctx
    acc = TensorFunction.zero(split_tables(ctx, (s, t)))
    for a, b, c, d in mackey_index_set(n1, n2, s, t):
        t1 = hc_restrict(rho1, (a, b))
        t2 = hc_restrict(rho2, (c, d))
        four = tensor_concat(t1, t2)          # factors (a, b, c, d)
        four = four.permute((0, 2, 1, 3))     # w-twist: (a, c, b, d)
        term = tensor_induce_span(four, 0, 2)  # (a, c) -> s
        term = tensor_induce_span(term, 1, 2)  # (b, d) -> t
        acc = acc + term
    return acc


def verify_mackey(rho1: InvariantFunction, rho2: InvariantFunction,
                  s: int, t: int) -> HCReport:
    n1, n2 = rho1.n, rho2.n
    if n1 + n2 != s + t:
        raise ValueError("degree mismatch")
    lhs = hc_restrict(hc_induce(TensorFunction.outer([rho1, rho2]), (n1, n2)),
                      (s, t))
    rhs = mackey_rhs(rho1, rho2, s, t)
    passed = lhs == rhs
    witness = None
    if not passed:
        for idx in lhs.index_tuples():
            if lhs.values[idx] != rhs.values[idx]:
                witness = f"orbit pair {idx}: {lhs.values[idx]!r} != {rhs.values[idx]!r}"
                break
    return HCReport("mackey", {"n1": n1, "n2": n2, "s": s, "t": t,
                               "q": rho1.table.ctx.q}, passed, witness)

"""The graded bialgebra structure on the tower of invariant-function spaces:
product, coproduct, unit/counit, the inductively computed antipode, and the
primitive (pre-cuspidal) subspaces.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .field import FqContext
from .glmat import Composition
from .hc import (HCReport, hc_induce, hc_restrict, induction_matrix, mackey_rhs,
                 restriction_matrix, split_tables)
from .invfun import GradedElement, InvariantFunction, TensorFunction
from .orbits import enumerate_orbits, partitions


def multiply_functions(a: InvariantFunction, b: InvariantFunction) -> InvariantFunction:
    return hc_induce(TensorFunction.outer([a, b]), (a.n, b.n))


def multiply(a: GradedElement, b: GradedElement) -> GradedElement:
    if a.ctx != b.ctx:
        raise ValueError("mixed contexts")
    out = GradedElement(a.ctx, {})
    for fa in a.components.values():
        for fb in b.components.values():
            out = out + GradedElement.homogeneous(multiply_functions(fa, fb))
    return out


@dataclass
class CoproductExpansion:
    """All components of m* on one homogeneous function, including the
    boundary splits (0, n) and (n, 0)."""

    n: int
    components: dict  # (k, l) -> TensorFunction

    def proper(self):
        return {kl: t for kl, t in self.components.items() if 0 not in kl}


def comultiply(f: InvariantFunction) -> CoproductExpansion:
    n = f.n
    comps = {(k, n - k): hc_restrict(f, (k, n - k)) for k in range(n + 1)}
    return CoproductExpansion(n, comps)


def counit(x: GradedElement):
    return x.component(0).values[0]


def unit(ctx, value) -> GradedElement:
    return GradedElement.scalar(ctx, value)


def is_primitive(f: InvariantFunction) -> bool:
    return all(t.is_zero() for t in comultiply(f).proper().values())


def verify_bialgebra(rho1: InvariantFunction, rho2: InvariantFunction) -> HCReport:
    """m*(m(rho1 x rho2)) = m*(rho1) . m*(rho2), checked split by split."""
    n = rho1.n + rho2.n
    prod = multiply_functions(rho1, rho2)
    for s in range(n + 1):
        t = n - s
        lhs = hc_restrict(prod, (s, t))
        rhs = mackey_rhs(rho1, rho2, s, t)
        if lhs != rhs:
            return HCReport("bialgebra", {"n1": rho1.n, "n2": rho2.n,
                                          "q": rho1.table.ctx.q},
                            False, f"split ({s},{t}) differs")
    return HCReport("bialgebra", {"n1": rho1.n, "n2": rho2.n,
                                  "q": rho1.table.ctx.q}, True)


# ---------------------------------------------------------------------------
# primitive subspaces


@dataclass
class PrimitiveBasis:
    n: int
    members: list  # InvariantFunction, rational values, reduced echelon form

    @property
    def dimension(self):
        return len(self.members)


@lru_cache(maxsize=None)
def primitive_subspace(ctx: FqContext, n: int) -> PrimitiveBasis:
    """Kernel of every proper two-part restriction, in the indicator basis."""
    if n < 1:
        raise ValueError("primitive subspaces start in degree 1")
    table = enumerate_orbits(n, ctx)
    stacked = []
    for k in range(1, n):
        stacked.extend(restriction_matrix(ctx, (k, n - k)))
    if stacked:
        basis = linalg.kernel(stacked)
    else:
        basis = [row[:] for row in linalg.identity(len(table))]
    reduced, _ = linalg.rref(basis) if basis else ([], [])
    members = [InvariantFunction(table, vec) for vec in reduced if any(vec)]
    return PrimitiveBasis(n, members)


@lru_cache(maxsize=None)
def antipode_matrix(ctx: FqContext, n: int):
    """Antipode on degree n, in the indicator basis, by the connected-graded
    recursion S(x) = -x - sum over proper splits of m(S x' (x) x'')."""
    if n == 0:
        return linalg.identity(1)
    dim = len(enumerate_orbits(n, ctx))
    acc = linalg.scale(linalg.identity(dim), Fraction(-1))
    for k in range(1, n):
        l = n - k
        res = restriction_matrix(ctx, (k, l))          # (dk*dl) x dim
        ind = induction_matrix(ctx, (k, l))            # dim x (dk*dl)
        sk = antipode_matrix(ctx, k)                   # dk x dk
        dk = len(sk)
        dl = len(enumerate_orbits(l, ctx))
        # (S_k tensor I_l) on the flattened tensor index
        skron = linalg.zeros(dk * dl, dk * dl)
        for i in range(dk):
            for i2 in range(dk):
                if sk[i][i2]:
                    for j in range(dl):
                        skron[i * dl + j][i2 * dl + j] = sk[i][i2]
        term = linalg.matmul(ind, linalg.matmul(skron, res))
        acc = linalg.matadd(acc, linalg.scale(term, Fraction(-1)))
    return acc


def antipode_function(f: InvariantFunction) -> InvariantFunction:
    mat = antipode_matrix(f.table.ctx, f.n)
    values = []
    for row in mat:
        acc = f.values[0] * row[0]
        for j in range(1, len(row)):
            if row[j]:
                acc = acc + f.values[j] * row[j]
        values.append(acc)
    return InvariantFunction(f.table, values)


def antipode(x: GradedElement) -> GradedElement:
    return GradedElement(x.ctx, {n: antipode_function(f)
                                 for n, f in x.components.items()})


# ---------------------------------------------------------------------------
# spanning by induced products of primitives


def precuspidal_spanning_rank(ctx: FqContext, n: int):
    """(rank of the span of induced products of primitive elements, dim C_n)."""
    table = enumerate_orbits(n, ctx)
    dim = len(table)
    vectors = []
    for lam in sorted(partitions(n), reverse=True):
        bases = [primitive_subspace(ctx, m).members for m in lam]
        mat = induction_matrix(ctx, tuple(lam))
        dims = [len(enumerate_orbits(m, ctx)) for m in lam]
        from itertools import product as iproduct
        from .hc import _flat_index
        for choice in iproduct(*bases):
            tensor = {}
            for idx in iproduct(*(range(d) for d in dims)):
                v = Fraction(1)
                for f, i in zip(choice, idx):
                    v *= f.values[i].as_rational()
                tensor[_flat_index(idx, dims)] = v
            vec = []
            for row in mat:
                vec.append(sum(row[j] * tv for j, tv in tensor.items()))
            vectors.append(vec)
        if vectors and linalg.rank(vectors) == dim:
            break
    return (linalg.rank(vectors) if vectors else 0, dim)


def hilbert_series_check(ctx: FqContext, max_n: int) -> HCReport:
    """prod_k (1 - t^k)^(-dim p_k) must match sum_n (dim C_n) t^n."""
    prim_dims = {k: primitive_subspace(ctx, k).dimension for k in range(1, max_n + 1)}
    series = [Fraction(1)] + [Fraction(0)] * max_n
    for k, d in prim_dims.items():
        # multiply by (1 - t^k)^(-d) = product of d geometric series
        for _ in range(d):
            for i in range(k, max_n + 1):
                series[i] += series[i - k]
    expected = [len(enumerate_orbits(m, ctx)) for m in range(max_n + 1)]
    got = [int(series[m]) for m in range(max_n + 1)]
    passed = got == expected
    return HCReport("hilbert-series", {"q": ctx.q, "max_n": max_n,
                                       "primitive_dims": prim_dims},
                    passed, None if passed else f"{got} != {expected}")

"""Command-line front end: table construction, operator application, and the
verification suites, with text or JSON reports.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import duality as duality_mod
from . import hopf, psh
from .field import Cyclotomic, FqContext, fq
from .glmat import Composition
from .hc import (hc_induce, hc_restrict, verify_adjunction, verify_mackey,
                 verify_parabolic_independence, verify_transitivity)
from .invfun import InvariantFunction, TensorFunction, constant_one, indicator_by_index
from .orbits import (enumerate_orbits, nilpotent_orbit_count,
                     orbit_table_bruteforce, partitions)

CODE_VERSION = "1"

# Largest degree with acceptable runtime per field size; larger q values are
# rejected outright.
DEFAULT_MAX_N = {2: 4, 3: 3, 4: 2, 5: 2}

ALL_SUITES = ("orbits", "hc", "mackey", "bialgebra", "antipode", "duality",
              "characterization", "psh", "witness", "steinberg")


class ConfigError(Exception):
    pass


def _context(args) -> FqContext:
    q = args.q
    if q not in DEFAULT_MAX_N:
        raise ConfigError(f"q={q} is outside the supported budget table "
                          f"{sorted(DEFAULT_MAX_N)}")
    return fq(q)


def _check_budget(ctx: FqContext, n: int, override: bool):
    cap = DEFAULT_MAX_N[ctx.q]
    if n > cap and not override:
        raise ConfigError(
            f"n={n} exceeds the default budget n<={cap} for q={ctx.q}; "
            f"pass --budget to acknowledge the cost")


def _cache_write(args, kind: str, ctx: FqContext, n, payload):
    if not getattr(args, "cache_dir", None):
        return
    d = Path(args.cache_dir)
    d.mkdir(parents=True, exist_ok=True)
    name = f"{kind}-q{ctx.q}-n{n}-v{CODE_VERSION}.json"
    (d / name).write_text(json.dumps(payload, sort_keys=True, indent=1))


def _load_function(path: str, ctx: FqContext) -> InvariantFunction:
    data = json.loads(Path(path).read_text())
    table = enumerate_orbits(int(data["n"]), ctx)
    return InvariantFunction.from_json(table, data)


def _emit(args, payload, text_lines):
    out = "\n".join(text_lines) if args.format == "text" else json.dumps(
        payload, sort_keys=True, indent=1)
    if getattr(args, "output", None):
        Path(args.output).write_text(out + "\n")
    else:
        print(out)


def _function_lines(f: InvariantFunction):
    lines = [f"degree {f.n}, q={f.table.ctx.q}, {len(f.table)} orbits"]
    for lab, val in zip(f.table.labels, f.values):
        lines.append(f"  {lab.serialize():30s} {val}")
    return lines


def _tensor_json(t: TensorFunction):
    return {"degrees": list(t.degrees),
            "values": {"|".join(tab.labels[i].serialize()
                                for tab, i in zip(t.tables, idx)): v.serialize()
                       for idx, v in t.values.items()}}


# ---------------------------------------------------------------------------
# subcommands


def cmd_orbits(args):
    ctx = _context(args)
    _check_budget(ctx, args.n, args.budget)
    table = enumerate_orbits(args.n, ctx)
    payload = table.to_json()
    _cache_write(args, "orbits", ctx, args.n, payload)
    lines = [f"gl_{args.n}(F_{ctx.q}): {len(table)} adjoint orbits"]
    for lab, size in zip(table.labels, table.sizes):
        lines.append(f"  {lab.serialize():30s} size {size}")
    _emit(args, payload, lines)
    return 0


def cmd_induce(args):
    ctx = _context(args)
    c = Composition.parse(args.composition)
    _check_budget(ctx, c.n, args.budget)
    factors = [_load_function(p, ctx) for p in args.input.split(",")]
    if tuple(f.n for f in factors) != c.parts:
        raise ConfigError("input degrees do not match the composition")
    out = hc_induce(TensorFunction.outer(factors), c)
    _emit(args, out.to_json(), _function_lines(out))
    return 0


def cmd_restrict(args):
    ctx = _context(args)
    c = Composition.parse(args.composition)
    _check_budget(ctx, c.n, args.budget)
    f = _load_function(args.input, ctx)
    if f.n != c.n:
        raise ConfigError("input degree does not match the composition")
    t = hc_restrict(f, c)
    lines = [f"restriction along {args.composition}"]
    for key, val in _tensor_json(t)["values"].items():
        lines.append(f"  {key:40s} {val}")
    _emit(args, _tensor_json(t), lines)
    return 0


def cmd_dual(args):
    ctx = _context(args)
    _check_budget(ctx, args.n, args.budget)
    f = _load_function(args.input, ctx)
    if f.n != args.n:
        raise ConfigError("input degree does not match --n")
    op = duality_mod.duality_operator(args.n, ctx)
    _cache_write(args, "duality", ctx, args.n, op.to_json())
    out = op.apply(f)
    _emit(args, out.to_json(), _function_lines(out))
    return 0


def cmd_steinberg(args):
    ctx = _context(args)
    _check_budget(ctx, args.n, args.budget)
    st = duality_mod.steinberg(args.n, ctx)
    count = duality_mod.steinberg_constituents(args.n, ctx)
    payload = {"function": st.to_json(), "constituents": count}
    lines = _function_lines(st) + [f"constituents: {count}"]
    _emit(args, payload, lines)
    return 0


def cmd_antipode(args):
    ctx = _context(args)
    f = _load_function(args.input, ctx)
    _check_budget(ctx, f.n, args.budget)
    out = hopf.antipode_function(f)
    _emit(args, out.to_json(), _function_lines(out))
    return 0


def cmd_primitives(args):
    ctx = _context(args)
    _check_budget(ctx, args.n, args.budget)
    basis = hopf.primitive_subspace(ctx, args.n)
    payload = {"n": args.n, "dimension": basis.dimension,
               "basis": [f.to_json() for f in basis.members]}
    lines = [f"pre-cuspidal subspace of degree {args.n}: dimension {basis.dimension}"]
    for f in basis.members:
        lines.extend("  " + l for l in _function_lines(f)[1:])
        lines.append("  --")
    _emit(args, payload, lines)
    return 0


def cmd_witness(args):
    ctx = _context(args)
    w = psh.nondescending_witness(ctx)
    verdict = "irrational" if not w.is_rational() else "rational"
    payload = {"q": ctx.q, "value_squared": str(w.square), "verdict": verdict}
    _emit(args, payload, [f"value² = {w.square}", f"verdict: {verdict}"])
    return 0 if verdict == "irrational" else 1


# ---------------------------------------------------------------------------
# verification suites


def _indicator_sample(table, limit=3):
    return [indicator_by_index(i, table) for i in range(min(limit, len(table)))]


def suite_orbits(ctx, max_n):
    reports = []
    for n in range(1, max_n + 1):
        table = enumerate_orbits(n, ctx)
        nil = nilpotent_orbit_count(table)
        reports.append({"name": "nilpotent-count", "params": {"q": ctx.q, "n": n},
                        "passed": nil == sum(1 for _ in partitions(n))})
        if ctx.q ** (n * n) <= 1 << 16 and table.lookup is not None:
            claim, osizes = orbit_table_bruteforce(n, ctx)
            pairs = set(zip(table.lookup.tolist(), claim.tolist()))
            same = (sorted(table.sizes) == sorted(osizes)
                    and len(pairs) == len(table) == len(osizes))
            reports.append({"name": "orbit-oracle", "params": {"q": ctx.q, "n": n},
                            "passed": same})
    return reports


def _compositions_upto(max_n):
    from .glmat import compositions
    out = []
    for n in range(2, max_n + 1):
        out.extend(c for c in compositions(n) if len(c.parts) >= 2)
    return out


def suite_hc(ctx, max_n):
    reports = []
    for c in _compositions_upto(max_n):
        n = c.n
        table = enumerate_orbits(n, ctx)
        for f in [constant_one(table)] + _indicator_sample(table, 2):
            tabs = [enumerate_orbits(m, ctx) for m in c.parts]
            t = TensorFunction.outer([constant_one(tb) for tb in tabs])
            reports.append(verify_adjunction(t, f, c).to_json())
        if len(c.parts) == 2 and c.parts[0] >= 2:
            sub = ((1, c.parts[0] - 1), (c.parts[1],))
            reports.append(verify_transitivity(constant_one(table), c.parts, sub).to_json())
        reports.append(verify_parabolic_independence(ctx, n, c.parts).to_json())
    return reports


def suite_mackey(ctx, max_n, all_indicators=False):
    reports = []
    for n1 in range(1, max_n):
        for n2 in range(1, max_n - n1 + 1):
            t1 = enumerate_orbits(n1, ctx)
            t2 = enumerate_orbits(n2, ctx)
            if all_indicators:
                fs = [indicator_by_index(i, t1) for i in range(len(t1))]
                gs = [indicator_by_index(j, t2) for j in range(len(t2))]
            else:
                fs = [constant_one(t1)] + _indicator_sample(t1, 2)
                gs = [constant_one(t2)] + _indicator_sample(t2, 2)
            n = n1 + n2
            for s in range(n + 1):
                for f in fs:
                    for g in gs:
                        reports.append(verify_mackey(f, g, s, n - s).to_json())
    return reports


def suite_bialgebra(ctx, max_n):
    reports = []
    for n1 in range(1, max_n):
        for n2 in range(1, max_n - n1 + 1):
            t1 = enumerate_orbits(n1, ctx)
            t2 = enumerate_orbits(n2, ctx)
            for f in [constant_one(t1)] + _indicator_sample(t1, 2):
                for g in [constant_one(t2)] + _indicator_sample(t2, 2):
                    reports.append(hopf.verify_bialgebra(f, g).to_json())
    reports.append(hopf.hilbert_series_check(ctx, max_n).to_json())
    return reports


def suite_antipode(ctx, max_n):
    from . import linalg
    reports = []
    reports.append(duality_mod.verify_antipode_is_duality(max_n, ctx).to_json())
    for n in range(max_n + 1):
        s = hopf.antipode_matrix(ctx, n)
        ok = linalg.mat_eq(linalg.matmul(s, s), linalg.identity(len(s)))
        reports.append({"name": "antipode-involutive",
                        "params": {"q": ctx.q, "n": n}, "passed": ok})
    for n in range(1, max_n + 1):
        for p in hopf.primitive_subspace(ctx, n).members:
            ok = hopf.antipode_function(p) == p.scale(Fraction(-1))
            reports.append({"name": "antipode-on-primitives",
                            "params": {"q": ctx.q, "n": n}, "passed": ok})
    return reports


def suite_duality(ctx, max_n):
    reports = []
    for n in range(1, max_n + 1):
        reports.append(duality_mod.verify_involutive_isometric(n, ctx).to_json())
    return reports


def suite_characterization(ctx, max_n):
    return [duality_mod.verify_characterization(max_n, ctx).to_json()]


def suite_psh(ctx, max_n):
    reports = []
    for n1 in range(1, max_n):
        for n2 in range(1, max_n - n1 + 1):
            reports.append(psh.verify_positivity(ctx, n1, n2).to_json())
            reports.append(psh.verify_self_adjointness(ctx, n1, n2).to_json())
    for n in range(1, max_n + 1):
        reports.append(psh.verify_second_psh(ctx, n).to_json())
    return reports


def suite_witness(ctx, max_n):
    return [psh.verify_nondescending(ctx).to_json()]


def suite_steinberg(ctx, max_n):
    reports = []
    for n in range(1, max_n + 1):
        count = duality_mod.steinberg_constituents(n, ctx)
        reports.append({"name": "steinberg-constituents",
                        "params": {"q": ctx.q, "n": n, "count": count},
                        "passed": count == sum(1 for _ in partitions(n))})
    return reports


SUITE_RUNNERS = {
    "orbits": suite_orbits,
    "hc": suite_hc,
    "mackey": suite_mackey,
    "bialgebra": suite_bialgebra,
    "antipode": suite_antipode,
    "duality": suite_duality,
    "characterization": suite_characterization,
    "psh": suite_psh,
    "witness": suite_witness,
    "steinberg": suite_steinberg,
}


def cmd_verify(args):
    ctx = _context(args)
    max_n = args.max_n if args.max_n is not None else DEFAULT_MAX_N[ctx.q]
    _check_budget(ctx, max_n, args.budget)
    if args.suite == "mackey" and args.n1 is not None:
        if args.n2 is None or args.s is None or args.t is None:
            raise ConfigError("verify mackey with --n1 needs --n2 --s --t")
        t1 = enumerate_orbits(args.n1, ctx)
        t2 = enumerate_orbits(args.n2, ctx)
        if args.all_indicators:
            fs = [indicator_by_index(i, t1) for i in range(len(t1))]
            gs = [indicator_by_index(j, t2) for j in range(len(t2))]
        else:
            fs, gs = [constant_one(t1)], [constant_one(t2)]
        reports = [verify_mackey(f, g, args.s, args.t).to_json()
                   for f in fs for g in gs]
    else:
        names = ALL_SUITES if args.suite == "all" else (args.suite,)
        reports = []
        for name in names:
            if name == "mackey":
                reports.extend(SUITE_RUNNERS[name](ctx, max_n, args.all_indicators))
            else:
                reports.extend(SUITE_RUNNERS[name](ctx, max_n))
    all_passed = all(r["passed"] for r in reports)
    lines = []
    for r in reports:
        status = "PASS" if r["passed"] else "FAIL"
        params = " ".join(f"{k}={v}" for k, v in r.get("params", {}).items())
        lines.append(f"[{status}] {r['name']} {params}".rstrip())
        if not r["passed"] and r.get("witness"):
            lines.append(f"       witness: {r['witness']}")
    lines.append(f"{'OK' if all_passed else 'FAILED'}: "
                 f"{sum(r['passed'] for r in reports)}/{len(reports)} checks passed")
    _emit(args, {"passed": all_passed, "reports": reports}, lines)
    return 0 if all_passed else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="glnq",
        description="Exact computations with conjugation-invariant functions "
                    "on gl_n over a finite field")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, need_n=False, need_input=False, need_comp=False):
        p.add_argument("--q", type=int, required=True, help="field size")
        if need_n:
            p.add_argument("--n", type=int, required=True, help="matrix degree")
        if need_comp:
            p.add_argument("--composition", required=True,
                           help="composition, e.g. 2+1")
        if need_input:
            p.add_argument("--input", required=True,
                           help="function JSON file (comma-separated for tensors)")
        p.add_argument("--output", help="write result to this file")
        p.add_argument("--cache-dir", help="directory for computed-table artifacts")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--budget", action="store_true",
                       help="acknowledge running beyond the default size budget")

    p = sub.add_parser("orbits", help="enumerate adjoint orbits")
    common(p, need_n=True)
    p.set_defaults(func=cmd_orbits)

    p = sub.add_parser("induce", help="Harish-Chandra induction of a tensor")
    common(p, need_input=True, need_comp=True)
    p.set_defaults(func=cmd_induce)

    p = sub.add_parser("restrict", help="Harish-Chandra restriction")
    common(p, need_input=True, need_comp=True)
    p.set_defaults(func=cmd_restrict)

    p = sub.add_parser("dual", help="apply the duality operation")
    common(p, need_n=True, need_input=True)
    p.set_defaults(func=cmd_dual)

    p = sub.add_parser("steinberg", help="the dual of the constant function")
    common(p, need_n=True)
    p.set_defaults(func=cmd_steinberg)

    p = sub.add_parser("antipode", help="apply the antipode")
    common(p, need_input=True)
    p.set_defaults(func=cmd_antipode)

    p = sub.add_parser("primitives", help="basis of the pre-cuspidal subspace")
    common(p, need_n=True)
    p.set_defaults(func=cmd_primitives)

    p = sub.add_parser("witness", help="the irrational structure constant")
    common(p)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("verify", help="run verification suites")
    p.add_argument("suite", nargs="?", default="all",
                   choices=("all",) + ALL_SUITES)
    common(p)
    p.add_argument("--max-n", type=int, help="largest degree to check")
    p.add_argument("--n1", type=int)
    p.add_argument("--n2", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--all-indicators", action="store_true",
                   help="check every indicator pair instead of a sample")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

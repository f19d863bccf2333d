"""Command line front end: ``ratioref <subcommand> [options]``.

Results are printed as JSON on stdout (``sweep --csv`` prints CSV). Exact
values are written as ``"p/q"`` strings, surds as ``"p+q*sqrt(d)"`` and
floats with 15 significant digits. Exit status: 0 on success, 1 on a
domain or validation error (a JSON error object goes to stderr), 2 when
``verify`` finds a disagreement.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import sys

from . import composition, decision, meaning, multidim, oracle, penalty
from ._numeric import DEFAULT_RTOL, DomainError, PreconditionError, format_value, parse_scale
from .spaces import Finite, Interval, load_dictionary


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--penalty-a", default="1", help="penalty exponent a > 0")
    common.add_argument("--backend", choices=("rational", "float"), default="rational")
    common.add_argument("--tol", type=float, default=DEFAULT_RTOL, help="relative tie tolerance")
    common.add_argument("--seed", default=None, help="random seed (RATIOREF_SEED overrides)")
    common.add_argument("--allow-float", action="store_true",
                        help="accept JSON float scales in dictionary files")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    ap = _Parser(prog="ratioref", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def cmd(name, help_):
        return sub.add_parser(name, parents=[common], help=help_)

    p = cmd("eval", "evaluate the penalty J_a(x)")
    p.add_argument("--x", required=True)
    p = cmd("sublevel", "sublevel interval {J <= eps}")
    p.add_argument("--eps", required=True)
    p = cmd("mean", "meaning set over a 1-D dictionary")
    p.add_argument("--s", required=True)
    p.add_argument("--dict", required=True)
    p = cmd("mean-md", "meaning over a d-dimensional dictionary")
    p.add_argument("--s", required=True, help="comma separated scale vector")
    p.add_argument("--dict", required=True)
    p = cmd("mean-total", "minimize intrinsic + reference cost")
    p.add_argument("--s", required=True)
    p.add_argument("--dict", required=True)
    p = cmd("boundaries", "geometric-mean decision boundaries")
    p.add_argument("--dict", required=True)
    p = cmd("classify", "meaning cell of a ratio")
    p.add_argument("--x", "--s", dest="x", required=True)
    p.add_argument("--dict", required=True)
    p = cmd("sweep", "costs and cells over a log-spaced grid")
    p.add_argument("--dict", required=True)
    p.add_argument("--lo", default=None)
    p.add_argument("--hi", default=None)
    p.add_argument("--per-decade", type=int, default=512)
    p.add_argument("--csv", action="store_true")
    p = cmd("window", "scale windows for meanings")
    p.add_argument("kind", choices=("low-cost", "near-balance", "backbone"))
    p.add_argument("--s", default=None)
    p.add_argument("--eps", default=None)
    p.add_argument("--delta", default=None)
    p = cmd("capacity", "backbone capacity bound of a finite dictionary")
    p.add_argument("--dict", required=True)
    p.add_argument("--delta", required=True)
    p = cmd("mediate", "optimal mediator between two scales")
    p.add_argument("--a", required=True)
    p.add_argument("--c", required=True)
    p.add_argument("--dict", required=True)
    p = cmd("chain", "equal-log-increment k-step chain")
    p.add_argument("--a", required=True)
    p.add_argument("--c", required=True)
    p.add_argument("--k", required=True, type=int)
    p = cmd("product", "meaning of a pair over a product of dictionaries")
    p.add_argument("--s1", required=True)
    p.add_argument("--s2", required=True)
    p.add_argument("--dict", required=True)
    p.add_argument("--dict2", default=None, help="second factor (defaults to --dict)")
    p = cmd("is-symbol", "symbol predicate for an object id")
    p.add_argument("--s", required=True)
    p.add_argument("--id", required=True)
    p.add_argument("--dict", required=True)
    p = cmd("verify", "run the randomized oracle suite")
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--continuous-trials", type=int, default=1_000)
    return ap


class _Ctx:
    def __init__(self, args):
        self.args = args
        self.float = args.backend == "float"
        a = parse_scale(args.penalty_a)
        self.p = penalty.PenaltyParam(float(a) if self.float else a)
        self.tol = args.tol

    def num(self, text):
        v = parse_scale(text)
        return float(v) if self.float else v

    def out(self, v):
        if v is None:
            return None
        if isinstance(v, (list, tuple)):
            return [self.out(x) for x in v]
        if isinstance(v, str):
            return v
        if isinstance(v, float) and math.isinf(v):
            return "inf"
        if self.float:
            return format_value(float(v))
        return format_value(v)

    def dictionary(self, path):
        d = load_dictionary(path, allow_float=self.args.allow_float)
        if self.float:
            d = _floatify(d)
        return d


def _floatify(d):
    if isinstance(d, Finite):
        def f(s):
            return tuple(float(v) for v in s) if isinstance(s, tuple) else float(s)
        return Finite(tuple((i, f(s)) for i, s in d.items))
    if isinstance(d, Interval):
        return Interval(float(d.lo), float(d.hi))
    return d


def _meaning_json(ctx, r):
    if r.minimizers and isinstance(r.minimizers[0], str):
        mins = list(r.minimizers)
    else:
        mins = ctx.out(list(r.minimizers))
    out = {"minimizers": mins, "cost": ctx.out(r.optimal_cost)}
    out["margin"] = None if r.margin is None else ctx.out(r.margin)
    return out


def _cell_json(cell):
    return list(cell) if isinstance(cell, tuple) else cell


def _sweep(ctx, args):
    d = ctx.dictionary(args.dict)
    b = decision.boundaries(d)
    ys = [float(y) for y in b.scales]
    lo = float(parse_scale(args.lo)) if args.lo else min(ys) / 4
    hi = float(parse_scale(args.hi)) if args.hi else max(ys) * 4
    if not 0 < lo < hi:
        raise DomainError("sweep needs 0 < lo < hi")
    decades = math.log10(hi / lo)
    n = max(2, int(math.ceil(decades * args.per_decade)) + 1)
    rows = []
    for k in range(n):
        x = lo * 10 ** (decades * k / (n - 1))
        cell = decision.classify(x, b, ctx.tol)
        costs = oracle.scan_costs(x, d, ctx.p)
        rows.append((x, cell, meaning.margin_of(costs, ctx.tol), costs))
    ids = list(d.ids)
    if args.csv:
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["x", "cell", "margin"] + ids)
        for x, cell, m, costs in rows:
            cell_s = "-".join(map(str, cell)) if isinstance(cell, tuple) else str(cell)
            w.writerow([format_value(x), cell_s, format_value(m)]
                       + [format_value(float(c)) for c in costs])
        return None
    return {"ids": ids, "rows": [
        {"x": format_value(x), "cell": _cell_json(cell), "margin": format_value(m),
         "costs": [format_value(float(c)) for c in costs]} for x, cell, m, costs in rows]}


def _dispatch(ctx, args):
    c = args.command
    p, tol = ctx.p, ctx.tol
    if c == "eval":
        return {"J": ctx.out(penalty.evaluate(ctx.num(args.x), p))}
    if c == "sublevel":
        iv = penalty.sublevel(ctx.num(args.eps), p)
        return {"lo": ctx.out(iv.lo), "hi": ctx.out(iv.hi), "level": ctx.out(iv.level)}
    if c == "mean":
        return _meaning_json(ctx, meaning.mean(ctx.num(args.s), ctx.dictionary(args.dict), p, tol))
    if c == "mean-total":
        return _meaning_json(ctx, meaning.mean_total(ctx.num(args.s),
                                                     ctx.dictionary(args.dict), p, tol))
    if c == "mean-md":
        s = [ctx.num(v) for v in args.s.split(",")]
        r = multidim.mean_md(s, ctx.dictionary(args.dict), p, tol)
        out = _meaning_json(ctx, r)
        if r.log_minimizer:
            out["log_minimizer"] = [format_value(v) for v in r.log_minimizer]
            out["iterations"] = r.iterations
        return out
    if c == "boundaries":
        b = decision.boundaries(ctx.dictionary(args.dict))
        return {"ids": list(b.ids), "scales": ctx.out(b.scales),
                "boundaries": ctx.out(b.interior), "products": ctx.out(b.products)}
    if c == "classify":
        b = decision.boundaries(ctx.dictionary(args.dict))
        cell = decision.classify(ctx.num(args.x), b, tol)
        return {"cell": _cell_json(cell), "ids": list(decision.cell_ids(cell, b))}
    if c == "sweep":
        return _sweep(ctx, args)
    if c == "window":
        if args.kind == "low-cost":
            if args.s is None or args.eps is None:
                raise UsageError("window low-cost needs --s and --eps")
            w = meaning.low_cost_window(ctx.num(args.s), ctx.num(args.eps), p)
        elif args.kind == "near-balance":
            if args.eps is None:
                raise UsageError("window near-balance needs --eps")
            w = meaning.near_balance_window(ctx.num(args.eps), p)
        else:
            if args.delta is None:
                raise UsageError("window backbone needs --delta")
            w = meaning.backbone_window(ctx.num(args.delta), p)
        return {"lo": ctx.out(w.lo), "hi": ctx.out(w.hi)}
    if c == "capacity":
        return {"capacity": meaning.capacity_bound(ctx.dictionary(args.dict),
                                                   ctx.num(args.delta), p)}
    if c == "mediate":
        plan = composition.mediate(ctx.num(args.a), ctx.num(args.c),
                                   ctx.dictionary(args.dict), p, tol)
        return {"chosen": ctx.out(plan.chosen), "chosen_ids": list(plan.chosen_ids),
                "balance_point": ctx.out(plan.balance_point),
                "hop_costs": ctx.out(plan.hop_costs), "total": ctx.out(plan.total_cost),
                "direct": ctx.out(plan.direct_cost), "gain": ctx.out(plan.gain)}
    if c == "chain":
        plan = composition.chain(ctx.num(args.a), ctx.num(args.c), args.k, p)
        return {"steps": plan.steps, "ratios": ctx.out(plan.ratios),
                "per_step": ctx.out(plan.per_step_cost), "total": ctx.out(plan.total_cost)}
    if c == "product":
        d1 = ctx.dictionary(args.dict)
        d2 = ctx.dictionary(args.dict2) if args.dict2 else d1
        r1, r2 = composition.product_mean(ctx.num(args.s1), ctx.num(args.s2), d1, d2, p, tol)
        return {"first": _meaning_json(ctx, r1), "second": _meaning_json(ctx, r2),
                "total": ctx.out(r1.optimal_cost + r2.optimal_cost)}
    if c == "is-symbol":
        return {"symbol": meaning.is_symbol(ctx.num(args.s), args.id,
                                            ctx.dictionary(args.dict), p, tol)}
    if c == "verify":
        seed = oracle.seed_from_env(int(args.seed, 0) if args.seed else oracle.DEFAULT_SEED)
        results = oracle.run_verification(seed, args.trials, args.continuous_trials)
        for r in results:
            print(r.line(), file=sys.stderr)
        report = {"seed": seed, "passed": all(r.passed for r in results),
                  "checks": [{"name": r.name, "trials": r.trials, "failures": r.failures}
                             for r in results]}
        return report
    raise UsageError(f"unknown command {c!r}")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        ctx = _Ctx(args)
        result = _dispatch(ctx, args)
    except UsageError as exc:
        print(json.dumps({"error": "usage", "message": str(exc)}), file=sys.stderr)
        return 1
    except (DomainError, PreconditionError, KeyError, ValueError, OSError) as exc:
        kind = type(exc).__name__
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        print(json.dumps({"error": kind, "message": str(msg)}), file=sys.stderr)
        return 1
    if result is not None:
        print(json.dumps(result))
    if args.command == "verify" and not result["passed"]:
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())

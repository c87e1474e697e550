"""Command-line front end.

Reports are JSON with ``--json`` and CSV otherwise. JSON schema::

    {"function": str, "measures": {name: {"value": ..., "witness": ...}},
     "config": {...}, "timing_ms": float}

Exact rationals are written as ``"p/q"``. Exit status: 0 on success, 1 when
a check fails (violations, disagreement, failed golden values), 2 on usage
or cap errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import cheatsheet as cs
from .condense import condense_positive, laws_check, search_restrictions
from .core import BoolFun, BudgetExceeded, CapExceeded, TableFormatError, random_function, read_table
from .measures import canonical, measure_with_witness, to_json_value
from .reproduce import TARGETS

LAWS_CAP = 5
UC_LAWS_CAP = 4


class UsageError(Exception):
    pass


def _threads(args) -> int:
    if args.threads is not None:
        return args.threads
    return int(os.environ.get("BOOLCONDENSE_THREADS", "1"))


def load_function(spec: str) -> BoolFun:
    """A zoo spec such as ``modrub:k=4`` or a path to a truth-table file."""
    path = Path(spec)
    if path.is_file():
        f = read_table(path)
        f.name = str(path)
        return f
    from .zoo import parse_spec

    return parse_spec(spec)


def _emit(report: dict, as_json: bool, rows: list[list], out=None) -> None:
    out = out or sys.stdout
    if as_json:
        json.dump(report, out, indent=2, default=str)
        out.write("\n")
        return
    w = csv.writer(out, lineterminator="\n")
    for row in rows:
        w.writerow(row)


def cmd_measure(args) -> int:
    f = load_function(args.function)
    names = [canonical(m) for m in args.measures.split(",") if m.strip()]
    t0 = time.perf_counter()
    measures = {}
    for name in names:
        t1 = time.perf_counter()
        value, witness = measure_with_witness(name, f)
        measures[name] = {"value": to_json_value(value), "witness": witness,
                          "timing_ms": round(1000 * (time.perf_counter() - t1), 3)}
    report = {"function": f.name or args.function, "measures": measures,
              "config": {"n": f.n, "measures": names},
              "timing_ms": round(1000 * (time.perf_counter() - t0), 3)}
    rows = [["measure", "value"]] + [[k, v["value"]] for k, v in measures.items()]
    _emit(report, args.json, rows)
    return 0


def cmd_condense(args) -> int:
    f = load_function(args.function)
    name = canonical(args.measure)
    t0 = time.perf_counter()
    config = {"measure": name, "seed": args.seed}
    if args.search:
        if args.stars is None:
            raise UsageError("--search needs --stars")
        mode = "sampled" if args.sample else "exhaustive"
        config.update(mode=mode, stars=args.stars, samples=args.sample, budget=args.budget)
        res = search_restrictions(f, name, args.stars, mode=mode, samples=args.sample or 0,
                                  seed=args.seed, budget=args.budget, threads=_threads(args))
        witness = {"restriction": str(res.rho) if res.rho else None, "examined": res.examined,
                   "construction": "search"}
        value = res.best
    else:
        config.update(mode="constructive")
        r = condense_positive(f, name)
        witness = r.as_dict()
        value = r.restricted
    report = {"function": f.name or args.function,
              "measures": {name: {"value": to_json_value(value), "witness": witness}},
              "config": config, "timing_ms": round(1000 * (time.perf_counter() - t0), 3)}
    rows = [["measure", "restricted_value", "restriction", "construction"],
            [name, to_json_value(value), witness.get("restriction"), witness.get("construction")]]
    _emit(report, args.json, rows)
    return 0


def cmd_cheatsheet(args) -> int:
    p = cs.CsParams(args.k, args.t)
    rng = np.random.default_rng(args.seed)
    t0 = time.perf_counter()
    config = {"k": p.k, "t": p.t, "algorithm": args.algorithm, "seed": args.seed,
              "total_vars": p.total_vars}
    ok = True
    if args.algorithm == "plain":
        X = cs.random_cs_input(p, rng)
        oracle = cs.BitOracle(X)
        bit, tr = cs.cs_algorithm(p, oracle)
        expected = cs.cs_evaluate(p, X)
        ok = bit == expected
        witness = {"expected": expected, "agrees": ok}
    elif args.algorithm == "restricted":
        budget = cs.star_budget(p, args.c)
        stars = args.stars_budget if args.stars_budget is not None else int(budget)
        config.update(stars=stars, c=args.c)
        X = cs.random_cs_input(p, rng)
        rho = cs.random_restriction(p, X, stars, rng)
        oracle = cs.BitOracle(X)
        bit, tr = cs.cs_restricted_algorithm(p, rho, oracle, c=args.c)
        expected = cs.restricted_evaluate(p, rho, [X[i] for i in rho.stars])
        ok = bit == expected
        witness = {"expected": expected, "agrees": ok, "stars": rho.star_count}
    else:
        adv = cs.CsAdversary(p, check=True)
        bit, tr = cs.cs_algorithm(p, adv.oracle())
        commit = adv.committed_at
        before = adv.history if commit is None else adv.history[:commit - 1]
        consistent = all(len(h) == 2 for h in before)
        ok = tr.count >= p.t and consistent
        witness = {"committed_at": commit, "consistent": consistent, "at_least_t": tr.count >= p.t}
    if args.transcript:
        Path(args.transcript).write_text(tr.dump())
    witness["queries"] = tr.count
    report = {"function": f"cheatsheet:k={p.k},t={p.t}",
              "measures": {"verdict": {"value": bit, "witness": witness}},
              "config": config, "timing_ms": round(1000 * (time.perf_counter() - t0), 3)}
    rows = [["algorithm", "verdict", "queries", "ok"], [args.algorithm, bit, tr.count, int(ok)]]
    _emit(report, args.json, rows)
    return 0 if ok else 1


def _laws_one(job):
    n, seed, uc = job
    return seed, laws_check(random_function(n, seed), include_uc=uc)


def cmd_laws(args) -> int:
    if args.n > LAWS_CAP:
        raise CapExceeded(f"laws: arity {args.n} exceeds cap {LAWS_CAP}")
    uc = args.n <= UC_LAWS_CAP if args.uc is None else args.uc
    if uc and args.n > UC_LAWS_CAP:
        raise CapExceeded(f"laws with UC: arity {args.n} exceeds cap {UC_LAWS_CAP}")
    jobs = [(args.n, args.seed + i, uc) for i in range(args.count)]
    t0 = time.perf_counter()
    threads = _threads(args)
    if threads > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_laws_one, jobs, chunksize=16))
    else:
        results = [_laws_one(j) for j in jobs]
    bad = [{"seed": s, "violations": v} for s, v in results if v]
    report = {"function": f"random:n={args.n}",
              "measures": {"violations": {"value": len(bad), "witness": bad}},
              "config": {"n": args.n, "count": args.count, "seed": args.seed, "uc": uc},
              "timing_ms": round(1000 * (time.perf_counter() - t0), 3)}
    rows = [["n", "count", "violations"], [args.n, args.count, len(bad)]]
    _emit(report, args.json, rows)
    return 0 if not bad else 1


def cmd_reproduce(args) -> int:
    t0 = time.perf_counter()
    checks = TARGETS[args.target]()
    passed = all(c.passed for c in checks)
    if args.json:
        report = {"function": args.target,
                  "measures": {c.name: {"value": c.passed, "witness": c.detail} for c in checks},
                  "config": {"target": args.target},
                  "timing_ms": round(1000 * (time.perf_counter() - t0), 3)}
        _emit(report, True, [])
    else:
        for c in checks:
            print(c.line())
        print(f"{'PASS' if passed else 'FAIL'} {args.target}")
    return 0 if passed else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="boolcondense",
                                 description="Query-complexity measures and hardness condensation.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--json", action="store_true", help="JSON report instead of CSV")
        p.add_argument("--threads", type=int, default=None,
                       help="worker processes (default: $BOOLCONDENSE_THREADS or 1)")

    p = sub.add_parser("measure", help="compute measures of a function")
    p.add_argument("function", help="zoo spec (modrub:k=4, tribes:k=4, or:n=3, ...) or table file")
    p.add_argument("--measures", default="s,bs,fbs,C,deg")
    common(p)
    p.set_defaults(run=cmd_measure)

    p = sub.add_parser("condense", help="constructive condensation or restriction search")
    p.add_argument("function")
    p.add_argument("--measure", required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--constructive", action="store_true")
    g.add_argument("--search", action="store_true")
    p.add_argument("--stars", type=int)
    p.add_argument("--sample", type=int, default=None, help="sampled search with this many restrictions")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=1_000_000)
    common(p)
    p.set_defaults(run=cmd_condense)

    p = sub.add_parser("cheatsheet", help="run a cheat-sheet query algorithm")
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--t", type=int, default=8)
    p.add_argument("--algorithm", choices=("plain", "restricted", "adversary"), default="plain")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--stars-budget", type=int, default=None)
    p.add_argument("--c", type=float, default=8.0)
    p.add_argument("--transcript", help="write the query transcript to this file")
    common(p)
    p.set_defaults(run=cmd_cheatsheet)

    p = sub.add_parser("laws", help="check measure relations on random functions")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--uc", dest="uc", action="store_true", default=None)
    p.add_argument("--no-uc", dest="uc", action="store_false")
    common(p)
    p.set_defaults(run=cmd_laws)

    p = sub.add_parser("reproduce", help="golden desk-scale checks")
    p.add_argument("target", choices=sorted(TARGETS))
    common(p)
    p.set_defaults(run=cmd_reproduce)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except (CapExceeded, BudgetExceeded, TableFormatError, UsageError, KeyError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

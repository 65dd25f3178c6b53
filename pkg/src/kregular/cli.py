"""Command-line interface: ``kregular <command> [options]``.

Exit status is 0 when every requested check passes, 1 when a check fails,
2 for invalid arguments, 3 for a corrupt cache file and 4 when a threshold
scan is inconclusive.  Reports go to stdout (or ``--out``); wall-clock
timings are only included with ``--timing`` so reruns are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from collections import Counter
from dataclasses import asdict
from pathlib import Path

from . import __version__
from .arcs import BoundId, run_bound_suite
from .asymptotics import q_grid, write_q_grid_csv
from .errors import DomainError, InconclusiveError, IntegrityError, KRegularError
from .finite_check import (CONVENTIONS, TABLE_DELTAS, EffectiveParams, census, find_N,
                           inequality_check, minimize_N, nkt_rows, run_long_census,
                           stable_patterns, write_nkt_csv)
from .series import (d_table, enumerate_oracle, indivisible_count, k_regular_table, load_table,
                     partition_table, save_table, write_counts_csv)

CACHE_ENV = "KREGULAR_CACHE"
EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INTEGRITY, EXIT_INCONCLUSIVE = 0, 1, 2, 3, 4


def _int_range(text: str) -> range:
    """``"3"`` or ``"2:10"`` (inclusive)."""
    if ":" in text:
        lo, hi = text.split(":", 1)
        return range(int(lo), int(hi) + 1)
    return range(int(text), int(text) + 1)


def _float_grid(text: str) -> list[float]:
    """``"a:b:step"`` (inclusive) or a comma-separated list."""
    if text.count(":") == 2:
        lo, hi, step = (float(v) for v in text.split(":"))
        count = int(round((hi - lo) / step))
        return [round(lo + i * step, 10) for i in range(count + 1)]
    return [float(v) for v in text.split(",") if v]


def _cells(text: str | None):
    if text is None:
        return [(2, 2), (3, 2), (4, 3), (10, 2)]
    if text == "all":
        return sorted(TABLE_DELTAS)
    cells = []
    for part in text.split(";"):
        vals = part.split(",")
        cell = (int(vals[0]), int(vals[1])) + ((float(vals[2]),) if len(vals) > 2 else ())
        cells.append(cell)
    return cells


def _cache_dir(args) -> Path | None:
    path = args.cache or os.environ.get(CACHE_ENV)
    return Path(path) if path else None


def _cached_d_table(k, t, N, cache):
    if cache is None:
        return d_table(k, t, N, allow_large=True)
    cache.mkdir(parents=True, exist_ok=True)
    path = cache / f"d_k{k}_t{t}_N{N}.krtb"
    if path.exists():
        return load_table(path)
    tab = d_table(k, t, N, allow_large=True)
    save_table(tab, path)
    return tab


def _emit(args, text: str):
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _versioned(schema: str, payload: dict) -> dict:
    return {"schema": schema, "version": __version__, **payload}


# ---------------------------------------------------------------------------
# commands


def cmd_exact(args) -> int:
    if args.N < 0:
        raise DomainError("N must be >= 0")
    tab = _cached_d_table(args.k, args.t, args.N, _cache_dir(args))
    _emit(args, write_counts_csv(tab))
    return EXIT_OK


def cmd_figures(args) -> int:
    start = time.perf_counter()
    if args.figure == "q-table":
        cache = _cache_dir(args)
        tables = {k: _cached_d_table(k, 4, 10000, cache) for k in (3, 4)}
        rows = q_grid(tables)
        if args.format == "csv":
            _emit(args, write_q_grid_csv(rows))
        else:
            payload = {"rows": [{"k": k, "t": t, "r": r, "n": n, "Q": q}
                                for k, t, r, n, _, q in rows]}
            if args.timing:
                payload["seconds"] = round(time.perf_counter() - start, 3)
            _emit(args, _dump(_versioned("kregular.qgrid/1", payload)))
        return EXIT_OK
    results = nkt_rows(_cells(args.cells), convention=args.convention, strict=args.strict)
    if args.format == "csv":
        _emit(args, write_nkt_csv(results))
    else:
        payload = {"cells": [r.to_dict() for r in results]}
        if args.timing:
            payload["seconds"] = round(time.perf_counter() - start, 3)
        _emit(args, _dump(_versioned("kregular.nkt/1", payload)))
    return EXIT_OK if all(r.certificate.passed for r in results) else EXIT_FAIL


def _oracle_suite(nmax: int):
    failures = []
    checked = 0
    for k in range(2, 6):
        for t in range(2, 6):
            tab = d_table(k, t, nmax)
            for n in range(nmax + 1):
                checked += 1
                if tab.row(n) != enumerate_oracle(k, t, n):
                    failures.append({"check": "d_table", "k": k, "t": t, "n": n})
    for k in range(2, 7):
        pk = k_regular_table(k, 2 * nmax)
        for n in range(2 * nmax + 1):
            checked += 1
            if pk[n] != indivisible_count(k, n):
                failures.append({"check": "p_k", "k": k, "n": n})
    checked += 1
    if partition_table(100)[100] != 190569292:
        failures.append({"check": "p(100)"})
    return checked, failures


def cmd_validate(args) -> int:
    start = time.perf_counter()
    if args.suite == "arc-bounds":
        ids = [BoundId(b) for b in args.bound] if args.bound else None
        rep = run_bound_suite(args.seed, args.count, ids)
        per = Counter(i.bound_id.value if hasattr(i.bound_id, "value") else str(i.bound_id)
                      for i in rep.instances)
        payload = {"seed": rep.seed, "count": rep.count, "passed": rep.passed,
                   "per_bound": dict(per), "failures": [asdict(f) for f in rep.failures]}
        if args.full:
            payload["instances"] = [asdict(i) for i in rep.instances]
        ok = rep.passed
        schema = "kregular.bound-suite/1"
    elif args.suite == "census":
        rep = census(range(2, 11), range(2, 11), args.nmax, workers=args.workers)
        payload = rep.to_dict()
        payload.pop("schema")
        ok = rep.passed
        schema = "kregular.check-report/1"
    else:
        checked, failures = _oracle_suite(args.nmax)
        payload = {"nmax": args.nmax, "checked": checked, "failures": failures,
                   "passed": not failures}
        ok = not failures
        schema = "kregular.oracle/1"
    if args.timing:
        payload["seconds"] = round(time.perf_counter() - start, 3)
    _emit(args, json.dumps(_versioned(schema, payload), indent=1, sort_keys=True, default=str) + "\n")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_find_n(args) -> int:
    res = find_N(args.k, args.t, args.delta, args.scan_cap, convention=args.convention,
                 strict=args.strict)
    _emit(args, _dump(_versioned("kregular.find-n/1", res.to_dict())))
    return EXIT_OK if res.certificate.passed else EXIT_FAIL


def cmd_min_n(args) -> int:
    grid = _float_grid(args.grid) if args.grid else None
    res = minimize_N(args.k, args.t, grid, refine=not args.no_refine,
                     convention=args.convention, strict=args.strict)
    _emit(args, _dump(_versioned("kregular.min-n/1", res.to_dict())))
    return EXIT_OK if res.best.certificate.passed else EXIT_FAIL


def cmd_inequality(args) -> int:
    b = inequality_check(EffectiveParams(args.k, args.t, args.r, args.delta, args.n),
                         args.convention, args.strict)
    _emit(args, _dump(_versioned("kregular.inequality/1", b.to_dict())))
    return EXIT_OK if b.holds else EXIT_FAIL


def cmd_census(args) -> int:
    rep = census(_int_range(args.k), _int_range(args.t), args.nmax, workers=args.workers)
    _emit(args, rep.to_json(include_runtime=args.timing) + "\n")
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_census_long(args) -> int:
    rep = run_long_census(args.k, args.t, args.nmax, args.checkpoint, interval=args.interval,
                          chunk=args.chunk)
    _emit(args, rep.to_json(include_runtime=args.timing) + "\n")
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_patterns(args) -> int:
    rep = stable_patterns(_int_range(args.t))
    _emit(args, _dump(_versioned("kregular.patterns/1", rep.to_dict())))
    return EXIT_OK if rep.all_equal else EXIT_FAIL


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kregular",
                                     description="k-regular partition counts and finite checks")
    parser.add_argument("--version", action="version", version=f"kregular {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--cache", help=f"table cache directory (default ${CACHE_ENV})")
    common.add_argument("--timing", action="store_true", help="include wall-clock timings")
    bound = argparse.ArgumentParser(add_help=False)
    bound.add_argument("--convention", choices=CONVENTIONS, default="reference")
    bound.add_argument("--strict", action="store_true",
                       help="audit constants (2*Delta contour length in E3, derived tail polynomial)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("exact", parents=[common], help="exact D_k(r,t;n) table as CSV")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("figures", parents=[common, bound], help="Q-ratio grid or N_k(t) cells")
    p.add_argument("--figure", choices=("q-table", "nkt-table"), required=True)
    p.add_argument("--cells", help='"k,t[,delta];..." or "all" (default: four spot cells)')
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_figures)

    p = sub.add_parser("validate", parents=[common], help="run a property suite")
    p.add_argument("--suite", choices=("arc-bounds", "census", "oracle"), required=True)
    p.add_argument("--seed", type=int, default=7)
    p.add_argument("--count", type=int, default=500)
    p.add_argument("--bound", action="append", choices=[b.value for b in BoundId])
    p.add_argument("--nmax", type=int, default=300)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--full", action="store_true", help="include every instance in the report")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("find-n", parents=[common, bound], help="N_k(t, delta) with certificate")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--scan-cap", type=int)
    p.set_defaults(func=cmd_find_n)

    p = sub.add_parser("min-n", parents=[common, bound], help="minimise N_k(t, delta) over delta")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--grid", help='"lo:hi:step" or "d1,d2,..." (default: step 0.05 above delta_min)')
    p.add_argument("--no-refine", action="store_true")
    p.set_defaults(func=cmd_min_n)

    p = sub.add_parser("inequality", parents=[common, bound], help="one inequality breakdown")
    for name in ("k", "t", "r", "n"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.set_defaults(func=cmd_inequality)

    p = sub.add_parser("census", parents=[common], help="exact counterexample census")
    p.add_argument("--k", default="2:10", help="k or lo:hi")
    p.add_argument("--t", default="2:10", help="t or lo:hi")
    p.add_argument("--nmax", type=int, default=300)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("census-long", parents=[common], help="checkpointed census of one (k, t)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--checkpoint", required=True, help="checkpoint directory (resumed if present)")
    p.add_argument("--interval", type=float, default=60.0, help="seconds between checkpoints")
    p.add_argument("--chunk", type=int, default=250)
    p.set_defaults(func=cmd_census_long)

    p = sub.add_parser("patterns", parents=[common], help="stable equality families")
    p.add_argument("--t", default="4:10")
    p.set_defaults(func=cmd_patterns)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except IntegrityError as exc:
        print(json.dumps({"error": "integrity", "message": str(exc), "header": exc.header},
                         default=str), file=sys.stderr)
        return EXIT_INTEGRITY
    except InconclusiveError as exc:
        print(json.dumps({"error": "inconclusive", "message": str(exc)}), file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except (KRegularError, ValueError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

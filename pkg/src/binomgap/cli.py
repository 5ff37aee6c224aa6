"""Command-line interface: every operation of the library as a subcommand.

Output is deterministic for a fixed configuration: records are emitted in a
fixed field order and sorted.  Record-emitting commands take ``--format``
with three choices: an aligned table (default), JSON with one object per
line, or CSV with a fixed header row.  Exit status is 0 on success, 1 when
a verification or reproduction check fails, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .corpus import load_corpus, verify_corpus
from .curves import (
    bounded_search,
    bounded_search_25,
    map_point,
    verify_all_transforms,
)
from .equalindex import collision_search, solve_equal_index, solve_equal_index_k2
from .polyidentity import (
    KNOWN_IDENTITIES,
    solve_k22,
    triangular_reduce,
    verify_cubic_pair_identity,
    verify_poly_identity,
)
from .reproduce import SCENARIOS, run_all
from .sieve import SieveQuery, congruence_witness, scan_unsolvable

FORMATS = ("table", "json", "csv")

Row = Dict[str, object]


@dataclass(frozen=True)
class RunConfig:
    """Validated global settings shared by the subcommand handlers."""

    fmt: str
    workers: int
    corpus_path: Optional[str]

    def __post_init__(self) -> None:
        if self.fmt not in FORMATS:
            raise ValueError(f"unknown format {self.fmt!r}")
        if self.workers < 1:
            raise ValueError("worker count must be positive")


def _emit(rows: Sequence[Row], headers: Sequence[str], fmt: str,
          out=None) -> None:
    """Write rows in the chosen format; field order is fixed by `headers`."""
    out = out or sys.stdout
    if fmt == "json":
        for row in rows:
            print(json.dumps({h: row[h] for h in headers}), file=out)
        return
    cells = [[_cell(row[h]) for h in headers] for row in rows]
    if fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(headers)
        writer.writerows(cells)
        return
    widths = [max(len(h), *(len(r[i]) for r in cells)) if cells else len(h)
              for i, h in enumerate(headers)]
    print("  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip(),
          file=out)
    for row in cells:
        print("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip(),
              file=out)


def _cell(value: object) -> str:
    if isinstance(value, (list, tuple)):
        return " ".join(str(v) for v in value)
    if isinstance(value, bool):
        return "yes" if value else "no"
    return str(value)


def _cmd_verify_corpus(args: argparse.Namespace, config: RunConfig) -> int:
    corpus = load_corpus(config.corpus_path)
    report = verify_corpus(corpus.records)
    rows = [{"k": r.k, "l": r.l, "d": r.d, "n": r.n, "m": r.m,
             "source": r.source, "ok": ok}
            for r, ok in sorted(report.results, key=lambda p: p[0].key())]
    if config.fmt != "table":
        _emit(rows, ("k", "l", "d", "n", "m", "source", "ok"), config.fmt)
    else:
        for source, count in report.counts:
            print(f"{source}: {count} records")
        if report.all_ok:
            print(f"all {len(rows)} records verified")
    if not report.all_ok:
        for rec in report.failures:
            print(f"FAILED: {rec.key()} [{rec.source}]", file=sys.stderr)
        return 1
    return 0


def _cmd_sieve_scan(args: argparse.Namespace, config: RunConfig) -> int:
    report = scan_unsolvable(args.kmax, args.lmax, args.pmax,
                             workers=config.workers)
    rows = [{"k": k, "l": l, "p": p, "unsolvable": list(ds)}
            for k, l, p, ds in report.entries]
    _emit(rows, ("k", "l", "p", "unsolvable"), config.fmt)
    return 0


def _cmd_sieve_check(args: argparse.Namespace, config: RunConfig) -> int:
    modulus = args.p ** args.exp
    query = SieveQuery(k=args.k, l=args.l, d=args.d, modulus=modulus)
    witness = congruence_witness(query)
    if witness is None:
        print(f"unsolvable: binom(n,{args.k}) = binom(m,{args.l}) + {args.d} "
              f"has no solutions mod {modulus}")
    else:
        n, m = witness
        print(f"solvable mod {modulus}: n = {n}, m = {m}")
    return 0


def _cmd_equal_index(args: argparse.Namespace, config: RunConfig) -> int:
    if args.k == 2:
        pairs = solve_equal_index_k2(args.d)
        if not args.all_integers:
            pairs = {(n, m) for n, m in pairs if n > m >= 2}
    else:
        pairs = solve_equal_index(args.k, args.d,
                                  canonical=not args.all_integers)
    rows = [{"k": args.k, "d": args.d, "n": n, "m": m}
            for n, m in sorted(pairs)]
    _emit(rows, ("k", "d", "n", "m"), config.fmt)
    return 0


def _cmd_collisions(args: argparse.Namespace, config: RunConfig) -> int:
    report = collision_search(args.k, args.n_max, args.min_mult,
                              workers=config.workers)
    rows = [{"k": args.k, "d": d, "n": n, "m": m}
            for d, pairs in sorted(report.as_dict().items())
            for n, m in pairs]
    _emit(rows, ("k", "d", "n", "m"), config.fmt)
    return 0


def _cmd_curves_verify(args: argparse.Namespace, config: RunConfig) -> int:
    certificates = verify_all_transforms()
    rows = [{"k": c.kl[0], "l": c.kl[1], "shape": c.shape, "scale": c.scale,
             "certified": c.certified, "correction": c.correction or ""}
            for c in certificates]
    _emit(rows, ("k", "l", "shape", "scale", "certified", "correction"),
          config.fmt)
    return 0


def _cmd_curves_search(args: argparse.Namespace, config: RunConfig) -> int:
    kl = (args.k, args.l)
    if kl == (2, 5):
        bound = args.m_bound if args.m_bound is not None else 400
        records = bounded_search_25(args.d, m_range=(-bound, bound))
    else:
        records = bounded_search(kl, args.d, m_bound=args.m_bound,
                                 workers=config.workers)
    rows = [{"k": r.k, "l": r.l, "d": r.d, "n": r.n, "m": r.m}
            for r in sorted(records, key=lambda r: (r.n, r.m))]
    _emit(rows, ("k", "l", "d", "n", "m"), config.fmt)
    return 0


def _cmd_curves_map(args: argparse.Namespace, config: RunConfig) -> int:
    x, y = map_point((args.k, args.l), args.d, (args.m, args.n))
    rows = [{"k": args.k, "l": args.l, "d": args.d, "m": args.m, "n": args.n,
             "X": x, "Y": y}]
    _emit(rows, ("k", "l", "d", "m", "n", "X", "Y"), config.fmt)
    return 0


def _cmd_poly_verify(args: argparse.Namespace, config: RunConfig) -> int:
    rows: List[Row] = [{"identity": name, "k": sol.k,
                        "ok": verify_poly_identity(sol)}
                       for name, sol in KNOWN_IDENTITIES]
    rows.append({"identity": "paired-cubics-op", "k": 3,
                 "ok": verify_cubic_pair_identity()})
    if args.all:
        for k in (3, 5, 7):
            result = solve_k22(k)
            for i, sol in enumerate(result.solutions, 1):
                rows.append({"identity": f"solve-k{k}-{i}", "k": k,
                             "ok": verify_poly_identity(sol)})
    _emit(rows, ("identity", "k", "ok"), config.fmt)
    return 0 if all(row["ok"] for row in rows) else 1


def _poly_rows(result) -> Tuple[List[Row], Sequence[str]]:
    sign = "plus" if result.sign > 0 else "minus"
    rows: List[Row] = []
    for sol in sorted(result.solutions,
                      key=lambda s: tuple(map(str, s.f2.coeffs))):
        rows.append({
            "k": sol.k,
            "sign": sign,
            "f1": [str(c) for c in sol.f1.coeffs],
            "f2": [str(c) for c in sol.f2.coeffs],
        })
    return rows, ("k", "sign", "f1", "f2")


def _cmd_poly_solve(args: argparse.Namespace, config: RunConfig) -> int:
    sign = 1 if args.sign == "plus" else -1
    if args.deg2:
        system = triangular_reduce(args.k, sign=sign, f0_degree=2)
        print(f"eliminated {args.k} leading coefficients; residual system "
              f"has {len(system.residual)} polynomials in "
              f"{', '.join(system.vars)}")
        return 0
    result = solve_k22(args.k, sign=sign)
    if result.certificate is not None:
        cert = result.certificate
        print(f"no solutions: reduced basis ({cert.basis_size} elements, "
              f"orders {'+'.join(result.orders)}) contains t^{cert.exponent}, "
              f"forcing t = 0")
        return 0
    rows, headers = _poly_rows(result)
    _emit(rows, headers, config.fmt)
    if config.fmt == "table":
        note = "coefficients ascending; one representative per x -> 1-x orbit"
        print(note)
    return 0


def _cmd_reproduce_all(args: argparse.Namespace, config: RunConfig) -> int:
    names = args.only.split(",") if args.only else None
    results = run_all(names=names, workers=config.workers,
                      corpus_path=config.corpus_path)
    if config.fmt == "table":
        for r in results:
            stamp = f" [{r.elapsed:.1f}s]" if args.timings else ""
            print(f"{'PASS' if r.passed else 'FAIL'} {r.name}{stamp}: "
                  f"{r.detail}")
        passed = sum(r.passed for r in results)
        print(f"{passed}/{len(results)} scenarios passed")
    else:
        rows: List[Row] = [{"scenario": r.name, "passed": r.passed,
                            "detail": r.detail} for r in results]
        if args.timings:
            for row, r in zip(rows, results):
                row["elapsed"] = round(r.elapsed, 1)
            _emit(rows, ("scenario", "passed", "detail", "elapsed"),
                  config.fmt)
        else:
            _emit(rows, ("scenario", "passed", "detail"), config.fmt)
    return 0 if all(r.passed for r in results) else 1


def _build_parser() -> argparse.ArgumentParser:
    # global options live on a parent parser shared with every leaf
    # subcommand, so they are accepted both before and after the subcommand;
    # SUPPRESS keeps an unset flag from clobbering one set at the other level
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS,
                        default=argparse.SUPPRESS,
                        help="output format for record-emitting commands")
    common.add_argument("--workers", type=int, default=argparse.SUPPRESS,
                        metavar="N",
                        help="parallel workers (default: machine parallelism)")
    common.add_argument("--corpus", metavar="PATH",
                        default=argparse.SUPPRESS,
                        help="alternate solution-corpus file")
    parser = argparse.ArgumentParser(
        prog="binomgap",
        parents=[common],
        description="Exact solvers, sieves and verifiers for the equation "
                    "binom(n,k) = binom(m,l) + d.")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("verify-corpus", parents=[common],
                   help="check every bundled solution record exactly")

    sieve = sub.add_parser("sieve", help="congruence sieve")
    sieve_sub = sieve.add_subparsers(dest="subcommand", required=True)
    scan = sieve_sub.add_parser("scan", parents=[common],
                                help="tabulate unsolvable residues")
    scan.add_argument("--kmax", type=int, required=True)
    scan.add_argument("--lmax", type=int, required=True)
    scan.add_argument("--pmax", type=int, required=True)
    check = sieve_sub.add_parser("check", parents=[common],
                                 help="test one congruence")
    check.add_argument("--k", type=int, required=True)
    check.add_argument("--l", type=int, required=True)
    check.add_argument("--d", type=int, required=True)
    check.add_argument("--p", type=int, required=True)
    check.add_argument("--exp", type=int, default=1,
                       help="use modulus p^exp (default 1)")

    equal = sub.add_parser("equal-index", parents=[common],
                           help="solve binom(n,k) = binom(m,k) + d")
    equal.add_argument("--k", type=int, required=True)
    equal.add_argument("--d", type=int, required=True)
    equal.add_argument("--all-integers", action="store_true",
                       help="report every integer pair, not only n > m >= k")

    coll = sub.add_parser("collisions", parents=[common],
                          help="repeated differences of binomials")
    coll.add_argument("--k", type=int, required=True)
    coll.add_argument("--n-max", type=int, required=True)
    coll.add_argument("--min-mult", type=int, required=True)

    curves = sub.add_parser("curves", help="curve models and searches")
    curves_sub = curves.add_subparsers(dest="subcommand", required=True)
    curves_sub.add_parser("verify", parents=[common],
                          help="certify the curve models")
    csearch = curves_sub.add_parser("search", parents=[common],
                                    help="bounded solution search")
    csearch.add_argument("--k", type=int, required=True)
    csearch.add_argument("--l", type=int, required=True)
    csearch.add_argument("--d", type=int, required=True)
    csearch.add_argument("--m-bound", type=int, default=None)
    cmap = curves_sub.add_parser("map", parents=[common],
                                 help="map a solution to its curve")
    cmap.add_argument("--k", type=int, required=True)
    cmap.add_argument("--l", type=int, required=True)
    cmap.add_argument("--d", type=int, required=True)
    cmap.add_argument("--m", type=int, required=True)
    cmap.add_argument("--n", type=int, required=True)

    poly = sub.add_parser("poly", help="polynomial-solution machinery")
    poly_sub = poly.add_subparsers(dest="subcommand", required=True)
    pverify = poly_sub.add_parser("verify", parents=[common],
                                  help="check the named identities")
    pverify.add_argument("--all", action="store_true",
                         help="also re-derive and verify the k=3,5,7 solutions")
    psolve = poly_sub.add_parser("solve", parents=[common],
                                 help="solve binom(f1,k) +/- binom(x,2) = binom(f2,2)")
    psolve.add_argument("--k", type=int, required=True)
    psolve.add_argument("--sign", choices=("plus", "minus"), default="plus")
    psolve.add_argument("--deg2", action="store_true",
                        help="run the degree-2 middle-term elimination only")

    rep = sub.add_parser("reproduce-all", parents=[common],
                         help="re-run every reproduction scenario")
    rep.add_argument("--only", default=None, metavar="NAMES",
                     help="comma-separated scenario subset: "
                          + ", ".join(name for name, _ in SCENARIOS))
    rep.add_argument("--timings", action="store_true",
                     help="include wall-clock times (non-deterministic output)")
    return parser


_HANDLERS = {
    ("verify-corpus", None): _cmd_verify_corpus,
    ("sieve", "scan"): _cmd_sieve_scan,
    ("sieve", "check"): _cmd_sieve_check,
    ("equal-index", None): _cmd_equal_index,
    ("collisions", None): _cmd_collisions,
    ("curves", "verify"): _cmd_curves_verify,
    ("curves", "search"): _cmd_curves_search,
    ("curves", "map"): _cmd_curves_map,
    ("poly", "verify"): _cmd_poly_verify,
    ("poly", "solve"): _cmd_poly_solve,
    ("reproduce-all", None): _cmd_reproduce_all,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    workers = getattr(args, "workers", None)
    if workers is None:
        workers = os.cpu_count() or 1
    try:
        config = RunConfig(fmt=getattr(args, "format", "table"),
                           workers=workers,
                           corpus_path=getattr(args, "corpus", None))
    except ValueError as exc:
        parser.error(str(exc))
    handler = _HANDLERS[(args.command, getattr(args, "subcommand", None))]
    try:
        return handler(args, config)
    except ValueError as exc:
        parser.error(str(exc))
    except ArithmeticError as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

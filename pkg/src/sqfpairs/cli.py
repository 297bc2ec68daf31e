"""Command-line front end.

Subcommands: count (exact S(H) by one or both routes), lambda (the
circle exponential sum by every applicable evaluator), constant (the
Euler product with its tail bound), scan (the error-term ladder with a
fitted exponent) and verify (the cross-oracle property suites).

Exit codes: 0 success, 1 usage error, 2 memory budget exceeded,
3 verification failure (including disagreement between evaluators).
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys

from . import asymptotic, counting, lambdasums, verify
from .lambdasums import LAMBDA_TOLERANCE
from .ntcore import BudgetError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_BUDGET = 2
EXIT_VERIFICATION = 3


@dataclasses.dataclass
class RunConfig:
    command: str
    H: int | None = None
    q: int | None = None
    n: int | None = None
    m: int | None = None
    P: int | None = None
    H_ladder: list[int] | None = None
    method: str = "both"
    output_format: str = "text"
    threads: int = 1
    memory_budget: int | None = None
    seed: int = verify.DEFAULT_SEED
    suites: list[str] | None = None


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors; remap to 1 so that 2
    # stays reserved for budget exhaustion.
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sqfpairs", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output-format", choices=("text", "csv", "json"), default="text")
    common.add_argument("--threads", type=int, default=None,
                        help="worker threads (default: SQFPAIRS_THREADS or 1)")
    common.add_argument("--memory-budget", type=int, default=None,
                        help="sieve budget in bytes (default: SQFPAIRS_MEMORY_BUDGET or 2 GiB)")

    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_count = sub.add_parser("count", parents=[common], help="exact S(H)")
    p_count.add_argument("--H", type=int, required=True)
    p_count.add_argument("--method", choices=("value-sieve", "mobius-identity", "both"),
                         default="both")

    p_lambda = sub.add_parser("lambda", parents=[common],
                              help="circle sum by all applicable evaluators")
    p_lambda.add_argument("--q", type=int, required=True)
    p_lambda.add_argument("--n", type=int, required=True)
    p_lambda.add_argument("--m", type=int, required=True)

    p_const = sub.add_parser("constant", parents=[common], help="Euler product constant")
    p_const.add_argument("--P", type=int, required=True)

    p_scan = sub.add_parser("scan", parents=[common], help="error-term ladder")
    p_scan.add_argument("--H-ladder", type=_int_list, required=True,
                        help="comma-separated increasing H values")
    p_scan.add_argument("--P", type=int, default=10**5)

    p_verify = sub.add_parser("verify", parents=[common], help="cross-oracle suites")
    p_verify.add_argument("--suite", action="append", dest="suites", metavar="NAME",
                          help="run only this suite (repeatable); default: all")
    p_verify.add_argument("--seed", type=int, default=verify.DEFAULT_SEED)
    p_verify.add_argument("--list", action="store_true", help="list suite names and exit")
    return parser


def _config_from_args(args) -> RunConfig:
    threads = args.threads
    if threads is None:
        threads = int(os.environ.get("SQFPAIRS_THREADS", "1"))
    if threads < 1:
        raise ValueError(f"threads must be positive, got {threads}")
    return RunConfig(
        command=args.command,
        H=getattr(args, "H", None),
        q=getattr(args, "q", None),
        n=getattr(args, "n", None),
        m=getattr(args, "m", None),
        P=getattr(args, "P", None),
        H_ladder=getattr(args, "H_ladder", None),
        method=getattr(args, "method", "both"),
        output_format=args.output_format,
        threads=threads,
        memory_budget=getattr(args, "memory_budget", None),
        seed=getattr(args, "seed", verify.DEFAULT_SEED),
        suites=getattr(args, "suites", None),
    )


def _emit_reports_csv(reports):
    print("H,S,method,elapsed_seconds")
    for r in reports:
        print(f"{r.H},{r.S},{r.method},{r.elapsed!r}")


def _cmd_count(cfg: RunConfig) -> int:
    methods = ("value-sieve", "mobius-identity") if cfg.method == "both" else (cfg.method,)
    reports = []
    for method in methods:
        if method == "value-sieve":
            reports.append(counting.count_pairs_direct(
                cfg.H, threads=cfg.threads, memory_budget=cfg.memory_budget))
        else:
            reports.append(counting.count_pairs_mobius(cfg.H))
    if cfg.output_format == "json":
        print(json.dumps([dataclasses.asdict(r) for r in reports]))
    elif cfg.output_format == "csv":
        _emit_reports_csv(reports)
    else:
        for r in reports:
            print(f"S({r.H}) = {r.S}  [{r.method}, {r.elapsed:.3f}s]")
    if len(reports) == 2 and reports[0].S != reports[1].S:
        print(f"MISMATCH: value-sieve {reports[0].S} != mobius-identity {reports[1].S}",
              file=sys.stderr)
        return EXIT_VERIFICATION
    return EXIT_OK


def _cmd_lambda(cfg: RunConfig) -> int:
    q, n, m = cfg.q, cfg.n, cfg.m
    values = [("direct", lambdasums.lambda_direct(q, n, m))]
    if q % 2 == 1:
        values.append(("fast-odd", lambdasums.lambda_fast_odd(q, n, m)))
    if q % 8 != 0:
        values.append(("any", lambdasums.lambda_any(q, n, m)))
    ref = values[0][1]
    agree = all(abs(v - ref) <= LAMBDA_TOLERANCE * q for _, v in values)
    if cfg.output_format == "json":
        print(json.dumps({
            "q": q, "n": n, "m": m,
            "evaluations": [{"evaluator": name, "re": v.real, "im": v.imag}
                            for name, v in values],
            "agree": agree,
        }))
    elif cfg.output_format == "csv":
        print("evaluator,re,im")
        for name, v in values:
            print(f"{name},{v.real!r},{v.imag!r}")
        print(f"# agree={str(agree).lower()}")
    else:
        for name, v in values:
            print(f"lambda({q};{n},{m}) = {v.real:.9f} + {v.imag:.9f}i  [{name}]")
        print(f"agreement: {'yes' if agree else 'NO'}")
    return EXIT_OK if agree else EXIT_VERIFICATION


def _cmd_constant(cfg: RunConfig) -> int:
    est = asymptotic.constant_c(cfg.P)
    if cfg.output_format == "json":
        print(json.dumps(dataclasses.asdict(est)))
    elif cfg.output_format == "csv":
        print("cutoff,value,tail_bound")
        print(f"{est.cutoff},{est.value!r},{est.tail_bound!r}")
    else:
        print(f"c = {est.value:.9f} (primes up to {est.cutoff}, "
              f"log-tail bound {est.tail_bound:.3e})")
    return EXIT_OK


def _cmd_scan(cfg: RunConfig) -> int:
    result = asymptotic.error_scan(cfg.H_ladder, cfg.P, threads=cfg.threads,
                                   memory_budget=cfg.memory_budget)
    alpha = result.alpha
    if cfg.output_format == "json":
        print(json.dumps({
            "rows": [dataclasses.asdict(r) for r in result.rows],
            "alpha": alpha,
            "c": result.c,
            "P": result.cutoff,
            "excluded": result.excluded,
        }))
    elif cfg.output_format == "csv":
        print("H,S,E,elapsed_seconds")
        for r in result.rows:
            print(f"{r.H},{r.S},{r.E!r},{r.elapsed!r}")
        print(f"# alpha={alpha!r},c={result.c!r},P={result.cutoff}")
    else:
        print(f"{'H':>8} {'S':>14} {'E':>14} {'elapsed':>9}")
        for r in result.rows:
            print(f"{r.H:>8} {r.S:>14} {r.E:>14.1f} {r.elapsed:>8.2f}s")
        print(f"alpha = {alpha if alpha is not None else 'n/a (fewer than 4 usable rows)'}"
              f", c = {result.c:.9f} (P = {result.cutoff})")
        if result.excluded:
            print(f"excluded from fit (E = 0): {result.excluded}")
    return EXIT_OK


def _cmd_verify(cfg: RunConfig, list_only=False) -> int:
    if list_only:
        for name in verify.ALL_SUITES:
            print(name)
        return EXIT_OK
    results = verify.run_suites(cfg.suites, seed=cfg.seed, threads=cfg.threads)
    if cfg.output_format == "json":
        print(json.dumps([dataclasses.asdict(r) for r in results]))
    elif cfg.output_format == "csv":
        print("suite,ok,checked,elapsed_seconds")
        for r in results:
            print(f"{r.name},{str(r.ok).lower()},{r.checked},{r.elapsed!r}")
    else:
        for r in results:
            print(r.line())
        passed = sum(r.ok for r in results)
        print(f"{passed}/{len(results)} suites passed")
    return EXIT_OK if all(r.ok for r in results) else EXIT_VERIFICATION


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse raises on usage errors and --help
        code = exc.code
        return EXIT_OK if code in (None, 0) else EXIT_USAGE
    try:
        cfg = _config_from_args(args)
        if args.command == "count":
            return _cmd_count(cfg)
        if args.command == "lambda":
            return _cmd_lambda(cfg)
        if args.command == "constant":
            return _cmd_constant(cfg)
        if args.command == "scan":
            return _cmd_scan(cfg)
        return _cmd_verify(cfg, list_only=getattr(args, "list", False))
    except BudgetError as exc:
        print(f"sqfpairs: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        print(f"sqfpairs: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()

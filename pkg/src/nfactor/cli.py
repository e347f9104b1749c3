"""``nfactor`` command line.

Exit codes: 0 success, 1 verification failure, 2 usage or configuration
error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from typing import Optional

from . import __version__
from .cache import cache_from_env
from .closedform import digital_P, digital_P2, digital_threshold, fib_P, fib_P1, fib_P2
from .complexity import (
    ComplexityCell,
    ScanPolicy,
    cells_from_counts,
    complexity_row,
    enumerate_factors,
    enumerate_new_factors,
    shift_extrapolate,
    shift_threshold,
)
from .errors import BudgetExceeded, NeedsBootstrap, NFactorError, UnsupportedSpec
from .sequences import FIBONACCI, BlockClass, DigitalSpec, phi, sequence_window
from .verify import SUITES, run_suite
from .words import parse_block

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
CSV_HEADER = ["n", "N", "P", "P1", "P2", "method", "bound"]

log = logging.getLogger("nfactor")


class UsageError(NFactorError):
    pass


def parse_range(text: str) -> range:
    """``"3"`` or ``"1..5"`` (inclusive)."""
    try:
        if ".." in text:
            lo, hi = text.split("..")
            r = range(int(lo), int(hi) + 1)
        else:
            r = range(int(text), int(text) + 1)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {text!r}; use N or LO..HI") from None
    if not len(r):
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return r


def build_spec(args):
    if args.seq == "fib":
        return FIBONACCI
    if args.base is None or args.block is None:
        raise UsageError("digital sequences need --base and --block")
    return DigitalSpec(args.base, parse_block(args.block, args.base))


def build_policy(args) -> ScanPolicy:
    return ScanPolicy(prefix_budget=args.prefix_budget, digital_method=args.digital_method,
                      max_budget=args.scan_budget, workers=args.workers)


# ---------------------------------------------------------------------------
# commands


def cmd_gen(spec, count: int) -> str:
    if count < 0:
        raise UsageError("--terms must be >= 0")
    return " ".join(str(x) for x in sequence_window(spec, 0, count))


def _fib_formula(n: int, N: int) -> tuple[int, Optional[int], Optional[int]]:
    P = fib_P(n, N)
    if n >= 2 and N >= phi(n):
        P1 = fib_P1(n, N)
    else:
        P1 = P - (fib_P(n, N - 1) if N >= 1 else 0)
    P2 = fib_P2(n, N) if n >= 3 and N >= phi(n) + 1 else None
    return P, P1, P2


def _digital_formula(spec: DigitalSpec, n: int, N: int, init) -> tuple[int, Optional[int], Optional[int]]:
    M = digital_threshold(spec, n)
    if init is None:
        raise NeedsBootstrap(f"closed form for {spec.label} needs --init P(n,M),P(n,M-1) "
                             f"(M={M}) or --bootstrap")
    if N < M:
        raise UsageError(f"the digital closed form holds for N >= M = {M}")
    P = digital_P(spec, n, N, init).derived
    below = digital_P(spec, n, N - 1, init).derived if N - 1 >= M else init[1]
    return P, P - below, digital_P2(spec, n, N)


def _oracle_cell(spec, n: int, N: int, policy, cache) -> ComplexityCell:
    row = complexity_row(spec, n, N, policy, cache)
    return row[-1]


def _shift_cell(spec, n: int, N: int, policy, cache) -> ComplexityCell:
    if not isinstance(spec, DigitalSpec) or spec.block_class is not BlockClass.MIXED:
        raise UnsupportedSpec("--method shift needs a digital sequence with a mixed block")
    t = shift_threshold(spec, n)
    if N <= t:
        raise UsageError(f"--method shift extrapolates beyond the threshold {t}; need N > {t}")
    P = len(enumerate_factors(spec, n, t, policy, cache))
    d1 = [len(enumerate_new_factors(spec, n, t - 1, policy, cache))]
    f1 = enumerate_new_factors(spec, n, t, policy, cache)
    d1.append(len(f1))
    for _ in range(t, N):
        f1 = shift_extrapolate(f1)
        P += len(f1)
        d1.append(len(f1))
    return ComplexityCell(n, N, P, d1[-1], d1[-1] - d1[-2], "shift", f"shift-from-N={t}")


def _bootstrap(spec: DigitalSpec, n: int, policy, cache) -> tuple[int, int]:
    M = digital_threshold(spec, n)
    return (len(enumerate_factors(spec, n, M, policy, cache)),
            len(enumerate_factors(spec, n, M - 1, policy, cache)))


def cmd_complexity(spec, n: int, N: int, method: str, policy, cache=None, init=None,
                   bootstrap: bool = False, as_json: bool = False) -> str:
    if n < 1 or N < 0:
        raise UsageError("need --n >= 1 and --N >= 0")
    digital = isinstance(spec, DigitalSpec)
    if digital and bootstrap and init is None:
        init = _bootstrap(spec, n, policy, cache)

    if method in ("oracle", "formula", "shift"):
        if method == "oracle":
            cell = _oracle_cell(spec, n, N, policy, cache)
        elif method == "shift":
            cell = _shift_cell(spec, n, N, policy, cache)
        else:
            P, P1, P2 = (_digital_formula(spec, n, N, init) if digital else _fib_formula(n, N))
            cell = ComplexityCell(n, N, P, P1, P2, "formula", "closed-form")
        if as_json:
            return json.dumps({"seq": spec.label, **cell.to_json()}, sort_keys=True)
        p2 = "" if cell.P2 is None else f" P2={cell.P2}"
        return f"seq={spec.label} n={n} N={N} P={cell.P} P1={cell.P1}{p2} method={cell.method} bound={cell.bound}"

    # method == "all": every applicable route side by side
    oracle = _oracle_cell(spec, n, N, policy, cache)
    routes = {"oracle": (oracle.P, oracle.P1, oracle.P2)}
    if digital:
        if N >= digital_threshold(spec, n):
            routes["formula"] = _digital_formula(spec, n, N, init or _bootstrap(spec, n, policy, cache))
        if spec.block_class is BlockClass.MIXED and N > shift_threshold(spec, n):
            c = _shift_cell(spec, n, N, policy, cache)
            routes["shift"] = (c.P, c.P1, c.P2)
    else:
        routes["formula"] = _fib_formula(n, N)
    rows = []
    for i, name in enumerate(("P", "P1", "P2")):
        values = {route: v[i] for route, v in routes.items() if v[i] is not None}
        if not values:
            continue
        verdict = "MATCH" if len(set(values.values())) == 1 else "MISMATCH"
        if len(values) == 1:
            verdict = "ONLY-ORACLE"
        rows.append((name, values, verdict))
    if as_json:
        return json.dumps({"seq": spec.label, "n": n, "N": N,
                           "rows": [{"quantity": q, "values": v, "verdict": d} for q, v, d in rows]},
                          sort_keys=True)
    lines = [f"seq={spec.label} n={n} N={N}"]
    for name, values, verdict in rows:
        lines.append(f"{name}: " + " ".join(f"{r}={v}" for r, v in values.items()) + f" {verdict}")
    return "\n".join(lines)


def table_cells(spec, n_range: range, N_range: range, method: str, policy, cache=None) -> list[ComplexityCell]:
    cells = []
    N_max = N_range[-1]
    for n in n_range:
        row = complexity_row(spec, n, N_max, policy, cache)
        if method == "formula":
            if isinstance(spec, DigitalSpec):
                M = digital_threshold(spec, n)
                init = (row[M].P, row[M - 1].P) if M <= N_max else None
                counts, bounds = [], []
                for cell in row:
                    if init is not None and cell.N >= M:
                        counts.append(digital_P(spec, n, cell.N, init).derived)
                        bounds.append(f"closed-form:M={M}")
                    else:
                        counts.append(cell.P)
                        bounds.append(cell.bound)
                formula_row = cells_from_counts(n, counts, bounds, "formula")
                # cells below M are oracle values
                row = [c if c.N >= M else ComplexityCell(c.n, c.N, c.P, c.P1, c.P2, "oracle", c.bound)
                       for c in formula_row]
            else:
                row = cells_from_counts(n, [fib_P(n, N) for N in range(N_max + 1)],
                                        ["closed-form"] * (N_max + 1), "formula")
        cells.extend(c for c in row if c.N in N_range)
    return cells


def render_table(cells: list[ComplexityCell], fmt: str) -> str:
    if fmt == "json":
        return json.dumps([c.to_json() for c in cells], indent=1) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for c in cells:
        writer.writerow(c.csv_row())
    return buf.getvalue()


def cmd_table(spec, n_range: range, N_range: range, fmt: str = "csv", out: Optional[str] = None,
              method: str = "oracle", policy=None, cache=None) -> str:
    text = render_table(table_cells(spec, n_range, N_range, method, policy or ScanPolicy(), cache), fmt)
    if out:
        with open(out, "w", newline="\n", encoding="utf-8") as fh:
            fh.write(text)
    return text


def cmd_verify(suite: str, *, n_max=None, N_max=None, spec=None, m_max=None, policy=None,
               cache=None, as_json: bool = False) -> tuple[int, str]:
    reports = run_suite(suite, n_max=n_max, N_max=N_max, spec=spec, m_max=m_max,
                        policy=policy, cache=cache)
    ok = all(r.passed for r in reports)
    if as_json:
        text = json.dumps({"suite": suite, "verdict": "pass" if ok else "fail",
                           "checks": [r.to_json() for r in reports]}, indent=1, default=str)
    else:
        lines = [r.line() for r in reports]
        lines.append(f"{suite}: {sum(r.passed for r in reports)}/{len(reports)} checks passed")
        text = "\n".join(lines)
    return (EXIT_OK if ok else EXIT_FAIL), text


# ---------------------------------------------------------------------------
# argument parsing


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--workers", type=int, default=1, help="worker threads per enumeration")
    common.add_argument("--prefix-budget", type=int, default=10**7,
                        help="max Fibonacci prefix length (letters)")
    common.add_argument("--scan-budget", type=int, default=1 << 24,
                        help="max integers scanned by the brute-force digital scan")
    common.add_argument("--digital-method", choices=("exact", "scan"), default="exact",
                        help="digital oracle: exact carry-state closure or stabilised scan")
    common.add_argument("--cache-dir", default=None,
                        help="factor-set cache directory (overrides $NFACTOR_CACHE_DIR)")
    common.add_argument("-v", "--verbose", action="store_true")
    return common


def _add_seq_args(p: argparse.ArgumentParser, positional: bool = True):
    if positional:
        p.add_argument("seq", choices=("fib", "digital"))
    p.add_argument("--base", type=int, help="digital base k")
    p.add_argument("--block", help="digital block w (e.g. 01, or 1.10 for k > 10)")


def make_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(prog="nfactor", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="print the first terms of a sequence")
    _add_seq_args(p)
    p.add_argument("--terms", type=int, default=20)

    p = sub.add_parser("complexity", parents=[common], help="P, P1, P2 at one (n, N)")
    _add_seq_args(p)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--method", choices=("oracle", "formula", "shift", "all"), default="oracle")
    p.add_argument("--init", help="digital closed-form initial values P(n,M),P(n,M-1)")
    p.add_argument("--bootstrap", action="store_true",
                   help="compute the digital initial values with the oracle")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("table", parents=[common], help="complexity table as CSV or JSON")
    _add_seq_args(p)
    p.add_argument("--n", type=parse_range, required=True, help="N or LO..HI")
    p.add_argument("--N", type=parse_range, required=True, help="N or LO..HI")
    p.add_argument("--method", choices=("oracle", "formula"), default="oracle")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", help="output file (default stdout)")

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", choices=SUITES)
    _add_seq_args(p, positional=False)
    p.add_argument("--n-max", type=int)
    p.add_argument("--N-max", type=int)
    p.add_argument("--m-max", type=int)
    p.add_argument("--json", action="store_true")
    return parser


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.workers < 1:
            raise UsageError("--workers must be >= 1")
        policy = build_policy(args)
        cache = cache_from_env(args.cache_dir)
        if args.command == "gen":
            print(cmd_gen(build_spec(args), args.terms))
            return EXIT_OK
        if args.command == "complexity":
            init = None
            if args.init:
                try:
                    init = tuple(int(x) for x in args.init.split(","))
                    if len(init) != 2:
                        raise ValueError
                except ValueError:
                    raise UsageError("--init takes two integers: P(n,M),P(n,M-1)") from None
            print(cmd_complexity(build_spec(args), args.n, args.N, args.method, policy, cache,
                                 init, args.bootstrap, args.json))
            return EXIT_OK
        if args.command == "table":
            text = cmd_table(build_spec(args), args.n, args.N, args.format, args.out, args.method,
                             policy, cache)
            if not args.out:
                sys.stdout.write(text)
            return EXIT_OK
        if args.command == "verify":
            spec = None
            if args.base is not None or args.block is not None:
                args.seq = "digital"
                spec = build_spec(args)
            code, text = cmd_verify(args.suite, n_max=args.n_max, N_max=args.N_max, spec=spec,
                                    m_max=args.m_max, policy=policy, cache=cache, as_json=args.json)
            print(text)
            return code
    except BudgetExceeded as exc:
        print(f"nfactor: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (NFactorError, ValueError) as exc:
        print(f"nfactor: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

    genfib fib --s 1 --t 1 --n 10
    genfib rank --s 1 --t -1 --mod 31 --method order
    genfib rank-sweep --t -1 --p 31 --s 1..15 --format csv
    genfib val --s 3 --p 5 --n 25
    genfib val-witness --s 4 --d 5
    genfib zeta --s 3 --t -1 --r 1 --n 2 --w 1 --family conj2
    genfib verify --suite all

Exit codes: 0 success, 1 assertion failure, 2 usage or precondition error,
3 undecided floor. Failures print one line starting with ``error:`` on stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from collections import Counter
from typing import Any, Sequence

from .errors import (
    GenFibError,
    NonContractingError,
    PreconditionError,
    RankUndefinedError,
    UndecidedFloorError,
    ZeroTermError,
)
from .mod_rank import period_and_rank, rank_composed, rank_sweep
from .quad_field import is_prime, rank_via_order, rank_via_order_general, require_odd_prime
from .seq_core import SeqParams, fib, fib_iter
from .suites import SUITES, run_suite
from .valuations import conjecture1_witness, nu, nu_fib_closed
from .zeta_tail import FAMILIES, closed_form_rhs, tail_floor

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_UNDECIDED = 0, 1, 2, 3

_RANGE = re.compile(r"^(-?\d+)(?:\.\.(-?\d+))?$")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def __init__(self, *args: Any, **kwargs: Any):
        super().__init__(*args, **kwargs)
        # let "-3..5" through as a value, not an option
        self._negative_number_matcher = re.compile(r"^-\d+(\.\.-?\d+)?$")

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        sys.exit(EXIT_USAGE)


def parse_range(text: str) -> range:
    """'a..b' (inclusive) or a single integer."""
    m = _RANGE.match(text.strip())
    if not m:
        raise argparse.ArgumentTypeError(f"expected a..b or an integer, got {text!r}")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) is not None else lo
    if hi < lo:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return range(lo, hi + 1)


def _emit_table(fmt: str, header: list[str], rows: list[list[Any]]) -> str:
    if fmt == "json":
        return json.dumps([dict(zip(header, r)) for r in rows], indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        return buf.getvalue()
    return "".join(" ".join(str(v) for v in r) + "\n" for r in rows)


def cmd_fib(args: argparse.Namespace) -> tuple[str, int]:
    if args.n < 0:
        raise UsageError(f"n must be non-negative, got {args.n}")
    params = SeqParams(args.s, args.t)
    value = fib_iter(params, args.n) if args.method == "iter" else fib(params, args.n)
    if args.format == "plain":
        return f"{value}\n", EXIT_OK
    return _emit_table(args.format, ["s", "t", "n", "f"], [[args.s, args.t, args.n, str(value)]]), EXIT_OK


def order_rank(params: SeqParams, p: int) -> int | None:
    """Rank modulo an odd prime through multiplicative orders; None when p | t."""
    require_odd_prime(p)
    if params.t % p == 0:
        return None
    if params.t == -1:
        return rank_via_order(params.s, p)
    if params.discriminant % p == 0:
        return p
    return rank_via_order_general(params, p)


def cmd_rank(args: argparse.Namespace) -> tuple[str, int]:
    params = SeqParams(args.s, args.t)
    if args.mod < 2:
        raise UsageError(f"modulus must be at least 2, got {args.mod}")
    rank: int | None
    if args.method == "naive":
        rank = period_and_rank(params, args.mod).rank
    elif args.method == "lcm":
        try:
            rank = rank_composed(params, args.mod)
        except RankUndefinedError:
            rank = None
    else:
        if args.mod % 2 == 0 or not is_prime(args.mod):
            raise UsageError("method 'order' needs an odd prime modulus")
        rank = order_rank(params, args.mod)
    shown = "absent" if rank is None else rank
    if args.format == "plain":
        return f"{shown}\n", EXIT_OK
    return _emit_table(args.format, ["s", "t", "mod", "method", "rank"], [[args.s, args.t, args.mod, args.method, shown]]), EXIT_OK


def cmd_rank_sweep(args: argparse.Namespace) -> tuple[str, int]:
    p = args.p
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise UsageError(f"p must be an odd prime, got {p}")
    if args.t % p == 0:
        raise UsageError(f"p={p} divides t={args.t}; the rank does not exist")
    rows = []
    for s, r in rank_sweep(args.t, p, args.s):
        agrees = order_rank(SeqParams(s, args.t), p) == r
        rows.append([s, r, str(agrees).lower()])
    hist = sorted(Counter(r for _, r, _ in rows).items())
    header = ["s", "rank", "order_method_agrees"]
    if args.format == "json":
        payload = {
            "t": args.t,
            "p": p,
            "rows": [dict(zip(header, [s, r, a == "true"])) for s, r, a in rows],
            "histogram": {str(r): c for r, c in hist},
        }
        return json.dumps(payload, indent=2) + "\n", EXIT_OK
    if args.format == "csv":
        out = _emit_table("csv", header, rows)
        return out + "# histogram\n" + _emit_table("csv", ["rank", "count"], [list(h) for h in hist]), EXIT_OK
    out = _emit_table("plain", header, rows)
    return out + "# histogram\n" + _emit_table("plain", [], [list(h) for h in hist]), EXIT_OK


def cmd_val(args: argparse.Namespace) -> tuple[str, int]:
    if args.s < 2:
        raise UsageError(f"s must be at least 2, got {args.s}")
    if args.n < 1:
        raise UsageError(f"n must be positive, got {args.n}")
    closed = nu_fib_closed(args.s, args.p, args.n)
    brute = nu(fib(SeqParams(args.s, -1), args.n), args.p)
    flag = "agree" if closed == brute else "disagree"
    code = EXIT_OK if closed == brute else EXIT_FAIL
    if args.format == "plain":
        return f"{closed} {brute} {flag}\n", code
    return _emit_table(args.format, ["s", "p", "n", "closed", "brute", "agree"], [[args.s, args.p, args.n, closed, brute, flag == "agree"]]), code


def cmd_val_witness(args: argparse.Namespace) -> tuple[str, int]:
    if args.d < 3 or args.d % 2 == 0:
        raise UsageError(f"d must be an odd integer >= 3, got {args.d}")
    w = conjecture1_witness(args.s, args.d, args.nmax)
    if args.format == "plain":
        return f"d'={w.d_prime} s'={w.s_prime} validated n≤{w.validated_through}\n", EXIT_OK
    return _emit_table(
        args.format, ["s", "d", "d_prime", "s_prime", "validated_through"], [[w.s, w.d, w.d_prime, w.s_prime, w.validated_through]]
    ), EXIT_OK


def cmd_zeta(args: argparse.Namespace) -> tuple[str, int]:
    params = SeqParams(args.s, args.t)
    rhs = closed_form_rhs(params, args.r, args.n, args.w, args.family)
    lhs = tail_floor(params, args.r, args.n, args.w, max_terms=args.max_terms)
    flag = "match" if lhs == rhs else "mismatch"
    code = EXIT_OK if lhs == rhs else EXIT_FAIL
    if args.format == "plain":
        return f"{lhs} {rhs} {flag}\n", code
    return _emit_table(
        args.format, ["s", "t", "r", "n", "w", "family", "floor", "closed_form", "match"],
        [[args.s, args.t, args.r, args.n, args.w, args.family, str(lhs), str(rhs), lhs == rhs]],
    ), code


def cmd_verify(args: argparse.Namespace) -> tuple[str, int]:
    overrides: dict[str, Any] = {"pmax": args.pmax, "nmax": args.nmax, "dmax": args.dmax, "smax": args.smax}
    if args.grid:
        overrides["families"] = (args.grid,)
    results = list(run_suite(args.suite, **overrides))
    failures = sum(1 for r in results if r.asserted and not r.passed)
    asserted = sum(1 for r in results if r.asserted)
    rows = [[r.suite, r.case, r.status, r.detail] for r in results]
    if args.format == "plain":
        out = "".join("\t".join(r).rstrip("\t") + "\n" for r in rows)
        out += f"# {args.suite}: {asserted} asserted cases, {failures} failures, {len(results) - asserted} logged\n"
    else:
        out = _emit_table(args.format, ["suite", "case", "status", "detail"], rows)
    return out, EXIT_OK if failures == 0 else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="genfib", description="Generalized Fibonacci sequences f_n(s, t).")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, help_text: str, formats: Sequence[str] = ("plain", "csv", "json"), default: str = "plain") -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--format", choices=formats, default=default)
        p.add_argument("--out", help="write output to this path instead of stdout")
        return p

    p = add("fib", "print f_n(s, t)")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=("fast", "iter"), default="fast")
    p.set_defaults(func=cmd_fib)

    p = add("rank", "print the rank modulo m, or 'absent'")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--mod", type=int, required=True)
    p.add_argument("--method", choices=("naive", "lcm", "order"), default="naive")
    p.set_defaults(func=cmd_rank)

    p = add("rank-sweep", "rank modulo p over a range of s, with a histogram", default="csv")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--s", type=parse_range, required=True, help="inclusive range a..b")
    p.set_defaults(func=cmd_rank_sweep)

    p = add("val", "nu_p(f_n(s, -1)) by closed form and brute force")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_val)

    p = add("val-witness", "the (d', s') valuation witness for odd d")
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--nmax", type=int, default=2000)
    p.set_defaults(func=cmd_val_witness)

    p = add("zeta", "floor of the inverse reciprocal tail vs. a closed form")
    for name in ("s", "t", "r", "n", "w"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.add_argument("--family", choices=FAMILIES, required=True)
    p.add_argument("--max-terms", type=int, default=1 << 14)
    p.set_defaults(func=cmd_zeta)

    p = add("verify", "run a verification suite")
    p.add_argument("--suite", choices=SUITES, required=True)
    p.add_argument("--grid", choices=FAMILIES, help="restrict the zeta suite to one family")
    p.add_argument("--pmax", type=int, help="rank-order: primes below this bound")
    p.add_argument("--nmax", type=int, help="valuation/lemmas: largest n")
    p.add_argument("--dmax", type=int, help="valuation: largest odd d for witnesses")
    p.add_argument("--smax", type=int, help="zeta: largest s in the logged conj2 frontier")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text, code = args.func(args)
    except (UsageError, PreconditionError, NonContractingError, ZeroTermError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except UndecidedFloorError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_UNDECIDED
    except GenFibError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_FAIL
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())

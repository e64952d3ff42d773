"""Command-line front end: expansions, families, coefficient tables, verify.

All behavior is flag-driven (no config files, no environment variables) so
that golden outputs are reproducible.  Results go to stdout, diagnostics to
stderr.  Exit codes: 0 success, 1 verification failure, 2 malformed
arguments.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .families import (
    ONE_MINUS_Q,
    big_hermite,
    h_poly,
    hermite,
    lucas,
    lucas_k,
    qweyl_binomial,
    weyl_binomial,
)
from .opalg import TWIST_ONE, TWIST_Q, NormalOp, affine_factor, power, product
from .qarith import QScalar, q_pow
from .verify import ALL_CASE_IDS, run_cases

EXPAND_KINDS = ("classical", "qpower", "qdesc", "qodd", "qtheorem4")
FAMILY_NAMES = ("hermite", "h", "bigH", "lucas", "lucasK")


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be a nonnegative integer")
    return value


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _expand_operator(kind: str, n: int) -> NormalOp:
    if kind == "classical":
        return power(affine_factor(1, TWIST_ONE), n)
    if kind == "qpower":
        return power(affine_factor(1, TWIST_Q), n)
    if kind == "qdesc":
        return product([affine_factor(q_pow(n - 1 - i), TWIST_Q) for i in range(n)])
    if kind == "qodd":
        return product([affine_factor(q_pow(2 * i + 1), TWIST_Q) for i in range(n)])
    if kind == "qtheorem4":
        return power(affine_factor(QScalar(ONE_MINUS_Q), TWIST_Q), n)
    raise ValueError(f"unknown kind {kind!r}")


def _cmd_expand(args: argparse.Namespace) -> int:
    op = _expand_operator(args.kind, args.n)
    if args.json:
        print(json.dumps(op.to_json()))
    else:
        print(str(op))
    return 0


def _cmd_family(args: argparse.Namespace) -> int:
    if args.name == "lucasK":
        if args.k is None:
            print("family lucasK requires --k", file=sys.stderr)
            return 2
        poly = lucas_k(args.n, args.k)
    elif args.k is not None:
        print(f"--k is only meaningful for lucasK, not {args.name}", file=sys.stderr)
        return 2
    elif args.name == "hermite":
        poly = hermite(args.n)
    elif args.name == "h":
        poly = h_poly(args.n)
    elif args.name == "bigH":
        poly = big_hermite(args.n)
    else:
        poly = lucas(args.n)
    if args.json:
        print(json.dumps(poly.to_json()))
    else:
        print(str(poly))
    return 0


def _cmd_table(args: argparse.Namespace) -> int:
    n = args.n
    entries = []
    index_name = "j" if args.coeff == "weyl" else "l"
    for m in range(n + 1):
        for idx in range(min(m, n - m) + 1):
            if args.coeff == "weyl":
                value = weyl_binomial(n, m, idx)
                entries.append(({"m": m, index_name: idx, "value": value}, str(value)))
            else:
                poly = qweyl_binomial(n, m, idx, path="recurrence")
                entries.append(({"m": m, index_name: idx, "value": poly.to_list()},
                                str(poly)))
    if args.json:
        print(json.dumps({"coeff": args.coeff, "n": n,
                          "entries": [e for e, _ in entries]}))
    else:
        for entry, rendered in entries:
            print(f"m={entry['m']} {index_name}={entry[index_name]}: {rendered}")
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    reports = run_cases(args.case if args.case else None, args.n_max)
    if args.json:
        print(json.dumps([r.to_json() for r in reports]))
    else:
        for r in reports:
            if r.passed:
                print(f"PASS {r.case_id} (n_max={r.n_range[1]})")
            else:
                ff = r.first_failure
                print(f"FAIL {r.case_id} (n_max={r.n_range[1]}): "
                      f"first failure at n={ff.n}, term={ff.term}, "
                      f"lhs={ff.lhs}, rhs={ff.rhs}")
    failed = [r.case_id for r in reports if not r.passed]
    if failed:
        print(f"{len(failed)} case(s) failed: {', '.join(failed)}", file=sys.stderr)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qweyl",
        description="Exact normal ordering in the q-Weyl algebra: "
                    "expansions, polynomial families, coefficient tables, "
                    "and machine verification of the identities.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("expand", help="normal-order an operator power or product")
    p.add_argument("--kind", required=True, choices=EXPAND_KINDS,
                   help="classical (X+sD)^n at q=1, qpower (X+sD)^n, "
                        "qdesc descending-power product, qodd odd-power product, "
                        "qtheorem4 (X+(1-q)sD)^n")
    p.add_argument("--n", required=True, type=_nonneg)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_expand)

    p = sub.add_parser("family", help="print a polynomial family member")
    p.add_argument("--name", required=True, choices=FAMILY_NAMES)
    p.add_argument("--n", required=True, type=_nonneg)
    p.add_argument("--k", type=_nonneg, help="second index, for lucasK")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_family)

    p = sub.add_parser("table", help="emit a coefficient triangle")
    p.add_argument("--coeff", required=True, choices=("weyl", "qweyl"))
    p.add_argument("--n", required=True, type=_nonneg)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("verify", help="run verification cases")
    p.add_argument("--case", action="append", choices=ALL_CASE_IDS,
                   help="case id; repeatable; default all")
    p.add_argument("--n-max", type=_positive, dest="n_max",
                   help="cap every case's range at this n")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_verify)

    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse argv and execute; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    return args.func(args)


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()

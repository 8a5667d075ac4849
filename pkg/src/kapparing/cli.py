"""Command-line front end.

Exit codes: 0 success, 1 domain error (diagnostic names the violated
precondition) or failed verification, 2 usage error.  All rationals are
printed exactly; ``--json`` serializes them as "num/den" strings.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import intersect, verify
from .intersect import UnstableQueryError, tau, tau_query
from .partitions import format_partition, parse_partition, partitions_of
from .pushforward import bracket, psi_class
from .ranks import asymptotic_formula, rank_kappa_c
from .strata import enum_Q, pair_psi, parse_multiset


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kapparing",
        description="Exact computations in the kappa ring of moduli of stable curves")
    parser.add_argument("--cache-dir", default=None,
                        help="intersection-number cache directory "
                             "(default: $KAPPA_CACHE_DIR, then ~/.cache/kapparing)")
    parser.add_argument("--threads", type=int, default=None,
                        help="cap on worker threads for matrix assembly")
    sub = parser.add_subparsers(dest="command", required=True)

    p_rank = sub.add_parser("rank", help="rank of the combinatorial kappa ring")
    p_rank.add_argument("--g", type=int, required=True)
    p_rank.add_argument("--n", type=int, required=True)
    p_rank.add_argument("--d", type=int, required=True)
    _output_flags(p_rank)

    p_pair = sub.add_parser("pair", help="pair a psi class against a stratum multiset")
    p_pair.add_argument("--g", type=int, required=True)
    p_pair.add_argument("--n", type=int, required=True)
    p_pair.add_argument("--psi", required=True, help="partition, e.g. '3,1,1'")
    p_pair.add_argument("--q", required=True, help="multiset, e.g. '(1,1)|(0,3)'")
    _output_flags(p_pair)

    p_int = sub.add_parser("intersect", help="psi intersection number")
    p_int.add_argument("--g", type=int, required=True)
    p_int.add_argument("--exps", required=True, help="exponents, e.g. '0,0,0'")
    _output_flags(p_int)

    p_exp = sub.add_parser("expand", help="expand a class over kappa monomials")
    p_exp.add_argument("--g", type=int, required=True)
    p_exp.add_argument("--n", type=int, required=True)
    p_exp.add_argument("--psi", help="partition for a psi-pushforward class")
    p_exp.add_argument("--bracket", help="partition for a bracket class")
    p_exp.add_argument("--d", type=int, default=None,
                       help="degree part for --bracket")
    _output_flags(p_exp)

    p_enum = sub.add_parser("enumerate",
                            help="partitions of d, or strata multisets Q(d;g,n)")
    p_enum.add_argument("--d", type=int, required=True)
    p_enum.add_argument("--g", type=int, default=None)
    p_enum.add_argument("--n", type=int, default=None)
    _output_flags(p_enum)

    p_ver = sub.add_parser("verify", help="run a verification suite")
    p_ver.add_argument("--suite", required=True, choices=verify.SUITES)
    p_ver.add_argument("--max-d", type=int, default=None)
    p_ver.add_argument("--max-n", type=int, default=None)
    _output_flags(p_ver)

    p_asy = sub.add_parser("asymptotic", help="large-n rank asymptote")
    p_asy.add_argument("--g", type=int, required=True)
    p_asy.add_argument("--e", type=int, required=True)
    p_asy.add_argument("--n", type=int, required=True)
    _output_flags(p_asy)

    return parser


def _output_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--json", action="store_true", help="JSON output")
    sub.add_argument("--csv", action="store_true", help="CSV output")


def _rational(value: Fraction) -> str:
    return str(value)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    intersect.load_cache(args.cache_dir)
    try:
        code = _dispatch(args)
    except (ValueError, UnstableQueryError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    finally:
        try:
            intersect.save_cache(args.cache_dir)
        except OSError:
            pass  # cache is optional; never fail the computation over it
    return code


def _dispatch(args: argparse.Namespace) -> int:
    if args.command == "rank":
        report = rank_kappa_c(args.d, args.g, args.n, threads=args.threads)
        if args.json:
            print(report.to_json())
        elif args.csv:
            print("d,g,n,rank,formula,agrees")
            print("%d,%d,%d,%d,%s,%s" % (report.d, report.g, report.n,
                                         report.matrix_rank,
                                         report.formula_value, report.agrees))
        else:
            label = ("kappa ring rank" if args.g <= 1
                     else "combinatorial kappa ring rank")
            print("%s d=%d g=%d n=%d: %d (formula: %s, agrees: %s)"
                  % (label, report.d, report.g, report.n, report.matrix_rank,
                     report.formula_value, report.agrees))
        return 0

    if args.command == "pair":
        p = parse_partition(args.psi)
        q = parse_multiset(args.q)
        value = pair_psi(p, q, args.g, args.n)
        if args.json:
            print(json.dumps({"value": _rational(value)}))
        else:
            print(_rational(value))
        return 0

    if args.command == "intersect":
        exps = tuple(int(x) for x in args.exps.split(",")) if args.exps else ()
        value = tau(tau_query(args.g, exps))
        if args.json:
            print(json.dumps({"value": _rational(value)}))
        else:
            print(_rational(value))
        return 0

    if args.command == "expand":
        if (args.psi is None) == (args.bracket is None):
            raise ValueError("expand needs exactly one of --psi or --bracket")
        if args.psi is not None:
            poly = psi_class(parse_partition(args.psi), args.g, args.n)
        else:
            p = parse_partition(args.bracket)
            degree = args.d if args.d is not None else sum(p)
            poly = bracket(p, degree, args.g, args.n)
        if args.json:
            terms = {"*".join(str(i) for i in mono) or "1": _rational(c)
                     for mono, c in sorted(poly.terms.items())}
            print(json.dumps({"terms": terms}))
        else:
            print(poly.render())
        return 0

    if args.command == "enumerate":
        if (args.g is None) != (args.n is None):
            raise ValueError("enumerate needs both --g and --n, or neither")
        if args.g is None:
            items = [format_partition(p) for p in partitions_of(args.d)]
        else:
            items = [q.render() for q in enum_Q(args.d, args.g, args.n)]
        if args.json:
            print(json.dumps(items))
        else:
            for item in items:
                print(item)
        return 0

    if args.command == "verify":
        cases = verify.run_suite(args.suite, args.max_d, args.max_n,
                                 threads=args.threads)
        if args.csv:
            print("case,expected,got,pass")
            for c in cases:
                print("%s,%s,%s,%s" % (c["case"], c["expected"], c["got"], c["pass"]))
        else:
            print(json.dumps(cases, indent=2))
        failed = sum(1 for c in cases if not c["pass"])
        if failed:
            print("%d/%d cases failed" % (failed, len(cases)), file=sys.stderr)
            return 1
        return 0

    if args.command == "asymptotic":
        value = asymptotic_formula(args.g, args.e, args.n)
        if args.json:
            print(json.dumps({"value": _rational(value)}))
        else:
            print(_rational(value))
        return 0

    raise ValueError("unknown command %r" % args.command)


if __name__ == "__main__":
    sys.exit(main())

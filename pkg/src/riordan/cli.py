"""Command-line interface.

Exit status: 0 on success, 1 on a domain error (the library's exception name is
printed to stderr), 2 on a usage error. Document arguments accept a file path,
``-`` for stdin, or an inline JSON object.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from . import commutator, derived, group, schroeder, serialize, subgroups
from .errors import RiordanError
from .fps import TruncatedSeries
from .group import RiordanPair
from .verify import SUITE_NAMES, run_suite


class UsageError(Exception):
    def __init__(self, flag, message):
        self.flag = flag
        super().__init__(f"{flag}: {message}")


def _load(value: str, flag: str):
    try:
        if value.lstrip().startswith("{"):
            return json.loads(value)
        if value == "-":
            return json.load(sys.stdin)
        with open(value) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(flag, f"cannot read JSON document ({exc})") from exc


def _series(args, attr: str) -> TruncatedSeries:
    flag = "--" + attr.replace("_", "-")
    try:
        s = serialize.series_from_doc(_load(getattr(args, attr), flag))
    except serialize.DocumentError as exc:
        raise UsageError(flag, str(exc)) from exc
    return s.truncate(min(s.trunc_order, args.order))


def _pair(args, attr: str = "pair") -> RiordanPair:
    """A pair from --pair (or from --d/--h when the command offers them)."""
    value = getattr(args, attr, None)
    if value is None and attr == "pair" and getattr(args, "d", None) and getattr(args, "h", None):
        return RiordanPair(_series(args, "d"), _series(args, "h"))
    flag = "--" + attr
    if value is None:
        raise UsageError(flag, "a pair document is required")
    try:
        p = serialize.pair_from_doc(_load(value, flag))
    except serialize.DocumentError as exc:
        raise UsageError(flag, str(exc)) from exc
    return p.truncate(min(p.trunc_order, args.order))


def _assoc(args) -> RiordanPair:
    return RiordanPair.associated(_series(args, "g"))


def _emit(doc):
    print(serialize.dumps(doc))


def cmd_mul(args):
    _emit(serialize.pair_to_doc(group.multiply(_pair(args, "left"), _pair(args, "right"))))


def cmd_inv(args):
    _emit(serialize.pair_to_doc(group.inverse(_pair(args))))


def cmd_apply(args):
    _emit(serialize.series_to_doc(group.apply(_pair(args), _series(args, "series"))))


def cmd_aseq(args):
    _emit(serialize.series_to_doc(group.a_sequence(_pair(args)).coeffs))


def cmd_entry(args):
    value = group.entry(_pair(args), args.row, args.col)
    _emit({"row": args.row, "col": args.col, "value": str(value)})


def cmd_project(args):
    _emit(serialize.matrix_to_doc(group.project(_pair(args), args.size)))


def cmd_member(args):
    try:
        tag = subgroups.SubgroupTag.parse(args.tag)
    except ValueError as exc:
        raise UsageError("--tag", str(exc)) from exc
    result = subgroups.is_member(_pair(args), tag)
    print("true" if result.member else "false")
    if not result.member and result.violation is not None:
        v = result.violation
        print(f"violation: {v.component}_{v.index} = {v.value}, expected {v.expected}", file=sys.stderr)


def cmd_schroeder(args):
    d, h = _series(args, "d"), _series(args, "h")
    lam = d.coeffs[0] if args.lam is None else serialize.scalar_from_doc(args.lam)
    sol = schroeder.solve(schroeder.SchroederProblem(d, h, lam))
    _emit(serialize.solution_to_doc(sol))


def cmd_decompose_diag(args):
    _emit(serialize.witness_to_doc(commutator.decompose_diag(_assoc(args), _scalar(args.r, "--r"))))


def cmd_decompose_shift(args):
    w = commutator.decompose_shift(_assoc(args), args.level, _scalar(args.lam, "--lambda"))
    _emit(serialize.witness_to_doc(w))


def cmd_decompose_riordan(args):
    _emit(serialize.witness_to_doc(commutator.decompose_riordan(_pair(args), args.level)))


def cmd_certify(args):
    cert = commutator.certify_associated(_assoc(args), args.level, _scalar(args.lam, "--lambda"))
    _emit(serialize.certificate_to_doc(cert))


def cmd_derived_length(args):
    print(derived.derived_length(args.k))


def cmd_derived_table(args):
    print(derived.derived_table(args.max_k))


def cmd_verify(args):
    report = run_suite(args.suite, seeds=args.seeds, order=args.order, base_seed=args.base_seed)
    _emit(report.to_doc())
    return 0 if report.passed else 1


def _scalar(text, flag):
    try:
        return serialize.scalar_from_doc(text)
    except serialize.DocumentError as exc:
        raise UsageError(flag, str(exc)) from exc


def _non_negative(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", type=_non_negative, default=16,
                        help="truncation order N (default 16); inputs are cut to min(N, their own order)")

    parser = argparse.ArgumentParser(prog="riordan", description="Exact Riordan group computations.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    p = add("mul", cmd_mul, "product of two pairs")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)

    p = add("inv", cmd_inv, "inverse of a pair")
    p.add_argument("--pair", required=True)

    p = add("apply", cmd_apply, "action d * alpha(h) on a series")
    p.add_argument("--pair", required=True)
    p.add_argument("--series", required=True)

    p = add("aseq", cmd_aseq, "A-sequence of a pair")
    p.add_argument("--pair", required=True)

    p = add("entry", cmd_entry, "matrix entry [x^i] d h^j")
    p.add_argument("--pair", required=True)
    p.add_argument("--row", type=_non_negative, required=True)
    p.add_argument("--col", type=_non_negative, required=True)

    p = add("project", cmd_project, "leading (n+1) x (n+1) block")
    p.add_argument("--pair", required=True)
    p.add_argument("--size", type=_non_negative, required=True)

    p = add("member", cmd_member, "subgroup membership test")
    p.add_argument("--tag", required=True,
                   help="toeplitz, associated, g:K, derivedR:N or derivedA:N")
    p.add_argument("--pair")
    p.add_argument("--d")
    p.add_argument("--h")

    p = add("schroeder", cmd_schroeder, "solve d u(h) = lam u")
    p.add_argument("--d", required=True)
    p.add_argument("--h", required=True)
    p.add_argument("--lam", help="eigenvalue (default d(0))")

    p = add("decompose-diag", cmd_decompose_diag, "(1,g) as [(1,rx), (1,v)]")
    p.add_argument("--g", required=True, help="series document for g in x + x^2 K[[x]]")
    p.add_argument("--r", default="2")

    p = add("decompose-shift", cmd_decompose_shift, "(1,g) in G_(2^n) as [A, B]")
    p.add_argument("--g", required=True)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--lambda", dest="lam", default="1")

    p = add("decompose-riordan", cmd_decompose_riordan, "member of R^(n) as a commutator in R^(n-1)")
    p.add_argument("--pair")
    p.add_argument("--d")
    p.add_argument("--h")
    p.add_argument("--level", type=int, required=True)

    p = add("certify", cmd_certify, "iterated-commutator certificate for (1,g) in G_(2^n)")
    p.add_argument("--g", required=True)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--lambda", dest="lam", default="1")

    p = add("derived-length", cmd_derived_length, "derived length of R_k")
    p.add_argument("--k", type=_non_negative, required=True)

    p = add("derived-table", cmd_derived_table, "derived lengths of R_0 .. R_max_k")
    p.add_argument("--max-k", type=_non_negative, required=True)

    p = add("verify", cmd_verify, "run a property suite")
    p.add_argument("--suite", required=True, choices=SUITE_NAMES)
    p.add_argument("--seeds", type=_non_negative, default=10)
    p.add_argument("--base-seed", type=int, default=0)

    return parser


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        status = args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"riordan: error: {exc}", file=sys.stderr)
        return 2
    except RiordanError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        # argument values the library rejects outright (e.g. level 0)
        parser.print_usage(sys.stderr)
        print(f"riordan: error: {exc}", file=sys.stderr)
        return 2
    return status or 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()

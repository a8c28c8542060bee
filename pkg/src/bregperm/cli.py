"""Command-line driver: counting, moment tables, normal-approximation
bounds, sampling, the composition bijection, and the verification suites.

Every command prints enough metadata (command, arguments, seed, version) to
reproduce its output exactly.  Exact rationals render as ``p/q``; floats
appear only in human-facing summary lines, at six significant digits.
Tables are RFC-4180 CSV with a header row and LF line endings.

Exit codes: 0 success, 1 usage error, 2 verification failure, 3 resource
cap exceeded.
"""

from __future__ import annotations

import argparse
import csv
import random
import sys
from fractions import Fraction
from typing import Iterable, Sequence, TextIO

from . import __version__
from .bijection import composition_to_perm, perm_to_composition
from .bregular import count_b_regular, sample_b_regular
from .core import CapExceeded, Composition, Permutation, RestrictionVector, matrix_from_vector
from .cycindex import mean_k_cycles, second_falling_moment, variance_k_cycles
from .permanent import ENUMERATE_DEFAULT_CAP, RYSER_DEFAULT_CAP, permanent_enumerate, permanent_ryser
from .stein import clt_empirical_test, stein_bound_report
from .verify import CLT_PUBLISHED_SEED, format_results, run_checks


class _UsageError(Exception):
    """Bad command line; rendered as a usage message with exit code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise _UsageError(message)


def parse_b_spec(text: str) -> RestrictionVector:
    """Parse ``"1,1,2,4,4"``, ``"b2:n"``, ``"b3:n"`` or ``"br:r,n"``.

    >>> parse_b_spec("b2:4").entries
    (1, 1, 2, 3)
    >>> parse_b_spec("br:3,5").entries
    (1, 1, 1, 2, 3)
    >>> parse_b_spec("1,1,2").entries
    (1, 1, 2)
    """
    try:
        if text.startswith("b2:"):
            return RestrictionVector.b2(int(text[3:]))
        if text.startswith("b3:"):
            return RestrictionVector.br(3, int(text[3:]))
        if text.startswith("br:"):
            r_text, n_text = text[3:].split(",")
            return RestrictionVector.br(int(r_text), int(n_text))
        return RestrictionVector(tuple(int(v) for v in text.split(",")))
    except (ValueError, TypeError) as exc:
        raise _UsageError(f"bad restriction spec {text!r}: {exc}") from exc


def _parse_k_range(text: str, n: int) -> list[int]:
    """``"2"``, ``"1:4"`` (inclusive) or ``"1,3,5"`` -> sorted k values."""
    try:
        if ":" in text:
            lo_text, hi_text = text.split(":")
            values = list(range(int(lo_text), int(hi_text) + 1))
        else:
            values = [int(v) for v in text.split(",")]
    except ValueError as exc:
        raise _UsageError(f"bad k range {text!r}: {exc}") from exc
    if not values or any(not 1 <= k <= n for k in values):
        raise _UsageError(f"k range {text!r} leaves 1..{n}")
    return sorted(set(values))


def _parse_int_list(text: str, what: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError as exc:
        raise _UsageError(f"bad {what} {text!r}: {exc}") from exc


def _fraction(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _sig6(x: float) -> str:
    return f"{x:.6g}"


def _emit_meta(stream: TextIO, command: str, argv: Sequence[str], seed: int | None = None) -> None:
    print(f"command={command}", file=stream)
    print(f"args={' '.join(argv)}", file=stream)
    if seed is not None:
        print(f"seed={seed}", file=stream)
    print(f"version={__version__}", file=stream)


def _write_csv(stream: TextIO, header: Sequence[str], rows: Iterable[Sequence[object]]) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)


def _resolve_b(args: argparse.Namespace) -> RestrictionVector:
    if args.b_spec is not None:
        return parse_b_spec(args.b_spec)
    if args.n is None:
        raise _UsageError("give a restriction spec or --n (with optional --r)")
    return RestrictionVector.br(args.r, args.n)


def _cmd_count(args: argparse.Namespace, argv: Sequence[str]) -> int:
    b = _resolve_b(args)
    if args.method == "product":
        value = count_b_regular(b)
    elif args.method == "permanent":
        value = permanent_ryser(matrix_from_vector(b), cap=RYSER_DEFAULT_CAP if args.cap is None else args.cap)
    else:
        value = permanent_enumerate(matrix_from_vector(b), cap=ENUMERATE_DEFAULT_CAP if args.cap is None else args.cap)
    _emit_meta(sys.stdout, "count", argv)
    print(f"b={','.join(str(v) for v in b.entries)}")
    print(f"method={args.method}")
    print(f"count={value}")
    return 0


def _cmd_moments(args: argparse.Namespace, argv: Sequence[str]) -> int:
    ks = _parse_k_range(args.k, args.n) if args.k else list(range(1, args.n + 1))
    header = ("n", "k", "mean_num", "mean_den", "var_num", "var_den",
              "second_falling_num", "second_falling_den")
    rows = []
    for k in ks:
        mean = mean_k_cycles(args.n, k)
        var = variance_k_cycles(args.n, k)
        sf = second_falling_moment(args.n, k)
        rows.append((args.n, k, mean.numerator, mean.denominator,
                     var.numerator, var.denominator, sf.numerator, sf.denominator))
    if args.format == "kv":
        _emit_meta(sys.stdout, "moments", argv)
        for _, k, mn, md, vn, vd, sn, sd in rows:
            print(f"n={args.n} k={k} mean={mn}/{md} variance={vn}/{vd} second_falling={sn}/{sd}")
    elif args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            _write_csv(fh, header, rows)
        _emit_meta(sys.stdout, "moments", argv)
        print(f"out={args.out}")
        print(f"rows={len(rows)}")
    else:
        _emit_meta(sys.stderr, "moments", argv)
        _write_csv(sys.stdout, header, rows)
    return 0


def _cmd_bound(args: argparse.Namespace, argv: Sequence[str]) -> int:
    report = stein_bound_report(args.n, args.k)
    _emit_meta(sys.stdout, "bound", argv)
    print(f"n={report.n}")
    print(f"k={report.k}")
    print(f"dependency_size={report.dependency_size}")
    print(f"third_moment_sum={_fraction(report.third_moment_sum)}")
    print(f"fourth_moment_sum={_fraction(report.fourth_moment_sum)}")
    print(f"sigma={_sig6(report.sigma)}")
    print(f"wasserstein={_sig6(report.wasserstein)}")
    print(f"kolmogorov={_sig6(report.kolmogorov)}")
    print(f"measured_dependency_size={report.measured_dependency_size}")
    print(f"wasserstein_at_measured_size={_sig6(report.wasserstein_at_measured_size)}")
    return 0


def _cmd_clt(args: argparse.Namespace, argv: Sequence[str]) -> int:
    report = clt_empirical_test(args.n, args.k, args.samples, args.seed)
    meta_stream = sys.stderr if args.format == "csv" and not args.out else sys.stdout
    _emit_meta(meta_stream, "clt", argv, seed=args.seed)
    print(f"n={report.n}", file=meta_stream)
    print(f"k={report.k}", file=meta_stream)
    print(f"samples={report.samples}", file=meta_stream)
    print(f"mu={_fraction(report.mu)}", file=meta_stream)
    print(f"sigma2={_fraction(report.sigma2)}", file=meta_stream)
    print(f"emp_mean={_sig6(report.emp_mean)}", file=meta_stream)
    print(f"emp_var={_sig6(report.emp_var)}", file=meta_stream)
    print(f"ks_stat={_sig6(report.ks_stat)}", file=meta_stream)
    print(f"dw_bound={_sig6(report.dw_bound)}", file=meta_stream)
    print(f"dk_bound={_sig6(report.dk_bound)}", file=meta_stream)
    header = ("z_lo", "z_hi", "count")
    hist_rows = [(f"{lo:.6g}", f"{hi:.6g}", count) for lo, hi, count in report.histogram]
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            _write_csv(fh, header, hist_rows)
        print(f"out={args.out}", file=meta_stream)
    elif args.format == "csv":
        _write_csv(sys.stdout, header, hist_rows)
    return 0


def _cmd_sample(args: argparse.Namespace, argv: Sequence[str]) -> int:
    b = _resolve_b(args)
    _emit_meta(sys.stdout, "sample", argv, seed=args.seed)
    print(f"b={','.join(str(v) for v in b.entries)}")
    rng = random.Random(args.seed)
    for _ in range(args.samples):
        p = sample_b_regular(b, rng)
        print(",".join(str(v) for v in p.images))
    return 0


def _cmd_compose(args: argparse.Namespace, argv: Sequence[str]) -> int:
    values = _parse_int_list(args.input, "input")
    _emit_meta(sys.stdout, "compose", argv)
    try:
        if args.direction == "to-comp":
            result = perm_to_composition(Permutation(values))
            print(",".join(str(part) for part in result.parts))
        else:
            perm = composition_to_perm(Composition(values))
            print(",".join(str(v) for v in perm.images))
    except ValueError as exc:
        raise _UsageError(str(exc)) from exc
    return 0


def _cmd_verify(args: argparse.Namespace, argv: Sequence[str]) -> int:
    _emit_meta(sys.stdout, "verify", argv)
    results = run_checks(args.level, include_cli=True)
    print(format_results(results))
    return 0 if all(res.passed for res in results) else 2


def build_parser() -> _Parser:
    parser = _Parser(prog="bregperm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="cmd", required=True)

    def add_b_spec(p: _Parser) -> None:
        p.add_argument("b_spec", nargs="?", default=None,
                       help="explicit vector '1,1,2,4,4' or shorthand b2:n / b3:n / br:r,n")
        p.add_argument("--n", type=int, default=None, help="size for the --r staircase shorthand")
        p.add_argument("--r", type=int, default=2, help="staircase offset (default 2)")

    p_count = sub.add_parser("count", help="number of permutations compatible with a restriction")
    add_b_spec(p_count)
    p_count.add_argument("--method", choices=("product", "permanent", "enumerate"), default="product",
                         help="product formula (default), inclusion-exclusion permanent, or direct enumeration")
    p_count.add_argument("--cap", type=int, default=None, help="size cap for the non-default methods")

    p_moments = sub.add_parser("moments", help="exact k-cycle moment table (CSV)")
    p_moments.add_argument("--n", type=int, required=True)
    p_moments.add_argument("--k", default=None, help="k range: '2', '1:4' or '1,3,5' (default all)")
    p_moments.add_argument("--out", default=None, help="write the CSV here instead of stdout")
    p_moments.add_argument("--format", choices=("csv", "kv"), default="csv")

    p_bound = sub.add_parser("bound", help="normal-approximation error bound for the k-cycle count")
    p_bound.add_argument("--n", type=int, required=True)
    p_bound.add_argument("--k", type=int, required=True)

    p_clt = sub.add_parser("clt", help="seeded sampling run against the standard normal")
    p_clt.add_argument("--n", type=int, required=True)
    p_clt.add_argument("--k", type=int, required=True)
    p_clt.add_argument("--samples", type=int, default=100_000)
    p_clt.add_argument("--seed", type=int, default=CLT_PUBLISHED_SEED)
    p_clt.add_argument("--out", default=None, help="write the standardized histogram CSV here")
    p_clt.add_argument("--format", choices=("csv", "kv"), default="kv",
                       help="csv prints the histogram to stdout when --out is absent")

    p_sample = sub.add_parser("sample", help="uniform draws from a restricted family")
    add_b_spec(p_sample)
    p_sample.add_argument("--samples", type=int, default=1)
    p_sample.add_argument("--seed", type=int, default=0)

    p_compose = sub.add_parser("compose", help="translate between permutations and compositions")
    p_compose.add_argument("direction", choices=("to-comp", "to-perm"))
    p_compose.add_argument("input", help="comma-separated images or parts")

    p_verify = sub.add_parser("verify", help="run the cross-verification suites")
    p_verify.add_argument("level", choices=("quick", "full"))

    return parser


_DISPATCH = {
    "count": _cmd_count,
    "moments": _cmd_moments,
    "bound": _cmd_bound,
    "clt": _cmd_clt,
    "sample": _cmd_sample,
    "compose": _cmd_compose,
    "verify": _cmd_verify,
}


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _DISPATCH[args.cmd](args, argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())

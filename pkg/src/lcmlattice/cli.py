"""``lcmlat`` command line interface.

Exit status is 0 on success, 1 when the library rejects the input (any
:class:`LcmLatticeError`) and 2 for usage problems.  Element indices in
files and JSON are 0-based; text output names set elements ``x_1 .. x_n``.
"""

from __future__ import annotations

import argparse
import math
import random
import sys
from fractions import Fraction
from pathlib import Path

from . import alpha_search, corpus, enumeration, integer_sets, io_formats, matrices
from .errors import BadIndex, LcmLatticeError
from .poset import Poset


class UsageError(Exception):
    pass


def _exact_number(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")


def _common(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("common options")
    g.add_argument("--precision", type=int, default=256, help="working bits for interval arithmetic (default 256)")
    g.add_argument("--tol", type=_exact_number, default=Fraction(1, 10**9), help="width of the exponent enclosure (default 1e-9)")
    g.add_argument("--r-max", type=int, default=64, help="largest inflation power tried (default 64)")
    g.add_argument("--seed", type=int, default=0, help="seed for randomized commands (default 0)")
    g.add_argument("--output", "-o", help="write to this file instead of stdout")
    g.add_argument("--format", choices=("text", "json", "dot"), default="text")


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}")


def _load_set(args) -> integer_sets.GcdClosedSet:
    if args.set_values is not None:
        values = io_formats.parse_int_set(args.set_values)
    elif getattr(args, "set_file", None):
        values = io_formats.parse_int_set(_read(args.set_file))
    else:
        raise UsageError("give a set file or --set")
    return integer_sets.GcdClosedSet(values)


def _load_poset(path: str) -> Poset:
    return io_formats.parse_poset(_read(path), relabel=True)


def _fmt(v) -> str:
    if isinstance(v, Fraction):
        return str(v)
    if hasattr(v, "lo"):
        return f"[{float(v.lo):.12g}, {float(v.hi):.12g}]"
    return str(v)


# ----------------------------------------------------------------------
# subcommands; each returns (report, text, dot-or-None)


def cmd_enumerate(args):
    count_posets = args.count_posets if args.count_posets is not None else args.n <= 8
    stats = enumeration.pipeline(args.n, min_cover=args.min_cover, count_posets=count_posets)
    reps = [
        {"tag": tag, "covers": [list(c) for c in sorted(p.covers)], "n": p.n}
        for p, tag in zip(stats.class_reps, stats.class_tags)
    ]
    results = {
        "total_posets": stats.total_posets,
        "meet_semilattices": stats.meet_semilattices,
        "after_cover_filter": stats.after_cover_filter,
        "after_mobius_filter": stats.after_mobius_filter,
        "representatives": reps,
    }
    lines = [f"n = {args.n}"]
    if stats.total_posets is not None:
        lines.append(f"posets:                     {stats.total_posets}")
    lines += [
        f"meet semilattices:          {stats.meet_semilattices}",
        f"maximal covers >= {args.min_cover}:        {stats.after_cover_filter}",
        f"no prunable Mobius zero:    {stats.after_mobius_filter}",
    ]
    if args.show:
        for rep, p in zip(reps, stats.class_reps):
            tag = rep["tag"] or "-"
            lines.append(f"{tag}: " + " ".join(f"{a}-{b}" for a, b in sorted(p.covers)))
    dot = "".join(
        io_formats.emit_dot(p, name=(t or f"rep{k}").replace("_", ""))
        for k, (p, t) in enumerate(zip(stats.class_reps, stats.class_tags))
    )
    inputs = {"n": args.n, "min_cover": args.min_cover}
    return io_formats.Report("enumerate", inputs, results), "\n".join(lines) + "\n", dot


def cmd_verify_counterexample(args):
    if args.q is not None:
        S = integer_sets.q_modified_counterexample(args.q)
    else:
        S = integer_sets.GcdClosedSet(integer_sets.ODD_COUNTEREXAMPLE)
    i = len(S) - 1
    alpha = args.alpha
    if alpha.denominator != 1 or alpha < 1:
        raise UsageError("--alpha must be a positive integer here")
    den, summands = matrices.psi_summands(S, i, int(alpha))
    total = sum(c for _, c in summands)
    value = Fraction(total, den)
    results = {
        "set": list(S),
        "denominator": den,
        "summands": [{"x_k": x, "numerator": c} for x, c in sorted(summands, reverse=True)],
        "sum": total,
        "psi_top": value,
        "singular": value == 0,
    }
    lines = [f"S = {{{', '.join(map(str, S))}}}", f"alpha = {alpha}", f"common denominator x_{len(S)}^alpha = {den}"]
    for x, c in sorted(summands, reverse=True):
        lines.append(f"  x_k = {x:>12}: {c:+d}")
    lines.append(f"sum = {total}")
    lines.append(f"Psi(x_{len(S)}) = {value}  ->  {'singular' if value == 0 else 'nonzero'}")
    if args.dual:
        dual = integer_sets.dual_lcm_closed(S)
        checks = matrices.dual_determinant_check(S, int(alpha))
        results["dual"] = dual
        results["dual_identity"] = checks
        lines.append(f"LCM-closed dual = {{{', '.join(map(str, dual))}}}")
        for k, ok in checks.items():
            lines.append(f"  det[S'] = {k} det(S): {'holds' if ok else 'fails'}")
    inputs = {"alpha": alpha, "q": args.q, "dual": args.dual}
    return io_formats.Report("verify-counterexample", inputs, results), "\n".join(lines) + "\n", None


def _report_search(rep: alpha_search.SearchReport) -> dict:
    return {
        "set": list(rep.set),
        "i": rep.i,
        "k": rep.k,
        "alpha0": rep.alpha0,
        "r_used": rep.r_used,
        "iterations": rep.iterations,
        "bracket": [rep.bracket.a_lo, rep.bracket.a_hi],
        "verified": rep.verified,
    }


def cmd_find_alpha(args):
    lo, hi = args.range
    rng = (lo, hi)
    if args.structure:
        L = _load_poset(args.structure)
        rep = alpha_search.construct_singular_instance(
            L, tol=args.tol, r_max=args.r_max, alpha_range=rng, grid=args.grid, precision=args.precision
        )
        results = _report_search(rep)
        text = (
            f"S = {{{', '.join(map(str, rep.set))}}}  (inflation power r = {rep.r_used})\n"
            f"Psi(x_{rep.i + 1}) changes sign on alpha in {_fmt(rep.alpha0)}\n"
            f"alpha0 ~ {float(rep.alpha0.mid):.10g}  verified: {rep.verified}\n"
        )
        return io_formats.Report("find-alpha", {"structure": args.structure}, results), text, None
    S = _load_set(args)
    i = len(S) - 1 if args.index is None else args.index - 1
    if not 0 <= i < len(S):
        raise UsageError(f"--index must be between 1 and {len(S)}")
    bracket = alpha_search.find_sign_change(S, i, rng, args.grid, args.precision)
    inputs = {"set": list(S), "index": i, "range": [lo, hi], "grid": args.grid}
    if bracket is None:
        text = f"no sign change of Psi(x_{i + 1}) in ({float(lo):g}, {float(hi):g})\n"
        return io_formats.Report("find-alpha", inputs, {"bracket": None}), text, None
    alpha0, steps = alpha_search.bisect_root(S, i, bracket, args.tol, args.precision)
    results = {"bracket": [bracket.a_lo, bracket.a_hi], "alpha0": alpha0, "iterations": steps}
    text = (
        f"Psi(x_{i + 1}) changes sign on alpha in {_fmt(alpha0)}\n"
        f"alpha0 ~ {float(alpha0.mid):.10g}  ({steps} bisection steps)\n"
    )
    return io_formats.Report("find-alpha", inputs, results), text, None


def cmd_analyze(args):
    S = _load_set(args)
    alpha = args.alpha
    verdict = matrices.is_singular_power_lcm(S, alpha, args.precision)
    results = {
        "set": list(S),
        "alpha": alpha,
        "psi": list(verdict.psi),
        "singular": verdict.singular,
        "witnesses": list(verdict.witnesses),
        "exact": verdict.exact,
    }
    lines = [f"S = {{{', '.join(map(str, S))}}}", f"alpha = {alpha}"]
    for k, v in enumerate(verdict.psi):
        lines.append(f"  Psi(x_{k + 1}) = {_fmt(v)}")
    if verdict.exact:
        det = matrices.det_product(S, alpha)
        results["det_gcd_reciprocal"] = det
        results["det_lcm_power"] = det * matrices.exact_power(math.prod(S.elems), alpha) ** 2
        lines.append(f"det (S)_(1/N^alpha) = {det}")
        lines.append(f"det [S]_(N^alpha)   = {results['det_lcm_power']}")
    state = {True: "singular", False: "nonsingular", None: "undecided"}[verdict.singular]
    lines.append(f"power LCM matrix: {state}")
    if verdict.witnesses:
        lines.append("witnesses: " + ", ".join(f"x_{k + 1}" for k in verdict.witnesses))
    dot = io_formats.emit_dot(S.poset(), labels=[str(x) for x in S])
    if args.dot:
        lines.append("")
        lines.append(dot.rstrip("\n"))
    inputs = {"set": list(S), "alpha": alpha}
    return io_formats.Report("analyze", inputs, results), "\n".join(lines) + "\n", dot


def _parse_inflate(text: str) -> tuple[int, int]:
    try:
        a, b = text.split(":")
        return int(a), int(b)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected ELEMENT:POWER, got {text!r}")


def cmd_realize(args):
    L = _load_poset(args.poset_file)
    primes = None
    if args.primes:
        primes = [int(t) for t in args.primes.replace(",", " ").split()]
    real = integer_sets.realize_squarefree(L, primes)
    powers = []
    for element, power in args.inflate or []:
        if not 0 <= element < L.n:
            raise BadIndex(f"element {element} out of range for n={L.n}")
        if power < 1:
            raise UsageError("inflation power must be positive")
        powers.append((real.position(element), power))
    S = integer_sets.inflate_many(real, powers)
    values = []
    for e in range(L.n):
        b = real.base[real.position(e)]
        v = b
        for j, power in powers:
            if b % real.base[j] == 0:
                v *= real.primes[j] ** power
        values.append(v)
    results = {"set": list(S), "element_values": values, "primes": [real.primes[real.position(e)] for e in range(L.n)]}
    text = "{" + ", ".join(map(str, S)) + "}\n"
    dot = io_formats.emit_dot(L, labels=[str(v) for v in values])
    inputs = {"poset": args.poset_file, "primes": primes, "inflate": [list(x) for x in args.inflate or []]}
    return io_formats.Report("realize", inputs, results), text, dot


def cmd_sample(args):
    rng = random.Random(args.seed)
    samples = [
        corpus.random_gcd_closed_set(rng, max_n=args.max_n, odd=not args.allow_even)
        for _ in range(args.count)
    ]
    rows = []
    for s in samples:
        verdict = matrices.is_singular_power_lcm(s.set, args.alpha)
        rows.append({"set": list(s.set), "singular": verdict.singular, "witnesses": list(verdict.witnesses)})
    label = {True: "singular", False: "nonsingular", None: "undecided"}
    text = "".join(f"{label[r['singular']]:<12}{io_formats.emit_int_set(r['set'])}" for r in rows)
    inputs = {"count": args.count, "seed": args.seed, "max_n": args.max_n, "alpha": args.alpha}
    return io_formats.Report("sample", inputs, {"samples": rows}), text, None


# ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lcmlat",
        description="Singularity of power LCM matrices on GCD-closed sets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="count meet semilattices and run the 8-element filters")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--min-cover", type=int, default=3)
    p.add_argument("--count-posets", dest="count_posets", action="store_true", default=None)
    p.add_argument("--no-count-posets", dest="count_posets", action="store_false")
    p.add_argument("--show", action="store_true", help="list surviving representatives")
    _common(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("verify-counterexample", help="exact check of the odd 9-element singular set")
    p.add_argument("--alpha", type=_exact_number, default=Fraction(1))
    p.add_argument("--dual", action="store_true", help="also emit the LCM-closed dual set")
    p.add_argument("--q", type=int, help="multiply the two largest elements by q")
    _common(p)
    p.set_defaults(func=cmd_verify_counterexample)

    p = sub.add_parser("find-alpha", help="locate an exponent where Psi changes sign")
    p.add_argument("set_file", nargs="?")
    p.add_argument("--set", dest="set_values", help="set given inline, e.g. '1,3,5,45'")
    p.add_argument("--structure", help="poset file; build a set and exponent from scratch")
    p.add_argument("--index", type=int, help="1-based element index (default: the largest)")
    p.add_argument("--range", nargs=2, type=_exact_number, default=[Fraction(1, 1024), Fraction(64)], metavar=("LO", "HI"))
    p.add_argument("--grid", type=int, default=64)
    _common(p)
    p.set_defaults(func=cmd_find_alpha)

    p = sub.add_parser("analyze", help="Psi values, determinants and singularity of one set")
    p.add_argument("set_file", nargs="?")
    p.add_argument("--set", dest="set_values")
    p.add_argument("--alpha", type=_exact_number, default=Fraction(1))
    p.add_argument("--dot", action="store_true", help="append the Hasse diagram in DOT")
    _common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("realize", help="squarefree integer realization of a poset file")
    p.add_argument("poset_file")
    p.add_argument("--primes", help="primes for the non-minimal elements, in element order")
    p.add_argument("--inflate", type=_parse_inflate, action="append", metavar="ELEMENT:POWER")
    _common(p)
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("sample", help="seeded random GCD-closed sets with their verdicts")
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--max-n", type=int, default=8)
    p.add_argument("--alpha", type=_exact_number, default=Fraction(1))
    p.add_argument("--allow-even", action="store_true", help="allow the prime 2")
    _common(p)
    p.set_defaults(func=cmd_sample)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, text, dot = args.func(args)
    except UsageError as exc:
        print(f"lcmlat: error: {exc}", file=sys.stderr)
        return 2
    except LcmLatticeError as exc:
        print(f"lcmlat: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    if args.format == "json":
        out = report.to_json()
    elif args.format == "dot":
        if dot is None:
            print(f"lcmlat: error: {args.command} has no DOT output", file=sys.stderr)
            return 2
        out = dot
    else:
        out = text
    if args.output:
        Path(args.output).write_text(out, encoding="utf-8")
    else:
        sys.stdout.write(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())

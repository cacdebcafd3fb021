"""Command-line front end: ``geode expand|verify|paths|special|conjecture``.

Exit status: 0 on success, 1 when a verification check fails, 2 on usage
errors (including invalid path or coefficient literals).
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import paths as P
from .errors import GeodeError
from .report import VerificationReport
from .series import TruncationContext, format_rational, parse_rational
from .solver import (
    GeodeBundle,
    conjecture_coefficients,
    evaluate_geode_at_zero_sum,
    random_zero_sum_vectors,
    solve_wiener_hopf_pair,
    verify_core_identities,
    verify_wiener_hopf,
    verify_zero_sum,
    wiener_hopf_context,
)
from .specializations import (
    DEFAULT_TERMS,
    SPECIALIZATIONS,
    closed_form_expand,
    specialize_named,
    verify_specialization_identities,
)

SUITES = ("core", "primes", "wienerhopf", "special", "zerosum", "all")


class UsageError(Exception):
    pass


def _emit(doc, fmt: str, table: str) -> None:
    if fmt == "json":
        print(json.dumps(doc, indent=2))
    else:
        print(table)


def _context(args, y_default=0) -> TruncationContext:
    if args.m < 1 or args.degree < 0:
        raise UsageError("--m must be >= 1 and --degree >= 0")
    y = args.y_degree if getattr(args, "y_degree", None) is not None else y_default
    return TruncationContext(args.m, args.degree, y)


def cmd_expand(args) -> int:
    if args.series in ("Sy", "Ny"):
        ctx = _context(args, wiener_hopf_context(args.m, args.degree).y_degree)
        bundle = solve_wiener_hopf_pair(ctx)
        s = bundle.S_y if args.series == "Sy" else bundle.N_y
    else:
        if getattr(args, "y_degree", None):
            raise UsageError(f"--y-degree does not apply to {args.series}")
        s = GeodeBundle.build(_context(args)).series(args.series)
    rows = [f"{format_rational(c):>12}  {mon}" for mon, c in s.items()]
    _emit(s.to_json(), args.format, f"{args.series} in {s.context}\n" + "\n".join(rows))
    return 0


def run_suite(suite: str, m: int, degree: int, terms: int = DEFAULT_TERMS, seed: int = 0, vectors: int = 20) -> VerificationReport:
    report = VerificationReport()
    if suite in ("core", "all"):
        report += verify_core_identities(GeodeBundle.build(TruncationContext(m, degree)))
    if suite in ("primes", "all"):
        ctx = TruncationContext(m, degree)
        S = GeodeBundle.build(ctx).S
        for c in (P.PathClass.ARCH, P.PathClass.PRIME_NONNEGATIVE, P.PathClass.PRIME_POSITIVE):
            report += P.verify_prime_gf(c, ctx, S)
    if suite in ("wienerhopf", "all"):
        report += verify_wiener_hopf(solve_wiener_hopf_pair(wiener_hopf_context(m, degree)))
    if suite in ("special", "all"):
        report += verify_specialization_identities(terms)
    if suite in ("zerosum", "all"):
        rng = random.Random(seed)
        report += verify_zero_sum(random_zero_sum_vectors(rng, vectors), degree)
    return report


def cmd_verify(args) -> int:
    _context(args)
    report = run_suite(args.suite, args.m, args.degree, args.terms, args.seed, args.vectors)
    _emit(report.to_json(), args.format, report.table())
    return 0 if report.passed else 1


def _ups(text):
    if text is None:
        raise UsageError("--ups is required")
    ups = [int(u) for u in text.split(",")] if text.strip() else []
    if any(u < 0 for u in ups):
        raise UsageError("--ups entries must be nonnegative")
    return ups


def _path(text):
    if text is None:
        raise UsageError("--path is required")
    return P.parse_path(text)


def cmd_paths(args) -> int:
    cls = P.as_class(args.cls)
    fmt = args.format
    if args.action in ("count", "list"):
        ups = _ups(args.ups)
        downs = "all" if args.down_count is None else args.down_count
        found = P.enumerate_class(cls, ups, downs)
        strings = [P.format_path(p) for p in found]
        if args.action == "count":
            doc = {"class": cls.value, "ups": ups, "count": len(found)}
            _emit(doc, fmt, str(len(found)))
        else:
            doc = {"paths": strings, "count": len(found)}
            _emit(doc, fmt, "\n".join(f"({s})" for s in strings) + f"\n{len(found)} paths")
    elif args.action == "factor":
        factors = P.prime_factorize(_path(args.path), cls)
        strings = [P.format_path(f) for f in factors]
        _emit({"class": cls.value, "factors": strings}, fmt, " | ".join(f"({s})" for s in strings))
    elif args.action == "lemma":
        strict = cls is P.PathClass.REVERSE_POSITIVE
        factors = P.factor_reverse(_path(args.path), strict=strict)
        strings = [P.format_path(f) for f in factors]
        sep = " D "
        text = sep.join(f"({s})" for s in strings) + (" D" if strict and strings else "")
        _emit({"strict": strict, "excursions": strings}, fmt, text)
    elif args.action == "wh":
        a, b, c = P.wiener_hopf_factor(_path(args.path))
        doc = {
            "reverse_positive": P.format_path(a),
            "excursion": P.format_path(b),
            "positive": P.format_path(c),
        }
        _emit(doc, fmt, f"({doc['reverse_positive']}) | ({doc['excursion']}) | ({doc['positive']})")
    return 0


def cmd_special(args) -> int:
    if args.terms < 1:
        raise UsageError("--terms must be >= 1")
    names = list(SPECIALIZATIONS) if args.name == "all" else [args.name]
    docs, lines, ok = [], [], True
    for name in names:
        seq = specialize_named(name, args.terms)
        doc = seq.to_json()
        line = f"{name:<16} " + ", ".join(str(t) for t in seq.terms)
        if args.closed_form:
            match = list(seq.terms) == closed_form_expand(name, args.terms).coefficients()
            doc["closed_form_agrees"] = match
            line += "" if match else "   [closed form DISAGREES]"
            ok &= match
        docs.append(doc)
        lines.append(line)
    _emit(docs[0] if len(docs) == 1 else docs, args.format, "\n".join(lines))
    return 0 if ok else 1


def cmd_conjecture(args) -> int:
    if (args.k is None) == (args.coeffs is None):
        raise UsageError("give exactly one of --k or --coeffs")
    if args.degree < 0:
        raise UsageError("--degree must be >= 0")
    if args.k is not None:
        if args.k < 0:
            raise UsageError("--k must be >= 0")
        coeffs = conjecture_coefficients(args.k)
    else:
        coeffs = tuple(parse_rational(v) for v in args.coeffs.split(","))
    ev = evaluate_geode_at_zero_sum(coeffs, args.degree)
    terms = [format_rational(c) for c in ev.G.coefficients()]
    doc = {
        "coefficients": [format_rational(c) for c in ev.coefficients],
        "degree": ev.degree,
        "terms": terms,
        "closed_form_terms": [format_rational(c) for c in ev.closed_form.coefficients()],
        "H_terms": [format_rational(c) for c in ev.H.coefficients()],
        "agrees": ev.agrees,
    }
    status = "agrees with" if ev.agrees else "DISAGREES with"
    table = (
        f"G({', '.join(doc['coefficients'])}) = " + ", ".join(terms) + "\n"
        f"{status} 1/(1 - sum n*c_n f); H equal: {ev.H == ev.G}"
    )
    _emit(doc, args.format, table)
    return 0 if ev.agrees else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="geode", description="Exact Geode series and lattice-path checks")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, window=True):
        p.add_argument("--format", choices=("table", "json"), default="table")
        if window:
            p.add_argument("--m", type=int, default=3, help="number of variables t_1..t_m")
            p.add_argument("--degree", type=int, default=4, help="t-degree bound")

    p = sub.add_parser("expand", help="print S, G, H, S(y) or N(y)")
    common(p)
    p.add_argument("--series", choices=("S", "G", "H", "Sy", "Ny"), default="S")
    p.add_argument("--y-degree", type=int, default=None)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("verify", help="run verification suites")
    common(p)
    p.add_argument("--suite", choices=SUITES, default="core")
    p.add_argument("--terms", type=int, default=DEFAULT_TERMS, help="sequence length for the special suite")
    p.add_argument("--seed", type=int, default=0, help="seed for random zero-sum vectors")
    p.add_argument("--vectors", type=int, default=20)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("paths", help="enumerate and factor lattice paths")
    common(p, window=False)
    p.add_argument("action", choices=("count", "list", "factor", "lemma", "wh"))
    p.add_argument("--class", dest="cls", choices=[c.value for c in P.PathClass], default="nonnegative")
    p.add_argument("--ups", help="up-step multiset, e.g. 0,1,1")
    p.add_argument("--down-count", type=int, default=None)
    p.add_argument("--path", help='steps, e.g. "2,-1,-1"; empty string for the empty path')
    p.set_defaults(func=cmd_paths)

    p = sub.add_parser("special", help="Catalan, Motzkin, Riordan, Schroeder sequences")
    common(p, window=False)
    p.add_argument("--name", choices=[*SPECIALIZATIONS, "all"], default="all")
    p.add_argument("--terms", type=int, default=DEFAULT_TERMS)
    p.add_argument("--closed-form", action="store_true", help="also compare against the radical closed form")
    p.set_defaults(func=cmd_special)

    p = sub.add_parser("conjecture", help="G at a zero-sum point, e.g. (0,-f,f,...,-f,f)")
    common(p, window=False)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--coeffs", default=None, help='comma-separated rationals, e.g. "1,-1/2,-1/2"')
    p.add_argument("--degree", type=int, default=10)
    p.set_defaults(func=cmd_conjecture)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, GeodeError, ValueError) as exc:
        print(f"geode {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

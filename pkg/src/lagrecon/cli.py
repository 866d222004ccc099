"""Command-line front end: ``lagrecon <verb> [options]``.

Data goes to stdout, diagnostics to stderr. Exit status is 0 on success, 1
when a verification fails or a requested point is a pole, and 2 for usage
errors (argparse's own convention).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Callable, List, Optional, Sequence

from . import __version__
from .convexity import certify_convexity, convexity_interval, interval_table
from .errors import NotPositiveError, PoleError
from .exact import Poly, format_rational, parse_rational
from .fundamental import (alpha_interp, alpha_recon, certify_roots, lambda_interp,
                          lambda_recon, mu_interp, mu_recon)
from .roots import decimal_str, refine_root
from .stencil import Stencil, Subdivision, is_positive_subdivision, standard_subdivision
from .verify import SUITES, run_suites
from .weights import load_memo, save_memo, sigma_family, weights_at

FORMATS = ("text", "csv", "json", "latex")
_NEG_NUMBER = re.compile(r"^-\d+(/\d+)?$")
_MEMO_FILE = "sigma_memo.json"


class UsageError(Exception):
    """Raised for argument combinations argparse cannot reject on its own."""


# -- argument parsing -----------------------------------------------------------

def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(
            f"{exc}; give an exact rational such as 1/2 or -3") from None


def _positive_rational(text: str) -> Fraction:
    v = _rational(text)
    if v <= 0:
        raise argparse.ArgumentTypeError("width must be positive")
    return v


def _join_negative_values(argv: Sequence[str]) -> List[str]:
    """Turn ``--opt -1/2`` into ``--opt=-1/2`` so argparse does not see an option."""
    out: List[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if (tok.startswith("--") and "=" not in tok and i + 1 < len(argv)
                and _NEG_NUMBER.match(argv[i + 1])):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def _add_stencil(p: argparse.ArgumentParser, ks: bool = False) -> None:
    p.add_argument("--mm", type=int, required=True, help="left extent M-")
    p.add_argument("--mp", type=int, required=True, help="right extent M+")
    if ks:
        p.add_argument("--ks", type=int, required=True, help="subdivision level K_s")


def _add_output(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=FORMATS, default="text")
    p.add_argument("--decimal", type=int, metavar="D", default=None,
                   help="render numbers as decimals with D significant digits")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lagrecon",
        description="Exact Lagrange reconstruction polynomials and their weight-functions.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="verb", required=True, metavar="VERB")

    p = sub.add_parser("alpha", help="fundamental or error polynomials of a stencil")
    _add_stencil(p)
    p.add_argument("--ell", type=int, default=None, help="node (default: every node)")
    p.add_argument("--kind", choices=("interp", "recon"), default="recon")
    p.add_argument("--series", choices=("alpha", "mu", "lambda"), default="alpha",
                   help="print the basis polynomials or an error polynomial")
    p.add_argument("--order", type=int, default=None,
                   help="error order n >= M+1 for --series mu/lambda (default M+1)")
    _add_output(p)

    p = sub.add_parser("weights", help="weight-functions of a subdivision")
    _add_stencil(p, ks=True)
    p.add_argument("--xi", type=_rational, default=None, help="exact evaluation point P/Q")
    _add_output(p)

    p = sub.add_parser("table", help="tables over the standard stencils")
    p.add_argument("kind", choices=("weno", "convexity"))
    p.add_argument("--max-m", type=int, required=True)
    p.add_argument("--xi", type=_rational, default=Fraction(1, 2))
    p.add_argument("--digits", type=int, default=12)
    _add_output(p)

    p = sub.add_parser("roots", help="certified roots of a reconstruction basis polynomial")
    _add_stencil(p)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--width", type=_positive_rational, default=Fraction(1, 10 ** 12))
    p.add_argument("--digits", type=int, default=12)
    p.add_argument("--format", choices=FORMATS, default="text")

    p = sub.add_parser("convexity", help="certified convexity interval around xi = 1/2")
    _add_stencil(p, ks=True)
    p.add_argument("--width", type=_positive_rational, default=Fraction(1, 10 ** 12))
    p.add_argument("--digits", type=int, default=12)
    p.add_argument("--no-certify", action="store_true",
                   help="skip the exact positivity certificate")
    p.add_argument("--format", choices=FORMATS, default="text")

    p = sub.add_parser("verify", help="run property suites")
    p.add_argument("--suite", choices=SUITES + ("all",), default="all")
    p.add_argument("--max-m", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    return parser


# -- rendering helpers -----------------------------------------------------------

def _num(x: Fraction, digits: Optional[int]) -> str:
    if digits is None:
        return format_rational(x)
    with localcontext() as ctx:
        ctx.prec = digits
        v = Decimal(x.numerator) / Decimal(x.denominator)
        return format(+v, "g")


def _coeffs(p: Poly, digits: Optional[int]) -> List[str]:
    return [_num(c, digits) for c in p.coeffs] or ["0"]


def _latex_num(x: Fraction, digits: Optional[int]) -> str:
    if digits is not None:
        return _num(x, digits)
    if x.denominator == 1:
        return str(x.numerator)
    sign = "-" if x < 0 else ""
    return rf"{sign}\tfrac{{{abs(x.numerator)}}}{{{x.denominator}}}"


def _csv(rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerows(rows)
    return buf.getvalue()


def _latex_table(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    lines = [r"\begin{tabular}{" + "l" * len(header) + "}", r"\hline",
             " & ".join(header) + r" \\", r"\hline"]
    lines += [" & ".join(r) + r" \\" for r in rows]
    lines += [r"\hline", r"\end{tabular}"]
    return "\n".join(lines) + "\n"


def _stencil(args) -> Stencil:
    try:
        return Stencil(args.mm, args.mp)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _subdivision(args) -> Subdivision:
    try:
        return Subdivision(_stencil(args), args.ks)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# -- verbs --------------------------------------------------------------------------

def cmd_alpha(args, out) -> int:
    s = _stencil(args)
    if args.ell is not None and args.ell not in s:
        raise UsageError(f"--ell {args.ell} outside stencil {s.label()}")
    digits = args.decimal
    if args.series == "alpha":
        fn: Callable = alpha_recon if args.kind == "recon" else alpha_interp
        ells = [args.ell] if args.ell is not None else list(s.points)
        items = [(f"ell={e}", e, fn(s, e)) for e in ells]
    else:
        n = args.order if args.order is not None else s.M + 1
        if n <= s.M:
            raise UsageError(f"--order must be at least M+1 = {s.M + 1}")
        table = {("mu", "recon"): mu_recon, ("mu", "interp"): mu_interp,
                 ("lambda", "recon"): lambda_recon, ("lambda", "interp"): lambda_interp}
        items = [(f"n={n}", n, table[(args.series, args.kind)](s, n))]
    fmt = args.format
    if fmt == "text":
        for label, _, p in items:
            body = p.pretty() if digits is None else " ".join(_coeffs(p, digits))
            out.write(f"{label}: {body}\n")
    elif fmt == "csv":
        key = "ell" if args.series == "alpha" else "n"
        rows = [[key, "power", "coefficient"]]
        for _, idx, p in items:
            rows += [[idx, k, _num(c, digits)] for k, c in enumerate(p.coeffs)]
        out.write(_csv(rows))
    elif fmt == "json":
        key = "ell" if args.series == "alpha" else "n"
        json.dump({"stencil": s.to_json(), "kind": args.kind, "series": args.series,
                   "polynomials": [{key: idx, "coeffs": _coeffs(p, digits)}
                                   for _, idx, p in items]}, out, indent=2)
        out.write("\n")
    else:
        sym = {"alpha": r"\alpha", "mu": r"\mu", "lambda": r"\lambda"}[args.series]
        sub = "R_1" if args.kind == "recon" else "I"
        head = [r"$\ell$" if args.series == "alpha" else "$n$",
                rf"${sym}_{{{sub},{s.m_minus},{s.m_plus}}}(\xi)$"]
        out.write(_latex_table(head, [[str(idx), f"${p.latex()}$"] for _, idx, p in items]))
    return 0


def cmd_weights(args, out, err) -> int:
    sd = _subdivision(args)
    fam = sigma_family(sd)
    digits = args.decimal
    values = None
    if args.xi is not None:
        try:
            values = weights_at(sd, args.xi)
        except PoleError as exc:
            err.write(f"PoleError: {exc}\n")
            return 1
        if any(not 0 < v < 1 for v in values):
            err.write(f"note: the weights at xi = {format_rational(args.xi)} are not a convex "
                      "combination (some weight lies outside (0, 1))\n")
    fmt = args.format
    if fmt == "text":
        if values is not None:
            out.write(" ".join(_num(v, digits) for v in values) + "\n")
        else:
            for k, rf in enumerate(fam):
                out.write(f"k_s={k}: num=[{', '.join(_coeffs(rf.numerator, digits))}] "
                          f"den=[{', '.join(_coeffs(rf.denominator, digits))}]\n")
    elif fmt == "csv":
        rows = [["m_minus", "m_plus", "ks", "k_s", "num", "den", "value"]]
        for k, rf in enumerate(fam):
            rows.append([sd.m_minus, sd.m_plus, sd.ks, k,
                         " ".join(_coeffs(rf.numerator, digits)),
                         " ".join(_coeffs(rf.denominator, digits)),
                         "" if values is None else _num(values[k], digits)])
        out.write(_csv(rows))
    elif fmt == "json":
        doc = {"subdivision": sd.to_json(),
               "xi": None if args.xi is None else format_rational(args.xi),
               "weights": []}
        for k, rf in enumerate(fam):
            entry = {"k_s": k, "num": _coeffs(rf.numerator, digits),
                     "den": _coeffs(rf.denominator, digits)}
            if values is not None:
                entry["value"] = _num(values[k], digits)
            doc["weights"].append(entry)
        json.dump(doc, out, indent=2)
        out.write("\n")
    else:
        sid = f"$({sd.m_minus},{sd.m_plus},{sd.ks})$"
        if values is not None:
            rows = [[sid, str(k), f"${_latex_num(v, digits)}$"] for k, v in enumerate(values)]
            head = ["stencil", "$k_s$", rf"$\sigma(\xi={format_rational(args.xi)})$"]
        else:
            rows = [[sid, str(k), rf"$\dfrac{{{rf.numerator.latex()}}}{{{rf.denominator.latex()}}}$"]
                    for k, rf in enumerate(fam)]
            head = ["stencil", "$k_s$", r"$\sigma(\xi)$"]
        out.write(_latex_table(head, rows))
    return 0


def cmd_table(args, out, err) -> int:
    if args.max_m < 2:
        raise UsageError("--max-m must be at least 2")
    digits = args.decimal
    fmt = args.format
    if args.kind == "weno":
        rows = []
        for M in range(2, args.max_m + 1):
            sd = standard_subdivision(M)
            try:
                vals = weights_at(sd, args.xi)
            except PoleError as exc:
                err.write(f"PoleError: {exc}\n")
                return 1
            rows.append((M, sd, vals))
        if fmt == "text":
            for M, sd, vals in rows:
                out.write(f"M={M} {sd.label()}: {' '.join(_num(v, digits) for v in vals)}\n")
        elif fmt == "csv":
            data = [["M", "m_minus", "m_plus", "ks", "k_s", "weight"]]
            for M, sd, vals in rows:
                data += [[M, sd.m_minus, sd.m_plus, sd.ks, k, _num(v, digits)]
                         for k, v in enumerate(vals)]
            out.write(_csv(data))
        elif fmt == "json":
            json.dump({"xi": format_rational(args.xi),
                       "rows": [{"M": M, "subdivision": sd.to_json(),
                                 "weights": [_num(v, digits) for v in vals]}
                                for M, sd, vals in rows]}, out, indent=2)
            out.write("\n")
        else:
            body = [[f"$({sd.m_minus},{sd.m_plus},{sd.ks})$", str(k),
                     f"${_latex_num(v, digits)}$"]
                    for M, sd, vals in rows for k, v in enumerate(vals)]
            out.write(_latex_table(["stencil", "$k_s$", r"$\sigma$"], body))
        return 0
    table = interval_table(args.max_m, args.digits)
    if fmt == "text":
        for r in table:
            out.write(f"M={r.M} {r.sd.label()}: lo={r.lo} hi={r.hi} length={r.length}\n")
    elif fmt == "csv":
        data = [["M", "m_minus", "m_plus", "ks", "lo", "hi", "length"]]
        data += [[r.M, r.sd.m_minus, r.sd.m_plus, r.sd.ks, r.lo, r.hi, r.length] for r in table]
        out.write(_csv(data))
    elif fmt == "json":
        json.dump({"rows": [{"M": r.M, "subdivision": r.sd.to_json(), "lo": r.lo,
                             "hi": r.hi, "length": r.length} for r in table]}, out, indent=2)
        out.write("\n")
    else:
        body = [[str(r.M), f"$({r.sd.m_minus},{r.sd.m_plus},{r.sd.ks})$", r.lo, r.hi, r.length]
                for r in table]
        out.write(_latex_table(["$M$", "stencil", r"$\xi^-$", r"$\xi^+$", "length"], body))
    return 0


def cmd_roots(args, out) -> int:
    s = _stencil(args)
    if args.ell not in s:
        raise UsageError(f"--ell {args.ell} outside stencil {s.label()}")
    if s.M < 1:
        raise UsageError("root certificates need M >= 1")
    cert = certify_roots(s, args.ell)
    rows = []
    for n, iv in zip(cert.windows, cert.roots):
        r = refine_root(iv, args.width)
        rows.append((n, r, decimal_str(r, args.digits)))
    fmt = args.format
    if fmt == "text":
        out.write(f"stencil {s.label()} ell={args.ell}: {cert.sturm_count} real roots "
                  f"(Sturm count)\n")
        for n, r, approx in rows:
            out.write(f"window {n}: [{format_rational(r.lo)}, {format_rational(r.hi)}] "
                      f"~ {approx}\n")
        ints = " ".join(str(v) for v in cert.integer_roots) or "none"
        out.write(f"integer roots: {ints}\n")
    elif fmt == "csv":
        data = [["window", "lo", "hi", "approx", "exact"]]
        data += [[n, format_rational(r.lo), format_rational(r.hi), a, int(r.is_exact)]
                 for n, r, a in rows]
        out.write(_csv(data))
    elif fmt == "json":
        doc = cert.to_json()
        doc["roots"] = [dict(window=n, approx=a, **r.to_json()) for n, r, a in rows]
        json.dump(doc, out, indent=2)
        out.write("\n")
    else:
        body = [[str(n), f"${_latex_num(r.lo, None)}$", f"${_latex_num(r.hi, None)}$", a]
                for n, r, a in rows]
        out.write(_latex_table(["$n$", "lo", "hi", "approx"], body))
    return 0


def cmd_convexity(args, out, err) -> int:
    sd = _subdivision(args)
    if not is_positive_subdivision(sd):
        raise UsageError(f"{sd.label()} is not a positive subdivision "
                         "(need -M- <= 0 < 1 <= M+ and 1 <= K_s <= min(M-+1, M+))")
    ci = convexity_interval(sd)
    status = "skipped"
    code = 0
    if not args.no_certify:
        rep = certify_convexity(ci)
        status = "certified" if rep.ok else f"FAILED ({rep.reason})"
        code = 0 if rep.ok else 1
    lo, hi, length = ci.approx(args.digits)
    r = ci.refined(args.width)
    fmt = args.format
    if fmt == "text":
        out.write(f"subdivision {sd.label()}\n")
        out.write(f"lo ~ {lo}  in [{format_rational(r.lo.lo)}, {format_rational(r.lo.hi)}]"
                  f"  root of alpha_R1{ci.lo_name[:3]} in window {ci.lo_name[3]}\n")
        out.write(f"hi ~ {hi}  in [{format_rational(r.hi.lo)}, {format_rational(r.hi.hi)}]"
                  f"  root of alpha_R1{ci.hi_name[:3]} in window {ci.hi_name[3]}\n")
        out.write(f"length ~ {length}\npositivity: {status}\n")
    elif fmt == "csv":
        data = [["m_minus", "m_plus", "ks", "lo", "hi", "length", "status"],
                [sd.m_minus, sd.m_plus, sd.ks, lo, hi, length, status]]
        out.write(_csv(data))
    elif fmt == "json":
        doc = ci.to_json(args.digits)
        doc["positivity"] = status
        json.dump(doc, out, indent=2)
        out.write("\n")
    else:
        out.write(_latex_table(["stencil", r"$\xi^-$", r"$\xi^+$", "length"],
                               [[f"$({sd.m_minus},{sd.m_plus},{sd.ks})$", lo, hi, length]]))
    if code:
        err.write(f"convexity certificate failed: {status}\n")
    return code


def cmd_verify(args, out) -> int:
    if args.max_m < 0:
        raise UsageError("--max-m must be non-negative")
    suites = SUITES if args.suite == "all" else (args.suite,)
    total = failed = 0
    for res in run_suites(suites, args.max_m, jobs=args.jobs):
        total += 1
        failed += not res.ok
        out.write(res.line() + "\n")
        out.flush()
    out.write(f"{total - failed}/{total} cases passed\n")
    return 1 if failed else 0


# -- entry point ------------------------------------------------------------------

def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_join_negative_values(argv))
    except SystemExit as exc:  # argparse already printed its message
        return int(exc.code or 0)
    cache_dir = os.environ.get("RECON_CACHE_DIR")
    memo_path = os.path.join(cache_dir, _MEMO_FILE) if cache_dir else None
    if memo_path and args.verb in ("weights", "table", "convexity", "verify"):
        load_memo(memo_path)
    try:
        if args.verb == "alpha":
            code = cmd_alpha(args, out)
        elif args.verb == "weights":
            code = cmd_weights(args, out, err)
        elif args.verb == "table":
            code = cmd_table(args, out, err)
        elif args.verb == "roots":
            code = cmd_roots(args, out)
        elif args.verb == "convexity":
            code = cmd_convexity(args, out, err)
        else:
            code = cmd_verify(args, out)
    except (UsageError, NotPositiveError) as exc:
        err.write(f"lagrecon {args.verb}: error: {exc}\n")
        return 2
    if memo_path and args.verb in ("weights", "table", "convexity", "verify"):
        os.makedirs(cache_dir, exist_ok=True)
        save_memo(memo_path)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

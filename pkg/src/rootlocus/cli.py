"""
Command-line front end.

    rootlocus roots     --n 2 --B 0,1 --A 1 --m 10 --out roots.csv
    rootlocus quotients --n 3 --B 0,1 --A 1 --m 30 --out q.csv
    rootlocus curve     --quotient --n 4 --samples 1000
    rootlocus verify    --n 3 --B 1 --A 1 --m 5..40 --tol 1e-6
    rootlocus example   --a 4 --report
    rootlocus qdisc     --n 3 --A 1 --B 1 --q 1

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import re
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__
from .casework import classify_regime, cross_check, example_family
from .curves import (
    LocusSpec,
    accepted_mask,
    interval_bound,
    quotient_locus_residual,
    quotients_at_root,
    sample_locus,
    verify_theorem,
    window_around,
)
from .genfun import TrinomialFamily, h_roots, h_sequence
from .poly import ComplexPolynomial, discriminant, evaluate
from .qdisc import double_discriminant_example, q_discriminant_closed, q_discriminant_definition
from .rootfind import RootFindError

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3

_UNSIGNED = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_REAL = re.compile(rf"^[+-]?{_UNSIGNED}$")
_FULL = re.compile(rf"^(?P<re>[+-]?{_UNSIGNED})(?P<im>[+-](?:{_UNSIGNED})?)i$")
_IMAG = re.compile(rf"^(?P<im>[+-]?(?:{_UNSIGNED})?)i$")


class UsageError(Exception):
    pass


def _imag_part(text: str) -> float:
    return float(text + "1") if text in ("", "+", "-") else float(text)


def parse_complex(text: str) -> complex:
    """Parse ``re``, ``re+imi``, ``re-imi`` or ``imi`` literals."""
    s = text.strip()
    if _REAL.match(s):
        return complex(float(s), 0.0)
    m = _FULL.match(s)
    if m:
        return complex(float(m.group("re")), _imag_part(m.group("im")))
    m = _IMAG.match(s)
    if m:
        return complex(0.0, _imag_part(m.group("im")))
    raise UsageError(f"malformed complex literal {text!r}")


def parse_complex_list(text: str) -> list:
    parts = text.split(",")
    if any(not p.strip() for p in parts):
        raise UsageError(f"malformed coefficient list {text!r}")
    return [parse_complex(p) for p in parts]


def parse_m(text: str) -> list:
    if ".." in text:
        lo, hi = text.split("..", 1)
        try:
            lo, hi = int(lo), int(hi)
        except ValueError:
            raise UsageError(f"malformed m range {text!r}") from None
        if lo > hi or lo < 0:
            raise UsageError(f"empty or negative m range {text!r}")
        return list(range(lo, hi + 1))
    try:
        m = int(text)
    except ValueError:
        raise UsageError(f"malformed m {text!r}") from None
    if m < 0:
        raise UsageError("m must be nonnegative")
    return [m]


def parse_window(text: str) -> tuple:
    vals = text.split(",")
    if len(vals) != 4:
        raise UsageError("window needs xmin,xmax,ymin,ymax")
    try:
        x0, x1, y0, y1 = map(float, vals)
    except ValueError:
        raise UsageError(f"malformed window {text!r}") from None
    if not (x0 < x1 and y0 < y1):
        raise UsageError("window must satisfy xmin < xmax and ymin < ymax")
    return (x0, x1, y0, y1)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if math.isnan(x):
        return "nan"
    return f"{x + 0.0:.17g}"


def _json_value(x):
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return None if math.isnan(x) or math.isinf(x) else x + 0.0
    return x


def _threads() -> int:
    env = os.environ.get("ROOTLOCUS_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError("ROOTLOCUS_THREADS must be an integer") from None
    return os.cpu_count() or 1


def _map_m(fn, ms):
    """Run ``fn`` over ``ms``, possibly in threads; results stay in ``ms`` order."""
    workers = min(_threads(), len(ms))
    if workers <= 1:
        return [fn(m) for m in ms]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, ms))


def _write(args, columns, rows, meta):
    fmt = args.format or ("json" if args.out and args.out.endswith(".json") else "csv")
    if fmt == "json":
        doc = {
            "meta": meta,
            "columns": columns,
            "rows": [{c: _json_value(v) for c, v in zip(columns, r)} for r in rows],
        }
        text = json.dumps(doc, indent=1, sort_keys=True) + "\n"
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for r in rows:
            w.writerow([_fmt(v) for v in r])
        text = buf.getvalue()
    if args.out:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _family(args) -> TrinomialFamily:
    if args.A is None or args.B is None:
        raise UsageError("--A and --B are required")
    try:
        return TrinomialFamily.from_coeffs(parse_complex_list(args.A), parse_complex_list(args.B), args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _meta(args, family=None, **extra):
    meta = {"version": __version__, "command": args.command}
    if family is not None:
        meta["family"] = family.describe()
    meta.update(extra)
    return meta


def _sorted_roots(roots):
    roots = np.asarray(roots)
    return roots[np.lexsort((roots.imag, roots.real))]


def cmd_roots(args) -> int:
    family = _family(args)
    ms = parse_m(args.m)
    seq = h_sequence(family, max(ms))

    def work(m):
        p = seq[m]
        if p.is_zero() or p.degree < 1:
            return []
        rs = h_roots(family, m, seq=seq)
        a_abs = np.abs(evaluate(family.A, rs.roots))
        return [(m, z.real, z.imag, res, a) for z, res, a in zip(rs.roots, rs.residuals, a_abs)]

    rows = [r for block in _map_m(work, ms) for r in block]
    _write(args, ["m", "re", "im", "residual", "a_abs"], rows, _meta(args, family))
    return EXIT_OK


def cmd_quotients(args) -> int:
    family = _family(args)
    ms = parse_m(args.m)
    seq = h_sequence(family, max(ms))
    known = family.n in (2, 3, 4)

    def work(m):
        p = seq[m]
        if p.is_zero() or p.degree < 1:
            return []
        roots = h_roots(family, m, seq=seq).roots
        out = []
        for z in roots[accepted_mask(family, roots)]:
            qs = quotients_at_root(family, z)
            res = quotient_locus_residual(family.n, qs) if known else np.full(qs.size, np.nan)
            out.extend((m, z.real, z.imag, q.real, q.imag, r) for q, r in zip(qs, res))
        return out

    rows = [r for block in _map_m(work, ms) for r in block]
    cols = ["m", "z_re", "z_im", "q_re", "q_im", "locus_residual"]
    _write(args, cols, rows, _meta(args, family, conjectural=not known))
    return EXIT_OK


def cmd_curve(args) -> int:
    if args.samples < 2:
        raise UsageError("--samples must be at least 2")
    if args.quotient:
        if args.n not in (2, 3, 4):
            raise UsageError("quotient loci are available for n in {2, 3, 4}")
        spec = LocusSpec.quotient(args.n)
        pts = sample_locus(spec, args.samples)
        meta = _meta(args, locus="quotient", n=args.n)
    else:
        family = _family(args)
        if args.window:
            window = parse_window(args.window)
        elif args.m:
            roots = h_roots(family, parse_m(args.m)[-1]).roots
            window = window_around(roots)
        else:
            raise UsageError("root locus sampling needs --window or --m")
        spec = LocusSpec.root(family, window)
        pts = sample_locus(spec, args.samples)
        meta = _meta(args, family, locus="root", window=list(window),
                     conjectural=family.n >= 5)
    pts = _sorted_roots(pts)
    res = spec.residual(pts)
    rows = [(z.real, z.imag, r) for z, r in zip(pts, res)]
    _write(args, ["re", "im", "residual"], rows, meta)
    return EXIT_OK


def cmd_verify(args) -> int:
    family = _family(args)
    ms = parse_m(args.m)
    seq = h_sequence(family, max(ms))
    samples = None if args.no_density else args.samples
    reports = _map_m(lambda m: verify_theorem(family, m, tol=args.tol, seq=seq,
                                              density_samples=samples), ms)
    ok = True
    for rep in reports:
        line = rep.summary()
        if not rep.passed:
            ok = False
            if rep.conjectural:
                line += " conjecture violation candidate"
        print(line)
    conjectural = family.n >= 5
    print(f"overall: {'PASS' if ok else 'FAIL'}" + (" (conjectural)" if conjectural else ""))
    if args.out:
        cols = ["m", "total_roots", "filtered_roots", "max_residual",
                "max_normalized_residual", "hausdorff", "passed"]
        rows = [(r.m, r.total_roots, r.filtered_roots, r.max_residual,
                 r.max_normalized_residual, r.hausdorff_to_locus, r.passed) for r in reports]
        _write(args, cols, rows, _meta(args, family, tol=args.tol, conjectural=conjectural,
                                       interval=[0.0, interval_bound(family.n)]))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_example(args) -> int:
    a = args.a
    reg = classify_regime(a)
    dd = double_discriminant_example(a)
    print(f"a={_fmt(a)} regime={reg.regime.value}")
    for comp in reg.describe():
        print("component " + json.dumps(comp, sort_keys=True))
    print(f"double_discriminant={_fmt(dd)} closed_form={_fmt(4096 * a**3 * (a - 4))}")
    if args.report:
        if a in (0.0, 4.0):
            print(f"a={_fmt(a)} is a regime boundary: a root of the double discriminant 4096a^3(a-4)")
        else:
            print("critical values of a: 0 and 4 (roots of the double discriminant 4096a^3(a-4))")
    if args.m is None:
        return EXIT_OK
    rep = cross_check(a, args.m, tol=args.tol)
    ok = rep.passed and rep.example_max_residual <= args.tol
    print(rep.summary() + f" example_max_residual={rep.example_max_residual:.3e}")
    if args.out:
        rows = [(args.m, z.real, z.imag, g, e) for z, g, e in
                zip(rep.roots, rep.residuals, rep.example_residuals)]
        _write(args, ["m", "re", "im", "residual", "example_residual"], rows,
               _meta(args, example_family(a), a=a, regime=reg.regime.value, tol=args.tol))
    return EXIT_OK if ok else EXIT_FAIL


def cmd_qdisc(args) -> int:
    if args.A is None or args.B is None:
        raise UsageError("--A and --B are required")
    A0, B0, q = parse_complex(args.A), parse_complex(args.B), parse_complex(args.q)
    if A0 == 0:
        raise UsageError("A must be nonzero")
    if q == 0:
        raise UsageError("q must be nonzero")
    n = args.n
    c = np.zeros(n + 1, dtype=np.complex128)
    c[0], c[1], c[n] = 1, B0, A0
    p = ComplexPolynomial(c)
    definition = q_discriminant_definition(p, q)
    print(f"definition={_fmt(definition.real)}{_fmt_im(definition.imag)}")
    if n in (2, 3, 4):
        closed = q_discriminant_closed(A0, B0, n, q)
        print(f"closed_form={_fmt(closed.real)}{_fmt_im(closed.imag)}")
    disc = discriminant(p)
    print(f"ordinary_discriminant={_fmt(disc.real)}{_fmt_im(disc.imag)}")
    return EXIT_OK


def _fmt_im(x) -> str:
    s = _fmt(x)
    return (s if s.startswith("-") else "+" + s) + "i"


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="rootlocus", description=__doc__.split("\n\n")[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def family_args(sp, m_required=True):
        sp.add_argument("--n", type=int, required=True, help="degree gap of A(z) t^n")
        sp.add_argument("--A", help="ascending coefficients of A(z), e.g. 1,0,2-1i")
        sp.add_argument("--B", help="ascending coefficients of B(z)")
        sp.add_argument("--m", required=m_required, help="index m or range lo..hi")

    def output_args(sp):
        sp.add_argument("--out", help="output file (default stdout)")
        sp.add_argument("--format", choices=("csv", "json"))

    sp = sub.add_parser("roots", help="roots of H_m")
    family_args(sp)
    output_args(sp)
    sp.set_defaults(func=cmd_roots)

    sp = sub.add_parser("quotients", help="root quotients of D(t, z0) at roots of H_m")
    family_args(sp)
    output_args(sp)
    sp.set_defaults(func=cmd_quotients)

    sp = sub.add_parser("curve", help="samples of a root or quotient locus")
    sp.add_argument("--quotient", action="store_true", help="sample the fixed quotient curve")
    family_args(sp, m_required=False)
    sp.add_argument("--samples", type=int, default=512, help="number of locus points")
    sp.add_argument("--window", help="xmin,xmax,ymin,ymax for root loci")
    output_args(sp)
    sp.set_defaults(func=cmd_curve)

    sp = sub.add_parser("verify", help="check roots of H_m against the root locus")
    family_args(sp)
    sp.add_argument("--tol", type=float, default=1e-6, help="bound on residual/(1+|B^n/A|)")
    sp.add_argument("--samples", type=int, default=256, help="locus samples for the density statistic")
    sp.add_argument("--no-density", action="store_true", help="skip the Hausdorff statistic")
    output_args(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("example", help="the family 1/(1 + (z^2-2z+a)t + z^2 t^2)")
    sp.add_argument("--a", type=float, required=True, help="real parameter a")
    sp.add_argument("--report", action="store_true", help="print regime boundary notes")
    sp.add_argument("--m", type=int, help="also cross-check the roots of H_m")
    sp.add_argument("--tol", type=float, default=1e-5, help="tolerance for both residuals")
    output_args(sp)
    sp.set_defaults(func=cmd_example)

    sp = sub.add_parser("qdisc", help="q-discriminant of 1 + B t + A t^n")
    sp.add_argument("--n", type=int, required=True, help="degree gap")
    sp.add_argument("--A", required=True, help="complex value A0")
    sp.add_argument("--B", required=True, help="complex value B0")
    sp.add_argument("--q", default="1", help="complex q, default 1")
    sp.set_defaults(func=cmd_qdisc)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required")
        if getattr(args, "n", None) is not None and args.n < 2:
            raise UsageError("--n must be at least 2")
        return args.func(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except UsageError as exc:
        print(f"rootlocus: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (RootFindError, ArithmeticError) as exc:
        print(f"rootlocus: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

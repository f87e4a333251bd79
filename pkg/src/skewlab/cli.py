"""Command-line front end.

Three subcommands:

``figure {1|2|3} --out DIR``
    writes the named figure's columns as CSV (header row, comma separator,
    17 significant digits).

``verify SUITE [--seed N]``
    runs a named property suite and prints its JSON report; exits 0 when
    every check passes, 1 when any fails, 2 on usage errors (including an
    unknown suite name).

``analyze --base B --G0 G --w W [--seed N]``
    builds the requested skew density and prints normalization, quantiles,
    moments 1..4, the mode report, and concavity verdicts.

Distribution components are given as ``name`` or ``name:params`` where
params are comma-separated values or key=value pairs (``student_t:5``,
``subbotin:nu=1.5``). The odd function ``--w`` accepts ``linear:A``,
``cubic:A,B``, ``skewt:A,NU``, or ``poly:EXPR`` where EXPR is a sum of
odd-degree monomials such as ``x^3-x`` or ``2x+0.5x^5``; restricting the
grammar to odd monomials keeps the skewing function odd by construction.

Identical command and seed give byte-identical output. The environment
variable SKEWLAB_QUAD_TOL overrides the default quadrature tolerance.
"""

from __future__ import annotations

import argparse
import math
import re
import sys
from pathlib import Path

import numpy as np

from .bases import BASE_NAMES, make_base
from .concavity import check_sconcave
from .errors import (
    BadParam,
    MomentUndefined,
    ParseError,
    SkewLabError,
    UnknownSuite,
)
from .modes import analyze_modes
from .numerics import Interval
from .perturb import OddFn, compose, odd_cubic, odd_linear, odd_poly, skewt_weight
from .skew1d import SkewDensity1D
from .suites import (
    SUITE_ORDER,
    figure1_data,
    figure2_data,
    figure3_data,
    report_json,
    run_suite,
)

_FLOAT_FMT = "%.17g"

_BASE_PARAM_NAMES = {
    "student_t": ("nu",),
    "subbotin": ("nu",),
    "uniform": ("half_width",),
}


def _parse_params(name: str, text: str, offset: int) -> dict:
    """Parse 'a,b' or 'k=v,k2=v2' into kwargs for make_base."""
    names = _BASE_PARAM_NAMES.get(name, ())
    params: dict = {}
    pos = offset
    for i, piece in enumerate(text.split(",")):
        piece_str = piece.strip()
        if not piece_str:
            raise ParseError("empty parameter", text, pos)
        if "=" in piece_str:
            key, _, val = piece_str.partition("=")
            key = key.strip()
        else:
            if i >= len(names):
                raise ParseError(
                    f"{name!r} takes {len(names)} positional parameter(s)", text, pos
                )
            key, val = names[i], piece_str
        try:
            params[key] = float(val)
        except ValueError:
            raise ParseError(f"bad numeric value {val!r}", text, pos) from None
        pos += len(piece) + 1
    return params


def _parse_base(spec: str):
    name, sep, rest = spec.partition(":")
    name = name.strip()
    if name not in BASE_NAMES:
        raise ParseError(
            f"unknown base {name!r}; known: {', '.join(sorted(BASE_NAMES))}", spec, 0
        )
    params = _parse_params(name, rest, len(name) + 1) if sep else {}
    try:
        return make_base(name, **params)
    except BadParam as exc:
        raise ParseError(str(exc), spec, len(name) + 1) from exc


_TERM_RE = re.compile(
    r"\s*(?P<sign>[+-])?\s*(?P<coef>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+)?"
    r"\s*\*?\s*(?P<x>x(?:\^(?P<deg>\d+))?)?"
)


def parse_odd_poly(text: str) -> OddFn:
    """Parse an odd-monomial expression like 'x^3-x' or '2x+0.5x^5'."""
    coeffs: dict[int, float] = {}
    pos = 0
    first = True
    n = len(text)
    while pos < n:
        m = _TERM_RE.match(text, pos)
        if m is None or (m.group("coef") is None and m.group("x") is None):
            raise ParseError("expected a term like '2x^3'", text, pos)
        if not first and m.group("sign") is None:
            raise ParseError("expected '+' or '-' between terms", text, pos)
        sign = -1.0 if m.group("sign") == "-" else 1.0
        coef = float(m.group("coef")) if m.group("coef") is not None else 1.0
        if m.group("x") is None:
            raise ParseError("constant term not allowed in an odd function",
                             text, m.start("coef"))
        deg = int(m.group("deg")) if m.group("deg") is not None else 1
        if deg % 2 == 0:
            raise ParseError(f"exponent {deg} is even; only odd powers keep "
                             "the function odd", text, m.start("x"))
        coeffs[deg] = coeffs.get(deg, 0.0) + sign * coef
        pos = m.end()
        first = False
    if not coeffs:
        raise ParseError("empty expression", text, 0)
    return odd_poly(coeffs)


def _parse_w(spec: str) -> OddFn:
    kind, sep, rest = spec.partition(":")
    kind = kind.strip()
    if not sep:
        raise ParseError("expected KIND:ARGS", spec, len(spec))

    def floats(expect: int) -> list[float]:
        parts = [p.strip() for p in rest.split(",")]
        if len(parts) != expect:
            raise ParseError(f"{kind!r} takes {expect} argument(s)", spec, len(kind) + 1)
        out = []
        for p in parts:
            try:
                out.append(float(p))
            except ValueError:
                raise ParseError(f"bad numeric value {p!r}", spec,
                                 len(kind) + 1 + rest.find(p)) from None
        return out

    if kind == "linear":
        return odd_linear(floats(1)[0])
    if kind == "cubic":
        a, b = floats(2)
        return odd_cubic(a, b)
    if kind == "skewt":
        a, nu = floats(2)
        return skewt_weight(a, nu)
    if kind == "poly":
        try:
            return parse_odd_poly(rest)
        except ParseError as exc:
            # re-anchor the position to the full --w argument
            raise ParseError(exc.message, spec,
                             (exc.position or 0) + len(kind) + 1) from None
    raise ParseError(f"unknown w kind {kind!r}; known: linear, cubic, poly, skewt",
                     spec, 0)


# ---------------------------------------------------------------------------
# subcommands


def _cmd_figure(args) -> int:
    builders = {1: figure1_data, 2: figure2_data, 3: figure3_data}
    names, cols = builders[args.n]()
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f"figure{args.n}.csv"
    np.savetxt(path, cols, delimiter=",", comments="",
               header=",".join(names), fmt=_FLOAT_FMT)
    print(path)
    return 0


def _cmd_verify(args) -> int:
    report = run_suite(args.suite, seed=args.seed)
    sys.stdout.write(report_json(report))
    return 0 if report["passed"] else 1


def _fmt(x: float) -> str:
    return _FLOAT_FMT % (x,)


def _cmd_analyze(args) -> int:
    base = _parse_base(args.base)
    g0 = _parse_base(args.G0)
    w = _parse_w(args.w)
    d = SkewDensity1D(base, compose(g0, w))

    print(f"base: {base!r}")
    print(f"G0: {g0!r}")
    print(f"w: {w.name}")
    print(f"normalization: {_fmt(d.norm_check)}")
    for p in (0.05, 0.25, 0.5, 0.75, 0.95):
        print(f"quantile {p:.2f}: {_fmt(d.quantile(p))}")
    for k in (1, 2, 3, 4):
        try:
            print(f"moment {k}: {_fmt(d.moment(k))}")
        except MomentUndefined:
            print(f"moment {k}: undefined")
    rep = analyze_modes(d)
    print(f"modes: {rep.n_modes}  antimodes: {rep.n_antimodes}  "
          f"verdict: {rep.unimodal_verdict}")
    for cp in rep.critical_points:
        print(f"  {cp.kind} at {_fmt(cp.x)}")
    iv = base.central_interval(0.9999)
    dom = Interval(max(iv.lo, d.support.lo), min(iv.hi, d.support.hi))
    r0 = check_sconcave(d.pdf, 0.0, dom, n_pairs=2000, seed=args.seed)
    rq = check_sconcave(d.pdf, -math.inf, dom, n_pairs=2000, seed=args.seed + 1)
    print(f"log-concave: {'pass' if r0.verdict else 'fail'} "
          f"({r0.n_violations} violations / {r0.n_comparisons} comparisons)")
    print(f"quasi-concave: {'pass' if rq.verdict else 'fail'} "
          f"({rq.n_violations} violations / {rq.n_comparisons} comparisons)")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="skewlab",
        description="Construct, decompose, and verify skew-symmetric distributions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_fig = sub.add_parser("figure", help="emit figure data as CSV")
    p_fig.add_argument("n", type=int, choices=(1, 2, 3))
    p_fig.add_argument("--out", required=True, help="output directory")
    p_fig.set_defaults(func=_cmd_figure)

    p_ver = sub.add_parser("verify", help="run a property suite")
    p_ver.add_argument("suite", help="suite name or 'all': " + ", ".join(SUITE_ORDER))
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.set_defaults(func=_cmd_verify)

    p_an = sub.add_parser("analyze", help="summarize a user-specified skew density")
    p_an.add_argument("--base", required=True, help="symmetric base, e.g. normal or student_t:5")
    p_an.add_argument("--G0", required=True, help="symmetric cdf for the perturbation")
    p_an.add_argument("--w", required=True,
                      help="odd function: linear:A, cubic:A,B, poly:EXPR, skewt:A,NU")
    p_an.add_argument("--seed", type=int, default=0)
    p_an.set_defaults(func=_cmd_analyze)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, UnknownSuite, BadParam, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SkewLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

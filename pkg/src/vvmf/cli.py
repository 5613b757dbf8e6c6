"""Command-line interface.

Exit codes: 0 success, 2 input or schema error, 3 mathematical failure
(including a failed verification).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Callable

from . import basis, dimensions, families, fundamental, multiplier
from .errors import InputError, MathError
from .forms import AUX_NAMES, STANDARD_NAMES, aux_series, standard_series
from .inputs import Problem, load_problem
from .series import QSeries, default_order, format_rational, parse_rational

EXIT_OK, EXIT_INPUT, EXIT_MATH = 0, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _rational_arg(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except InputError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _lambda_arg(text: str) -> tuple[Fraction, ...]:
    return tuple(_rational_arg(x) for x in text.split(","))


def _fmt(x) -> str:
    return format_rational(x)


def _matrix_json(m) -> list:
    return [[_fmt(x) for x in row] for row in m]


def _series_text(s: QSeries) -> str:
    parts = []
    for k, c in enumerate(s.coeffs):
        if c:
            parts.append(f"({_fmt(c)}) q^{_fmt(s.offset + k)}")
    body = " + ".join(parts) if parts else "0"
    return f"{body} + O(q^{_fmt(s.reach + 1)})"


def _text(value: Any, indent: str = "") -> str:
    if isinstance(value, dict):
        lines = []
        for k, v in value.items():
            if isinstance(v, dict) and v:
                lines.append(f"{indent}{k}:")
                lines.append(_text(v, indent + "  "))
            else:
                lines.append(f"{indent}{k}: {_inline(v)}")
        return "\n".join(lines)
    return indent + _inline(value)


def _inline(v: Any) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_inline(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_inline(x)}" for k, x in v.items()) + "}"
    return str(v)


def _emit(args, payload: dict, text: str | None = None) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(text if text is not None else _text(payload))


def _order(args) -> int:
    return default_order() if args.order is None else args.order


def _problem(args) -> Problem:
    if not args.input:
        raise InputError("--input is required")
    return load_problem(args.input)


def _fundamental(problem: Problem, N: int) -> fundamental.FundamentalMatrix:
    if problem.Lambda is None or problem.chi is None:
        raise InputError("lambda and chi are required to build the fundamental matrix")
    return fundamental.fundamental_from_multiplier(problem.multiplier, problem.Lambda, problem.chi, N)


def _lambda(args, problem: Problem) -> tuple[Fraction, ...]:
    lam = args.lambda_ if args.lambda_ is not None else problem.Lambda
    if lam is None:
        raise InputError("an exponent is required: pass --lambda or set lambda in the input")
    return lam


def _fm_payload(fm: fundamental.FundamentalMatrix) -> dict:
    return fm.to_json()


# subcommands


def cmd_series(args) -> int:
    N = _order(args)
    if args.name in STANDARD_NAMES:
        s = standard_series(args.name, N)
    elif args.name in AUX_NAMES:
        s = aux_series(args.name, N)
    else:
        raise InputError(
            f"unknown series {args.name!r}; choose from {', '.join(STANDARD_NAMES + AUX_NAMES)}"
        )
    payload = {"name": args.name, **s.to_json()}
    _emit(args, payload, f"{args.name} = {_series_text(s)}")
    return EXIT_OK


def _checks(fm, m: multiplier.MultiplierData, family=None, tolerance=1e-8, M=3) -> list[tuple[str, bool, str]]:
    out = []
    lam = fm.Lambda
    out.append(("trace integrality", multiplier.trace_integrality_check(m, lam), ""))
    am = fundamental.a_matrices(fm.Lambda, fm.chi, fm.weight)
    out.append(("elliptic eigenvalues", fundamental.verify_elliptic(am), ""))
    small = fm.truncate(min(fm.order, 12))
    out.append(("first-order equation", fundamental.fundeq1_holds(small), ""))
    out.append(("determinant identity", fundamental.det_identity_check(small, m), ""))
    if fm.order >= 2 * M:
        dual = basis.serre_dual(fm)
        out.append(("duality symmetry", basis.duality_symmetry_check(fm, dual, M), f"M={M}"))
    if family is not None:
        N = min(fm.order, 10)
        out.append(("hypergeometric oracle", families.oracle_compare(fm, family, N), f"N={N}"))
        ri, rr = families.fixed_point_check(fm, family)
        ok = ri < tolerance and rr < tolerance
        out.append(("fixed points", ok, f"S at i: {ri:.2e}, U at rho: {rr:.2e}"))
    return out


def _report(args, checks) -> int:
    payload = {"checks": [{"name": n, "pass": ok, "detail": d} for n, ok, d in checks]}
    lines = [f"{'PASS' if ok else 'FAIL'}  {n}" + (f"  ({d})" if d else "") for n, ok, d in checks]
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if all(ok for _, ok, _ in checks) else EXIT_MATH


def cmd_fundamental(args) -> int:
    problem = _problem(args)
    fm = _fundamental(problem, _order(args))
    m = problem.multiplier
    if args.shift is not None:
        fm = fundamental.weight_shift(fm, args.shift, m)
        m = multiplier.shift_multiplicities(m, args.shift)
    if args.verify:
        return _report(args, _checks(fm, m, None, args.tolerance))
    payload = _fm_payload(fm)
    payload["alpha"], payload["beta"] = list(m.alpha), list(m.beta)
    _emit(args, payload)
    return EXIT_OK


def cmd_basis(args) -> int:
    problem = _problem(args)
    fm = _fundamental(problem, _order(args))
    if not 1 <= args.j <= fm.d:
        raise InputError(f"-j must lie in 1..{fm.d}")
    el = basis.basis_element(fm, args.j - 1, args.n)
    payload = {"j": args.j, "n": args.n, "components": [s.to_json() for s in el.series]}
    text = "\n".join(f"X_{i + 1} = {_series_text(s)}" for i, s in enumerate(el.series))
    _emit(args, payload, text)
    return EXIT_OK


def cmd_dual(args) -> int:
    problem = _problem(args)
    fm = _fundamental(problem, _order(args))
    dual = basis.serre_dual(fm)
    dm = multiplier.dual_multiplier(problem.multiplier)
    payload = _fm_payload(dual)
    payload["alpha"], payload["beta"] = list(dm.alpha), list(dm.beta)
    _emit(args, payload)
    return EXIT_OK


def cmd_dims(args) -> int:
    problem = _problem(args)
    m = problem.multiplier
    lam = _lambda(args, problem)
    weight = m.w if args.weight is None else args.weight
    payload = {
        "c": _fmt(multiplier.c_value(m)),
        "index": _fmt(dimensions.index(m, lam)),
        "weight": _fmt(weight),
        "dim_tight": dimensions.dim_tight(m, lam, weight),
        "dim_difference": _fmt(dimensions.dim_difference(m, lam, weight)),
        "trace_integral": multiplier.trace_integrality_check(m, lam),
    }
    _emit(args, payload)
    return EXIT_OK


def cmd_hilbert(args) -> int:
    problem = _problem(args)
    h = dimensions.hilbert_tight(problem.multiplier, _lambda(args, problem))
    _emit(args, h.to_json())
    return EXIT_OK


def cmd_family1d(args) -> int:
    N = _order(args)
    lam, s = families.family_1d(args.u, args.j, args.n, N)
    m = families.family_1d_multiplier(args.u, args.j, args.n)
    payload = {"Lambda": _fmt(lam), **m.to_json(), "series": s.to_json()}
    _emit(args, payload, f"weight {_fmt(m.w)}, Lambda = {_fmt(lam)}\n{_series_text(s)}")
    return EXIT_OK


def cmd_family2d(args) -> int:
    spec = families.Family2D(args.cls, args.t, args.x)
    m, lam, chi = families.family_2d(spec)
    fm = fundamental.solve_recursion(lam, chi, 0, _order(args))
    if args.verify:
        return _report(args, _checks(fm, m, spec, args.tolerance))
    payload = {**m.to_json(), "chi": _matrix_json(chi), "fundamental": _fm_payload(fm)}
    try:
        payload["y"] = families.gamma_y(spec)
    except MathError:
        payload["y"] = None
    _emit(args, payload)
    return EXIT_OK


def cmd_verify(args) -> int:
    problem = _problem(args)
    fm = _fundamental(problem, _order(args))
    return _report(args, _checks(fm, problem.multiplier, problem.family, args.tolerance))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", type=int, default=None, help="truncation order N (default 30 or $VVMF_DEFAULT_ORDER)")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--tolerance", type=float, default=1e-8, help="numeric tolerance for fixed-point checks")
    common.add_argument("--lambda", dest="lambda_", type=_lambda_arg, default=None, help="exponent, comma separated, e.g. 1/6,-1")
    common.add_argument("--input", help="JSON problem file")

    parser = _Parser(prog="vvmf", description="Exact vector-valued modular forms for SL2(Z).")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name: str, func: Callable, help_: str):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=func)
        return p

    p = add("series", cmd_series, "q-expansion of E2..E14, Delta, J or f, g, t")
    p.add_argument("name")
    p = add("fundamental", cmd_fundamental, "fundamental matrix from (lambda, chi)")
    p.add_argument("--shift", type=int, choices=range(1, 7), help="weight shift by 2*SHIFT")
    p.add_argument("--verify", action="store_true")
    p = add("basis", cmd_basis, "basis element X^(j;n), j counted from 1")
    p.add_argument("-j", type=int, required=True)
    p.add_argument("-n", type=int, required=True)
    add("dual", cmd_dual, "Serre dual fundamental matrix")
    p = add("dims", cmd_dims, "index and dimensions")
    p.add_argument("--weight", type=_rational_arg, default=None)
    add("hilbert", cmd_hilbert, "Hilbert-Poincare series and generator weights")
    p = add("family1d", cmd_family1d, "rank-one family")
    p.add_argument("--u", type=_rational_arg, default=Fraction(0))
    p.add_argument("-j", type=int, default=0)
    p.add_argument("-n", type=int, default=0)
    p = add("family2d", cmd_family2d, "rank-two family")
    p.add_argument("--class", dest="cls", type=int, choices=(1, 2, 3), required=True)
    p.add_argument("--t", type=_rational_arg, required=True)
    p.add_argument("--x", type=_rational_arg, default=Fraction(1))
    p.add_argument("--verify", action="store_true")
    add("verify", cmd_verify, "run every applicable identity check")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except MathError as exc:
        print(f"math error: {exc}", file=sys.stderr)
        return EXIT_MATH


if __name__ == "__main__":
    sys.exit(main())

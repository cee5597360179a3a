"""Command-line front end.

Exit codes: 0 success, 1 a verification failed, 2 usage error.  All JSON is
written with sorted keys so output is byte-for-byte reproducible.
"""

from __future__ import annotations

import argparse
import json
import sys

from .census import class_census, construct_curve_with_weil, theorem1_list, weil_census
from .covers import build_cover, splitting_check
from .elliptic import (EllipticCurve, PredictionMismatch, aut_order_rational, classify_twist,
                       ell_trace)
from .genus2 import (CurveError, Genus2Curve, WeilQuartic, igusa_invariants, igusa_reduced, invariant_I,
                     reduce_to_standard_form, weil_quartic, yui_is_supersingular)
from .gf3_arith import FieldError, MAX_DEGREE, make_field
from .moduli import MAX_DEGREE as FIBER_MAX_DEGREE, fiber, fiber_polynomial, fiber_splitting_degree
from .polynomials import UniPoly
from .verify import SUITES, run_suite


class UsageError(Exception):
    pass


def _field(q: int):
    d, n = 0, q
    while n > 1 and n % 3 == 0:
        n //= 3
        d += 1
    if n != 1 or d < 1 or d > MAX_DEGREE:
        raise UsageError(f"--q must be 3^d with 1 <= d <= {MAX_DEGREE}, got {q}")
    return make_field(d)


def _felt(field, text: str | None, flag: str):
    if text is None:
        raise UsageError(f"{flag} is required")
    try:
        return field.parse(text)
    except FieldError as exc:
        raise UsageError(f"{flag}: {exc}") from None


def _emit(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")


# -- commands ----------------------------------------------------------------------------------

def cmd_census(args) -> int:
    if args.q == 81:
        if not args.q81_opt_in:
            raise UsageError("the q=81 census is long-running; pass --q81-opt-in")
        report = class_census(81)
    elif args.q in (3, 9, 27):
        report = weil_census(args.q, parallel=args.jobs > 1, jobs=args.jobs)
    else:
        raise UsageError("census supports --q 3, 9, 27 (and 81 with --q81-opt-in)")
    if args.format == "csv":
        sys.stdout.write(report.to_csv())
    else:
        _emit(report.to_json())
    return 0 if report.passed else 1


def cmd_classify(args) -> int:
    F = _field(args.q)
    b, c = _felt(F, args.b, "--b"), _felt(F, args.c, "--c")
    if not b:
        raise UsageError("--b must be nonzero")
    E = EllipticCurve(b, c)
    cls = classify_twist(E)
    trace, aut = ell_trace(E), aut_order_rational(E)
    ok = trace == cls.predicted_trace and aut == cls.predicted_aut
    _emit({"curve": E.to_json(), "prediction": cls.to_json(), "counted_trace": trace,
           "counted_aut": aut, "pass": ok})
    return 0 if ok else 1


def cmd_cover(args) -> int:
    F = _field(args.q)
    b, c = _felt(F, args.b, "--b"), _felt(F, args.c, "--c")
    try:
        T = build_cover(b, c)
    except CurveError as exc:
        raise UsageError(str(exc)) from None
    try:
        ok = splitting_check(T)
    except PredictionMismatch:
        ok = False
    out = T.to_json()
    out.update({"weil": weil_quartic(T.curve).to_json(), "target_trace": ell_trace(T.target),
                "cotarget_trace": ell_trace(T.cotarget), "t": str(T.moduli_coordinate),
                "I": str(invariant_I(T.curve)), "pass": ok})
    _emit(out)
    return 0 if ok else 1


def cmd_moduli(args) -> int:
    F = _field(args.q)
    value = _felt(F, args.I, "--I")
    if not value:
        raise UsageError("--I must be nonzero")
    degree = fiber_splitting_degree(value)
    out = {"I": str(value), "fiber_polynomial_degree": fiber_polynomial(value).degree,
           "splitting_degree": degree}
    ok = out["fiber_polynomial_degree"] == 20
    if degree <= FIBER_MAX_DEGREE:
        report = fiber(value)
        out.update(report.to_json())
        ok = ok and report.distinct_roots == 20
    out["pass"] = ok
    _emit(out)
    return 0 if ok else 1


def cmd_construct(args) -> int:
    if args.s1 is None or args.s2 is None:
        raise UsageError("--s1 and --s2 are required")
    _field(args.q)
    target = WeilQuartic(args.s1, args.s2, args.q)
    if target not in theorem1_list(args.q):
        _emit({"error": f"{target} is not the Weil polynomial of a supersingular genus-2 curve",
               "target": target.to_json(), "pass": False})
        return 1
    C = construct_curve_with_weil(args.q, target)
    _emit({"target": target.to_json(), "curve": C.to_json(), "weil": weil_quartic(C).to_json(),
           "pass": weil_quartic(C) == target})
    return 0


def cmd_igusa(args) -> int:
    F = _field(args.q)
    if args.f is None:
        raise UsageError("--f is required (comma-separated base-3 coefficients, constant first)")
    try:
        f = UniPoly.parse(F, args.f)
        twist = F.one if args.twist is None else _felt(F, args.twist, "--twist")
        C = Genus2Curve(twist, f)
    except (FieldError, CurveError) as exc:
        raise UsageError(str(exc)) from None
    out = {"curve": C.to_json(), "weil": weil_quartic(C).to_json(),
           "supersingular": yui_is_supersingular(C)}
    if F.degree == 1:
        out["igusa"] = [str(v) for v in igusa_invariants(C).entries()]
    if out["supersingular"]:
        form = reduce_to_standard_form(C)
        out["igusa_reduced"] = [str(v) for v in igusa_reduced(form).entries()]
        out["I"] = str(invariant_I(form))
    _emit(out)
    return 0


def cmd_verify(args) -> int:
    result = run_suite(args.suite, include_81=args.q81_opt_in)
    _emit(result)
    return 0 if result["pass"] else 1


# -- parser ------------------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ssgenus2", description="Supersingular genus-2 curves in characteristic 3.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("census", help="Weil polynomial census over F_q")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--q81-opt-in", action="store_true")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--format", choices=("json", "csv"), default="json")
    s.set_defaults(func=cmd_census)

    s = sub.add_parser("classify-elliptic", help="twist class of y^2 = x^3 - b x + c")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--b")
    s.add_argument("--c")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("cover", help="the triple cover C_(b,c) -> E_(b,c)")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--b")
    s.add_argument("--c")
    s.set_defaults(func=cmd_cover)

    s = sub.add_parser("moduli", help="covers over a given invariant I")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--I")
    s.set_defaults(func=cmd_moduli)

    s = sub.add_parser("construct", help="explicit curve with a given Weil polynomial")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--s1", type=int)
    s.add_argument("--s2", type=int)
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("igusa", help="Igusa invariants and Weil polynomial of twist*y^2 = f(x)")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--f")
    s.add_argument("--twist")
    s.set_defaults(func=cmd_igusa)

    s = sub.add_parser("verify", help="run a verification suite")
    s.add_argument("--suite", choices=SUITES + ("all",), default="all")
    s.add_argument("--q81-opt-in", action="store_true")
    s.set_defaults(func=cmd_verify)
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be positive")
    try:
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"ssgenus2: error: {exc}\n")
        return 2


def main() -> None:
    try:
        code = run()
    except SystemExit as exc:
        code = exc.code if isinstance(exc.code, int) else 2
    sys.exit(code)

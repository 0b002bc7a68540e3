"""Command-line interface: origami7 {solve,septisect,root7,crease,verify,galois}."""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from fractions import Fraction

import mpmath

from .configs import EXAMPLES
from .errors import OrigamiError, PipelineError
from .exactmath import Poly1, discriminant, is_perfect_square, isolate_real_roots
from .galois import DEFAULT_PRIME_BOUND, classify
from .geometry import FoldConfig
from .intersect import fold_solution_from_point, intersect_config, slope_polynomial_for_config
from .render import RenderOptions, render_svg
from .solver import ConstructionPlan, Step, TransformChain, septisect, seventh_root, solve_septic, verify_plan

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_PIPELINE = 0, 1, 2, 3


class UsageError(Exception):
    pass


def parse_number(text: str, allow_float: bool, precision: Fraction) -> Fraction:
    """Exact "p/q" or integer; decimals only with --float, via continued fractions."""
    if not any(ch in text for ch in ".eE"):
        try:
            return Fraction(text)
        except ValueError:
            raise UsageError(f"cannot parse {text!r}") from None
    if not allow_float:
        raise UsageError(f"{text!r} is not an exact rational (pass --float to accept decimals)")
    try:
        x = float(text)
    except ValueError:
        raise UsageError(f"cannot parse {text!r}") from None
    exact = Fraction(x)
    den = 1
    while True:
        approx = exact.limit_denominator(den)
        if abs(approx - exact) <= precision:
            return approx
        den *= 10


def parse_coeffs(args) -> Poly1:
    vals = [parse_number(c, args.float, args.precision) for c in args.coeffs]
    if len(vals) != 8 or vals[0] == 0:
        raise UsageError("need exactly 8 coefficients (highest degree first) of a degree-7 polynomial")
    return Poly1.from_high(vals, "x")


def _emit(args, doc: dict, text: str | None = None):
    doc = {"command": args.command, "seed": args.seed, **doc}
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(doc, fh, indent=2)
    if args.json:
        print(json.dumps(doc, indent=2))
    elif text:
        print(text)


def _write_svg(args, cfg: FoldConfig, sol=None, style: dict | None = None):
    if args.svg and cfg is not None:
        svg = render_svg(cfg, sol, RenderOptions(styles=style or {}))
        with open(args.svg, "w") as fh:
            fh.write(svg)


def _report_text(plan: ConstructionPlan, report) -> str:
    lines = [f"pipeline: {plan.kind}", f"target: {plan.target}"]
    for note in plan.notes:
        lines.append(f"note: {note}")
    for r in report.realized:
        al = f"  AL6ab8 {r.al6ab8:.2e}" if r.al6ab8 is not None else ""
        lines.append(f"root {mpmath.nstr(r.root, 20):>26}  |p(x)| {r.poly_residual:.2e}  error {r.error:.2e}{al}")
    lines.append(f"realized {len(report.realized)} of {len(plan.expected_roots)} real roots; "
                 f"max error {report.max_error:.2e} (tol {report.tol:g}): {'OK' if report.ok else 'FAILED'}")
    return "\n".join(lines)


def _plan_output(args, plan: ConstructionPlan, extra: dict | None = None, text_prefix: str = "") -> int:
    plan.seed = args.seed
    report = verify_plan(plan, args.tol)
    sol = None
    if plan.fold_config is not None:
        pts = intersect_config(plan.fold_config, precision=1e-30).points
        sol = fold_solution_from_point(plan.fold_config, pts[0].point) if pts else None
    _write_svg(args, plan.fold_config, sol)
    _emit(args, {"plan": plan.to_json(), "report": report.to_json(), **(extra or {})},
          text_prefix + _report_text(plan, report))
    return EXIT_OK if report.ok else EXIT_VERIFY


def root7_plan_for(p: Poly1, tol: float) -> ConstructionPlan:
    """x^7 + c: seventh-root pipeline, with x -> -x when c < 0."""
    c = p.coeff(0)
    plan = seventh_root(abs(c), tol)
    if c < 0:
        plan.chain = TransformChain.of(Step("scale", Fraction(-1))) + plan.chain
        plan.target = p
        plan.expected_roots = isolate_real_roots(p)
    plan.notes.append("binomial septic: routed to the seventh-root pipeline")
    return plan


def cmd_solve(args) -> int:
    p = parse_coeffs(args).monic()
    if all(c == 0 for c in p.coeffs[1:-1]):
        plan = root7_plan_for(p, args.tol)
    else:
        plan = solve_septic(p, args.tol, args.max_lambda_height, seed=args.seed)
    return _plan_output(args, plan)


def _angle(args) -> tuple[float, str]:
    if args.degrees is not None:
        return math.radians(args.degrees), "degrees"
    return args.radians, "radians"


def cmd_septisect(args) -> int:
    phi, unit = _angle(args)
    if not 0 < phi < 2 * math.pi:
        raise UsageError("angle must lie strictly between 0 and 2 pi")
    sp, plan = septisect(phi, args.tol)
    conv = math.degrees if unit == "degrees" else (lambda v: v)
    angles = [conv(a) for a in sp.all_angles]
    lines = []
    if sp.fallback:
        lines.append(f"degenerate A = {sp.A:.3g}: fallback path ({sp.fallback})")
    lines.append("branch angles (" + unit + "): " + ", ".join(f"{a:.9f}" for a in angles))
    lines.append(f"branch 0: x = 2cos(phi/7) = {mpmath.nstr(sp.branch0, 20)} at angle {angles[0]:.9f}")
    if sp.branch0_solution is not None:
        lines.append(f"branch 0 AL6ab8 residual {sp.branch0_solution.residual:.2e}")
    report = verify_plan(plan, args.tol)
    branch_err = abs(float(sp.branch0) - 2 * math.cos(phi / 7))
    ok = report.ok and branch_err <= args.tol
    plan.seed = args.seed
    _write_svg(args, plan.fold_config, sp.branch0_solution)
    _emit(args, {"septisection": sp.to_json(), "unit": unit, "branch_angles": angles,
                 "branch0_angle": angles[0], "branch0_error": branch_err,
                 "plan": plan.to_json(), "report": report.to_json()},
          "\n".join(lines) + "\n" + _report_text(plan, report))
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_root7(args) -> int:
    s = parse_number(args.radicand, args.float, args.precision)
    if s == 0:
        raise UsageError("radicand must be nonzero")
    p = Poly1([s, 0, 0, 0, 0, 0, 0, 1], "x")
    return _plan_output(args, root7_plan_for(p, args.tol))


def _load_config(source: str) -> tuple[FoldConfig, dict, object]:
    if source in EXAMPLES:
        return EXAMPLES[source][0], {}, None
    with open(source) as fh:
        data = json.load(fh)
    style = data.get("style", {}) if isinstance(data, dict) else {}
    if "fold_config" in data:
        data = data["fold_config"]
    elif "plan" in data:
        data = data["plan"]["fold_config"]
    elif "config" in data:
        data = data["config"]
    if data is None:
        raise UsageError("plan has no fold configuration")
    return FoldConfig.from_json(data), style, None


def cmd_crease(args) -> int:
    cfg, style, _ = _load_config(args.config)
    pts = intersect_config(cfg, precision=1e-30).points
    sol = fold_solution_from_point(cfg, pts[0].point) if pts and not args.no_folds else None
    svg = render_svg(cfg, sol, RenderOptions(styles=style))
    out = args.svg or args.out
    if out:
        with open(out, "w") as fh:
            fh.write(svg)
    else:
        sys.stdout.write(svg)
    if args.json:
        print(json.dumps({"command": "crease", "seed": args.seed, "written": out,
                          "intersections": len(pts)}, indent=2))
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.plan:
        with open(args.plan) as fh:
            data = json.load(fh)
        plan = ConstructionPlan.from_json(data.get("plan", data))
        report = verify_plan(plan, args.tol if args.tol_given else plan.tol)
        _emit(args, {"report": report.to_json()}, _report_text(plan, report))
        return EXIT_OK if report.ok else EXIT_VERIFY
    if args.name not in EXAMPLES:
        raise UsageError(f"unknown example {args.name!r}; choose from {sorted(EXAMPLES)}")
    cfg, expected, group = EXAMPLES[args.name]
    got = slope_polynomial_for_config(cfg).poly
    disc = discriminant(got)
    nreal = len(isolate_real_roots(got))
    inter = intersect_config(cfg, precision=1e-30)
    sols = [fold_solution_from_point(cfg, p.point) for p in inter.points]
    worst = max((s.residual for s in sols), default=float("inf"))
    checks = {
        "septic_matches": got == expected,
        "disc_square": is_perfect_square(disc),
        "real_roots": nreal == 3,
        "real_intersections": len(inter.points) == 3,
        "fold_residual": worst <= 1e-9,
    }
    doc = {"example": args.name, "septic": got.to_json(), "expected": expected.to_json(),
           "discriminant": str(disc), "real_roots": nreal, "intersections": inter.to_json(),
           "max_al6ab8_residual": worst, "checks": checks}
    svg = render_svg(cfg, sols[0] if sols else None)
    if args.svg:
        with open(args.svg, "w") as fh:
            fh.write(svg)
    text = [f"{args.name}: septic {got}", f"  expected {expected}",
            f"  discriminant {disc} ({'square' if checks['disc_square'] else 'not a square'})",
            f"  real roots {nreal}, real intersections {len(inter.points)}, max AL6ab8 residual {worst:.2e}"]
    if not checks["septic_matches"]:
        diff = [(k, str(a), str(b)) for k, (a, b) in enumerate(zip(got.coeffs, expected.coeffs)) if a != b]
        doc["diff"] = diff
        text.append(f"  MISMATCH (degree, got, expected): {diff}")
    ok = all(checks.values())
    text.append("OK" if ok else "FAILED")
    _emit(args, doc, "\n".join(text))
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_galois(args) -> int:
    p = parse_coeffs(args)
    v = classify(p, args.prime_bound)
    text = f"verdict (heuristic): {v.candidate}\n" + "\n".join(f"  {r}" for r in v.reasons) + "\n" + v.census.table()
    _emit(args, {"verdict": v.to_json()}, text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print machine-readable JSON")
    common.add_argument("--svg", metavar="PATH", help="write the crease pattern")
    common.add_argument("--out", metavar="PATH", help="write the JSON document to a file")
    common.add_argument("--precision", type=Fraction, default=Fraction(1, 10**12), metavar="RAT",
                        help="rational approximation tolerance for --float inputs")
    common.add_argument("--tol", type=float, default=None, help="verification tolerance (default 1e-8)")
    common.add_argument("--prime-bound", type=int, default=DEFAULT_PRIME_BOUND)
    common.add_argument("--seed", type=int, default=0, help="recorded in every output")
    common.add_argument("--max-lambda-height", type=int, default=64)
    common.add_argument("--float", action="store_true", help="accept decimal inputs")

    parser = argparse.ArgumentParser(prog="origami7", description="Septic equations by two-fold origami.")
    sub = parser.add_subparsers(dest="command", required=True)
    negative = re.compile(r"^-\d+$|^-\d*\.\d+([eE][-+]?\d+)?$|^-\d+/\d+$")
    sp = sub.add_parser("solve", parents=[common], help="realize the real roots of a septic")
    sp.add_argument("coeffs", nargs="+", help="8 coefficients, highest degree first")
    sp.set_defaults(func=cmd_solve)
    sp = sub.add_parser("septisect", parents=[common], help="divide an angle into seven")
    grp = sp.add_mutually_exclusive_group(required=True)
    grp.add_argument("--degrees", type=float)
    grp.add_argument("--radians", type=float)
    sp.set_defaults(func=cmd_septisect)
    sp = sub.add_parser("root7", parents=[common], help="real seventh root of -s")
    sp.add_argument("radicand")
    sp.set_defaults(func=cmd_root7)
    sp = sub.add_parser("crease", parents=[common], help="render a configuration as SVG")
    sp.add_argument("config", help="config or plan JSON file, or a built-in example name")
    sp.add_argument("--no-folds", action="store_true")
    sp.set_defaults(func=cmd_crease)
    sp = sub.add_parser("verify", parents=[common], help="check a built-in example or a saved plan")
    sp.add_argument("name", nargs="?", help="a7 or psl372")
    sp.add_argument("--plan", metavar="PATH")
    sp.set_defaults(func=cmd_verify)
    sp = sub.add_parser("galois", parents=[common], help="heuristic Galois group of a septic")
    sp.add_argument("coeffs", nargs="+")
    sp.set_defaults(func=cmd_galois)
    # let negative rationals such as -1/3 through as positional values
    for p in [parser, *sub.choices.values()]:
        p._negative_number_matcher = negative
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.tol_given = args.tol is not None
    if args.tol is None:
        args.tol = 1e-8
    if args.command == "verify" and not (args.name or args.plan):
        parser.error("verify needs an example name or --plan")
    try:
        return args.func(args)
    except (UsageError, OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"origami7 {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (PipelineError, OrigamiError) as exc:
        err = {"error": type(exc).__name__, "message": str(exc), "details": getattr(exc, "details", {})}
        stream = sys.stdout if args.json else sys.stderr
        print(json.dumps(err, indent=2, default=str), file=stream)
        return EXIT_PIPELINE


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: legdga analyze | dga | invariants | regress."""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

from . import __version__, acceptance, corpus
from .curve_geometry import (
    DEFAULT_SLACK,
    DEFAULT_TOLERANCE,
    CurveError,
    PlanarCurve,
    action_profile,
    analyze,
    load_curve,
    loose_chart_test,
    monogons,
    quotient_symmetric,
)
from .dga_core import (
    DGA,
    Augmentation,
    AugmentationError,
    DGAError,
    DSquaredError,
    LocalizationError,
    acyclicity_test,
    augmentation_ideal,
    augmentation_polynomial,
    bilinearised_lch,
    check_augmentation,
    degree_zero_homology,
    parse_monomial_map,
    solve_over,
    superpotential_check,
)
from .knot_dga import SIGN_TABLES, build_knot_dga
from .laurent import Field
from .torus_dga import ModeError, build_spun_dga

REPORT_SCHEMA = "legdga-report/1"
EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_MODE, EXIT_INTERNAL, EXIT_AUGMENTATION = 0, 1, 2, 3, 4, 5


class InputError(Exception):
    pass


def _digest(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _read_json(path: str) -> tuple[dict, Path]:
    p = Path(path)
    if not p.is_file():
        raise InputError(f"cannot read {path}")
    try:
        return json.loads(p.read_text()), p
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from exc


def _field(text: str) -> Field:
    try:
        return Field.parse(text)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


class Context:
    def __init__(self, argv: list[str]):
        self.argv = argv
        self.inputs: dict[str, str] = {}
        self.warnings: list[str] = []

    def curve(self, path: str) -> PlanarCurve:
        doc, p = _read_json(path)
        self.inputs[path] = _digest(p)
        return load_curve(doc)

    def report(self, command: str, results) -> dict:
        return {
            "schema": REPORT_SCHEMA,
            "version": __version__,
            "command": {"name": command, "argv": self.argv},
            "inputs": self.inputs,
            "results": results,
            "warnings": self.warnings,
        }


def build_dga(ctx: Context, curve: PlanarCurve, mode: str, field: Field, signs: str) -> DGA:
    if mode == "auto":
        mode = "symmetric" if curve.cover or curve.cone_markers else "knot"
    if mode == "knot":
        dga = build_knot_dga(curve, field, signs)
    elif mode == "spun":
        dga = build_spun_dga(curve, "plain", field, signs)
    elif mode == "symmetric":
        if curve.cover:
            curve, _ = quotient_symmetric(curve)
            ctx.warnings.append(f"built from the quotient {curve.name!r} of the invariant input curve")
        dga = build_spun_dga(curve, "symmetric", field, signs)
    else:
        raise InputError(f"unknown mode {mode!r}")
    if field.p != 2 and mode == "knot":
        ctx.warnings.append(f"signs outside characteristic two use the {signs!r} table")
    ctx.warnings.extend(dga.metadata.get("warnings", []))
    return dga


def load_dga(ctx: Context, args) -> DGA:
    doc, p = _read_json(args.input)
    ctx.inputs[args.input] = _digest(p)
    field = _field(args.field)
    if doc.get("schema") == "legdga-dga/1":
        dga = DGA.from_json(doc)
        if dga.ring.field != field:
            dga = dga.with_field(field)
        ctx.warnings.extend(dga.metadata.get("warnings", []))
        dga.verify_d_squared()
        return dga
    return build_dga(ctx, load_curve(doc), args.mode, field, args.signs)


def cmd_analyze(ctx: Context, args) -> dict:
    curve = ctx.curve(args.curve)
    an = analyze(curve, args.tolerance)
    loose = []
    for c in an.crossings:
        for f in monogons(an, c):
            loose.append(loose_chart_test(curve, c, f.index, args.tolerance).to_json())
    results = {
        "curve": an.summary(),
        "actions": {
            "standard": action_profile(curve, "standard", args.tolerance).to_json(),
            "lefschetz": action_profile(curve, "lefschetz", args.tolerance, args.slack).to_json(),
        },
        "loose_chart_scan": loose,
    }
    return ctx.report("analyze", results)


def _dga_results(dga: DGA) -> dict:
    out = {
        "dga": dga.to_json(),
        "display": dga.describe(),
        "d_squared_zero": not dga.d_squared_failures(),
    }
    if dga.chords_positive():
        out["degree_zero_homology"] = degree_zero_homology(dga).to_json()
    return out


def cmd_dga(ctx: Context, args) -> dict:
    curve = ctx.curve(args.curve)
    dga = build_dga(ctx, curve, args.mode, _field(args.field), args.signs)
    results = _dga_results(dga)
    if args.save:
        Path(args.save).write_text(json.dumps(dga.to_json(), indent=2, sort_keys=True) + "\n")
    return ctx.report("dga", results)


def _augmentation(dga: DGA, text: str | None) -> Augmentation:
    field = dga.ring.field
    if text:
        try:
            eps = Augmentation.parse(text, field)
        except (ValueError, ZeroDivisionError) as exc:
            raise AugmentationError(f"cannot parse augmentation {text!r}: {exc}") from exc
        check_augmentation(dga, eps)
        return eps
    if field.p == 0:
        raise AugmentationError("give --aug explicitly over the rationals")
    for eps in solve_over(dga):
        if bilinearised_lch(dga, eps, eps).get(1, 0) == 1:
            return eps
    raise AugmentationError(f"no augmentation over {field.name} with rank one LCH_1")


def _specialization(text: str, field: Field) -> dict:
    if not text:
        return {}
    return Augmentation.parse(text, field).as_dict()


def cmd_invariants(ctx: Context, args) -> dict:
    dga = load_dga(ctx, args)
    f = dga.ring.field
    which = args.invariant
    if which == "lch":
        e0 = _augmentation(dga, args.aug)
        e1 = _augmentation(dga, args.aug2) if args.aug2 else e0
        ranks = bilinearised_lch(dga, e0, e1)
        results = {"aug": str(e0), "aug2": str(e1), "ranks": {str(k): v for k, v in ranks.items()}}
    elif which == "augvar":
        ideal = augmentation_ideal(dga)
        results = {"ideal": [str(p) for p in ideal]}
        if f.p:
            results["points"] = [str(e) for e in solve_over(dga)]
    elif which == "augpoly":
        eps = _augmentation(dga, args.aug)
        results = {"aug": str(eps), **augmentation_polynomial(dga, eps).to_json()}
    elif which == "acyclic":
        point = _specialization(args.specialize, f)
        results = {"specialization": {k: f.encode(v) for k, v in point.items()},
                   **acyclicity_test(dga, point).to_json()}
    elif which == "potential-check":
        if not args.potential:
            raise InputError("potential-check needs --potential")
        src = Path(args.potential)
        if src.is_file():
            ctx.inputs[args.potential] = _digest(src)
        try:
            potential = corpus.load_potential(args.potential, f)
        except (FileNotFoundError, KeyError) as exc:
            raise InputError(f"cannot read potential {args.potential}") from exc
        eps = _augmentation(dga, args.aug)
        poly = augmentation_polynomial(dga, eps).polynomial
        sub = None
        if args.subst:
            sub = parse_monomial_map(args.subst, poly.variables, potential.variables)
        rep = superpotential_check(poly, potential, sub, args.search_bound)
        results = {"aug": str(eps), "augmentation_polynomial": str(poly),
                   "potential": str(potential), **rep.to_json()}
    else:
        raise InputError(f"unknown invariant {which!r}")
    return ctx.report("invariants", results)


def cmd_regress(ctx: Context, args) -> tuple[dict, int]:
    outcomes = acceptance.run_all()
    for r in outcomes:
        print(r.line(), file=sys.stderr)
    passed = all(r.passed for r in outcomes)
    rep = ctx.report("regress", {"criteria": [r.to_json() for r in outcomes], "all_passed": passed})
    return rep, EXIT_OK if passed else EXIT_FAILED


def _add_build_flags(p: argparse.ArgumentParser, default_mode: str) -> None:
    modes = ["knot", "spun", "symmetric"] + (["auto"] if default_mode == "auto" else [])
    p.add_argument("--mode", choices=modes, default=default_mode)
    p.add_argument("--field", default="f2", help="f2, fp:<p> or q")
    p.add_argument("--signs", choices=SIGN_TABLES, default="positive",
                   help="sign table outside characteristic two")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="legdga", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-o", "--output", help="write the report here instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="crossings, faces, actions and loose-chart scan")
    pa.add_argument("curve")
    pa.add_argument("--tolerance", type=float, default=DEFAULT_TOLERANCE,
                    help="error budget for the lefschetz integrals")
    pa.add_argument("--slack", type=float, default=DEFAULT_SLACK,
                    help="distance from multiples of pi required for the embedded-lift verdict")

    pd = sub.add_parser("dga", help="build the Chekanov-Eliashberg algebra")
    pd.add_argument("curve")
    _add_build_flags(pd, "knot")
    pd.add_argument("--save", help="also write the DGA document (legdga-dga/1) here")

    pi = sub.add_parser("invariants", help="augmentation and homology invariants")
    pi.add_argument("invariant", choices=["lch", "augvar", "augpoly", "acyclic", "potential-check"])
    pi.add_argument("input", help="DGA document or curve file")
    _add_build_flags(pi, "auto")
    pi.add_argument("--aug", help="augmentation, e.g. mu=1,lambda=2")
    pi.add_argument("--aug2", help="second augmentation for bilinearised homology")
    pi.add_argument("--specialize", default="", help="coefficient values, e.g. mu=1,lambda=1")
    pi.add_argument("--potential", help="potential file (legdga-potential/1) or corpus name")
    pi.add_argument("--subst", help="monomial substitution, e.g. mu=v,lambda=u^3*v")
    pi.add_argument("--search-bound", type=int, default=3,
                    help="exponent bound when searching substitutions")

    sub.add_parser("regress", help="run the corpus acceptance suite")
    return parser


def _emit(report: dict, output: str | None) -> None:
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = make_parser().parse_args(argv)
    ctx = Context(argv)
    status = EXIT_OK
    try:
        if args.command == "analyze":
            report = cmd_analyze(ctx, args)
        elif args.command == "dga":
            report = cmd_dga(ctx, args)
        elif args.command == "invariants":
            report = cmd_invariants(ctx, args)
        else:
            report, status = cmd_regress(ctx, args)
    except ModeError as exc:
        return _fail(exc, EXIT_MODE)
    except (DSquaredError, AssertionError) as exc:
        return _fail(exc, EXIT_INTERNAL)
    except (AugmentationError, LocalizationError) as exc:
        return _fail(exc, EXIT_AUGMENTATION)
    except (InputError, CurveError, DGAError, ValueError, KeyError, OSError) as exc:
        return _fail(exc, EXIT_INPUT)
    _emit(report, args.output)
    return status


def _fail(exc: Exception, code: int) -> int:
    print(f"legdga: error: {exc}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end: ``twoproduct <command> [options]``.

Exit codes: 0 success, 1 audit or derivation failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction

from .algebra import CompositionClass, UnsupportedError
from .audit import SCHEMA_VERSION, run_audit
from .chsh import OPTIMAL_ANGLES, chsh_classical_max, chsh_quantum
from .coproduct import (
    InsufficientRankError,
    NoSolutionError,
    derive_coproduct,
    fixed_value_constraint,
    leibniz_witness,
    single_product_infeasibility,
)
from .matrix import MatrixAlgebra, SquareMatrix
from .parser import ParseError, parse_expression
from .phase import PhaseAlgebra, PhasePoly
from .scalar import ClassMismatchError
from .tensor import TensorAlgebra, TensorElement, canonical_table, kronecker_flatten

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

PRODUCTS = ("alpha", "sigma", "beta+", "beta-")


class UsageError(Exception):
    """Bad combination of otherwise well-formed arguments."""


def _hbar(text: str):
    if text == "formal":
        return None
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"--hbar expects a positive rational or 'formal', got {text!r}")
    if value <= 0:
        raise argparse.ArgumentTypeError("--hbar must be positive")
    return value


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected a rational, got {text!r}")


def _angle(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a real angle, got {text!r}")
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError("angles must be finite")
    return value


def _class(args, default_hbar=None) -> CompositionClass:
    hbar = args.hbar if args.hbar is not None or default_hbar is None else default_hbar
    return CompositionClass.named(args.cls, hbar)


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps({"schema": SCHEMA_VERSION, **payload}, indent=2, sort_keys=True))
    else:
        print(text)


def _parse_all(texts, cls: CompositionClass):
    values = [parse_expression(t, cls.j_squared, cls.hbar) for t in texts]
    kinds = {type(v) for v in values}
    if len(kinds) != 1:
        raise UsageError("operands must all be matrices or all be polynomials")
    if SquareMatrix in kinds:
        dims = {v.dim for v in values}
        if len(dims) != 1:
            raise UsageError(f"matrix operands have different dimensions {sorted(dims)}")
    else:
        n = max(v.n for v in values)
        values = [v.promote(n) for v in values]
    return values


def _algebra_for(values, cls: CompositionClass):
    first = values[0]
    if isinstance(first, SquareMatrix):
        if cls.hbar is None:
            cls = cls.with_hbar(1)
        return MatrixAlgebra(cls, first.dim)
    return PhaseAlgebra(cls, first.n)


# -- commands ----------------------------------------------------------------


def cmd_bracket(args) -> int:
    cls = _class(args)
    f, g = _parse_all([args.f, args.g], cls)
    alg = _algebra_for([f, g], cls)
    wanted = PRODUCTS if args.product == "all" else (args.product,)
    results = {name: str(alg.product(name)(f, g)) for name in wanted}
    text = "\n".join(f"{name:<6} = {value}" for name, value in results.items())
    _emit(args, {"class": alg.cls.name, "hbar": _hbar_text(alg.cls), "f": str(f), "g": str(g),
                 "results": results}, text)
    return EXIT_OK


def cmd_star(args) -> int:
    cls = _class(args)
    f, g = _parse_all([args.f, args.g], cls)
    if not isinstance(f, PhasePoly):
        raise UsageError("star needs phase-space polynomials")
    alg = PhaseAlgebra(cls, f.n)
    sign = 1 if args.sign == "+" else -1
    fg = alg.star(f, g, sign)
    gf = alg.star(g, f, sign)
    results = {"f*g": str(fg), "g*f": str(gf), "f*g - g*f": str(fg - gf)}
    text = "\n".join(f"{k:<9} = {v}" for k, v in results.items())
    _emit(args, {"class": cls.name, "hbar": _hbar_text(cls), "sign": args.sign, "results": results},
          text)
    return EXIT_OK


def cmd_compose(args) -> int:
    cls = _class(args)
    f1, f2, g1, g2 = _parse_all([args.f1, args.f2, args.g1, args.g2], cls)
    base = _algebra_for([f1], cls)
    table = canonical_table(base.cls)
    if args.b11 is not None:
        table = table.with_values(b11=args.b11)
    comp = TensorAlgebra(base, table=table)
    F = comp.pure(f1, f2)
    G = comp.pure(g1, g2)
    a12 = comp.alpha(F, G)
    s12 = comp.sigma(F, G)
    results = {"alpha12": str(a12), "sigma12": str(s12)}
    lines = [f"alpha12 = {a12}", f"sigma12 = {s12}"]
    if isinstance(f1, SquareMatrix):
        big = MatrixAlgebra(base.cls, f1.dim * f2.dim)
        kF, kG = kronecker_flatten(F), kronecker_flatten(G)
        agree = (_flatten(a12, big) == big.alpha(kF, kG)
                 and _flatten(s12, big) == big.sigma(kF, kG))
        results["kronecker_agrees"] = agree
        lines.append(f"kronecker check: {'agrees' if agree else 'DIFFERS'}")
    _emit(args, {"class": base.cls.name, "hbar": _hbar_text(base.cls),
                 "table": {k: str(v) for k, v in table.as_dict().items()}, "results": results},
          "\n".join(lines))
    return EXIT_OK if results.get("kronecker_agrees", True) else EXIT_FAIL


def _flatten(x: TensorElement, big: MatrixAlgebra) -> SquareMatrix:
    return kronecker_flatten(x) if x.summands else big.zero()


def cmd_audit(args) -> int:
    cls = _class(args)
    table = None
    if args.b11 is not None:
        if not args.composite:
            raise UsageError("--b11 only applies with --composite")
        base_cls = cls.with_hbar(1) if args.rep == "matrix" and cls.hbar is None else cls
        table = canonical_table(base_cls).with_values(b11=args.b11)
    report = run_audit(cls, args.rep, args.samples, args.seed, composite=args.composite, table=table)
    if args.json:
        print(report.to_json())
    else:
        print(report.summary())
    return EXIT_OK if report.passed else EXIT_FAIL


def _base_algebra(args) -> object:
    cls = _class(args)
    if args.rep == "matrix":
        if cls.hbar is None:
            cls = cls.with_hbar(1)
        return MatrixAlgebra(cls, args.dim)
    return PhaseAlgebra(cls, 1, max_degree=3, max_terms=3)


def cmd_solve_coproduct(args) -> int:
    alg = _base_algebra(args)
    header = {"class": alg.cls.name, "hbar": _hbar_text(alg.cls), "representation": args.rep,
              "seed": args.seed}
    if args.single_product:
        w = single_product_infeasibility(alg, seed=args.seed)
        if w is None:
            _emit(args, {**header, "mode": "single-product", "infeasible": False},
                  "single-product ansatz: no nonzero bracket found; a lone product is consistent")
            return EXIT_FAIL
        d = w.to_dict()
        text = "\n".join([
            "single-product ansatz is infeasible:",
            f"  f = {d['f']}",
            f"  g = {d['g']}",
            f"  f alpha g = {d['f_alpha_g']}",
            f"  1 alpha 1 = {d['unit_alpha_unit']}",
            f"  {d['conclusion']}",
        ])
        _emit(args, {**header, "mode": "single-product", "infeasible": True, "witness": d}, text)
        return EXIT_OK

    extra = [fixed_value_constraint(name, value) for name, value in args.inject]
    try:
        family, transcript = derive_coproduct(alg, seed=args.seed, extra=extra)
    except NoSolutionError as exc:
        payload = {**header, "solved": False, "error": str(exc),
                   "witness": str(exc.witness) if exc.witness is not None else None}
        lines = [f"no solution: {exc}"]
        injected = dict(args.inject)
        if "a11" in injected and injected["a11"] != 0:
            table = canonical_table(alg.cls).with_values(a11=injected["a11"])
            found = leibniz_witness(alg, table, seed=args.seed)
            if found is not None:
                F, G, H, defect = found
                payload["leibniz_witness"] = {"F": str(F), "G": str(G), "H": str(H),
                                              "defect": str(defect)}
                lines += ["Leibniz violation:", f"  F = {F}", f"  G = {G}", f"  H = {H}",
                          f"  defect = {defect}"]
        _emit(args, payload, "\n".join(lines))
        return EXIT_FAIL
    except InsufficientRankError as exc:
        _emit(args, {**header, "solved": False, "error": str(exc)}, f"no solution: {exc}")
        return EXIT_FAIL
    lines = []
    for row in transcript:
        lines.append(f"[{row['axiom']} | {row['sample']}] {row['constraint']}  =>  {row['resolution']}")
    lines += family.notes
    fixed = ", ".join(f"{k}: {v}" for k, v in family.to_dict()["fixed"].items())
    lines.append(f"family: {{{fixed}}} free: [{', '.join(family.free)}]")
    _emit(args, {**header, "solved": True, "family": family.to_dict(), "transcript": transcript},
          "\n".join(lines))
    return EXIT_OK


def cmd_chsh(args) -> int:
    angles = tuple(args.angles) if args.angles else OPTIMAL_ANGLES
    quantum = chsh_quantum(angles)
    classical = chsh_classical_max()
    text = "\n".join([
        f"quantum   |S| = {quantum.value:.12f} at angles {quantum.strategy_or_angles}"
        f"{' (Tsirelson bound)' if quantum.optimal else ''}",
        f"classical |S| = {classical.value} (max over 16 local strategies, witness "
        f"{classical.strategy_or_angles})",
    ])
    _emit(args, {"quantum": quantum.to_dict(), "classical": classical.to_dict()}, text)
    return EXIT_OK


def _hbar_text(cls: CompositionClass) -> str:
    return "formal" if cls.hbar is None else str(cls.hbar)


# -- argument parsing ----------------------------------------------------------


def _inject(text: str):
    name, sep, value = text.partition("=")
    if not sep or name not in ("a11", "a12", "a21", "a22", "b11", "b12", "b21", "b22"):
        raise argparse.ArgumentTypeError(f"--inject expects NAME=VALUE with a table entry, got {text!r}")
    return name, _rational(value)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--class", dest="cls", default="elliptic",
                        choices=("elliptic", "parabolic", "hyperbolic"))
    common.add_argument("--hbar", type=_hbar, default=None,
                        help="positive rational or 'formal' (default: formal; matrices use 1)")
    common.add_argument("--json", action="store_true", help="machine-readable output")

    rep = argparse.ArgumentParser(add_help=False)
    rep.add_argument("--rep", choices=("matrix", "phase"), default="matrix")
    rep.add_argument("--seed", type=int, default=0)

    parser = argparse.ArgumentParser(
        prog="twoproduct",
        description="Exact two-product algebras: brackets, composites, audits and coproduct derivation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bracket", parents=[common], help="alpha, sigma, beta of two expressions")
    p.add_argument("f")
    p.add_argument("g")
    p.add_argument("--product", choices=PRODUCTS + ("all",), default="all")
    p.set_defaults(func=cmd_bracket)

    p = sub.add_parser("star", parents=[common], help="star product of two polynomials")
    p.add_argument("f")
    p.add_argument("g")
    p.add_argument("--sign", choices=("+", "-"), default="+")
    p.set_defaults(func=cmd_star)

    p = sub.add_parser("compose", parents=[common],
                       help="bipartite alpha12/sigma12 of (f1 (x) f2) and (g1 (x) g2)")
    for name in ("f1", "f2", "g1", "g2"):
        p.add_argument(name)
    p.add_argument("--b11", type=_rational, default=None, help="override the b11 table entry")
    p.set_defaults(func=cmd_compose)

    p = sub.add_parser("audit", parents=[common, rep], help="check every identity on random samples")
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--composite", action="store_true", help="audit the bipartite composite")
    p.add_argument("--b11", type=_rational, default=None,
                   help="forge the b11 entry of the composite table")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("solve-coproduct", parents=[common, rep],
                       help="derive the coproduct coefficients from the unit and Leibniz laws")
    p.add_argument("--dim", type=int, default=2, help="matrix dimension")
    p.add_argument("--single-product", action="store_true",
                   help="check the one-product ansatz instead")
    p.add_argument("--inject", type=_inject, action="append", default=[],
                   metavar="NAME=VALUE", help="pin a table entry (repeatable)")
    p.set_defaults(func=cmd_solve_coproduct)

    p = sub.add_parser(
        "chsh",
        help="CHSH demo (extension: singlet state and local strategies, floating point)",
        description="Extension beyond the exact algebra: compares singlet-state CHSH "
                    "correlations with the best deterministic local strategy. Floating point.",
    )
    p.add_argument("--angles", type=_angle, nargs=4, metavar=("A", "A2", "B", "B2"))
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_chsh)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if getattr(args, "samples", 1) < 1:
        print("error: --samples must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, UnsupportedError, ClassMismatchError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

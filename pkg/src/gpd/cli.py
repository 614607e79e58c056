"""Command-line front end.

Subcommands: `diagram` (filtration -> persistence diagram), `erosion`
(distance between two diagram files), `stability` (perturbation trials
checking the continuity and semicontinuity properties of the diagrams),
and `convert` (re-emit a diagram file in another format).

Exit codes: 0 success; 1 a stability trial violated a theorem; 2 parse
or validation errors; 3 unsupported group/category combination.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .categories import CategoryError
from .diagram import DiagramError, diagram_leq, type_A_diagram, type_B_diagram
from .exact import NonSplitError
from .grothendieck import NoBGroupError
from .homology import (
    FiltrationError,
    component_module,
    interleaving_from_perturbation,
    parse_filtration,
    persistent_module,
    perturb,
)
from .metrics import erode, erosion_distance
from .pmodule import check_interleaving
from .serialize import (
    SerializeError,
    diagram_from_json,
    diagram_to_json,
    diagram_to_svg,
    diagram_to_tsv,
    rat_str,
)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2
EXIT_UNSUPPORTED = 3


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(EXIT_INPUT, f"cannot read {path}: {exc}") from exc


def _write_out(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise CliError(EXIT_INPUT, f"bad rational {text!r}") from None


_CATEGORY_FOR_COEFF = {"Z": "ab", "Q": "vect"}


def _module_from_config(args):
    K = parse_filtration(_read(args.input))
    if args.category == "finset":
        return component_module(K)
    if args.category == "repn":
        raise CliError(EXIT_UNSUPPORTED,
                       "the endomorphism category does not arise from a filtration")
    expected = _CATEGORY_FOR_COEFF.get(
        args.coeff, "vect" if args.coeff.startswith("Fp:") else "finab")
    if args.category is None:
        args.category = expected
    if args.category != expected:
        raise CliError(EXIT_INPUT,
                       f"coefficients {args.coeff} produce category {expected}, "
                       f"not {args.category}")
    return persistent_module(K, args.degree, args.coeff)


def cmd_diagram(args) -> int:
    F = _module_from_config(args)
    if args.type == "A":
        d = type_A_diagram(F)
    else:
        if args.category == "finset":
            raise CliError(EXIT_UNSUPPORTED, "finite sets have no type B diagram")
        d = type_B_diagram(F)
    if args.format == "json":
        _write_out(diagram_to_json(d), args.out)
    elif args.format == "svg":
        _write_out(diagram_to_svg(d), args.out)
    else:
        _write_out(diagram_to_tsv(d), args.out)
    return EXIT_OK


def cmd_erosion(args) -> int:
    d1 = diagram_from_json(_read(args.diagram_a))
    d2 = diagram_from_json(_read(args.diagram_b))
    try:
        report = erosion_distance(d1, d2)
    except DiagramError as exc:
        raise CliError(EXIT_INPUT, str(exc)) from exc
    lines = [f"distance\t{'inf' if report.distance is None else rat_str(report.distance)}",
             "candidate\tok"]
    lines += [f"{rat_str(eps)}\t{'yes' if ok else 'no'}" for eps, ok in report.table]
    _write_out("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_stability(args) -> int:
    K = parse_filtration(_read(args.input))
    eps = _rational(args.epsilon)
    if eps < 0:
        raise CliError(EXIT_INPUT, "epsilon must be nonnegative")
    coeffs = args.coeff
    F = persistent_module(K, args.degree, coeffs)
    gaps = [b - a for a, b in zip(F.values, F.values[1:])]
    rho = min(gaps) / 4 if gaps else None
    in_hypothesis = rho is not None and eps < rho
    YA_F = type_A_diagram(F)
    YB_F = type_B_diagram(F)

    lines = ["trial\tinterleaving\tcontinuity\tsemicontinuity"]
    ok_all = True
    for trial in range(args.trials):
        K2 = perturb(K, eps, seed=args.seed + trial)
        Fm, G, pair = interleaving_from_perturbation(K, K2, args.degree, coeffs, eps)
        inter_ok = check_interleaving(Fm, G, pair)
        dist = erosion_distance(YB_F, type_B_diagram(G)).distance
        cont_ok = dist is not None and dist <= eps
        if in_hypothesis:
            semi_ok = diagram_leq(erode(YA_F, eps), type_A_diagram(G))
            semi_txt = "pass" if semi_ok else "FAIL"
        else:
            semi_ok, semi_txt = True, "skipped"
        ok_all = ok_all and inter_ok and cont_ok and semi_ok
        lines.append(f"{trial}\t{'pass' if inter_ok else 'FAIL'}\t"
                     f"{'pass' if cont_ok else 'FAIL'}\t{semi_txt}")
    _write_out("\n".join(lines) + "\n", args.out)
    return EXIT_OK if ok_all else EXIT_VIOLATION


def cmd_convert(args) -> int:
    d = diagram_from_json(_read(args.input))
    if args.format == "json":
        _write_out(diagram_to_json(d), args.out)
    elif args.format == "svg":
        _write_out(diagram_to_svg(d), args.out)
    else:
        _write_out(diagram_to_tsv(d), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gpd",
                                description="Generalized persistence diagrams "
                                            "of filtered simplicial complexes")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, with_module=True):
        sp.add_argument("--format", choices=["json", "svg", "tsv"], default="json")
        sp.add_argument("--out", default=None)
        if with_module:
            sp.add_argument("--input", required=True)
            sp.add_argument("--type", choices=["A", "B"], default="A")
            sp.add_argument("--category",
                            choices=["finset", "vect", "ab", "finab", "repn"],
                            default=None,
                            help="inferred from --coeff when omitted")
            sp.add_argument("--coeff", default="Z",
                            help="Z | Q | Fp:<p> | Zm:<m>")
            sp.add_argument("--degree", type=int, default=0)

    sp = sub.add_parser("diagram", help="compute a persistence diagram")
    common(sp)
    sp.set_defaults(fn=cmd_diagram)

    sp = sub.add_parser("erosion", help="erosion distance between two diagram files")
    sp.add_argument("diagram_a")
    sp.add_argument("diagram_b")
    sp.add_argument("--out", default=None)
    sp.set_defaults(fn=cmd_erosion)

    sp = sub.add_parser("stability", help="perturbation trials for the stability theorems")
    sp.add_argument("--input", required=True)
    sp.add_argument("--coeff", default="Z")
    sp.add_argument("--degree", type=int, default=0)
    sp.add_argument("--epsilon", required=True)
    sp.add_argument("--trials", type=int, default=10)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out", default=None)
    sp.set_defaults(fn=cmd_stability)

    sp = sub.add_parser("convert", help="re-emit a diagram file in another format")
    sp.add_argument("--input", required=True)
    sp.add_argument("--format", choices=["json", "svg", "tsv"], default="json")
    sp.add_argument("--out", default=None)
    sp.set_defaults(fn=cmd_convert)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (NoBGroupError, NonSplitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (FiltrationError, SerializeError, DiagramError, CategoryError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

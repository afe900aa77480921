"""Command-line front end.

Subcommands: ``poles`` (residue table over the admissible grid), ``sweep``
(residue trajectories along a parameter), ``check`` (the verification suite),
``eval`` (evaluate one spectral function), ``perturb`` (emit a perturbed model
file).  Models are referenced by library name or by file path; rationals on
the command line are exact ("1/3", "-2/5").  Report commands write CSV/JSON
and can render a matplotlib figure next to the delimited output.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

import mpmath

from . import __version__
from .checks import (
    SuiteConfig,
    known_check_ids,
    render_report_json,
    render_report_text,
    run_all,
)
from .formats import (
    POLE_TABLE_COLUMNS,
    FormatError,
    fraction_str,
    load_model,
    parse_fraction,
    pole_table_rows,
    rows_to_csv_text,
    rows_to_json_text,
    save_model,
)
from .library import LIBRARY, get_model, model_names
from .models import (
    FUNCTION_NAMES,
    InsufficientDepthError,
    ModelError,
    PoleHitError,
    SpectralModel,
    spectral_functions,
)
from .perturb import ParameterError, PerturbationParams, ec_perturb, power_op, root_op, shift
from .scalars import ExactScalar


class CliError(Exception):
    """User-facing failure with a clean message."""


def _resolve_model(ref: str) -> SpectralModel:
    if ref in LIBRARY:
        return get_model(ref)
    path = Path(ref)
    if path.exists():
        model = load_model(str(path))
        model.validate()
        return model
    raise CliError(
        f"unknown model {ref!r}: not a library name "
        f"({', '.join(model_names())}) and no such file"
    )


def _apply_perturbations(model: SpectralModel, args) -> SpectralModel:
    epsilon = parse_fraction(args.epsilon) if args.epsilon else Fraction(0)
    c = parse_fraction(args.c) if args.c else Fraction(0)
    if epsilon != 0 or c != 0:
        model = ec_perturb(model, epsilon, c)
    if args.shift:
        model = shift(model, parse_fraction(args.shift))
    if getattr(args, "root", False):
        model = root_op(model)
    if getattr(args, "power_m", None):
        params = PerturbationParams(
            a=parse_fraction(args.power_a) if args.power_a else Fraction(0),
            m=int(args.power_m),
        )
        model = power_op(model, params)
    if getattr(args, "depth", None):
        from .models import set_law_depth

        model = set_law_depth(model, args.depth)
    return model


def _write_output(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _figure_path(out: str | None, default_stem: str) -> str:
    if out:
        return str(Path(out).with_suffix(".png"))
    return f"{default_stem}.png"


def _add_model_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("model", help="library model name or model file path")
    parser.add_argument("--shift", help="constant shift a (rational)")
    parser.add_argument("--epsilon", help="scale perturbation epsilon (rational)")
    parser.add_argument("--c", help="inverse-power correction c (rational, >= 0)")


def _add_common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--prec", type=int, default=256, help="working precision in bits")
    parser.add_argument("--depth", type=int, help="law truncation depth override")
    parser.add_argument(
        "--format", choices=("csv", "json"), default="csv", help="table format"
    )
    parser.add_argument("-o", "--output", help="output file (default stdout)")


def cmd_poles(args) -> int:
    model = _apply_perturbations(_resolve_model(args.model), args)
    floor = args.floor if args.floor is not None else -2 * model.order
    fns = spectral_functions(model)
    try:
        rows = pole_table_rows(fns, floor, prec=args.prec)
    except InsufficientDepthError as exc:
        raise CliError(f"{exc} (hint: pass a larger --depth or rebuild the model)")
    text = (
        rows_to_csv_text(rows, POLE_TABLE_COLUMNS)
        if args.format == "csv"
        else rows_to_json_text(rows)
    )
    _write_output(text, args.output)
    if args.plot:
        from .plots import render_pole_plot

        path = render_pole_plot(
            rows, _figure_path(args.output, "poles"), title=model.name or args.model
        )
        print(f"figure written to {path}", file=sys.stderr)
    return 0


def cmd_sweep(args) -> int:
    base = _resolve_model(args.model)
    start = parse_fraction(args.start)
    stop = parse_fraction(args.stop)
    n = args.samples
    if n < 0:
        raise CliError("samples must be >= 0")
    values = (
        [start + (stop - start) * Fraction(i, n - 1) for i in range(n)]
        if n > 1
        else ([start] if n == 1 else [])
    )
    fixed_eps = parse_fraction(args.epsilon) if args.epsilon else Fraction(0)
    fixed_c = parse_fraction(args.c) if args.c else Fraction(0)
    functions = (args.function,) if args.function else FUNCTION_NAMES
    rows = []
    for val in values:
        if args.param == "a":
            model = ec_perturb(base, fixed_eps, fixed_c) if (fixed_eps or fixed_c) else base
            model = shift(model, val)
        elif args.param == "epsilon":
            model = ec_perturb(base, val, fixed_c)
            if args.shift:
                model = shift(model, parse_fraction(args.shift))
        else:  # c
            model = ec_perturb(base, fixed_eps, val)
            if args.shift:
                model = shift(model, parse_fraction(args.shift))
        fns = spectral_functions(model)
        if args.sigma:
            sigmas = [parse_fraction(args.sigma)]
        else:
            sigmas = [
                Fraction(k, model.order)
                for k in range(model.dimension, 0, -1)
            ]
        for sigma in sigmas:
            for name in functions:
                entry = fns[name].residue(sigma)
                from .formats import residue_renderings

                exact_s, float_s = residue_renderings(entry, args.prec)
                rows.append(
                    {
                        args.param: fraction_str(val),
                        "sigma": fraction_str(sigma),
                        "function": name,
                        "residue_exact": exact_s,
                        "residue_float": float_s,
                    }
                )
    columns = (args.param, "sigma", "function", "residue_exact", "residue_float")
    text = (
        rows_to_csv_text(rows, columns)
        if args.format == "csv"
        else rows_to_json_text(rows)
    )
    _write_output(text, args.output)
    if args.plot and rows:
        from .plots import render_sweep_plot

        path = render_sweep_plot(rows, args.param, _figure_path(args.output, "sweep"))
        print(f"figure written to {path}", file=sys.stderr)
    return 0


def cmd_check(args) -> int:
    selection = None
    if args.checks and args.checks != ["all"]:
        known = known_check_ids()
        expanded: list[str] = []
        for sel in args.checks:
            matches = [n for n in known if n == sel or n.startswith(sel + "_") or n.startswith(sel)]
            if not matches:
                raise CliError(f"unknown check id {sel!r}; valid ids: {known}")
            expanded.extend(matches)
        selection = tuple(dict.fromkeys(expanded))
    model_files: list[str] = []
    extra_models = []
    for ref in args.model or ():
        if ref in LIBRARY:
            model = get_model(ref)
            if args.shift:
                model = shift(model, parse_fraction(args.shift))
            extra_models.append(model)
        else:
            model_files.append(ref)
    config = SuiteConfig(
        selection=selection,
        prec=args.prec,
        samples=args.samples,
        model_files=tuple(model_files),
        extra_models=tuple(extra_models),
        exact_only=args.exact_only,
    )
    try:
        verdicts = run_all(config)
    except KeyError as exc:
        raise CliError(str(exc.args[0]))
    text = (
        render_report_json(verdicts)
        if args.format == "json"
        else render_report_text(verdicts)
    )
    _write_output(text, args.output)
    return 0 if all(v.passed for v in verdicts) else 1


def cmd_eval(args) -> int:
    model = _apply_perturbations(_resolve_model(args.model), args)
    fns = spectral_functions(model)
    s = ExactScalar.deserialize(args.s)
    value = fns[args.function].evaluate(s, args.prec)
    if value.is_exact:
        print(f"exact {value.serialize()}")
    else:
        v = value.to_mpc(args.prec)
        digits = max(8, int(args.prec * 0.301) - 2)
        rendered = (
            mpmath.nstr(v.real, digits) if v.imag == 0 else mpmath.nstr(v, digits)
        )
        print(rendered)
    return 0


def cmd_perturb(args) -> int:
    model = _apply_perturbations(_resolve_model(args.model), args)
    save_model(model, args.output)
    print(f"model written to {args.output}", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zetalab",
        description=(
            "pole locations and residues of spectral zeta/eta functions of "
            "selfadjoint elliptic operators, with exact perturbation tooling"
        ),
    )
    parser.add_argument("--version", action="version", version=f"zetalab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("poles", help="residue table over the admissible grid")
    _add_model_flags(p)
    _add_common_flags(p)
    p.add_argument("--floor", type=int, help="lowest k in the sigma = k/m grid")
    p.add_argument("--root", action="store_true", help="apply the first-order root")
    p.add_argument("--power-a", help="rebuild shift a (with --power-m)")
    p.add_argument("--power-m", type=int, help="rebuild order m")
    p.add_argument(
        "--plot", action=argparse.BooleanOptionalAction, default=False,
        help="render a stem chart next to the table",
    )
    p.set_defaults(func=cmd_poles)

    p = sub.add_parser("sweep", help="residue trajectories along one parameter")
    _add_model_flags(p)
    _add_common_flags(p)
    p.add_argument("--param", choices=("a", "epsilon", "c"), required=True)
    p.add_argument("--start", required=True, help="range start (rational)")
    p.add_argument("--stop", required=True, help="range stop (rational)")
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--sigma", help="restrict to one admissible point")
    p.add_argument("--function", choices=FUNCTION_NAMES, help="restrict to one function")
    p.add_argument(
        "--plot", action=argparse.BooleanOptionalAction, default=True,
        help="render the trajectories next to the table (default on)",
    )
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("check", help="run the verification suite")
    p.add_argument(
        "checks", nargs="*", default=["all"],
        help=f"check ids (default all); known: {', '.join(known_check_ids())}",
    )
    p.add_argument(
        "--model", action="append",
        help="extra model (library name or file) to run the parity check on",
    )
    p.add_argument("--shift", help="shift applied to extra library models")
    p.add_argument("--prec", type=int, default=256)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--exact-only", action="store_true", help="run only tolerance-0 checks")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("-o", "--output", help="report file (default stdout)")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("eval", help="evaluate a spectral function at a point")
    _add_model_flags(p)
    p.add_argument("--function", choices=FUNCTION_NAMES, required=True)
    p.add_argument("--s", required=True, help='evaluation point, e.g. "2/1" or "1/2+3/4 i"')
    p.add_argument("--prec", type=int, default=256)
    p.add_argument("--root", action="store_true")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("perturb", help="apply perturbations and emit a model file")
    _add_model_flags(p)
    p.add_argument("--root", action="store_true", help="apply the first-order root")
    p.add_argument("--power-a", help="rebuild shift a (with --power-m)")
    p.add_argument("--power-m", type=int, help="rebuild order m")
    p.add_argument("-o", "--output", required=True, help="model file to write")
    p.set_defaults(func=cmd_perturb)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (CliError, FormatError, ModelError, ParameterError,
            InsufficientDepthError, PoleHitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

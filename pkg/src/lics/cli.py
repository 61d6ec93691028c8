"""Command-line entry point: parameter sweeps, figure presets and validation.

Parameter precedence is command line > config file > preset. Exit codes:
0 success, 2 validation or landmark failure, 3 invalid sweep or parameters.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path
from typing import Optional

from . import __version__
from .io import emit_csv, emit_plot, format_csv, load_config, parse_axis
from .params import ParameterError
from .presets import PRESETS, get_preset, override, target
from .sweep import (DOPPLER, FOLDED_CONVERSION, FOLDED_DISSOCIATION, FOLDED_POPULATION,
                    LADDER_CONVERSION, LADDER_SPECTRUM, SpecError, SweepSpec, run_sweep)

EXIT_OK, EXIT_VALIDATION, EXIT_SPEC = 0, 2, 3

_COMMAND_SCHEMES = {
    "spectrum": (LADDER_SPECTRUM,),
    "conversion": (LADDER_CONVERSION, FOLDED_CONVERSION),
    "populations": (FOLDED_POPULATION,),
    "dissociation": (FOLDED_DISSOCIATION,),
    "doppler": (DOPPLER,),
}


def _value(text: str):
    try:
        return float(text)
    except ValueError:
        return text


def _assignment(text: str):
    key, sep, value = text.partition("=")
    if not sep or not key.strip():
        raise argparse.ArgumentTypeError(f"expected key=value, got {text!r}")
    return key.strip(), _value(value.strip())


def _axis(text: str):
    try:
        return parse_axis(text)
    except SpecError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _sweep_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="sweep config file ([sweep], [params], [axis1], [axis2])")
    p.add_argument("--preset", help="start from this figure preset")
    p.add_argument("--curve", help="apply one curve of the preset")
    p.add_argument("--set", dest="sets", action="append", type=_assignment, default=[],
                   metavar="KEY=VALUE", help="fix a parameter (name or ratio a/b); repeatable")
    p.add_argument("--grid", action="append", type=_axis, default=[],
                   metavar="PATH:START:STOP:COUNT[:lin|log]",
                   help="sweep axis; up to two; replaces the preset/config axes")
    p.add_argument("--outputs", help="comma-separated output columns")
    p.add_argument("--out", help="CSV file (default: standard output)")
    p.add_argument("--plot", help="plot file; the suffix selects the format (svg, pdf, png)")
    p.add_argument("--threads", type=int, help="worker threads for grid evaluation")
    p.add_argument("--tolerance", type=float, help="relative tolerance of numerical quadrature")
    p.add_argument("--max-points", type=int, help="raise the grid-size guard (default 1e6)")
    p.add_argument("--no-refine", action="store_true", help="skip zoomed maximum refinement")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lics", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"lics {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)
    for name, schemes in _COMMAND_SCHEMES.items():
        p = sub.add_parser(name, help=f"sweep of the {' / '.join(schemes)} scheme")
        if len(schemes) > 1:
            p.add_argument("--scheme", choices=("ladder", "folded"),
                           help="coupling scheme (default: from preset/config, else ladder)")
        _sweep_options(p)
    p = sub.add_parser("preset", help="run a figure preset and check its landmarks")
    p.add_argument("id", help="preset id, or 'list'")
    p.add_argument("--all-curves", action="store_true", help="also run every curve")
    p.add_argument("--show", action="store_true", help="print the cited parameter block as JSON")
    _sweep_options(p)
    p = sub.add_parser("validate", help="run the oracle comparisons and landmark checks")
    p.add_argument("--only", help="comma-separated check numbers (1-10)")
    return ap


# ---------------------------------------------------------------------- spec building

def _scheme_for(command: str, args, base_scheme: Optional[str]) -> str:
    schemes = _COMMAND_SCHEMES[command]
    if len(schemes) == 1:
        scheme = schemes[0]
    elif getattr(args, "scheme", None):
        scheme = LADDER_CONVERSION if args.scheme == "ladder" else FOLDED_CONVERSION
    else:
        scheme = base_scheme if base_scheme in schemes else schemes[0]
    if base_scheme is not None and base_scheme != scheme:
        raise SpecError(f"'{command}' runs {scheme}, but the preset/config is for {base_scheme}")
    return scheme


def _pin(axes, block) -> tuple:
    """Drop axes whose quantity is fixed explicitly."""
    fixed = {target(k) for k in block}
    return tuple(a for a in axes if target(a.path) not in fixed)


def build_spec(command: str, args, preset_id: Optional[str] = None,
               curve: Optional[str] = None) -> SweepSpec:
    cfg = load_config(args.config) if args.config else {"params": {}, "axes": []}
    preset_id = preset_id or args.preset or cfg.get("preset")
    curve = curve if curve is not None else (args.curve or cfg.get("curve"))
    if preset_id:
        spec = SweepSpec.from_preset(preset_id, curve=curve)
    else:
        if curve:
            raise SpecError("--curve needs a preset")
        spec = SweepSpec(cfg.get("scheme") or _COMMAND_SCHEMES.get(command, (None,))[0] or "",
                         rate_unit="reference rate")
    base_scheme = spec.scheme if preset_id else cfg.get("scheme")
    scheme = spec.scheme if command == "preset" else _scheme_for(command, args, base_scheme)

    block = dict(spec.fixed)
    axes = spec.axes
    # config layer
    if cfg["params"]:
        block = override(block, cfg["params"])
        axes = _pin(axes, cfg["params"])
    if cfg["axes"]:
        axes = tuple(cfg["axes"])
    # command-line layer
    sets = dict(args.sets)
    if sets:
        block = override(block, sets)
        axes = _pin(axes, sets)
    if args.grid:
        axes = tuple(args.grid)
    outputs = spec.outputs
    if cfg.get("outputs"):
        outputs = cfg["outputs"]
    if args.outputs:
        outputs = tuple(o.strip() for o in args.outputs.split(",") if o.strip())
    kw = {}
    for key, flag in (("threads", args.threads), ("tolerance", args.tolerance),
                      ("max_points", args.max_points)):
        value = flag if flag is not None else cfg.get(key)
        if value is not None:
            kw[key] = value
    if cfg.get("rate_unit"):
        kw["rate_unit"] = cfg["rate_unit"]
    return dataclasses.replace(spec, scheme=scheme, fixed=block, axes=axes, outputs=outputs,
                               preset=preset_id, curve=curve, **kw)


# --------------------------------------------------------------------------- running

def _target_path(base: Optional[str], tag: Optional[str]) -> Optional[Path]:
    if base is None:
        return None
    path = Path(base)
    return path if tag is None else path.with_name(f"{path.stem}.curve{tag}{path.suffix}")


def _emit(result, args, tag: Optional[str], first: bool) -> None:
    out = _target_path(args.out, tag)
    if out is None:
        if not first:
            sys.stdout.write("\n")
        sys.stdout.write(format_csv(result.table))
    else:
        emit_csv(result.table, out)
    plot = _target_path(args.plot, tag)
    if plot is not None:
        emit_plot(result, plot)


def _report(result) -> None:
    for name, ext in result.summary.items():
        parts = [f"max {ext['max']:.6g}", f"min {ext['min']:.6g}"] if "max" in ext else []
        if ext.get("gaps"):
            parts.append(f"{ext['gaps']} gap rows")
        for key in ("first_max", "refined_max"):
            if key in ext:
                parts.append(f"{key} {ext[key]['value']:.6g}")
        print(f"# {name}: {', '.join(parts)}", file=sys.stderr)


def _run_specs(specs, args) -> int:
    status = EXIT_OK
    for i, (tag, spec) in enumerate(specs):
        result = run_sweep(spec, refine=not args.no_refine)
        _emit(result, args, tag, i == 0)
        _report(result)
        for check in result.landmarks:
            print(f"# landmark {check.line()}", file=sys.stderr)
            if not check.passed:
                status = EXIT_VALIDATION
    return status


def _cmd_preset(args) -> int:
    if args.id == "list":
        for pid, pr in PRESETS.items():
            curves = f" (curves: {', '.join(pr.curves)})" if pr.curves else ""
            print(f"{pid}\t{pr.scheme}\t{pr.description}{curves}")
        return EXIT_OK
    pr = get_preset(args.id)
    if args.show:
        print(pr.to_json())
        return EXIT_OK
    if args.curve or args.preset:
        if args.preset and args.preset != pr.id:
            raise SpecError(f"preset given twice: {pr.id} and {args.preset}")
        return _run_specs([(None, build_spec("preset", args, pr.id))], args)
    specs = []
    if not pr.curves_only:
        specs.append((None, build_spec("preset", args, pr.id)))
    if pr.curves_only or args.all_curves:
        specs += [(c, build_spec("preset", args, pr.id, c)) for c in pr.curves]
    return _run_specs(specs, args)


def _cmd_validate(args) -> int:
    from .validation import CHECKS, run_all
    checks = CHECKS
    if args.only:
        wanted = {int(x) for x in args.only.split(",")}
        checks = tuple(c for i, c in enumerate(CHECKS, 1) if i in wanted)
    results = run_all(checks, echo=lambda line: print(line, flush=True))
    return EXIT_OK if all(r.passed for r in results) else EXIT_VALIDATION


def main(argv: Optional[list] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "validate":
            return _cmd_validate(args)
        if args.command == "preset":
            return _cmd_preset(args)
        return _run_specs([(None, build_spec(args.command, args))], args)
    except (SpecError, ParameterError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"error: {msg}", file=sys.stderr)
        return EXIT_SPEC


if __name__ == "__main__":
    sys.exit(main())

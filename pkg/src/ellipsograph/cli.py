"""Command-line front end: design, analyze, trace, render, and price a
trammel from a config file or flags.

Commands: design | analyze | trace | svg | csv | bom | verify.
Exit codes: 0 success, 1 validation or verification failure, 2 I/O failure.

The shipped default mechanism (40 mm pivot separation, 140 mm pen offset,
1x4 tile shuttles, 72 mm channels, landscape A4 page) is a plausible
reconstruction of the physical build, not measured data: it traces a
280 x 200 mm ellipse that fills an A4 sheet. Override any of it via flags
or a config file.

Config file grammar (INI-style sections, key = value, # comments)::

    [trammel]
    pivot_separation_studs = 5     ; or pivot_separation_mm, exactly one
    pen_offset_mm = 140            ; or pen_offset_studs
    shuttle_length_mm = 32
    shuttle_width_mm = 8
    channel_half_length_mm = 72

    [page]
    preset = a4                    ; or explicit width_mm + height_mm
    orientation = landscape        ; portrait|landscape, with preset only
    margin_mm = 0

    [output]
    format = svg                   ; svg|csv
    path = drawing.svg             ; omit to write to stdout
    max_chord_mm = 0.5

    [solver]
    tol = 1e-9
    max_iter = 25

Flags override file values. Stud lengths convert at exactly 8 mm/stud.
"""

from __future__ import annotations

import argparse
import configparser
import json
import math
import sys
from dataclasses import dataclass

from . import bom as bom_mod
from . import clearance, export, solver, trammel
from .geometry import STUD, TWO_PI, EllipseSpec, Tolerances, focal_sum, implicit_residual

DEFAULT_PIVOT_SEPARATION = 40.0  # 5 studs
DEFAULT_PEN_OFFSET = 140.0
DEFAULT_CHANNEL_HALF_LENGTH = 72.0
DEFAULT_MAX_CHORD = 0.5
DEFAULT_FORMAT = "svg"

VERIFY_GRID = 10_000
VERIFY_SWEEP_STEPS = 720
VERIFY_MAX_ITERATIONS = 6

_ALLOWED_KEYS = {
    "trammel": {
        "pivot_separation_mm", "pivot_separation_studs",
        "pen_offset_mm", "pen_offset_studs",
        "shuttle_length_mm", "shuttle_width_mm", "channel_half_length_mm",
    },
    "page": {"preset", "orientation", "width_mm", "height_mm", "margin_mm"},
    "output": {"format", "path", "max_chord_mm"},
    "solver": {"tol", "max_iter"},
}


class ConfigError(ValueError):
    """Invalid config file or flag combination."""


@dataclass(frozen=True)
class RunConfig:
    trammel: trammel.TrammelConfig
    page: export.PageSpec
    output_format: str
    output_path: str | None
    max_chord: float
    solver: solver.SolverConfig


class _Parser(argparse.ArgumentParser):
    # route usage errors through the documented exit-code contract (1)
    def error(self, message):
        raise ConfigError(message)


def _to_float(text: str, context: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise ConfigError(f"{context}: not a number: {text!r}")


def _to_int(text: str, context: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ConfigError(f"{context}: not an integer: {text!r}")


def _read_config_file(path: str) -> dict[str, dict[str, str]]:
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    with open(path, encoding="utf-8") as fh:
        try:
            parser.read_file(fh, source=path)
        except configparser.Error as err:
            raise ConfigError(f"cannot parse {path}: {err}")
    sections: dict[str, dict[str, str]] = {}
    for section in parser.sections():
        if section not in _ALLOWED_KEYS:
            raise ConfigError(f"{path}: unknown section [{section}]")
        for key in parser[section]:
            if key not in _ALLOWED_KEYS[section]:
                raise ConfigError(f"{path}: unknown key {key!r} in [{section}]")
        sections[section] = dict(parser[section])
    return sections


def _resolve_length(name: str, file_section: dict[str, str], args,
                    default_mm: float) -> float:
    """One mechanism length from flags (highest priority), file, or default.
    mm and studs variants are mutually exclusive at each level."""
    flag_mm = getattr(args, f"{name}_mm")
    flag_studs = getattr(args, f"{name}_studs")
    if flag_mm is not None and flag_studs is not None:
        raise ConfigError(f"give exactly one of --{name.replace('_', '-')}-mm / -studs")
    if flag_mm is not None:
        return flag_mm
    if flag_studs is not None:
        return flag_studs * STUD
    file_mm = file_section.get(f"{name}_mm")
    file_studs = file_section.get(f"{name}_studs")
    if file_mm is not None and file_studs is not None:
        raise ConfigError(f"[trammel]: give exactly one of {name}_mm / {name}_studs")
    if file_mm is not None:
        return _to_float(file_mm, f"[trammel] {name}_mm")
    if file_studs is not None:
        return _to_float(file_studs, f"[trammel] {name}_studs") * STUD
    return default_mm


def _resolve_page(file_section: dict[str, str], args) -> export.PageSpec:
    width = args.page_width_mm
    height = args.page_height_mm
    if width is None and "width_mm" in file_section:
        width = _to_float(file_section["width_mm"], "[page] width_mm")
    if height is None and "height_mm" in file_section:
        height = _to_float(file_section["height_mm"], "[page] height_mm")
    preset = args.page_preset or file_section.get("preset")
    orientation = args.orientation or file_section.get("orientation")
    margin = args.margin_mm
    if margin is None:
        margin = _to_float(file_section.get("margin_mm", "0"), "[page] margin_mm")

    if (width is None) != (height is None):
        raise ConfigError("page: width_mm and height_mm must be given together")
    if width is not None:
        if preset is not None or orientation is not None:
            raise ConfigError("page: give either an explicit size or a preset, not both")
        return export.PageSpec(width, height, margin)

    preset = preset or "a4"
    orientation = orientation or "landscape"  # shipped default drawing is 280 mm wide
    if preset.lower() != "a4":
        raise ConfigError(f"page: unknown preset {preset!r} (only a4 is built in)")
    if orientation not in ("portrait", "landscape"):
        raise ConfigError(f"page: orientation must be portrait or landscape, got {orientation!r}")
    return export.PageSpec.a4(margin=margin, landscape=orientation == "landscape")


def build_run_config(args) -> RunConfig:
    """Merge defaults, the optional config file, and flags into a RunConfig."""
    sections: dict[str, dict[str, str]] = {}
    if args.config is not None:
        sections = _read_config_file(args.config)
    tram_sec = sections.get("trammel", {})
    page_sec = sections.get("page", {})
    out_sec = sections.get("output", {})
    sol_sec = sections.get("solver", {})

    shuttle_length = args.shuttle_length_mm
    if shuttle_length is None:
        shuttle_length = _to_float(tram_sec.get("shuttle_length_mm",
                                                str(clearance.DEFAULT_SHUTTLE_LENGTH)),
                                   "[trammel] shuttle_length_mm")
    shuttle_width = args.shuttle_width_mm
    if shuttle_width is None:
        shuttle_width = _to_float(tram_sec.get("shuttle_width_mm",
                                               str(clearance.DEFAULT_SHUTTLE_WIDTH)),
                                  "[trammel] shuttle_width_mm")
    channel = args.channel_half_length_mm
    if channel is None:
        channel = _to_float(tram_sec.get("channel_half_length_mm",
                                         str(DEFAULT_CHANNEL_HALF_LENGTH)),
                            "[trammel] channel_half_length_mm")

    tram = trammel.TrammelConfig(
        pivot_separation=_resolve_length("pivot_separation", tram_sec, args,
                                         DEFAULT_PIVOT_SEPARATION),
        pen_offset=_resolve_length("pen_offset", tram_sec, args, DEFAULT_PEN_OFFSET),
        shuttle=clearance.ShuttleFootprint(shuttle_length, shuttle_width),
        channel_half_length=channel,
    )

    out_format = args.format or out_sec.get("format", DEFAULT_FORMAT)
    if out_format not in ("svg", "csv"):
        raise ConfigError(f"output format must be svg or csv, got {out_format!r}")
    out_path = args.output or out_sec.get("path")
    max_chord = args.max_chord_mm
    if max_chord is None:
        max_chord = _to_float(out_sec.get("max_chord_mm", str(DEFAULT_MAX_CHORD)),
                              "[output] max_chord_mm")

    tol = args.solver_tol
    if tol is None:
        tol = _to_float(sol_sec.get("tol", "1e-9"), "[solver] tol")
    max_iter = args.max_iter
    if max_iter is None:
        max_iter = _to_int(sol_sec.get("max_iter", "25"), "[solver] max_iter")

    return RunConfig(
        trammel=tram,
        page=_resolve_page(page_sec, args),
        output_format=out_format,
        output_path=out_path,
        max_chord=max_chord,
        solver=solver.SolverConfig(tol=tol, max_iter=max_iter),
    )


def _mm_and_studs(value: float) -> str:
    if math.isinf(value):
        return "unbounded"
    return f"{value:g} mm ({value / STUD:g} studs)"


def cmd_design(args) -> int:
    cfg = trammel.design_for_ellipse(
        args.a, args.b,
        variant="pen_outside" if args.variant == "outside" else "pen_between",
        shuttle=clearance.ShuttleFootprint(
            args.shuttle_length_mm if args.shuttle_length_mm is not None
            else clearance.DEFAULT_SHUTTLE_LENGTH,
            args.shuttle_width_mm if args.shuttle_width_mm is not None
            else clearance.DEFAULT_SHUTTLE_WIDTH,
        ),
        channel_half_length=args.channel_half_length_mm
        if args.channel_half_length_mm is not None else math.inf,
    )
    ax, ay = trammel.semi_axes(cfg)
    print(f"variant: {args.variant}")
    print(f"pivot_separation: {_mm_and_studs(cfg.pivot_separation)}")
    print(f"pen_offset: {_mm_and_studs(cfg.pen_offset)}")
    print(f"shuttle: {cfg.shuttle.length:g} x {cfg.shuttle.width:g} mm")
    print(f"channel_half_length: {_mm_and_studs(cfg.channel_half_length)}")
    print(f"required_channel_half_length: "
          f"{_mm_and_studs(trammel.required_channel_half_length(cfg))}")
    print(f"semi_axes: {ax:g} x {ay:g} mm")
    return 0


def cmd_analyze(args) -> int:
    run = build_run_config(args)
    report = clearance.forbidden_arcs(run.trammel, tol=args.arc_tol)
    if args.json:
        payload = {
            "drawable_fraction": report.drawable_fraction,
            "forbidden_arcs": [
                {"theta_lo": arc.lo, "theta_hi": arc.hi, "cause": arc.cause}
                for arc in report.boundaries
            ],
        }
        print(json.dumps(payload, indent=2))
        return 0
    tram = run.trammel
    print(f"pivot_separation: {tram.pivot_separation:g} mm, "
          f"pen_offset: {tram.pen_offset:g} mm, "
          f"shuttle: {tram.shuttle.length:g} x {tram.shuttle.width:g} mm, "
          f"channel_half_length: {_mm_and_studs(tram.channel_half_length)}")
    print(f"drawable: {report.drawable_fraction * 100:.2f}%")
    if not report.boundaries:
        print("no forbidden arcs")
    else:
        print(f"forbidden arcs ({len(report.boundaries)}):")
        for arc in report.boundaries:
            print(f"  [{arc.lo:.6f}, {arc.hi:.6f}] rad  cause={arc.cause}")
    return 0


def _render_document(run: RunConfig, out_format: str) -> str:
    domain = clearance.drawable_trace_domain(run.trammel)
    trace = export.sample_trace(run.trammel, domain, run.max_chord)
    if out_format == "svg":
        return export.to_svg(trace, run.page)
    return export.to_csv(trace)


def _write_output(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


def _cmd_export(args, forced_format: str | None) -> int:
    run = build_run_config(args)
    out_format = forced_format or run.output_format
    _write_output(_render_document(run, out_format), run.output_path)
    return 0


def cmd_trace(args) -> int:
    return _cmd_export(args, None)


def cmd_svg(args) -> int:
    return _cmd_export(args, "svg")


def cmd_csv(args) -> int:
    return _cmd_export(args, "csv")


def cmd_bom(args) -> int:
    if args.catalog is not None:
        with open(args.catalog, encoding="utf-8") as fh:
            catalog = bom_mod.load_catalog(fh.read())
    else:
        catalog = bom_mod.default_catalog()
    name_width = max((len(line.name) for line in catalog.lines), default=4)
    id_width = max((len(line.part_id) for line in catalog.lines), default=7)
    for line in catalog.lines:
        print(f"{line.part_id:<{id_width}}  {line.name:<{name_width}}  "
              f"{bom_mod.format_eur(line.unit_price_cents):>6} EUR  "
              f"x{line.quantity:<3} "
              f"{bom_mod.format_eur(line.line_total_cents):>6} EUR")
    count, cost = bom_mod.totals(catalog)
    print(f"total: {count} parts, {bom_mod.format_eur(cost)} EUR")
    print("note: a ballpoint pen refill is needed as well (sold separately, "
          "typically under 1 EUR)")
    return 0


def _verify_checks(run: RunConfig, residual_tol: float) -> list[tuple[str, bool, str]]:
    tram = run.trammel
    ax, ay = trammel.semi_axes(tram)
    ellipse = EllipseSpec(ax, ay)
    target = 2.0 * max(ax, ay)
    distance_tol = run.solver.tol

    max_residual = 0.0
    max_focal_dev = 0.0
    for k in range(VERIFY_GRID):
        theta = TWO_PI * k / VERIFY_GRID
        pen = trammel.rod_state(tram, theta).pen
        max_residual = max(max_residual, abs(implicit_residual(ellipse, pen)))
        max_focal_dev = max(max_focal_dev, abs(focal_sum(ellipse, pen) - target))

    checks = [
        (
            "implicit-residual",
            max_residual <= residual_tol,
            f"max |residual| {max_residual:.3e}, tol {residual_tol:.1e}",
        ),
        (
            "focal-sum",
            max_focal_dev <= distance_tol,
            f"max |sum - {target:g}| {max_focal_dev:.3e} mm, tol {distance_tol:.1e}",
        ),
    ]

    ell = tram.pivot_separation
    try:
        results = solver.sweep_detailed(ell, 0.0, TWO_PI, VERIFY_SWEEP_STEPS, run.solver)
    except solver.SolverError as err:
        checks.append(("solver-sweep", False, str(err)))
        return checks
    max_dev = 0.0
    max_iterations = 0
    for k, result in enumerate(results):
        theta = TWO_PI * k / VERIFY_SWEEP_STEPS
        state = trammel.rod_state(tram, theta)
        dev = math.hypot(result.state.x_c - state.pivot_x.x,
                         result.state.y_d - state.pivot_y.y)
        max_dev = max(max_dev, dev)
        max_iterations = max(max_iterations, result.iterations)
    checks.append(
        (
            "solver-sweep",
            max_dev <= distance_tol and max_iterations <= VERIFY_MAX_ITERATIONS,
            f"max deviation {max_dev:.3e} mm (tol {distance_tol:.1e}), "
            f"max iterations {max_iterations} (limit {VERIFY_MAX_ITERATIONS})",
        )
    )
    return checks


def cmd_verify(args) -> int:
    run = build_run_config(args)
    checks = _verify_checks(run, residual_tol=args.residual_tol)
    all_ok = True
    for name, ok, detail in checks:
        print(f"check {name}: {'PASS' if ok else 'FAIL'} ({detail})")
        all_ok = all_ok and ok
    print("verification OK" if all_ok else "verification FAILED")
    return 0 if all_ok else 1


def _add_config_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("-c", "--config", metavar="PATH", help="config file (INI sections)")
    g = p.add_argument_group("trammel overrides")
    g.add_argument("--pivot-separation-mm", type=float, dest="pivot_separation_mm")
    g.add_argument("--pivot-separation-studs", type=float, dest="pivot_separation_studs")
    g.add_argument("--pen-offset-mm", type=float, dest="pen_offset_mm")
    g.add_argument("--pen-offset-studs", type=float, dest="pen_offset_studs")
    _add_shuttle_flags(p)
    g = p.add_argument_group("page overrides")
    g.add_argument("--page-preset", choices=["a4"], dest="page_preset")
    g.add_argument("--orientation", choices=["portrait", "landscape"])
    g.add_argument("--page-width-mm", type=float, dest="page_width_mm")
    g.add_argument("--page-height-mm", type=float, dest="page_height_mm")
    g.add_argument("--margin-mm", type=float, dest="margin_mm")
    g = p.add_argument_group("output overrides")
    g.add_argument("--format", choices=["svg", "csv"])
    g.add_argument("-o", "--output", metavar="PATH", help="output file (default stdout)")
    g.add_argument("--max-chord-mm", type=float, dest="max_chord_mm")
    g = p.add_argument_group("solver overrides")
    g.add_argument("--solver-tol", type=float, dest="solver_tol")
    g.add_argument("--max-iter", type=int, dest="max_iter")


def _add_shuttle_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--shuttle-length-mm", type=float, dest="shuttle_length_mm")
    p.add_argument("--shuttle-width-mm", type=float, dest="shuttle_width_mm")
    p.add_argument("--channel-half-length-mm", type=float, dest="channel_half_length_mm")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ellipsograph",
                     description="Trammel ellipsograph toolkit: design, analyze, "
                                 "draw, and price the mechanism.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("design", help="mechanism dimensions for target semi-axes")
    p.add_argument("--a", type=float, required=True, help="first semi-axis, mm")
    p.add_argument("--b", type=float, required=True, help="second semi-axis, mm")
    p.add_argument("--variant", choices=["outside", "between"], required=True,
                   help="pen beyond the near pivot, or between the pivots")
    _add_shuttle_flags(p)
    p.set_defaults(func=cmd_design)

    p = sub.add_parser("analyze", help="drawable fraction and forbidden arcs")
    _add_config_flags(p)
    p.add_argument("--json", action="store_true", help="machine-readable report")
    p.add_argument("--arc-tol", type=float, default=1e-9,
                   help="bisection tolerance for arc boundaries, rad")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("trace", help="export the drawable trace in the configured format")
    _add_config_flags(p)
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("svg", help="export the drawable trace as SVG")
    _add_config_flags(p)
    p.set_defaults(func=cmd_svg)

    p = sub.add_parser("csv", help="export the drawable trace as CSV")
    _add_config_flags(p)
    p.set_defaults(func=cmd_csv)

    p = sub.add_parser("bom", help="print the parts list and total cost")
    p.add_argument("--catalog", metavar="PATH",
                   help="catalog CSV (default: embedded parts list)")
    p.set_defaults(func=cmd_bom)

    p = sub.add_parser("verify", help="run the self-consistency checks")
    _add_config_flags(p)
    p.add_argument("--residual-tol", type=float, default=Tolerances().residual_tol,
                   help="implicit-equation residual tolerance")
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except (ConfigError, ValueError, solver.SolverError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

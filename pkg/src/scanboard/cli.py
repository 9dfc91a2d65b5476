"""Command line front end.

Subcommands:
    run       execute a program file, optionally rendering the drawing to SVG
    simulate  plan how a program would be typed and report input costs
    layout    validate a layout file (including its help examples)
    serve     run the WebSocket/HTTP server
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import logo
from .cost import (PlanError, direct_cost, physical_cost, plan_selections,
                   scanning_cost)
from .engine import ProfileError, load_profile
from .layout import Layout, LayoutError, default_layout, parse_layout
from .scanner import ScanConfig, ScanConfigError


def _read(path: str) -> str:
    return Path(path).expanduser().read_text(encoding="utf-8")


def _load_layout_arg(path: str | None) -> Layout:
    if path is None:
        return default_layout()
    return parse_layout(_read(path))


def cmd_run(args: argparse.Namespace) -> int:
    try:
        source = _read(args.program)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    env = logo.Environment()
    try:
        report = logo.run(source, env)
    except logo.LogoError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for line in report.printed:
        print(line)
    if args.svg is not None:
        svg = logo.segments_to_svg(report.segments, 500, 500)
        Path(args.svg).write_text(svg, encoding="utf-8")
    return 0


def cmd_simulate(args: argparse.Namespace) -> int:
    try:
        source = _read(args.program)
        layout = _load_layout_arg(args.layout)
    except (OSError, LayoutError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    scan_config = ScanConfig(period_ms=args.period_ms)
    try:
        scan_config.validate()
    except ScanConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        plan = plan_selections(source, layout)
    except (PlanError, logo.LogoError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    reports = {
        "physical": physical_cost(source),
        "direct": direct_cost(plan),
        "scanning": scanning_cost(plan, layout, scan_config),
    }
    wanted = [args.method] if args.method else list(reports)
    rows = [reports[name] for name in wanted]
    print(f"{'method':<10} {'presses':>8} {'scan_ticks':>11} {'est_time_ms':>12}")
    for rep in rows:
        print(f"{rep.method:<10} {rep.presses:>8} {rep.scan_ticks:>11} "
              f"{rep.est_time_ms:>12}")
    for rep in rows:
        print(json.dumps(rep.as_dict(), separators=(",", ":")))
    return 0


def cmd_layout_validate(args: argparse.Namespace) -> int:
    try:
        layout = parse_layout(_read(args.file))
    except (OSError, LayoutError) as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return 1
    problems = []
    for key in layout.keys():
        if key.help is None:
            continue
        try:
            logo.run(key.help.example, logo.Environment())
        except logo.LogoError as exc:
            problems.append(f"key {key.id!r}: help example does not run: {exc}")
    if problems:
        for line in problems:
            print(f"invalid: {line}", file=sys.stderr)
        return 1
    print(f"ok: {layout.key_count()} keys")
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    from .server import serve

    config = None
    if args.profile is not None:
        try:
            config = load_profile(args.profile)
        except ProfileError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 1
    serve(host=args.host, port=args.port, config=config,
          manual_clock=args.manual_clock, frontend_dir=args.frontend)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scanboard",
        description="Virtual scanning keyboard and turtle graphics engine")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute a program file")
    p_run.add_argument("program", help="program file to execute")
    p_run.add_argument("--svg", metavar="OUT",
                       help="write the drawing to this SVG file")
    p_run.set_defaults(func=cmd_run)

    p_sim = sub.add_parser("simulate",
                           help="estimate typing cost for a program")
    p_sim.add_argument("--program", required=True,
                       help="program file to plan selections for")
    p_sim.add_argument("--layout", help="layout JSON file (default: built-in)")
    p_sim.add_argument("--method",
                       choices=["physical", "direct", "scanning"],
                       help="report a single method (default: all)")
    p_sim.add_argument("--period-ms", type=int, default=600,
                       help="scan period for time estimates (default 600)")
    p_sim.set_defaults(func=cmd_simulate)

    p_layout = sub.add_parser("layout", help="layout file tools")
    layout_sub = p_layout.add_subparsers(dest="layout_command", required=True)
    p_validate = layout_sub.add_parser("validate", help="check a layout file")
    p_validate.add_argument("file", help="layout JSON file")
    p_validate.set_defaults(func=cmd_layout_validate)

    p_serve = sub.add_parser("serve", help="run the session server")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=7313)
    p_serve.add_argument("--manual-clock", action="store_true",
                         help="no server-side scan timer; clients send "
                              "clock_tick events themselves")
    p_serve.add_argument("--profile", help="profile JSON to load settings from")
    p_serve.add_argument("--frontend", help="directory of built UI files to serve")
    p_serve.set_defaults(func=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

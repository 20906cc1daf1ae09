"""Command-line entry points for batch design studies.

Exit codes: 0 success, 1 usage error, 2 domain error (bad config values,
monostable designs, unreachable targets, ...).  Domain errors print a
message on stderr, never a traceback.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .config import (build_design, build_solver_settings, load_config,
                     serialize_config)
from .dynamics import (closing_time, gravity_trigger_check,
                       minimal_trigger_impulse, natural_frequency,
                       simulate_1dof)
from .errors import DomainError
from .explore import (SweepSpec, design_metrics, grip_force_estimate,
                      reproduce_fea_cases, run_sweep, tune_ring_width)
from .model import sample_landscape, total_energy_1dof
from .report import (fmt, svg_grouped_bars, svg_line_plot, write_csv,
                     write_key_value, write_manifest)
from .statics import (continuation_ramped_load, find_equilibria_1dof,
                      snap_through_energy, trigger_moment)

USAGE_EXIT = 1
DOMAIN_EXIT = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_EXIT)


def _build_parser() -> _Parser:
    parser = _Parser(prog="snapgrip",
                     description="Bistable soft-gripper design studies")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    def common(p):
        p.add_argument("--config", required=True, help="configuration file")
        p.add_argument("--out", default=".", help="output directory")
        p.add_argument("--plot", action="store_true",
                       help="also emit an SVG plot where applicable")

    p = sub.add_parser("landscape", help="sample the energy landscape")
    common(p)
    p.add_argument("--n", type=int, default=1001)

    for name, text in (("equilibria", "locate and classify equilibria"),
                       ("snapthrough", "snap-through energy barrier"),
                       ("trigger", "minimum quasi-static trigger moment"),
                       ("gravitycheck", "does gravity alone trigger closing"),
                       ("feacases", "four morphology cases and trend checks")):
        p = sub.add_parser(name, help=text)
        common(p)
        if name == "gravitycheck":
            p.add_argument("--orientation", type=int, default=1,
                           choices=(-1, 1))

    p = sub.add_parser("continuation", help="ramped-load equilibrium path")
    common(p)
    p.add_argument("--tau-max", type=float, required=True)
    p.add_argument("--steps", type=int, default=200)

    p = sub.add_parser("simulate", help="integrate the passive dynamics")
    common(p)
    p.add_argument("--theta0", type=float, required=True)
    p.add_argument("--omega0", type=float, default=0.0)
    p.add_argument("--dt", type=float, default=None)
    p.add_argument("--t-end", type=float, default=None)

    p = sub.add_parser("closingtime", help="triggered closing time")
    common(p)
    p.add_argument("--impulse", type=float, default=None,
                   help="angular impulse in N*m*s (default: "
                        "solver.impulse_factor times the minimal impulse)")

    p = sub.add_parser("sweep", help="batch parameter sweep")
    common(p)
    p.add_argument("--param", action="append", required=True,
                   metavar="PATH=V1,V2,... | PATH=LO:HI:N",
                   help="sweep parameter (repeatable)")
    p.add_argument("--no-closing-time", action="store_true")
    p.add_argument("--no-grip-force", action="store_true")

    p = sub.add_parser("tunering", help="trim ring width to a target barrier")
    common(p)
    p.add_argument("--target-barrier", type=float, required=True)

    p = sub.add_parser("gripforce", help="static grip force on an object")
    common(p)
    p.add_argument("--object-halfwidth", type=float, default=None)

    return parser


def _parse_param(spec: str):
    if "=" not in spec:
        raise DomainError(f"bad --param {spec!r}: expected PATH=VALUES")
    path, _, values = spec.partition("=")
    path = path.strip()
    values = values.strip()
    if ":" in values:
        pieces = values.split(":")
        if len(pieces) != 3:
            raise DomainError(f"bad --param range {values!r}: "
                              "expected LO:HI:N")
        lo, hi, n = float(pieces[0]), float(pieces[1]), int(pieces[2])
        return path, tuple(np.linspace(lo, hi, n))
    return path, tuple(float(v) for v in values.split(","))


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else 0
    try:
        return _dispatch(args)
    except DomainError as exc:
        print(f"snapgrip: error: {exc}", file=sys.stderr)
        return DOMAIN_EXIT
    except FileNotFoundError as exc:
        print(f"snapgrip: error: {exc}", file=sys.stderr)
        return DOMAIN_EXIT


def _dispatch(args) -> int:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    doc = load_config(args.config)
    design = build_design(doc)
    settings = build_solver_settings(doc)
    outputs = []

    def csv(name, header, rows):
        path = out / name
        write_csv(path, header, rows)
        outputs.append(path.name)
        return path

    def text(name, content):
        path = out / name
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(content)
        outputs.append(path.name)
        return path

    window = dict(theta_min=settings.theta_min, theta_max=settings.theta_max,
                  grid_n=settings.grid_n)

    if args.command == "landscape":
        grid = np.linspace(settings.theta_min, settings.theta_max, args.n)
        land = sample_landscape(design, grid)
        csv("landscape.csv", ["theta", "total", "finger", "ring", "gravity"],
            zip(land.theta_grid, land.total, land.finger, land.ring,
                land.gravity))
        if args.plot:
            report = find_equilibria_1dof(design, **window)
            markers = [(e.theta, e.energy, e.classification[0].upper())
                       for e in report.equilibria]
            text("landscape.svg", svg_line_plot(
                land.theta_grid,
                {"total": land.total, "finger": land.finger,
                 "ring": land.ring, "gravity": land.gravity},
                "bend angle (rad)", "energy (J)", markers))

    elif args.command == "equilibria":
        report = find_equilibria_1dof(design, **window)
        csv("equilibria.csv",
            ["theta", "energy", "classification", "curvature"],
            [(e.theta, e.energy, e.classification, e.curvature)
             for e in report.equilibria])
        for e in report.equilibria:
            print(f"{e.classification:8s} theta = {e.theta:.12g} rad, "
                  f"energy = {e.energy:.12g} J")

    elif args.command == "snapthrough":
        report = find_equilibria_1dof(design, **window)
        if not report.bistable:
            raise DomainError("design is not bistable")
        csv("snapthrough.csv",
            ["open_theta", "saddle_theta", "closed_theta", "open_energy",
             "saddle_energy", "closed_energy", "snap_through_energy"],
            [(report.open_state.theta, report.saddle.theta,
              report.closed_state.theta, report.open_state.energy,
              report.saddle.energy, report.closed_state.energy,
              report.snap_through_energy)])
        print(fmt(float(report.snap_through_energy)))

    elif args.command == "trigger":
        tau = trigger_moment(design, **window)
        csv("trigger.csv", ["trigger_moment"], [(tau,)])
        print(fmt(tau))

    elif args.command == "continuation":
        path = continuation_ramped_load(design, args.tau_max, args.steps,
                                        **window)
        csv("continuation.csv", ["tau", "theta", "energy"],
            zip(path.taus, path.thetas, path.energies))
        csv("continuation_folds.csv", ["tau", "theta"], path.fold_points)
        print(f"{len(path.fold_points)} fold(s)")

    elif args.command == "simulate":
        dt = args.dt if args.dt is not None else settings.dt
        t_end = args.t_end if args.t_end is not None else settings.t_end
        traj = simulate_1dof(design, args.theta0, args.omega0,
                             dt=dt, t_end=t_end)
        kinetic = traj.kinetic(design)
        potential = traj.total_mechanical_energy - kinetic
        csv("trajectory.csv", ["t", "theta", "omega", "U", "kinetic",
                               "dissipated"],
            zip(traj.times, traj.thetas, traj.velocities, potential,
                kinetic, traj.dissipated))
        if args.plot:
            text("trajectory.svg", svg_line_plot(
                traj.times, {"theta": traj.thetas},
                "time (s)", "bend angle (rad)"))

    elif args.command == "closingtime":
        impulse = args.impulse
        if impulse is None:
            impulse = settings.impulse_factor * minimal_trigger_impulse(design)
        event = closing_time(design, impulse)
        csv("closingtime.csv", ["triggered", "closing_time", "peak_velocity"],
            [(event.triggered, event.closing_time, event.peak_velocity)])
        print(fmt(event.closing_time) if event.triggered else "not triggered")

    elif args.command == "gravitycheck":
        triggered, margin = gravity_trigger_check(design, args.orientation)
        csv("gravitycheck.csv", ["triggered", "margin"],
            [(triggered, margin if math.isfinite(margin) else math.nan)])
        print("triggered" if triggered else f"not triggered, "
              f"margin = {fmt(margin)} J")

    elif args.command == "sweep":
        params = tuple(_parse_param(s) for s in args.param)
        spec = SweepSpec(parameters=params, budget=settings.sweep_budget,
                         include_closing_time=not args.no_closing_time,
                         include_grip_force=not args.no_grip_force,
                         object_halfwidth=settings.object_halfwidth,
                         impulse_factor=settings.impulse_factor)
        table = run_sweep(design, spec)
        header = list(table.parameter_names) + [
            "bistable", "open_energy", "saddle_energy", "closed_energy",
            "snap_through", "trigger_moment", "grip_force", "closing_time"]
        csv("sweep.csv", header,
            [tuple(r.values) + (r.bistable, r.open_energy, r.saddle_energy,
                                r.closed_energy, r.snap_through,
                                r.trigger_moment, r.grip_force,
                                r.closing_time)
             for r in table.rows])
        print(f"{len(table.rows)} design points")

    elif args.command == "feacases":
        rep = reproduce_fea_cases(design, settings.object_halfwidth,
                                  settings.impulse_factor)
        pairs = []
        for metric, value in sorted(rep.baseline.items()):
            pairs.append((f"baseline.{metric}", value))
        for case in sorted(rep.cases):
            for metric, value in sorted(rep.cases[case].items()):
                pairs.append((f"{case}.{metric}", value))
        for a in rep.assertions:
            state = "skip" if a.skipped else ("pass" if a.passed else "fail")
            pairs.append((f"assert.{a.name}", state))
        path = out / "feacases.txt"
        write_key_value(path, pairs)
        outputs.append(path.name)
        names = ["baseline"] + [c for c in rep.cases]
        metrics = {m: [rep.baseline.get(m, math.nan)]
                   + [rep.cases[c].get(m, math.nan) for c in rep.cases]
                   for m in ("open_energy", "saddle_energy", "snap_through")}
        csv("feacases.csv", ["case", "bistable", "open_energy",
                             "saddle_energy", "snap_through",
                             "trigger_moment", "grip_force", "closing_time"],
            [(name,
              (rep.baseline if name == "baseline"
               else rep.cases[name]).get("bistable", False),
              *((rep.baseline if name == "baseline"
                 else rep.cases[name]).get(k, math.nan)
                for k in ("open_energy", "saddle_energy", "snap_through",
                          "trigger_moment", "grip_force", "closing_time")))
             for name in names])
        if args.plot:
            text("feacases.svg", svg_grouped_bars(names, metrics,
                                                  "energy (J)"))
        for a in rep.assertions:
            state = "SKIP" if a.skipped else ("PASS" if a.passed else "FAIL")
            print(f"{state} {a.name}: {a.detail}")
        if not rep.all_passed:
            raise DomainError("one or more trend assertions failed")

    elif args.command == "tunering":
        width = tune_ring_width(design, args.target_barrier)
        from .model import set_design_value
        achieved = snap_through_energy(
            set_design_value(design, "ring.width_scale", width))
        csv("tunering.csv", ["width_scale", "achieved_barrier"],
            [(width, achieved)])
        print(fmt(width))

    elif args.command == "gripforce":
        halfwidth = args.object_halfwidth
        if halfwidth is None:
            halfwidth = settings.object_halfwidth
        force = grip_force_estimate(design, halfwidth)
        csv("gripforce.csv", ["object_halfwidth", "grip_force"],
            [(halfwidth, force)])
        print(fmt(force))

    with open(args.config, "r", encoding="utf-8") as fh:
        config_text = fh.read()
    command = "snapgrip " + args.command
    write_manifest(out / "run_manifest.txt", config_text, __version__,
                   command, outputs)
    return 0


if __name__ == "__main__":
    sys.exit(main())

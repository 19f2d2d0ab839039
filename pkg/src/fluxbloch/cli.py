"""Command-line front end.

Subcommands: simulate (one trajectory dump), ensemble (one configuration to
averaged spectra), sweep (one parameter axis), preset (canned figure
recipes). Parallelism is set with --threads and never changes the numbers:
results are reduced in fixed trajectory order.

Exit codes: 0 success, 2 configuration error, 3 numeric instability (the
validation guard or an actual overflow), 4 i/o error.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from typing import Optional

from .config import ConfigError, parse_config_path, render_config
from .ensemble import (
    EnsembleConfig,
    SweepAxis,
    run_ensemble,
    sweep,
)
from .integrator import IntegrationOverflowError, StabilityError, simulate_trajectory
from .noise import child_seed
from .output import (
    axis_value_label,
    write_spectrum,
    write_sr_curve,
    write_trajectory,
)
from .presets import PRESETS, resolve_preset
from .spectra import PeakNotFoundError, find_peak

_STEPPER_FLAG = {"ito": "ito_euler", "heun": "heun_stratonovich"}


def _add_common(p: argparse.ArgumentParser, config: bool = True) -> None:
    if config:
        p.add_argument("--config", metavar="PATH", help="INI configuration file")
    p.add_argument("--seed", type=int, metavar="N", help="override the master seed")
    p.add_argument("--threads", type=int, default=1, metavar="N", help="worker threads")
    p.add_argument("--out", default=".", metavar="DIR", help="output directory")
    p.add_argument(
        "--format",
        choices=("csv", "structured"),
        default="csv",
        help="csv (default) or a single structured JSON file per output",
    )
    p.add_argument(
        "--stepper",
        choices=tuple(_STEPPER_FLAG),
        help="override the integration stepper",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fluxbloch",
        description="Stochastic Bloch dynamics and fluctuation spectra of a "
        "driven flux qubit under classical flux noise.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="integrate and dump one trajectory")
    _add_common(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("ensemble", help="ensemble-averaged spectra for one config")
    _add_common(p)
    p.add_argument(
        "--components",
        default="x",
        metavar="LIST",
        help="comma-separated components: x,y,z,current (default x)",
    )
    p.set_defaults(func=cmd_ensemble)

    p = sub.add_parser("sweep", help="sweep one parameter axis")
    _add_common(p)
    p.add_argument(
        "--param",
        required=True,
        choices=(
            "noise_intensity_d",
            "noise_tau",
            "drive_f_ac",
            "drive_omega_d",
        ),
    )
    p.add_argument(
        "--values", required=True, metavar="LIST", help="comma-separated numbers"
    )
    p.add_argument("--components", default="x", metavar="LIST")
    p.add_argument(
        "--band",
        metavar="LO:HI",
        help="if given, also write sr_curve.csv with peak heights in this band",
    )
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("preset", help="run a canned figure recipe")
    p.add_argument("name", choices=tuple(PRESETS))
    _add_common(p, config=False)
    p.set_defaults(func=cmd_preset)

    return parser


def _load(args) -> EnsembleConfig:
    import dataclasses

    if args.config:
        cfg = parse_config_path(args.config)
    else:
        cfg = EnsembleConfig()
    if args.seed is not None:
        cfg = dataclasses.replace(cfg, master_seed=args.seed)
    if args.stepper:
        cfg = dataclasses.replace(
            cfg,
            base=dataclasses.replace(cfg.base, stepper=_STEPPER_FLAG[args.stepper]),
        )
    return cfg


def _ext(args) -> str:
    return "csv" if args.format == "csv" else "json"


def _outdir(args) -> str:
    os.makedirs(args.out, exist_ok=True)
    return args.out


def _parse_components(text: str) -> tuple:
    return tuple(c.strip().lower() for c in text.split(",") if c.strip())


def cmd_simulate(args) -> int:
    cfg = _load(args)
    seed = child_seed(cfg.master_seed, 0)
    traj = simulate_trajectory(cfg.base, seed)
    path = os.path.join(_outdir(args), f"run_trajectory.{_ext(args)}")
    meta = {
        "output": "trajectory",
        "master_seed": cfg.master_seed,
        "trajectory_seed": seed,
    }
    write_trajectory(path, traj, meta, render_config(cfg), args.format == "structured")
    print(path)
    return 0


def _spectrum_meta(result, component: str) -> dict:
    return {
        "output": "spectrum",
        "component": component,
        "master_seed": result.master_seed,
        "n_realizations": result.n_realizations,
        "window": result.window,
        "scaling": result.scaling,
    }


def cmd_ensemble(args) -> int:
    cfg = _load(args)
    components = _parse_components(args.components)
    result = run_ensemble(cfg, components=components, n_threads=args.threads)
    structured = args.format == "structured"
    echo = render_config(cfg)
    for name in components:
        path = os.path.join(_outdir(args), f"run_{name}.{_ext(args)}")
        write_spectrum(
            path, result.spectrum(name), _spectrum_meta(result, name), echo, structured
        )
        print(path)
    return 0


def _emit_sweep_outputs(
    args,
    points,
    components,
    prefix: str,
    band: Optional[tuple],
    parameter: str,
    root_cfg: EnsembleConfig,
) -> int:
    structured = args.format == "structured"
    outdir = _outdir(args)
    wrote_any = False
    for point in points:
        label = axis_value_label(point.value)
        if point.error is not None:
            print(f"point {parameter}={label} failed: {point.error}", file=sys.stderr)
            continue
        wrote_any = True
        echo = render_config(point.result.config)
        for name in components:
            path = os.path.join(outdir, f"{prefix}_{name}_{label}.{_ext(args)}")
            write_spectrum(
                path,
                point.result.spectrum(name),
                _spectrum_meta(point.result, name),
                echo,
                structured,
            )
            print(path)
    if band is not None:
        curve = []
        for point in points:
            if point.error is not None:
                curve.append((point.value, math.nan))
                continue
            try:
                peak = find_peak(point.result.spectrum(components[0]), band)
                curve.append((point.value, peak.height))
            except PeakNotFoundError:
                curve.append((point.value, math.nan))
        path = os.path.join(outdir, f"sr_curve.{_ext(args)}")
        meta = {
            "output": "sr_curve",
            "component": components[0],
            "band_low": band[0],
            "band_high": band[1],
            "parameter": parameter,
            "master_seed": root_cfg.master_seed,
        }
        write_sr_curve(path, curve, meta, render_config(root_cfg), structured)
        print(path)
    return 0 if wrote_any else 3


def cmd_sweep(args) -> int:
    cfg = _load(args)
    components = _parse_components(args.components)
    try:
        values = tuple(float(v) for v in args.values.split(","))
    except ValueError as exc:
        raise ConfigError(f"invalid --values list {args.values!r}") from exc
    band = None
    if args.band:
        try:
            lo, hi = (float(v) for v in args.band.split(":"))
            band = (lo, hi)
        except ValueError as exc:
            raise ConfigError(f"invalid --band {args.band!r}, expected LO:HI") from exc
    axis = SweepAxis(args.param, values)
    points = sweep(cfg, axis, components=components, n_threads=args.threads)
    return _emit_sweep_outputs(args, points, components, "run", band, args.param, cfg)


def cmd_preset(args) -> int:
    preset = resolve_preset(
        args.name,
        master_seed=args.seed,
        stepper=_STEPPER_FLAG[args.stepper] if args.stepper else None,
    )
    points = sweep(
        preset.ensemble,
        preset.axis,
        components=preset.components,
        n_threads=args.threads,
    )
    band = preset.band if preset.write_sr else None
    return _emit_sweep_outputs(
        args,
        points,
        preset.components,
        preset.name,
        band,
        preset.axis.parameter,
        preset.ensemble,
    )


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except StabilityError as exc:
        print(f"stability error: {exc}", file=sys.stderr)
        return 3
    except IntegrationOverflowError as exc:
        print(f"integration error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 4


def entry() -> None:
    sys.exit(main())

"""Plot-ready output files for spectra, resonance curves, and trajectories.

CSV files start with '#' metadata lines (what was computed, seeds,
realization count, and a full config echo that reproduces the run), then a
header row and comma-separated data rows. All floats are written with repr,
the shortest digit string that round-trips to the exact binary value, so
identical runs give byte-identical files on any machine, locale, or thread
count. The structured format is one JSON document with the same content.
"""

from __future__ import annotations

import json
from typing import Iterable, Mapping, Sequence

from .integrator import Trajectory
from .spectra import Spectrum


def axis_value_label(value: float) -> str:
    """Compact axis-value tag used in file names (1e-07, 0.0001, 2, ...)."""
    return f"{value:g}"


def _format(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _write_csv(
    path: str,
    meta: Mapping[str, object],
    config_echo: str,
    header: str,
    rows: Iterable[Sequence[float]],
) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for key, value in meta.items():
            fh.write(f"# {key} = {_format(value)}\n")
        fh.write("# config:\n")
        for line in config_echo.rstrip("\n").split("\n"):
            fh.write(f"# {line}\n")
        fh.write(header + "\n")
        for row in rows:
            fh.write(",".join(repr(float(v)) for v in row) + "\n")


def _write_json(
    path: str,
    kind: str,
    meta: Mapping[str, object],
    config_echo: str,
    columns: Mapping[str, Sequence[float]],
) -> None:
    doc = {
        "kind": kind,
        "meta": dict(meta),
        "config": config_echo,
        "columns": {name: [float(v) for v in vals] for name, vals in columns.items()},
    }
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


def write_spectrum(
    path: str,
    spectrum: Spectrum,
    meta: Mapping[str, object],
    config_echo: str,
    structured: bool = False,
) -> None:
    if structured:
        _write_json(
            path,
            "spectrum",
            meta,
            config_echo,
            {"omega": spectrum.frequencies, "value": spectrum.values},
        )
    else:
        _write_csv(
            path,
            meta,
            config_echo,
            "omega,value",
            zip(spectrum.frequencies, spectrum.values),
        )


def write_sr_curve(
    path: str,
    curve: Sequence[tuple[float, float]],
    meta: Mapping[str, object],
    config_echo: str,
    structured: bool = False,
) -> None:
    if structured:
        _write_json(
            path,
            "sr_curve",
            meta,
            config_echo,
            {"d": [d for d, _ in curve], "height": [h for _, h in curve]},
        )
    else:
        _write_csv(path, meta, config_echo, "d,height", curve)


def write_trajectory(
    path: str,
    traj: Trajectory,
    meta: Mapping[str, object],
    config_echo: str,
    structured: bool = False,
) -> None:
    current = traj.component("current")
    if structured:
        _write_json(
            path,
            "trajectory",
            meta,
            config_echo,
            {
                "t": traj.times,
                "X": traj.states[:, 0],
                "Y": traj.states[:, 1],
                "Z": traj.states[:, 2],
                "I": current,
            },
        )
    else:
        rows = zip(
            traj.times,
            traj.states[:, 0],
            traj.states[:, 1],
            traj.states[:, 2],
            current,
        )
        _write_csv(path, meta, config_echo, "t,X,Y,Z,I", rows)

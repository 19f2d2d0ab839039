"""INI configuration parsing and canonical echo rendering.

Config files have four sections, [qubit], [drive], [noise], and [run]; every
key is optional and falls back to the documented default. Unknown sections or
keys are rejected. render_config writes a fully resolved configuration back
as canonical text whose floats round-trip exactly (repr precision), so the
echo embedded in output files reproduces the run.
"""

from __future__ import annotations

import configparser

from .ensemble import EnsembleConfig
from .integrator import SimulationConfig
from .model import BlochState, DrivePlan, QubitParams
from .noise import NoiseSpec


class ConfigError(Exception):
    """Malformed configuration text or unknown section/key."""


_SECTIONS = {
    "qubit": ("ip_phi0", "delta", "gamma_phi", "gamma_r", "temperature"),
    "drive": ("f_dc", "f_ac", "omega_d"),
    "noise": ("intensity_d", "tau", "coupling_lambda"),
    "run": (
        "dt",
        "t_total",
        "t_transient",
        "record_stride",
        "initial_state",
        "stepper",
        "n_realizations",
        "master_seed",
    ),
}


def _read(text: str) -> configparser.ConfigParser:
    cp = configparser.ConfigParser(
        interpolation=None, inline_comment_prefixes=("#", ";")
    )
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"config parse error: {exc}") from exc
    for section in cp.sections():
        if section not in _SECTIONS:
            raise ConfigError(
                f"unknown section [{section}]; valid sections: "
                f"{', '.join(_SECTIONS)}"
            )
        for key in cp[section]:
            if key not in _SECTIONS[section]:
                raise ConfigError(
                    f"unknown key '{key}' in [{section}]; valid keys: "
                    f"{', '.join(_SECTIONS[section])}"
                )
    return cp


def _get_float(cp, section, key, default):
    raw = cp.get(section, key, fallback=None)
    if raw is None:
        return default
    try:
        return float(raw)
    except ValueError as exc:
        raise ConfigError(f"invalid number for [{section}] {key}: {raw!r}") from exc


def _get_int(cp, section, key, default):
    raw = cp.get(section, key, fallback=None)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError as exc:
        raise ConfigError(f"invalid integer for [{section}] {key}: {raw!r}") from exc


def _get_state(cp, section, key):
    raw = cp.get(section, key, fallback=None)
    if raw is None or raw.strip().lower() == "equilibrium":
        return None
    parts = [p.strip() for p in raw.split(",")]
    if len(parts) != 3:
        raise ConfigError(
            f"invalid initial_state {raw!r}: expected 'equilibrium' or 'x,y,z'"
        )
    try:
        x, y, z = (float(p) for p in parts)
    except ValueError as exc:
        raise ConfigError(f"invalid initial_state {raw!r}") from exc
    return BlochState(x, y, z)


def parse_config(text: str) -> EnsembleConfig:
    """Parse inline configuration text into a fully validated EnsembleConfig.

    Raises ConfigError for malformed text or unknown keys; the dataclass
    constructors raise ValueError (naming the violated invariant) and
    StabilityError for an unstable dt / noise combination.
    """
    cp = _read(text)
    qd, dd, nd, sd, ed = (
        QubitParams(),
        DrivePlan(),
        NoiseSpec(),
        SimulationConfig(),
        EnsembleConfig(),
    )
    qubit = QubitParams(
        ip_phi0=_get_float(cp, "qubit", "ip_phi0", qd.ip_phi0),
        delta=_get_float(cp, "qubit", "delta", qd.delta),
        gamma_phi=_get_float(cp, "qubit", "gamma_phi", qd.gamma_phi),
        gamma_r=_get_float(cp, "qubit", "gamma_r", qd.gamma_r),
        temperature=_get_float(cp, "qubit", "temperature", qd.temperature),
    )
    drive = DrivePlan(
        f_dc=_get_float(cp, "drive", "f_dc", dd.f_dc),
        f_ac=_get_float(cp, "drive", "f_ac", dd.f_ac),
        omega_d=_get_float(cp, "drive", "omega_d", dd.omega_d),
    )
    noise = NoiseSpec(
        intensity_d=_get_float(cp, "noise", "intensity_d", nd.intensity_d),
        tau=_get_float(cp, "noise", "tau", nd.tau),
        coupling_lambda=_get_float(cp, "noise", "coupling_lambda", nd.coupling_lambda),
    )
    stepper = cp.get("run", "stepper", fallback=sd.stepper).strip()
    base = SimulationConfig(
        qubit=qubit,
        drive=drive,
        noise=noise,
        dt=_get_float(cp, "run", "dt", sd.dt),
        t_total=_get_float(cp, "run", "t_total", None),
        t_transient=_get_float(cp, "run", "t_transient", sd.t_transient),
        record_stride=_get_int(cp, "run", "record_stride", sd.record_stride),
        initial_state=_get_state(cp, "run", "initial_state"),
        stepper=stepper,
    )
    return EnsembleConfig(
        base=base,
        n_realizations=_get_int(cp, "run", "n_realizations", ed.n_realizations),
        master_seed=_get_int(cp, "run", "master_seed", ed.master_seed),
    )


def parse_config_path(path: str) -> EnsembleConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read())


def render_config(cfg: EnsembleConfig) -> str:
    """Canonical fully resolved INI text; parse_config(render_config(c)) == c."""
    base = cfg.base
    q, d, n = base.qubit, base.drive, base.noise
    s = base.initial_state
    lines = [
        "[qubit]",
        f"ip_phi0 = {q.ip_phi0!r}",
        f"delta = {q.delta!r}",
        f"gamma_phi = {q.gamma_phi!r}",
        f"gamma_r = {q.gamma_r!r}",
        f"temperature = {q.temperature!r}",
        "[drive]",
        f"f_dc = {d.f_dc!r}",
        f"f_ac = {d.f_ac!r}",
        f"omega_d = {d.omega_d!r}",
        "[noise]",
        f"intensity_d = {n.intensity_d!r}",
        f"tau = {n.tau!r}",
        f"coupling_lambda = {n.coupling_lambda!r}",
        "[run]",
        f"dt = {base.dt!r}",
        f"t_total = {base.t_total!r}",
        f"t_transient = {base.t_transient!r}",
        f"record_stride = {base.record_stride}",
        f"initial_state = {s.x!r},{s.y!r},{s.z!r}",
        f"stepper = {base.stepper}",
        f"n_realizations = {cfg.n_realizations}",
        f"master_seed = {cfg.master_seed}",
    ]
    return "\n".join(lines) + "\n"

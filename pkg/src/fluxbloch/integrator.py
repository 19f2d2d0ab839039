"""Stochastic integration of the Bloch equations with multiplicative flux noise.

The deterministic part (drift) combines precession, the ac drive, dephasing
at rate gamma_phi on X and Y, and relaxation of Z toward its thermal value at
rate gamma_r. The fluctuating bias enters through a state-dependent direction
g(s) that is everywhere tangent to the Bloch sphere (s . g(s) = 0), so the
noise generates rotations.

Two steppers are provided. ito_euler is plain Euler-Maruyama, reading the
noise in the Ito sense; under strong noise it inflates the Bloch norm at rate
~2 (lambda^2 D - gamma) and is guarded by a validation bound on
2 lambda^2 D dt. heun_stratonovich is a predictor-corrector scheme whose
white-noise limit is the Stratonovich reading (the physical limit of colored
noise); it conserves the rotation norm to O(dW^4) per step and its
deterministic accuracy is second order.

The integration core is a compiled kernel; em_step and heun_step are its
single-step reference implementations with identical arithmetic ordering, so
both paths produce the same floating-point values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from numba import njit

from .model import (
    BlochState,
    DrivePlan,
    QubitParams,
    bias_from_flux,
    drive_bias,
    drive_coefficients,
    equilibrium_z,
    interlevel_splitting,
)
from .noise import NoiseSpec, make_stream, noise_path

# Hard bound on the Bloch norm; crossing it aborts the trajectory as unstable.
NORM_BOUND = 10.0

# Validation threshold on the per-step Euler noise inflation 2 lambda^2 D dt.
STABILITY_LIMIT = 0.1

# Recorded samples in the default window: power of two for FFT efficiency.
DEFAULT_RECORD_SAMPLES = 1 << 16

STEPPERS = ("ito_euler", "heun_stratonovich")


class StabilityError(ValueError):
    """Configuration rejected by the noise stability guard."""


class IntegrationOverflowError(RuntimeError):
    """State norm crossed NORM_BOUND during integration."""

    def __init__(self, seed: int, step_index: int, time: float):
        self.seed = seed
        self.step_index = step_index
        self.time = time
        super().__init__(
            f"state norm exceeded {NORM_BOUND} at t = {time:.6g} ns "
            f"(step {step_index}, seed {seed}); the noise term is unstable "
            f"at this dt, reduce dt"
        )


@dataclass(frozen=True)
class SimulationConfig:
    """Fully resolved single-trajectory configuration.

    t_total = None picks the smallest total time giving DEFAULT_RECORD_SAMPLES
    recorded samples after the transient. The first recorded sample sits at
    t_transient (rounded to a whole step), then every record_stride-th step.
    """

    qubit: QubitParams = QubitParams()
    drive: DrivePlan = DrivePlan()
    noise: NoiseSpec = NoiseSpec()
    dt: float = 0.005
    t_total: Optional[float] = None
    t_transient: float = 100.0
    record_stride: int = 2
    initial_state: Optional[BlochState] = None
    stepper: str = "ito_euler"

    def __post_init__(self):
        if not self.dt > 0.0:
            raise ValueError(f"dt must be > 0, got {self.dt}")
        if not (isinstance(self.record_stride, int) and self.record_stride >= 1):
            raise ValueError(f"record_stride must be an integer >= 1, got {self.record_stride}")
        if self.t_transient < 0.0:
            raise ValueError(f"t_transient must be >= 0, got {self.t_transient}")
        if self.stepper not in STEPPERS:
            raise ValueError(f"stepper must be one of {STEPPERS}, got {self.stepper!r}")
        n_trans = int(round(self.t_transient / self.dt))
        if self.t_total is None:
            t_total = (n_trans + (DEFAULT_RECORD_SAMPLES - 1) * self.record_stride) * self.dt
            object.__setattr__(self, "t_total", t_total)
        if not self.t_total > self.t_transient:
            raise ValueError(
                f"t_total ({self.t_total}) must exceed t_transient ({self.t_transient})"
            )
        omega = self.omega
        nyquist = math.pi / (self.dt * self.record_stride)
        if not nyquist > omega:
            raise ValueError(
                f"Nyquist frequency pi/(dt*record_stride) = {nyquist:.6g} does not "
                f"resolve the splitting {omega:.6g}; decrease dt or record_stride"
            )
        inflation = 2.0 * self.noise.coupling_lambda**2 * self.noise.intensity_d * self.dt
        if inflation > STABILITY_LIMIT:
            raise StabilityError(
                f"2 lambda^2 D dt = {inflation:.6g} exceeds {STABILITY_LIMIT}; "
                f"the noise term is unstable at this dt, reduce dt"
            )
        if self.initial_state is None:
            zeq = equilibrium_z(omega, self.qubit.temperature)
            object.__setattr__(self, "initial_state", BlochState(0.0, 0.0, zeq))
        if self.n_recorded < 1:
            raise ValueError("recording window contains no samples")

    @property
    def eps0(self) -> float:
        return bias_from_flux(self.qubit, self.drive.f_dc)

    @property
    def omega(self) -> float:
        return interlevel_splitting(self.qubit, self.eps0)

    @property
    def n_steps(self) -> int:
        return int(round(self.t_total / self.dt))

    @property
    def n_transient_steps(self) -> int:
        return int(round(self.t_transient / self.dt))

    @property
    def n_recorded(self) -> int:
        return (self.n_steps - self.n_transient_steps) // self.record_stride + 1

    @property
    def dt_sample(self) -> float:
        return self.dt * self.record_stride

    def times(self) -> np.ndarray:
        j = np.arange(self.n_recorded, dtype=np.float64)
        return (self.n_transient_steps + j * self.record_stride) * self.dt


@dataclass(frozen=True)
class Trajectory:
    """Recorded states on a uniform time grid, plus the seed and config that produced them."""

    times: np.ndarray
    states: np.ndarray
    seed: int
    config: SimulationConfig

    def component(self, name: str) -> np.ndarray:
        """One recorded component: 'x', 'y', 'z', or 'current' (units of I_p)."""
        key = name.lower()
        if key == "x":
            return self.states[:, 0]
        if key == "y":
            return self.states[:, 1]
        if key == "z":
            return self.states[:, 2]
        if key == "current":
            eps0 = self.config.eps0
            omega = self.config.omega
            delta = self.config.qubit.delta
            return (delta * self.states[:, 0] - eps0 * self.states[:, 2]) / omega
        raise ValueError(f"unknown component {name!r}")


def drift(s: BlochState, t: float, q: QubitParams, d: DrivePlan) -> np.ndarray:
    """Deterministic right-hand side at state s and time t."""
    a, c = drive_coefficients(q, d, t)
    eps0 = bias_from_flux(q, d.f_dc)
    omega = interlevel_splitting(q, eps0)
    zeq = equilibrium_z(omega, q.temperature)
    dx = -c * s.y - q.gamma_phi * s.x
    dy = a * s.z + c * s.x - q.gamma_phi * s.y
    dz = -a * s.y - q.gamma_r * (s.z - zeq)
    return np.array([dx, dy, dz])


def noise_generator(s: BlochState, q: QubitParams, eps0: float) -> np.ndarray:
    """Direction multiplying the bias noise: a Bloch-sphere rotation generator.

    g(s) = ((eps0/omega) y, -(delta/omega) z - (eps0/omega) x, (delta/omega) y);
    s . g(s) = 0 for every state.
    """
    omega = interlevel_splitting(q, eps0)
    oe = eps0 / omega
    od = q.delta / omega
    return np.array([oe * s.y, -od * s.z - oe * s.x, od * s.y])


def em_step(
    s: BlochState, t: float, dt: float, dw: float, cfg: SimulationConfig
) -> BlochState:
    """One Euler-Maruyama step; dw is the integrated bias noise over the step,
    coupling_lambda * integral(df dt)."""
    x, y, z = _python_step(
        s.x, s.y, s.z, t, dt, dw, cfg, heun=False
    )
    return BlochState(x, y, z)


def heun_step(
    s: BlochState, t: float, dt: float, dw: float, cfg: SimulationConfig
) -> BlochState:
    """One predictor-corrector step averaging drift and noise direction."""
    x, y, z = _python_step(
        s.x, s.y, s.z, t, dt, dw, cfg, heun=True
    )
    return BlochState(x, y, z)


def _python_step(x, y, z, t, dt, dw, cfg: SimulationConfig, heun: bool):
    # mirrors _kernel's arithmetic ordering exactly
    q = cfg.qubit
    eps0 = cfg.eps0
    omega = cfg.omega
    oe = eps0 / omega
    od = q.delta / omega
    zeq = equilibrium_z(omega, q.temperature)
    amp = q.ip_phi0 * cfg.drive.f_ac
    wd = cfg.drive.omega_d
    eps1 = amp * math.sin(wd * t) if amp != 0.0 else 0.0
    a = -eps1 * od
    c = -omega - eps1 * oe
    fx = -c * y - q.gamma_phi * x
    fy = a * z + c * x - q.gamma_phi * y
    fz = -a * y - q.gamma_r * (z - zeq)
    gx = oe * y
    gy = -od * z - oe * x
    gz = od * y
    px = x + fx * dt + gx * dw
    py = y + fy * dt + gy * dw
    pz = z + fz * dt + gz * dw
    if not heun:
        return px, py, pz
    t1 = t + dt
    eps1p = amp * math.sin(wd * t1) if amp != 0.0 else 0.0
    ap = -eps1p * od
    cp = -omega - eps1p * oe
    fpx = -cp * py - q.gamma_phi * px
    fpy = ap * pz + cp * px - q.gamma_phi * py
    fpz = -ap * py - q.gamma_r * (pz - zeq)
    gpx = oe * py
    gpy = -od * pz - oe * px
    gpz = od * py
    x1 = x + 0.5 * (fx + fpx) * dt + 0.5 * (gx + gpx) * dw
    y1 = y + 0.5 * (fy + fpy) * dt + 0.5 * (gy + gpy) * dw
    z1 = z + 0.5 * (fz + fpz) * dt + 0.5 * (gz + gpz) * dw
    return x1, y1, z1


@njit(cache=True, nogil=True)
def _kernel(
    x,
    y,
    z,
    dw,
    dt,
    n_steps,
    n_trans,
    stride,
    n_rec,
    eps0,
    omega,
    od,
    oe,
    gamma_phi,
    gamma_r,
    zeq,
    amp,
    wd,
    heun,
    out,
):
    next_record = n_trans
    oi = 0
    if next_record == 0:
        out[0, 0] = x
        out[0, 1] = y
        out[0, 2] = z
        oi = 1
        next_record = stride
    for k in range(n_steps):
        t = k * dt
        w = dw[k]
        eps1 = amp * math.sin(wd * t) if amp != 0.0 else 0.0
        a = -eps1 * od
        c = -omega - eps1 * oe
        fx = -c * y - gamma_phi * x
        fy = a * z + c * x - gamma_phi * y
        fz = -a * y - gamma_r * (z - zeq)
        gx = oe * y
        gy = -od * z - oe * x
        gz = od * y
        px = x + fx * dt + gx * w
        py = y + fy * dt + gy * w
        pz = z + fz * dt + gz * w
        if heun:
            t1 = t + dt
            eps1p = amp * math.sin(wd * t1) if amp != 0.0 else 0.0
            ap = -eps1p * od
            cp = -omega - eps1p * oe
            fpx = -cp * py - gamma_phi * px
            fpy = ap * pz + cp * px - gamma_phi * py
            fpz = -ap * py - gamma_r * (pz - zeq)
            gpx = oe * py
            gpy = -od * pz - oe * px
            gpz = od * py
            x = x + 0.5 * (fx + fpx) * dt + 0.5 * (gx + gpx) * w
            y = y + 0.5 * (fy + fpy) * dt + 0.5 * (gy + gpy) * w
            z = z + 0.5 * (fz + fpz) * dt + 0.5 * (gz + gpz) * w
        else:
            x = px
            y = py
            z = pz
        if x * x + y * y + z * z > NORM_BOUND * NORM_BOUND:
            return k
        if k + 1 == next_record:
            if oi < n_rec:
                out[oi, 0] = x
                out[oi, 1] = y
                out[oi, 2] = z
                oi += 1
            next_record += stride
    return -1


def simulate_trajectory(cfg: SimulationConfig, seed: int) -> Trajectory:
    """Integrate one noise realization; deterministic in (cfg, seed).

    Raises IntegrationOverflowError if the state norm crosses NORM_BOUND.
    """
    n_steps = cfg.n_steps
    stream = make_stream(seed)
    contributions = noise_path(cfg.noise, n_steps, cfg.dt, stream)
    dw = cfg.noise.coupling_lambda * contributions
    s0 = cfg.initial_state
    out = np.empty((cfg.n_recorded, 3), dtype=np.float64)
    status = _kernel(
        s0.x,
        s0.y,
        s0.z,
        dw,
        cfg.dt,
        n_steps,
        cfg.n_transient_steps,
        cfg.record_stride,
        cfg.n_recorded,
        cfg.eps0,
        cfg.omega,
        cfg.qubit.delta / cfg.omega,
        cfg.eps0 / cfg.omega,
        cfg.qubit.gamma_phi,
        cfg.qubit.gamma_r,
        equilibrium_z(cfg.omega, cfg.qubit.temperature),
        cfg.qubit.ip_phi0 * cfg.drive.f_ac,
        cfg.drive.omega_d,
        cfg.stepper == "heun_stratonovich",
        out,
    )
    if status >= 0:
        raise IntegrationOverflowError(seed, int(status), (int(status) + 1) * cfg.dt)
    return Trajectory(times=cfg.times(), states=out, seed=seed, config=cfg)

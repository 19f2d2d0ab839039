"""Classical flux-noise generation: Gaussian white noise and OU colored noise.

The fluctuating reduced flux df(t) has intensity D, defined through the white
correlator <df(t) df(t')> = 2 D delta(t - t'). Colored noise is a stationary
Ornstein-Uhlenbeck process with correlation time tau and the same D, so its
stationary variance is D / tau and tau -> 0 recovers white noise. tau = 0
selects white noise directly.

All generators hand the integrator per-step contributions integral(df dt)
over one step, not instantaneous values. For OU noise the (value, integral)
pair is drawn from its exact joint Gaussian transition law, which keeps the
integrated effect over any window unbiased at every step size and makes the
tau -> 0 limit reproduce white noise exactly. The bias energy the qubit sees
is coupling_lambda times df.

Streams are numpy PCG64 generators; per-trajectory seeds are derived from a
master seed with a 64-bit mixing function so ensembles are reproducible and
order-independent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

# Default flux-to-energy noise coupling, in GHz per unit reduced flux. Chosen
# equal to the default ip_phi0 so df is measured in the same reduced-flux
# units as f_ac; configurable through NoiseSpec.
DEFAULT_COUPLING = 200.0

_MASK64 = (1 << 64) - 1
# Weyl increments for seed derivation. Trajectory index and sweep index use
# different odd constants so (master, sweep point, trajectory) triples cannot
# alias each other through the linear combination step.
_SEED_GAMMA = 0x9E3779B97F4A7C15
SWEEP_SEED_OFFSET = 0xD1B54A32D192ED03


@dataclass(frozen=True)
class NoiseSpec:
    """Noise parameters: intensity D (GHz^-1), correlation time tau (ns, 0
    means white), and the flux-to-energy coupling (GHz)."""

    intensity_d: float = 0.0
    tau: float = 0.0
    coupling_lambda: float = DEFAULT_COUPLING

    def __post_init__(self):
        if self.intensity_d < 0.0:
            raise ValueError(f"intensity_d must be >= 0, got {self.intensity_d}")
        if self.tau < 0.0:
            raise ValueError(f"tau must be >= 0, got {self.tau}")
        if not self.coupling_lambda > 0.0:
            raise ValueError(
                f"coupling_lambda must be > 0, got {self.coupling_lambda}"
            )


@dataclass
class NoisePathState:
    """Single-owner state of one noise path: current value plus its stream."""

    current_value: float
    stream: np.random.Generator


def _splitmix64(x: int) -> int:
    z = x & _MASK64
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & _MASK64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def child_seed(master_seed: int, index: int) -> int:
    """64-bit seed for trajectory `index` of an ensemble seeded by master_seed.

    splitmix64 finalizer applied to master_seed + (index + 1) * _SEED_GAMMA
    (mod 2^64). Distinct indices give decorrelated PCG64 streams.
    """
    if index < 0:
        raise ValueError(f"index must be >= 0, got {index}")
    return _splitmix64((master_seed + (index + 1) * _SEED_GAMMA) & _MASK64)


def sweep_master_seed(master_seed: int, axis_index: int) -> int:
    """Master seed for sweep point `axis_index`.

    Point 0 keeps the master seed unchanged (a one-point sweep is the plain
    ensemble); later points add a fixed odd constant per index.
    """
    return (master_seed + axis_index * SWEEP_SEED_OFFSET) & _MASK64


def make_stream(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def white_increment(spec: NoiseSpec, dt: float, stream: np.random.Generator) -> float:
    """One sample of integral(df dt) over a step: N(0, 2 D dt)."""
    if not dt > 0.0:
        raise ValueError(f"dt must be > 0, got {dt}")
    if spec.tau != 0.0:
        raise ValueError("white_increment requires tau = 0")
    return math.sqrt(2.0 * spec.intensity_d * dt) * stream.standard_normal()


def ou_init(spec: NoiseSpec, stream: np.random.Generator) -> NoisePathState:
    """Start an OU path in its stationary law: value ~ N(0, D / tau)."""
    if not spec.tau > 0.0:
        raise ValueError(f"ou_init requires tau > 0, got {spec.tau}")
    value = math.sqrt(spec.intensity_d / spec.tau) * stream.standard_normal()
    return NoisePathState(current_value=value, stream=stream)


def _ou_coefficients(d: float, tau: float, dt: float):
    """Exact Gaussian transition coefficients for the OU (value, integral) pair.

    Returns (alpha, s_value, mean_coef, b, s_res) such that with independent
    standard normals z, w and previous value f:

        innovation = s_value * z
        new value  = alpha * f + innovation
        integral   = mean_coef * f + b * innovation + s_res * w

    The integral is integral(f dt) over the step, exact in distribution
    jointly with the endpoint value.
    """
    phi = dt / tau
    alpha = math.exp(-phi)
    one_m_a = -math.expm1(-phi)
    one_m_a2 = -math.expm1(-2.0 * phi)
    var_value = (d / tau) * one_m_a2
    mean_coef = tau * one_m_a
    cov = d * one_m_a * one_m_a
    # phi - 2(1 - alpha) + (1 - alpha^2)/2 cancels to O(phi^3); switch to its
    # series before float64 cancellation dominates
    if phi < 0.02:
        bracket = phi**3 / 3.0 - phi**4 / 4.0 + 7.0 * phi**5 / 60.0 - phi**6 / 24.0
    else:
        bracket = phi - 2.0 * one_m_a + 0.5 * one_m_a2
    var_integral = 2.0 * d * tau * bracket
    if var_value > 0.0:
        b = cov / var_value
        var_res = var_integral - cov * b
    else:
        b = 0.0
        var_res = var_integral
    s_value = math.sqrt(var_value)
    s_res = math.sqrt(max(var_res, 0.0))
    return alpha, s_value, mean_coef, b, s_res


def ou_step(state: NoisePathState, spec: NoiseSpec, dt: float) -> NoisePathState:
    """Advance the OU value by dt with the exact transition kernel.

    f' = f exp(-dt/tau) + sqrt((D/tau)(1 - exp(-2 dt/tau))) N(0, 1);
    stationarity is preserved exactly for any dt.
    """
    if not dt > 0.0:
        raise ValueError(f"dt must be > 0, got {dt}")
    if not spec.tau > 0.0:
        raise ValueError(f"ou_step requires tau > 0, got {spec.tau}")
    alpha = math.exp(-dt / spec.tau)
    s_value = math.sqrt((spec.intensity_d / spec.tau) * -math.expm1(-2.0 * dt / spec.tau))
    value = alpha * state.current_value + s_value * state.stream.standard_normal()
    return NoisePathState(current_value=value, stream=state.stream)


def ou_step_integrated(
    state: NoisePathState, spec: NoiseSpec, dt: float
) -> tuple[NoisePathState, float]:
    """Advance the OU value and return integral(f dt) over the step.

    Draws the (endpoint, integral) pair from their exact joint Gaussian law,
    consuming two normals per step (innovation first, then the integral's
    residual). The integrated path has no step-size bias: summed over any
    window the integral's variance matches the continuous-time process, and
    for tau -> 0 each contribution converges in law to a white increment
    N(0, 2 D dt).
    """
    if not dt > 0.0:
        raise ValueError(f"dt must be > 0, got {dt}")
    if not spec.tau > 0.0:
        raise ValueError(f"ou_step_integrated requires tau > 0, got {spec.tau}")
    alpha, s_value, mean_coef, b, s_res = _ou_coefficients(
        spec.intensity_d, spec.tau, dt
    )
    z = state.stream.standard_normal()
    w = state.stream.standard_normal()
    innovation = s_value * z
    integral = mean_coef * state.current_value + b * innovation + s_res * w
    value = alpha * state.current_value + innovation
    return NoisePathState(current_value=value, stream=state.stream), integral


@njit(cache=True, nogil=True)
def _ou_scan(f0, alpha, s_value, mean_coef, b, s_res, z, w, out):
    f = f0
    for k in range(z.shape[0]):
        innovation = s_value * z[k]
        out[k] = mean_coef * f + b * innovation + s_res * w[k]
        f = alpha * f + innovation
    return f


def noise_path(
    spec: NoiseSpec, n_steps: int, dt: float, stream: np.random.Generator
) -> np.ndarray:
    """Per-step contributions integral(df dt) for n_steps consecutive steps.

    White (tau = 0): independent N(0, 2 D dt) samples, identical to repeated
    white_increment calls on the same stream. OU (tau > 0): starts from the
    stationary law and matches ou_init followed by repeated
    ou_step_integrated calls on the same stream, sample for sample.
    """
    if n_steps < 1:
        raise ValueError(f"n_steps must be >= 1, got {n_steps}")
    if not dt > 0.0:
        raise ValueError(f"dt must be > 0, got {dt}")
    if spec.tau == 0.0:
        scale = math.sqrt(2.0 * spec.intensity_d * dt)
        return scale * stream.standard_normal(n_steps)
    draws = stream.standard_normal(1 + 2 * n_steps)
    f0 = math.sqrt(spec.intensity_d / spec.tau) * draws[0]
    z = np.ascontiguousarray(draws[1::2])
    w = np.ascontiguousarray(draws[2::2])
    alpha, s_value, mean_coef, b, s_res = _ou_coefficients(
        spec.intensity_d, spec.tau, dt
    )
    out = np.empty(n_steps, dtype=np.float64)
    _ou_scan(f0, alpha, s_value, mean_coef, b, s_res, z, w, out)
    return out

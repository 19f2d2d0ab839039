"""Static two-level flux qubit model: parameters, frame quantities, observables.

The qubit is described in its energy eigenbasis by a Bloch vector (X, Y, Z).
Z = +1 is the ground state at zero temperature; X and Y carry the coherences.
All energies and rates are angular frequencies in ns^-1 ("GHz"), time in ns.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# Tolerated excursion of |z| beyond 1 before a state is rejected as unphysical.
# Matches the integrator's documented norm-drift allowance for recorded states.
STATE_TOL = 1e-6


@dataclass(frozen=True)
class QubitParams:
    """Device and bath parameters.

    ip_phi0 is the product of persistent current and flux quantum, the energy
    scale converting reduced flux to bias energy. delta is the tunneling
    amplitude, gamma_phi and gamma_r the intrinsic dephasing and relaxation
    rates, temperature the bath temperature in energy units (0 allowed).
    """

    ip_phi0: float = 200.0
    delta: float = 1.4
    gamma_phi: float = 0.1
    gamma_r: float = 0.1
    temperature: float = 0.0

    def __post_init__(self):
        if not self.ip_phi0 > 0.0:
            raise ValueError(f"ip_phi0 must be > 0, got {self.ip_phi0}")
        if not self.delta > 0.0:
            # the eigenbasis frame degenerates at delta = 0 (splitting would
            # equal |eps0| and the X/Z mixing angle becomes undefined at bias 0)
            raise ValueError(f"delta must be > 0, got {self.delta}")
        if self.gamma_phi < 0.0:
            raise ValueError(f"gamma_phi must be >= 0, got {self.gamma_phi}")
        if self.gamma_r < 0.0:
            raise ValueError(f"gamma_r must be >= 0, got {self.gamma_r}")
        if self.temperature < 0.0:
            raise ValueError(f"temperature must be >= 0, got {self.temperature}")


@dataclass(frozen=True)
class DrivePlan:
    """Flux working point and optional sinusoidal ac drive.

    f_dc and f_ac are in units of the flux quantum; f_dc = 0.5 is the optimal
    point where the static bias vanishes. The instantaneous ac bias is
    ip_phi0 * f_ac * sin(omega_d * t).
    """

    f_dc: float = 0.5
    f_ac: float = 0.0
    omega_d: float = 0.0

    def __post_init__(self):
        if self.f_ac < 0.0:
            raise ValueError(f"f_ac must be >= 0, got {self.f_ac}")
        if self.f_ac > 0.0 and not self.omega_d > 0.0:
            raise ValueError("omega_d must be > 0 when f_ac > 0")


@dataclass(frozen=True)
class BlochState:
    """Pauli vector of the density matrix in the energy eigenbasis."""

    x: float
    y: float
    z: float

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z], dtype=np.float64)

    @staticmethod
    def from_array(a) -> "BlochState":
        return BlochState(float(a[0]), float(a[1]), float(a[2]))


def bias_from_flux(q: QubitParams, f_dc: float) -> float:
    """Static bias energy for a dc reduced flux: ip_phi0 * (f_dc - 0.5)."""
    return q.ip_phi0 * (f_dc - 0.5)


def interlevel_splitting(q: QubitParams, eps0: float) -> float:
    """Level splitting sqrt(eps0^2 + delta^2); even in eps0, at least delta."""
    return math.hypot(eps0, q.delta)


def drive_bias(q: QubitParams, d: DrivePlan, t: float) -> float:
    """Instantaneous ac bias ip_phi0 * f_ac * sin(omega_d * t)."""
    if d.f_ac == 0.0:
        return 0.0
    return q.ip_phi0 * d.f_ac * math.sin(d.omega_d * t)


def drive_coefficients(q: QubitParams, d: DrivePlan, t: float) -> tuple[float, float]:
    """Time-dependent Bloch coupling coefficients (a, c) at time t.

    With eps1 the instantaneous ac bias, eps0 the static bias, and omega the
    splitting: a = -eps1 * delta / omega and c = -omega - eps1 * eps0 / omega.
    a couples Y and Z, c couples X and Y. Without drive this is (0, -omega)
    for all t.
    """
    eps0 = bias_from_flux(q, d.f_dc)
    omega = interlevel_splitting(q, eps0)
    eps1 = drive_bias(q, d, t)
    a = -eps1 * q.delta / omega
    c = -omega - eps1 * eps0 / omega
    return a, c


def equilibrium_z(omega: float, temperature: float) -> float:
    """Thermal equilibrium of Z: tanh(omega / (2 T)), exactly 1 at T = 0."""
    if not omega > 0.0:
        raise ValueError(f"omega must be > 0, got {omega}")
    if temperature < 0.0:
        raise ValueError(f"temperature must be >= 0, got {temperature}")
    if temperature == 0.0:
        return 1.0
    return math.tanh(omega / (2.0 * temperature))


def occupation_probabilities(s: BlochState) -> tuple[float, float]:
    """Upper and lower level populations ((1 - z)/2, (1 + z)/2).

    Rejects |z| > 1 + STATE_TOL; tiny excursions from integration roundoff
    are clipped so the pair always lies in [0, 1] and sums to 1.
    """
    if abs(s.z) > 1.0 + STATE_TOL:
        raise ValueError(f"invalid state: |z| = {abs(s.z)} exceeds 1")
    z = min(1.0, max(-1.0, s.z))
    return 0.5 * (1.0 - z), 0.5 * (1.0 + z)


def circulating_current(q: QubitParams, eps0: float, s: BlochState) -> float:
    """Circulating current in units of I_p: (delta * x - eps0 * z) / omega."""
    omega = interlevel_splitting(q, eps0)
    return (q.delta * s.x - eps0 * s.z) / omega

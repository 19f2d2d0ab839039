"""Stochastic Bloch dynamics of a driven flux qubit under classical flux noise.

The package integrates the Bloch equations of a two-level flux qubit subject
to dephasing, relaxation, and a fluctuating flux bias (white or
Ornstein-Uhlenbeck), averages fluctuation spectra over trajectory ensembles,
and extracts stochastic-resonance observables (peak position, height, width).

Unit convention: hbar = 1, energies and rates are angular frequencies in
ns^-1 (written "GHz" throughout), time is in ns. Spectra are reported on an
angular-frequency axis in the same units.
"""

from .model import (
    BlochState,
    DrivePlan,
    QubitParams,
    bias_from_flux,
    circulating_current,
    drive_coefficients,
    equilibrium_z,
    interlevel_splitting,
    occupation_probabilities,
)
from .noise import (
    DEFAULT_COUPLING,
    NoisePathState,
    NoiseSpec,
    child_seed,
    make_stream,
    noise_path,
    ou_init,
    ou_step,
    ou_step_integrated,
    white_increment,
)
from .integrator import (
    IntegrationOverflowError,
    SimulationConfig,
    Trajectory,
    drift,
    em_step,
    heun_step,
    noise_generator,
    simulate_trajectory,
)
from .spectra import (
    PeakInfo,
    PeakNotFoundError,
    Spectrum,
    ensemble_psd,
    find_peak,
    periodogram,
    sr_curve,
)
from .ensemble import (
    EnsembleConfig,
    EnsembleResult,
    SweepAxis,
    SweepPoint,
    merge_results,
    run_ensemble,
    sweep,
)
from .config import ConfigError, parse_config, render_config
from .presets import PRESETS, resolve_preset

__all__ = [
    "BlochState",
    "DrivePlan",
    "QubitParams",
    "bias_from_flux",
    "circulating_current",
    "drive_coefficients",
    "equilibrium_z",
    "interlevel_splitting",
    "occupation_probabilities",
    "DEFAULT_COUPLING",
    "NoisePathState",
    "NoiseSpec",
    "child_seed",
    "make_stream",
    "noise_path",
    "ou_init",
    "ou_step",
    "ou_step_integrated",
    "white_increment",
    "IntegrationOverflowError",
    "SimulationConfig",
    "Trajectory",
    "drift",
    "em_step",
    "heun_step",
    "noise_generator",
    "simulate_trajectory",
    "PeakInfo",
    "PeakNotFoundError",
    "Spectrum",
    "ensemble_psd",
    "find_peak",
    "periodogram",
    "sr_curve",
    "EnsembleConfig",
    "EnsembleResult",
    "SweepAxis",
    "SweepPoint",
    "merge_results",
    "run_ensemble",
    "sweep",
    "ConfigError",
    "parse_config",
    "render_config",
    "PRESETS",
    "resolve_preset",
]

__version__ = "0.1.0"

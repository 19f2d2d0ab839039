"""Reproducible trajectory ensembles and parameter sweeps.

Trajectory i of an ensemble uses the derived seed child_seed(master_seed, i),
so results do not depend on execution order or thread count. Per-trajectory
periodograms are accumulated as fixed-order pairwise-tree sums; an ensemble
over [0, 2n) therefore equals the exact combination of its [0, n) and
[n, 2n) halves, which merge_results exposes.

Sweep point j runs an independent ensemble whose master seed is offset by a
fixed constant (see noise.sweep_master_seed), keeping points statistically
independent while fully reproducible.
"""

from __future__ import annotations

import dataclasses
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .integrator import (
    IntegrationOverflowError,
    SimulationConfig,
    StabilityError,
    Trajectory,
    simulate_trajectory,
)
from .noise import child_seed, sweep_master_seed
from .spectra import Spectrum, periodogram, tree_sum

DEFAULT_MASTER_SEED = 42
DEFAULT_REALIZATIONS = 50

SWEEP_PARAMETERS = (
    "noise_intensity_d",
    "noise_tau",
    "drive_f_ac",
    "drive_omega_d",
)

COMPONENTS = ("x", "y", "z", "current")


@dataclass(frozen=True)
class EnsembleConfig:
    base: SimulationConfig = SimulationConfig()
    n_realizations: int = DEFAULT_REALIZATIONS
    master_seed: int = DEFAULT_MASTER_SEED

    def __post_init__(self):
        if not (isinstance(self.n_realizations, int) and self.n_realizations >= 1):
            raise ValueError(
                f"n_realizations must be an integer >= 1, got {self.n_realizations}"
            )


@dataclass(frozen=True)
class SweepAxis:
    """One swept parameter and its values, in run order."""

    parameter: str
    values: tuple

    def __post_init__(self):
        if self.parameter not in SWEEP_PARAMETERS:
            raise ValueError(
                f"parameter must be one of {SWEEP_PARAMETERS}, got {self.parameter!r}"
            )
        if len(self.values) == 0:
            raise ValueError("sweep axis needs at least one value")
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))


@dataclass
class EnsembleResult:
    """Aggregated ensemble output: periodogram sums per component.

    value_sums holds the raw pairwise-tree sums; spectrum() materializes the
    ensemble mean. Sums (not means) are stored so partial results combine
    without rounding.
    """

    frequencies: np.ndarray
    value_sums: dict
    n_realizations: int
    components: tuple
    window: str
    scaling: str
    master_seed: int
    index_range: tuple
    config: EnsembleConfig
    trajectories: Optional[list] = field(default=None, repr=False)

    def spectrum(self, component: str) -> Spectrum:
        if component not in self.value_sums:
            raise KeyError(f"component {component!r} was not computed")
        return Spectrum(
            frequencies=self.frequencies,
            values=self.value_sums[component] / self.n_realizations,
            n_realizations=self.n_realizations,
            component=component,
        )


@dataclass
class SweepPoint:
    """Outcome of one sweep point: a result, or the failure that replaced it."""

    value: float
    master_seed: int
    result: Optional[EnsembleResult] = None
    error: Optional[str] = None


def _simulate_one(base: SimulationConfig, master_seed: int, index: int):
    seed = child_seed(master_seed, index)
    try:
        return simulate_trajectory(base, seed)
    except IntegrationOverflowError as exc:
        exc.trajectory_index = index
        raise


def run_ensemble(
    cfg: EnsembleConfig,
    components: Sequence[str] = ("x",),
    window: str = "hann",
    scaling: str = "psd",
    n_threads: int = 1,
    keep_trajectories: bool = False,
    index_range: Optional[tuple[int, int]] = None,
) -> EnsembleResult:
    """Run trajectories [start, stop) of the ensemble and average their spectra.

    index_range defaults to (0, n_realizations); passing a sub-range runs a
    partition that merge_results can later combine with its complement. The
    reduction order is fixed by trajectory index, so any n_threads gives
    bit-identical sums. A trajectory overflow aborts the whole run (the raised
    error carries .trajectory_index and .seed).
    """
    components = tuple(components)
    if not components:
        raise ValueError("need at least one component")
    for name in components:
        if name not in COMPONENTS:
            raise ValueError(f"unknown component {name!r}, valid: {COMPONENTS}")
    if n_threads < 1:
        raise ValueError(f"n_threads must be >= 1, got {n_threads}")
    start, stop = index_range if index_range is not None else (0, cfg.n_realizations)
    if not (0 <= start < stop <= cfg.n_realizations):
        raise ValueError(f"invalid index range {(start, stop)}")
    indices = range(start, stop)

    def work(i: int):
        traj = _simulate_one(cfg.base, cfg.master_seed, i)
        rows = {
            name: periodogram(
                traj.component(name), cfg.base.dt_sample, window=window, scaling=scaling
            )
            for name in components
        }
        return traj, rows

    if n_threads == 1:
        outcomes = [work(i) for i in indices]
    else:
        with ThreadPoolExecutor(max_workers=n_threads) as pool:
            outcomes = list(pool.map(work, indices))

    n = len(outcomes)
    freqs = outcomes[0][1][components[0]].frequencies
    value_sums = {
        name: tree_sum([rows[name].values for _, rows in outcomes])
        for name in components
    }
    return EnsembleResult(
        frequencies=freqs,
        value_sums=value_sums,
        n_realizations=n,
        components=components,
        window=window,
        scaling=scaling,
        master_seed=cfg.master_seed,
        index_range=(start, stop),
        config=cfg,
        trajectories=[t for t, _ in outcomes] if keep_trajectories else None,
    )


def merge_results(a: EnsembleResult, b: EnsembleResult) -> EnsembleResult:
    """Combine two adjacent index partitions of the same ensemble.

    Sums add exactly; merging [0, n) with [n, 2n) reproduces the full
    [0, 2n) run bit for bit (the full run's reduction tree splits at n).
    """
    if a.config != b.config or a.master_seed != b.master_seed:
        raise ValueError("results come from different ensembles")
    if a.components != b.components or a.window != b.window or a.scaling != b.scaling:
        raise ValueError("results use different spectral settings")
    if a.index_range[1] != b.index_range[0]:
        raise ValueError(
            f"partitions are not adjacent: {a.index_range} then {b.index_range}"
        )
    sums = {
        name: a.value_sums[name] + b.value_sums[name] for name in a.components
    }
    both = None
    if a.trajectories is not None and b.trajectories is not None:
        both = a.trajectories + b.trajectories
    return EnsembleResult(
        frequencies=a.frequencies,
        value_sums=sums,
        n_realizations=a.n_realizations + b.n_realizations,
        components=a.components,
        window=a.window,
        scaling=a.scaling,
        master_seed=a.master_seed,
        index_range=(a.index_range[0], b.index_range[1]),
        config=a.config,
        trajectories=both,
    )


def _apply_axis(base: SimulationConfig, parameter: str, value: float) -> SimulationConfig:
    if parameter == "noise_intensity_d":
        noise = dataclasses.replace(base.noise, intensity_d=value)
        return dataclasses.replace(base, noise=noise)
    if parameter == "noise_tau":
        noise = dataclasses.replace(base.noise, tau=value)
        return dataclasses.replace(base, noise=noise)
    if parameter == "drive_f_ac":
        drive = dataclasses.replace(base.drive, f_ac=value)
        return dataclasses.replace(base, drive=drive)
    if parameter == "drive_omega_d":
        drive = dataclasses.replace(base.drive, omega_d=value)
        return dataclasses.replace(base, drive=drive)
    raise ValueError(f"unknown sweep parameter {parameter!r}")


def sweep(
    cfg: EnsembleConfig,
    axis: SweepAxis,
    components: Sequence[str] = ("x",),
    window: str = "hann",
    scaling: str = "psd",
    n_threads: int = 1,
) -> list[SweepPoint]:
    """Independent ensembles along one parameter axis, in axis order.

    Point j gets master seed sweep_master_seed(cfg.master_seed, j). A point
    whose configuration is invalid or whose integration overflows is reported
    with its error string; remaining points still run.
    """
    points = []
    for j, value in enumerate(axis.values):
        seed_j = sweep_master_seed(cfg.master_seed, j)
        try:
            base_j = _apply_axis(cfg.base, axis.parameter, value)
            cfg_j = dataclasses.replace(cfg, base=base_j, master_seed=seed_j)
            result = run_ensemble(
                cfg_j,
                components=components,
                window=window,
                scaling=scaling,
                n_threads=n_threads,
            )
            points.append(SweepPoint(value=value, master_seed=seed_j, result=result))
        except (IntegrationOverflowError, StabilityError, ValueError) as exc:
            points.append(
                SweepPoint(value=value, master_seed=seed_j, error=str(exc))
            )
    return points

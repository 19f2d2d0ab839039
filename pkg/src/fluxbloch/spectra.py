"""Ensemble-averaged fluctuation spectra and stochastic-resonance observables.

Spectra are one-sided power spectral densities of mean-subtracted, windowed
series, reported on an angular-frequency axis omega in GHz. Values are
densities over ordinary frequency, so integrating values over omega / (2 pi)
recovers the series variance (rect window). A unit-variance white sequence
sampled at dt has a flat one-sided level of 2 dt.

Averaging across realizations is a fixed-order pairwise-tree sum, so ensemble
spectra are independent of thread count, and the sum over a full index range
equals the sums of its two halves combined (exactly, in floating point).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .integrator import Trajectory

WINDOWS = ("rect", "hann")
SCALINGS = ("psd", "amplitude")


class PeakNotFoundError(RuntimeError):
    """The band's maximum sits on a band endpoint: no interior local maximum."""


@dataclass(frozen=True)
class Spectrum:
    """One-sided spectrum: angular frequencies, values, realization count."""

    frequencies: np.ndarray
    values: np.ndarray
    n_realizations: int
    component: Optional[str] = None

    @property
    def bin_width(self) -> float:
        return float(self.frequencies[1] - self.frequencies[0])


@dataclass(frozen=True)
class PeakInfo:
    """Interpolated peak: position and height from a 3-bin quadratic fit,
    width from linear interpolation at half height (inf if the spectrum never
    falls below half height on one side)."""

    frequency: float
    height: float
    fwhm: float


def _window_values(n: int, window: str) -> np.ndarray:
    if window == "rect":
        return np.ones(n)
    if window == "hann":
        # periodic form, standard for spectral estimation
        return 0.5 - 0.5 * np.cos(2.0 * math.pi * np.arange(n) / n)
    raise ValueError(f"window must be one of {WINDOWS}, got {window!r}")


def _pow2_floor(n: int) -> int:
    return 1 << (n.bit_length() - 1)


def periodogram(
    series: np.ndarray,
    dt_sample: float,
    window: str = "hann",
    scaling: str = "psd",
    component: Optional[str] = None,
) -> Spectrum:
    """Single-series spectrum; the series is truncated to a power-of-two length.

    scaling = "psd" gives the one-sided power spectral density. scaling =
    "amplitude" gives the window-corrected one-sided amplitude spectrum (a
    unit-amplitude sinusoid at a bin center reads 1); provided for comparison,
    spectral acceptance checks use the PSD.
    """
    if scaling not in SCALINGS:
        raise ValueError(f"scaling must be one of {SCALINGS}, got {scaling!r}")
    if not dt_sample > 0.0:
        raise ValueError(f"dt_sample must be > 0, got {dt_sample}")
    series = np.asarray(series, dtype=np.float64)
    if series.ndim != 1:
        raise ValueError("series must be one-dimensional")
    n = _pow2_floor(series.shape[0]) if series.shape[0] else 0
    if n < 2:
        raise ValueError(f"series too short: {series.shape[0]} samples, need >= 2")
    x = series[:n] - series[:n].mean()
    w = _window_values(n, window)
    amp = np.abs(np.fft.rfft(w * x))
    if scaling == "psd":
        u = float(np.mean(w * w))
        values = (dt_sample / (n * u)) * amp**2
        values[1:-1] *= 2.0
    else:
        w1 = float(np.mean(w))
        values = amp / (n * w1)
        values[1:-1] *= 2.0
    freqs = 2.0 * math.pi * np.fft.rfftfreq(n, dt_sample)
    return Spectrum(
        frequencies=freqs, values=values, n_realizations=1, component=component
    )


def _tree_sum(rows: Sequence[np.ndarray], lo: int, hi: int) -> np.ndarray:
    if hi - lo == 1:
        return rows[lo]
    mid = (lo + hi) // 2
    return _tree_sum(rows, lo, mid) + _tree_sum(rows, mid, hi)


def tree_sum(rows: Sequence[np.ndarray]) -> np.ndarray:
    """Pairwise-tree sum over index order; the top split of 2n rows is exactly
    rows[:n] + rows[n:], which makes half-ensemble merges bit-exact."""
    if not rows:
        raise ValueError("nothing to sum")
    if len(rows) == 1:
        return rows[0].copy()
    return _tree_sum(rows, 0, len(rows))


def ensemble_psd(
    trajectories: Sequence[Trajectory],
    component: str,
    window: str = "hann",
    scaling: str = "psd",
) -> Spectrum:
    """Mean periodogram of one component over an ensemble.

    All trajectories must share one time grid. The mean is accumulated in
    trajectory index order with a pairwise tree, independent of thread count.
    """
    if not trajectories:
        raise ValueError("empty trajectory set")
    t0 = trajectories[0].times
    rows = []
    spec0 = None
    for traj in trajectories:
        if traj.times.shape != t0.shape or not np.array_equal(traj.times, t0):
            raise ValueError("trajectory time grids differ")
        p = periodogram(
            traj.component(component),
            traj.config.dt_sample,
            window=window,
            scaling=scaling,
        )
        if spec0 is None:
            spec0 = p
        rows.append(p.values)
    values = tree_sum(rows) / len(rows)
    return Spectrum(
        frequencies=spec0.frequencies,
        values=values,
        n_realizations=len(rows),
        component=component,
    )


def find_peak(spec: Spectrum, band: tuple[float, float]) -> PeakInfo:
    """Locate the dominant interior maximum of spec within [band[0], band[1]].

    The maximum bin is refined by quadratic interpolation over its 3-bin
    neighborhood; FWHM comes from linear interpolation at half the refined
    height, searching outward over the whole spectrum. Raises
    PeakNotFoundError when the band's maximum bin is a band endpoint.
    """
    lo, hi = band
    if not lo < hi:
        raise ValueError(f"empty band {band}")
    freqs = spec.frequencies
    if lo < freqs[0] or hi > freqs[-1]:
        raise ValueError(f"band {band} outside spectrum range")
    idx = np.nonzero((freqs >= lo) & (freqs <= hi))[0]
    if idx.size < 5:
        raise ValueError(f"band {band} covers {idx.size} bins, need >= 5")
    values = spec.values
    k = int(idx[np.argmax(values[idx])])
    if k == idx[0] or k == idx[-1]:
        raise PeakNotFoundError(
            f"maximum in band {band} sits on the band edge at "
            f"omega = {freqs[k]:.6g}; the band is mischosen"
        )
    left, center, right = values[k - 1], values[k], values[k + 1]
    denom = left - 2.0 * center + right
    d = 0.0 if denom == 0.0 else 0.5 * (left - right) / denom
    d = min(0.5, max(-0.5, d))
    dw = spec.bin_width
    frequency = freqs[k] + d * dw
    height = center - 0.25 * (left - right) * d
    half = 0.5 * height

    def cross(step: int) -> float:
        j = k
        while 0 <= j + step < values.shape[0]:
            if values[j + step] < half:
                v0, v1 = values[j], values[j + step]
                frac = (v0 - half) / (v0 - v1)
                return freqs[j] + step * frac * dw
            j += step
        return math.inf

    right_cross = cross(+1)
    left_cross = cross(-1)
    fwhm = right_cross - left_cross if math.isfinite(right_cross - left_cross) else math.inf
    return PeakInfo(frequency=frequency, height=height, fwhm=fwhm)


def sr_curve(
    results: Sequence[tuple[float, Spectrum]], band: tuple[float, float]
) -> list[tuple[float, float]]:
    """Peak height in band per noise intensity, in input order.

    Points whose spectrum has no interior maximum in the band are marked with
    a NaN height rather than aborting the curve.
    """
    if len({d for d, _ in results}) < 3:
        raise ValueError("need at least 3 distinct noise intensities")
    curve = []
    for d, spec in results:
        try:
            height = find_peak(spec, band).height
        except PeakNotFoundError:
            height = math.nan
        curve.append((d, height))
    return curve

"""Unit tests for ensemble averaging and parameter sweeps."""

import numpy as np
import pytest

from fluxbloch.ensemble import (
    EnsembleConfig,
    SweepAxis,
    merge_results,
    run_ensemble,
    sweep,
)
from fluxbloch.integrator import (
    IntegrationOverflowError,
    SimulationConfig,
    simulate_trajectory,
)
from fluxbloch.model import BlochState, DrivePlan, QubitParams
from fluxbloch.noise import NoiseSpec, child_seed
from fluxbloch.spectra import periodogram


def small_base(**kw):
    # 120 ns with the default grid records 2001 samples; the FFT then uses
    # 1024 of them, which keeps these tests fast.
    kw.setdefault("noise", NoiseSpec(intensity_d=1e-6, tau=0.0, coupling_lambda=100.0))
    kw.setdefault("dt", 0.005)
    kw.setdefault("t_total", 120.0)
    kw.setdefault("t_transient", 100.0)
    kw.setdefault("record_stride", 2)
    return SimulationConfig(**kw)


def small_ensemble(n=4, seed=42, **kw):
    return EnsembleConfig(base=small_base(**kw), n_realizations=n, master_seed=seed)


class TestRunEnsemble:
    def test_single_realization_matches_direct_call(self):
        cfg = small_ensemble(n=1)
        result = run_ensemble(cfg)
        traj = simulate_trajectory(cfg.base, child_seed(cfg.master_seed, 0))
        solo = periodogram(traj.component("x"), cfg.base.dt_sample)
        spec = result.spectrum("x")
        assert np.array_equal(spec.values, solo.values)
        assert np.array_equal(spec.frequencies, solo.frequencies)
        assert spec.n_realizations == 1

    def test_repeat_run_is_bit_identical(self):
        cfg = small_ensemble(n=4)
        a = run_ensemble(cfg, components=("x", "z"))
        b = run_ensemble(cfg, components=("x", "z"))
        for c in ("x", "z"):
            assert np.array_equal(a.spectrum(c).values, b.spectrum(c).values)

    def test_thread_count_does_not_change_values(self):
        cfg = small_ensemble(n=8)
        base = run_ensemble(cfg, components=("x",), n_threads=1)
        for n_threads in (2, 4):
            other = run_ensemble(cfg, components=("x",), n_threads=n_threads)
            assert np.array_equal(base.spectrum("x").values, other.spectrum("x").values)

    def test_quiet_system_has_no_power(self):
        cfg = small_ensemble(
            n=2, noise=NoiseSpec(intensity_d=0.0, tau=0.0, coupling_lambda=100.0)
        )
        result = run_ensemble(cfg)
        values = result.spectrum("x").values
        assert values.max() < 1e-20

    def test_split_runs_merge_to_full_run(self):
        cfg = small_ensemble(n=6)
        full = run_ensemble(cfg, components=("x",))
        first = run_ensemble(cfg, components=("x",), index_range=(0, 3))
        second = run_ensemble(cfg, components=("x",), index_range=(3, 6))
        merged = merge_results(first, second)
        assert merged.n_realizations == 6
        assert np.array_equal(merged.spectrum("x").values, full.spectrum("x").values)

    def test_merge_rejects_mismatched_partitions(self):
        cfg = small_ensemble(n=6)
        first = run_ensemble(cfg, index_range=(0, 3))
        gap = run_ensemble(cfg, index_range=(4, 6))
        with pytest.raises(ValueError):
            merge_results(first, gap)

    def test_merge_rejects_different_seeds(self):
        a = run_ensemble(small_ensemble(n=4, seed=1), index_range=(0, 2))
        b = run_ensemble(small_ensemble(n=4, seed=2), index_range=(2, 4))
        with pytest.raises(ValueError):
            merge_results(a, b)

    def test_trajectories_kept_on_request(self):
        cfg = small_ensemble(n=2)
        result = run_ensemble(cfg, keep_trajectories=True)
        assert result.trajectories is not None
        assert len(result.trajectories) == 2
        assert result.trajectories[0].seed == child_seed(cfg.master_seed, 0)
        assert run_ensemble(cfg).trajectories is None

    def test_seed_independence_between_trajectories(self):
        cfg = small_ensemble(n=2)
        result = run_ensemble(cfg, keep_trajectories=True)
        a = result.trajectories[0].component("x")
        b = result.trajectories[1].component("x")
        a = a - a.mean()
        b = b - b.mean()
        rho = float(np.dot(a, b) / np.sqrt(np.dot(a, a) * np.dot(b, b)))
        assert abs(rho) < 4.0 / np.sqrt(a.size)

    def test_overflow_fails_fast_with_index(self):
        cfg = EnsembleConfig(
            base=small_base(
                noise=NoiseSpec(intensity_d=1e-4, tau=0.0, coupling_lambda=100.0),
                t_total=300.0,
            ),
            n_realizations=2,
            master_seed=42,
        )
        with pytest.raises(IntegrationOverflowError) as err:
            run_ensemble(cfg)
        assert err.value.trajectory_index in (0, 1)

    def test_rejects_unknown_component(self):
        with pytest.raises(ValueError):
            run_ensemble(small_ensemble(n=1), components=("w",))

    def test_rejects_bad_realization_count(self):
        with pytest.raises(ValueError):
            EnsembleConfig(base=small_base(), n_realizations=0)


class TestSweep:
    def test_single_point_sweep_equals_plain_ensemble(self):
        cfg = small_ensemble(n=3)
        axis = SweepAxis(parameter="noise_intensity_d", values=(1e-6,))
        (point,) = sweep(cfg, axis)
        plain = run_ensemble(cfg)
        assert point.error is None
        assert point.master_seed == cfg.master_seed
        assert np.array_equal(
            point.result.spectrum("x").values, plain.spectrum("x").values
        )

    def test_axis_values_are_applied(self):
        cfg = small_ensemble(n=2)
        axis = SweepAxis(parameter="noise_intensity_d", values=(1e-7, 1e-6))
        points = sweep(cfg, axis)
        assert [p.value for p in points] == [1e-7, 1e-6]
        assert points[0].result.config.base.noise.intensity_d == 1e-7
        assert points[1].result.config.base.noise.intensity_d == 1e-6
        # More noise, more power.
        p0 = points[0].result.spectrum("x").values.sum()
        p1 = points[1].result.spectrum("x").values.sum()
        assert p1 > p0

    def test_points_use_distinct_seeds(self):
        cfg = small_ensemble(n=2)
        axis = SweepAxis(parameter="noise_tau", values=(0.0, 2.0, 5.0))
        points = sweep(cfg, axis)
        seeds = [p.master_seed for p in points]
        assert seeds[0] == cfg.master_seed
        assert len(set(seeds)) == 3

    def test_drive_axis(self):
        cfg = small_ensemble(
            n=1, drive=DrivePlan(f_dc=0.5, f_ac=0.005, omega_d=1.4)
        )
        axis = SweepAxis(parameter="drive_f_ac", values=(0.0, 0.005))
        points = sweep(cfg, axis)
        assert points[0].result.config.base.drive.f_ac == 0.0
        assert points[1].result.config.base.drive.f_ac == 0.005

    def test_failing_point_is_marked_not_fatal(self):
        # Middle point overflows under Ito-Euler; the sweep keeps going.
        cfg = small_ensemble(n=1, t_total=300.0)
        axis = SweepAxis(parameter="noise_intensity_d", values=(1e-7, 1e-4, 1e-6))
        points = sweep(cfg, axis)
        assert points[0].error is None
        assert points[1].error is not None
        assert points[1].result is None
        assert "overflow" in points[1].error.lower() or "dt" in points[1].error
        assert points[2].error is None

    def test_guard_tripping_point_is_marked(self):
        # 2*lambda^2*D*dt crosses 0.1 only at the hottest point.
        cfg = small_ensemble(n=1)
        axis = SweepAxis(parameter="noise_intensity_d", values=(1e-7, 1e-6, 2e-3))
        points = sweep(cfg, axis)
        assert [p.error is None for p in points] == [True, True, False]

    def test_rejects_unknown_parameter(self):
        with pytest.raises(ValueError):
            SweepAxis(parameter="qubit_mass", values=(1.0,))

    def test_rejects_empty_axis(self):
        with pytest.raises(ValueError):
            SweepAxis(parameter="noise_tau", values=())

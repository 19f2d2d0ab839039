"""Unit tests for the static qubit model."""

import math

import pytest

from fluxbloch.model import (
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


def make_qubit(**kw):
    return QubitParams(**kw)


class TestSplitting:
    # (delta, eps0, expected) frozen from independent evaluation of
    # sqrt(eps0**2 + delta**2).
    CASES = [
        (1.4, 0.0, 1.4),
        (1.4, 1.4, 1.9798989873223332),
        (1.4, -2.0, 2.4413111231467406),
        (0.5, 0.0, 0.5),
    ]

    @pytest.mark.parametrize("delta,eps0,expected", CASES)
    def test_values(self, delta, eps0, expected):
        q = make_qubit(delta=delta)
        assert interlevel_splitting(q, eps0) == pytest.approx(expected, rel=1e-15)

    def test_even_in_bias(self):
        q = make_qubit()
        for eps0 in (0.3, 1.7, 42.0):
            assert interlevel_splitting(q, eps0) == interlevel_splitting(q, -eps0)

    def test_monotone_in_abs_bias(self):
        q = make_qubit()
        values = [interlevel_splitting(q, e) for e in (0.0, 0.5, 1.0, 2.0, 10.0)]
        assert all(a < b for a, b in zip(values, values[1:]))

    def test_lower_bound_is_delta(self):
        q = make_qubit()
        assert interlevel_splitting(q, 0.0) == q.delta
        assert interlevel_splitting(q, 1e-8) >= q.delta


class TestBias:
    def test_symmetry_point_is_exactly_zero(self):
        q = make_qubit()
        assert bias_from_flux(q, 0.5) == 0.0

    def test_off_symmetry(self):
        q = make_qubit()
        # 0.51 - 0.5 is not exact in binary, so compare approximately.
        assert bias_from_flux(q, 0.51) == pytest.approx(2.0, rel=1e-12)
        assert bias_from_flux(q, 0.49) == pytest.approx(-2.0, rel=1e-12)

    def test_linear_in_ip_phi0(self):
        q1 = make_qubit(ip_phi0=100.0)
        q2 = make_qubit(ip_phi0=200.0)
        assert bias_from_flux(q2, 0.75) == 2.0 * bias_from_flux(q1, 0.75)


class TestDriveCoefficients:
    def test_no_drive(self):
        q = make_qubit()
        d = DrivePlan(f_dc=0.5, f_ac=0.0, omega_d=0.0)
        a, c = drive_coefficients(q, d, t=3.7)
        assert a == 0.0
        assert c == pytest.approx(-1.4, rel=1e-15)

    def test_peak_drive_at_symmetry(self):
        # omega_d*t = pi/2 so sin() == 1.0 exactly up to sin(pi/2) rounding.
        q = make_qubit()
        d = DrivePlan(f_dc=0.5, f_ac=0.005, omega_d=math.pi / 2.0)
        a, c = drive_coefficients(q, d, t=1.0)
        eps1 = 200.0 * 0.005  # == 1.0 exactly in binary
        assert a == pytest.approx(-eps1 * 1.4 / 1.4, rel=1e-12)
        assert c == pytest.approx(-1.4 - eps1 * 0.0 / 1.4, rel=1e-12)

    def test_drive_zero_crossing(self):
        q = make_qubit()
        d = DrivePlan(f_dc=0.5, f_ac=0.005, omega_d=1.4)
        a, c = drive_coefficients(q, d, t=0.0)
        assert a == 0.0
        assert c == -1.4

    def test_off_symmetry_couples_both(self):
        q = make_qubit()
        d = DrivePlan(f_dc=0.51, f_ac=0.005, omega_d=math.pi / 2.0)
        eps0 = bias_from_flux(q, 0.51)
        omega = interlevel_splitting(q, eps0)
        a, c = drive_coefficients(q, d, t=1.0)
        assert a == pytest.approx(-1.0 * 1.4 / omega, rel=1e-12)
        assert c == pytest.approx(-omega - 1.0 * eps0 / omega, rel=1e-12)


class TestEquilibrium:
    def test_zero_temperature_is_exactly_one(self):
        assert equilibrium_z(1.4, 0.0) == 1.0

    def test_finite_temperature(self):
        # tanh(1.4 / (2 * 1.4)) = tanh(0.5)
        assert equilibrium_z(1.4, 1.4) == pytest.approx(0.46211715726000974, rel=1e-15)

    def test_high_temperature_limit(self):
        assert equilibrium_z(1.4, 1e6) == pytest.approx(0.0, abs=1e-5)

    def test_decreasing_in_temperature(self):
        vals = [equilibrium_z(1.4, t) for t in (0.0, 0.5, 1.0, 5.0)]
        assert all(a > b for a, b in zip(vals, vals[1:]))

    @pytest.mark.parametrize("omega,temp", [(0.0, 1.0), (-1.0, 1.0), (1.4, -0.1)])
    def test_rejects_bad_arguments(self, omega, temp):
        with pytest.raises(ValueError):
            equilibrium_z(omega, temp)


class TestOccupations:
    def test_ground_state(self):
        p_up, p_down = occupation_probabilities(BlochState(0.0, 0.0, 1.0))
        assert p_up == 0.0
        assert p_down == 1.0

    def test_excited_state(self):
        p_up, p_down = occupation_probabilities(BlochState(0.0, 0.0, -1.0))
        assert p_up == 1.0
        assert p_down == 0.0

    def test_equal_superposition(self):
        p_up, p_down = occupation_probabilities(BlochState(1.0, 0.0, 0.0))
        assert p_up == 0.5
        assert p_down == 0.5

    def test_sum_is_one(self):
        for z in (-1.0, -0.3, 0.0, 0.77, 1.0):
            p_up, p_down = occupation_probabilities(BlochState(0.0, 0.0, z))
            assert p_up + p_down == pytest.approx(1.0, abs=1e-15)

    def test_slightly_out_of_range_is_clipped(self):
        p_up, p_down = occupation_probabilities(BlochState(0.0, 0.0, 1.0 + 1e-9))
        assert p_up == 0.0
        assert p_down == 1.0

    def test_far_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            occupation_probabilities(BlochState(0.0, 0.0, 1.5))
        with pytest.raises(ValueError):
            occupation_probabilities(BlochState(0.0, 0.0, -1.0 - 1e-3))


class TestCirculatingCurrent:
    def test_pure_x_at_symmetry(self):
        q = make_qubit()
        # eps0 = 0: current reduces to (delta/omega) * x = x.
        assert circulating_current(q, 0.0, BlochState(1.0, 0.0, 0.0)) == 1.0
        assert circulating_current(q, 0.0, BlochState(0.0, 0.0, 1.0)) == 0.0

    def test_ground_state_off_symmetry(self):
        q = make_qubit()
        eps0 = 1.4
        omega = interlevel_splitting(q, eps0)
        got = circulating_current(q, eps0, BlochState(0.0, 0.0, 1.0))
        assert got == pytest.approx(-eps0 / omega, rel=1e-15)

    def test_linear_combination(self):
        q = make_qubit()
        eps0 = 2.0
        omega = interlevel_splitting(q, eps0)
        got = circulating_current(q, eps0, BlochState(0.6, 0.1, -0.8))
        want = (1.4 * 0.6 - eps0 * (-0.8)) / omega
        assert got == pytest.approx(want, rel=1e-14)

    def test_bounded_by_unit_magnitude(self):
        q = make_qubit()
        for eps0 in (0.0, 0.7, 3.0):
            for s in [BlochState(1.0, 0.0, 0.0), BlochState(0.0, 0.0, -1.0)]:
                assert abs(circulating_current(q, eps0, s)) <= 1.0 + 1e-12


class TestValidation:
    def test_zero_tunneling_rejected(self):
        with pytest.raises(ValueError):
            make_qubit(delta=0.0)

    def test_negative_rates_rejected(self):
        with pytest.raises(ValueError):
            make_qubit(gamma_phi=-0.1)
        with pytest.raises(ValueError):
            make_qubit(gamma_r=-1e-9)

    def test_negative_temperature_rejected(self):
        with pytest.raises(ValueError):
            make_qubit(temperature=-0.5)

    def test_nonpositive_energy_scale_rejected(self):
        with pytest.raises(ValueError):
            make_qubit(ip_phi0=0.0)

    def test_negative_ac_amplitude_rejected(self):
        with pytest.raises(ValueError):
            DrivePlan(f_dc=0.5, f_ac=-0.001, omega_d=1.4)

    def test_drive_without_frequency_rejected(self):
        with pytest.raises(ValueError):
            DrivePlan(f_dc=0.5, f_ac=0.005, omega_d=0.0)

    def test_state_array_round_trip(self):
        s = BlochState(0.1, -0.2, 0.97)
        arr = s.as_array()
        assert tuple(arr) == (0.1, -0.2, 0.97)
        s2 = BlochState.from_array(arr)
        assert s2 == s

import math

import numpy as np
import pytest

from mollowqed.hydrogen import level
from mollowqed.selfenergy import (
    discrete_to_continuum_weight,
    photon_phase_space_weight,
    richardson_extrapolate,
    self_energy_integrand,
    self_energy_sum,
    solid_angle_integral,
    transverse_angular_average,
)


def test_bethe_log_single_basis():
    r = self_energy_sum(level("1S"), cutoff=100.0, basis_size=60)
    assert r.bethe_log == pytest.approx(2.984128556, rel=1e-2)
    assert r.acceleration_sum == pytest.approx(2.0)
    assert not r.low_confidence


def test_raw_integral_matches_asymptote():
    r = self_energy_sum(level("1S"), cutoff=100.0, basis_size=60)
    assert r.raw_integral == pytest.approx(r.raw_asymptote, rel=1e-5)
    # finite part independent of the cutoff
    r2 = self_energy_sum(level("1S"), cutoff=200.0, basis_size=60)
    assert r2.finite_part == pytest.approx(r.finite_part, rel=1e-6)


def test_subtracted_integrand_decays_as_one_over_k():
    k = np.array([100.0, 400.0])
    g = self_energy_integrand(level("1S"), k, subtracted=True)
    # g k -> D = 2 with a leading k^-1/2 correction
    err = 2.0 - g * k
    assert np.all(err > 0)
    assert err[1] / err[0] == pytest.approx(0.5, rel=0.2)
    raw = self_energy_integrand(level("1S"), [50.0])
    # leading term -<r^2> k^2 with <r^2> = 3
    assert raw[0] / (-3.0 * 50.0 ** 2) == pytest.approx(1.0, rel=0.05)


def test_low_cutoff_flag_and_no_channel():
    assert self_energy_sum(level("1S"), cutoff=10.0).low_confidence
    zero = self_energy_sum(level("1S"), channels=(0, 2))
    assert zero.raw_integral == zero.subtracted_value == zero.finite_part == 0.0


def test_unsupported_states():
    with pytest.raises(NotImplementedError):
        self_energy_sum(level("2P"))
    with pytest.raises(NotImplementedError):
        self_energy_sum(level("3S"))


def test_richardson_exact_for_polynomial():
    n = np.array([40, 60, 80, 100])
    vals = 3.0 + 2.0 / n - 5.0 / n ** 2
    assert richardson_extrapolate(n, vals) == pytest.approx(3.0, abs=1e-10)


def test_mode_counting():
    V = 125.0
    assert discrete_to_continuum_weight(V) * V == pytest.approx((2 * math.pi) ** 3)
    assert solid_angle_integral(lambda k: 1.0) == pytest.approx(4 * math.pi)
    x = np.array([0.3, -1.2, 0.7])
    assert transverse_angular_average(x) == pytest.approx(2 / 3 * np.dot(x, x), rel=1e-12)
    assert photon_phase_space_weight(2.0) == 8.0
    with pytest.raises(ValueError):
        discrete_to_continuum_weight(0.0)

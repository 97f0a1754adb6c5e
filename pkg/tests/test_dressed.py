import math
import warnings

import pytest

from mollowqed.constants import au_rate_to_angular

from mollowqed.dressed import (
    A_3P_1S,
    DriveConfig,
    DriveWarning,
    field_for_rabi,
    field_per_photon,
    generalized_rabi,
    macroscopic_field,
    rabi_from_field,
    reference_drive,
    sideband_positions,
)


def test_reference_drive():
    d = reference_drive()
    assert d.rabi == pytest.approx(1000 * A_3P_1S)
    assert d.detuning == pytest.approx(50 * A_3P_1S)
    assert generalized_rabi(d) == pytest.approx(math.hypot(1000, 50) * A_3P_1S)
    assert d.omega_r / (2 * math.pi) == pytest.approx(2.922712e15, rel=1e-6)


def test_sidebands_symmetric():
    d = reference_drive()
    red, blue = sideband_positions(d)
    assert red == -blue
    ared, ablue = sideband_positions(d, absolute=True)
    assert ablue - d.laser_frequency == pytest.approx(blue)
    assert ared + ablue == pytest.approx(2 * d.laser_frequency)


def test_validation():
    for kw in ({"rabi": 0.0}, {"rabi": -1.0}, {"rabi": 1e11, "gamma": 0.0}, {"rabi": 1e11, "j": 2.5}):
        with pytest.raises(ValueError):
            DriveConfig(**kw)


def test_hierarchy_warnings():
    with pytest.warns(DriveWarning):
        DriveConfig.in_gamma(5.0)
    with pytest.warns(DriveWarning):
        DriveConfig(rabi=1e15)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        reference_drive()
        DriveConfig.in_gamma(5.0, check=False)


def test_with_and_equality():
    d = reference_drive()
    assert d.with_(j=1.5).j == 1.5
    assert d.with_(j=1.5) != d


def test_field_conventions():
    d, E = 0.3, 2e-4
    assert rabi_from_field(d, E) == pytest.approx(au_rate_to_angular(d * E))
    assert field_for_rabi(d, rabi_from_field(d, E)) == pytest.approx(E)
    # sqrt(n) d E_L equals the macroscopic d |E| / 2 with |E| = 2 sqrt(n) E_L
    n, w, V = 1e8, 0.37, 1e12
    EL = field_per_photon(w, V)
    E_macro = macroscopic_field(n, EL)
    assert E_macro == pytest.approx(2 * math.sqrt(n) * EL)
    assert rabi_from_field(d, E_macro, "per_photon") == pytest.approx(au_rate_to_angular(math.sqrt(n) * d * EL))
    with pytest.raises(ValueError):
        rabi_from_field(d, E, "other")

"""Laser-drive parameters and uncorrected dressed-state kinematics."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, replace

from .constants import DEFAULT_CONSTANTS, PhysicalConstants, angular_to_au_rate, au_rate_to_angular
from .hydrogen import level, transition_frequency

__all__ = [
    "A_3P_1S",
    "A_3P_2S",
    "DriveConfig",
    "DriveWarning",
    "reference_drive",
    "generalized_rabi",
    "sideband_positions",
    "rabi_from_field",
    "field_for_rabi",
    "field_per_photon",
    "macroscopic_field",
]

# partial decay rates of 3P (s^-1), used as the reference width
A_3P_1S = 1.6725e8
A_3P_2S = 0.2245e8

RABI_CONVENTIONS = {
    # Omega = d |E|: dressed-state splitting of a classical field E cos(w t)
    "macroscopic": 1.0,
    # Omega = sqrt(n) d E_L with E_L the field per photon and |E| <-> 2 sqrt(n) E_L
    "per_photon": 0.5,
}


class DriveWarning(UserWarning):
    """Drive parameters outside the Gamma << Omega << omega_R hierarchy."""


@dataclass(frozen=True)
class DriveConfig:
    """Laser drive on the 1S-3P_j line.  All rates are angular, in s^-1.

    ``detuning`` is laser minus atomic frequency.
    """

    rabi: float
    detuning: float = 0.0
    gamma: float = A_3P_1S
    omega_r: float = transition_frequency(level("1S"), level("3P"))
    j: float = 0.5
    check: bool = True

    def __post_init__(self):
        if not self.rabi > 0:
            raise ValueError(f"Rabi frequency must be positive, got {self.rabi!r}")
        if not self.gamma > 0:
            raise ValueError(f"gamma must be positive, got {self.gamma!r}")
        if not self.omega_r > 0:
            raise ValueError(f"omega_r must be positive, got {self.omega_r!r}")
        if self.j not in (0.5, 1.5):
            raise ValueError(f"j must be 1/2 or 3/2, got {self.j!r}")
        if self.check:
            if self.rabi < 10 * self.gamma:
                warnings.warn(f"Omega/Gamma = {self.rabi / self.gamma:.3g} < 10: outside the secular regime",
                              DriveWarning, stacklevel=3)
            if self.rabi > 1e-2 * self.omega_r or abs(self.detuning) > 1e-2 * self.omega_r:
                warnings.warn("Omega or |Delta| exceeds 1e-2 omega_R", DriveWarning, stacklevel=3)

    @classmethod
    def in_gamma(cls, rabi: float, detuning: float = 0.0, gamma: float = A_3P_1S, **kwargs) -> "DriveConfig":
        """Build a drive with Omega and Delta given in units of Gamma."""
        return cls(rabi * gamma, detuning * gamma, gamma, **kwargs)

    def with_(self, **changes) -> "DriveConfig":
        return replace(self, **changes)

    @property
    def laser_frequency(self) -> float:
        return self.omega_r + self.detuning


def reference_drive(j: float = 0.5, **kwargs) -> DriveConfig:
    """Omega = 1000 Gamma, Delta = 50 Gamma with Gamma = A(3P -> 1S)."""
    return DriveConfig.in_gamma(1000.0, 50.0, j=j, **kwargs)


def generalized_rabi(drive: DriveConfig) -> float:
    return math.hypot(drive.rabi, drive.detuning)


def sideband_positions(drive: DriveConfig, absolute: bool = False):
    """(red, blue) sideband positions.  Offsets from the laser unless ``absolute``."""
    w = generalized_rabi(drive)
    if absolute:
        return drive.laser_frequency - w, drive.laser_frequency + w
    return -w, w


def _convention(name):
    if name not in RABI_CONVENTIONS:
        raise ValueError(f"unknown Rabi convention {name!r}; use one of {sorted(RABI_CONVENTIONS)}")
    return RABI_CONVENTIONS[name]


def rabi_from_field(dipole: float, field: float, convention: str = "macroscopic",
                    constants: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """Rabi frequency (s^-1) for a dipole matrix element and field amplitude, both atomic units.

    ``convention="per_photon"`` returns sqrt(n) d E_L for a field |E| = 2 sqrt(n) E_L,
    i.e. half of the macroscopic d |E|.
    """
    if field < 0:
        raise ValueError("field amplitude must be non-negative")
    factor = _convention(convention)
    return au_rate_to_angular(factor * abs(dipole) * field, constants)


def field_for_rabi(dipole: float, rabi: float, convention: str = "macroscopic",
                   constants: PhysicalConstants = DEFAULT_CONSTANTS) -> float:
    """Field amplitude (atomic units) that produces ``rabi`` (s^-1)."""
    factor = _convention(convention)
    return angular_to_au_rate(rabi, constants) / (factor * abs(dipole))


def field_per_photon(omega: float, volume: float) -> float:
    """Electric field per photon sqrt(w / 2V) in natural units."""
    return math.sqrt(omega / (2.0 * volume))


def macroscopic_field(n_photons: float, per_photon: float) -> float:
    """Classical amplitude matched to an n-photon mode, 2 sqrt(n) E_L."""
    return 2.0 * math.sqrt(n_photons) * per_photon

"""Physical constants, unit conversions and scalars with 1-sigma uncertainties.

All frequencies that describe rates (decay widths, Rabi frequencies,
detunings) are angular rates in s^-1.  Lamb shifts and final sideband
shifts are quoted as ordinary frequencies in kHz.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable

from scipy import constants as _sc

__all__ = [
    "UncertainValue",
    "PhysicalConstants",
    "DEFAULT_CONSTANTS",
    "combine_quadrature",
    "combine_linear",
    "angular_to_khz",
    "khz_to_angular",
    "au_rate_to_angular",
    "angular_to_au_rate",
    "au_intensity_to_wcm2",
    "wcm2_to_au_intensity",
]


@dataclass(frozen=True)
class UncertainValue:
    """A scalar carrying a symmetric, uncorrelated 1-sigma uncertainty."""

    value: float
    sigma: float = 0.0

    def __post_init__(self):
        if not math.isfinite(self.value):
            raise ValueError(f"value must be finite, got {self.value!r}")
        if not (self.sigma >= 0.0):
            raise ValueError(f"sigma must be >= 0, got {self.sigma!r}")

    def __add__(self, other):
        other = _coerce(other)
        return UncertainValue(self.value + other.value, math.hypot(self.sigma, other.sigma))

    __radd__ = __add__

    def __neg__(self):
        return UncertainValue(-self.value, self.sigma)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, UncertainValue):
            value = self.value * other.value
            sigma = math.hypot(self.sigma * other.value, self.value * other.sigma)
            return UncertainValue(value, sigma)
        return UncertainValue(self.value * other, abs(other) * self.sigma)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, UncertainValue):
            value = self.value / other.value
            sigma = math.hypot(self.sigma / other.value, value * other.sigma / other.value)
            return UncertainValue(value, sigma)
        return UncertainValue(self.value / other, self.sigma / abs(other))

    def propagate(self, f: Callable[[float], float], derivative: Callable[[float], float] | None = None,
                  step: float | None = None) -> "UncertainValue":
        """Push the value through ``f`` using first-order (linear) propagation.

        If ``derivative`` is not given it is estimated by a central difference.
        """
        if derivative is not None:
            slope = derivative(self.value)
        else:
            h = step if step is not None else max(abs(self.value), 1.0) * 1e-6
            slope = (f(self.value + h) - f(self.value - h)) / (2 * h)
        return UncertainValue(f(self.value), abs(slope) * self.sigma)

    def __format__(self, spec):
        spec = spec or "g"
        return f"{format(self.value, spec)} +/- {format(self.sigma, spec)}"

    def __str__(self):
        return format(self, "")


def _coerce(x) -> UncertainValue:
    return x if isinstance(x, UncertainValue) else UncertainValue(float(x), 0.0)


def combine_quadrature(terms: Iterable[UncertainValue]) -> UncertainValue:
    """Sum of independent terms; sigmas add in quadrature.  Empty input gives 0 +/- 0."""
    terms = [_coerce(t) for t in terms]
    value = math.fsum(t.value for t in terms)
    sigma = math.sqrt(math.fsum(t.sigma ** 2 for t in terms))
    return UncertainValue(value, sigma)


def combine_linear(terms: Iterable[UncertainValue]) -> UncertainValue:
    """Sum of terms with sigmas added linearly (fully correlated, worst case)."""
    terms = [_coerce(t) for t in terms]
    return UncertainValue(math.fsum(t.value for t in terms), math.fsum(t.sigma for t in terms))


@dataclass(frozen=True)
class PhysicalConstants:
    """Reference constants (CODATA values as shipped with scipy).

    ``Z`` is the nuclear charge.  The electron/proton mass ratio enters only
    through the reduced-mass factor of transition frequencies and rates.
    """

    alpha: float = _sc.fine_structure
    rydberg_frequency: float = _sc.physical_constants["Rydberg constant times c in Hz"][0]
    electron_proton_mass_ratio: float = _sc.m_e / _sc.m_p
    Z: int = 1
    # atomic unit of time hbar/E_h in s
    au_time: float = field(default=_sc.physical_constants["atomic unit of time"][0])

    def __post_init__(self):
        if self.Z < 1 or int(self.Z) != self.Z:
            raise ValueError(f"Z must be a positive integer, got {self.Z!r}")
        if not (0.0 < self.alpha < 1.0):
            raise ValueError(f"alpha out of range: {self.alpha!r}")

    @property
    def z_alpha_squared(self) -> float:
        return (self.Z * self.alpha) ** 2

    @property
    def reduced_mass_factor(self) -> float:
        """mu/m_e = 1/(1 + m_e/m_p)."""
        return 1.0 / (1.0 + self.electron_proton_mass_ratio)

    @property
    def speed_of_light_au(self) -> float:
        return 1.0 / self.alpha

    def replace(self, **changes) -> "PhysicalConstants":
        from dataclasses import replace

        return replace(self, **changes)


DEFAULT_CONSTANTS = PhysicalConstants()

# E_h / (a0^2 * (hbar/E_h)) expressed in W/cm^2
_AU_INTENSITY_WCM2 = (
    _sc.physical_constants["Hartree energy"][0]
    / (_sc.physical_constants["Bohr radius"][0] ** 2 * _sc.physical_constants["atomic unit of time"][0])
    * 1e-4
)


def angular_to_khz(x):
    """Angular rate in s^-1 to ordinary frequency in kHz."""
    return x / (2.0 * math.pi * 1e3)


def khz_to_angular(x):
    """Ordinary frequency in kHz to angular rate in s^-1."""
    return x * (2.0 * math.pi * 1e3)


def au_rate_to_angular(x, constants: PhysicalConstants = DEFAULT_CONSTANTS):
    """Atomic units of energy/frequency (E_h/hbar) to s^-1."""
    return x / constants.au_time


def angular_to_au_rate(x, constants: PhysicalConstants = DEFAULT_CONSTANTS):
    return x * constants.au_time


def au_intensity_to_wcm2(x):
    """Intensity in atomic flux units E_h/(a0^2 t0) to W/cm^2.

    In these units a field of amplitude E0 (a.u.) carries ``I = E0**2 / (8 pi alpha)``.
    """
    return x * _AU_INTENSITY_WCM2


def wcm2_to_au_intensity(x):
    return x / _AU_INTENSITY_WCM2

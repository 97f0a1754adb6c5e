"""Second-order AC Stark shift of a hydrogenic level in a linearly polarised laser.

    E_AC = 2 pi alpha I { <a| z (E_a - H + w)^-1 z |a> + <a| z (E_a - H - w)^-1 z |a> }

with the intermediate sum running over a Sturmian pseudo-spectrum, so that
the continuum is included.  ``I`` is in atomic flux units; for w -> 0 the
bracket is minus the static dipole polarisability.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .constants import DEFAULT_CONSTANTS, PhysicalConstants
from .hydrogen import AtomicLevel, angular_factor_z, build_radial_basis, hydrogen_radial, project_radial

__all__ = ["ResonanceError", "StarkShiftResult", "ac_stark_shift", "polarizability", "photon_number_scaling"]

RESONANCE_TOLERANCE = 1e-8
FLAG_TOLERANCE = 1e-3


class ResonanceError(ArithmeticError):
    """The laser frequency hits an intermediate pseudo-state excitation energy."""


@dataclass(frozen=True)
class StarkShiftResult:
    shift: float
    bracket: float
    plus_term: float
    minus_term: float
    intensity: float
    omega: float
    resonant_denominator_flags: tuple = field(default=())


def _channels(state: AtomicLevel, basis_size: int, scale: float | None):
    """(transition energies, |<a|z|b>|^2) for every dipole-allowed pseudo-state b."""
    scale = state.Z / state.n if scale is None else scale
    out = []
    for lp in (state.l - 1, state.l + 1):
        if lp < 0:
            continue
        basis = build_radial_basis(lp, basis_size, scale, state.Z)
        src = project_radial(basis, lambda r: r * r * hydrogen_radial(state.n, state.l, r, state.Z, with_exp=False),
                             state.Z / state.n)
        amp = basis.project(src) * angular_factor_z(state.l, lp)
        out.append((lp, basis.energies - state.energy, amp ** 2))
    return out


def ac_stark_shift(state: AtomicLevel, omega: float, intensity: float = 1.0, basis_size: int = 60,
                   scale: float | None = None, constants: PhysicalConstants = DEFAULT_CONSTANTS) -> StarkShiftResult:
    """AC Stark shift (hartree) at laser frequency ``omega`` (hartree) and intensity (atomic units).

    Raises
    ------
    ResonanceError
        If some |E_a - E_b +/- omega| falls below 1e-8 hartree.
    """
    plus = minus = 0.0
    flags = []
    for lp, w, z2 in _channels(state, basis_size, scale):
        for sign in (+1.0, -1.0):
            denom = -w + sign * omega
            near = np.abs(denom) < FLAG_TOLERANCE
            hit = np.abs(denom) < RESONANCE_TOLERANCE
            if np.any(hit & (z2 > 0)):
                i = int(np.flatnonzero(hit)[0])
                raise ResonanceError(
                    f"omega={omega!r} is resonant with pseudo-state l={lp}, index {i}, "
                    f"excitation energy {w[i]!r} hartree")
            flags.extend((lp, int(i), float(w[i])) for i in np.flatnonzero(near))
            term = float(np.sum(z2 / denom))
            if sign > 0:
                plus += term
            else:
                minus += term
    bracket = plus + minus
    shift = 2.0 * math.pi * constants.alpha * intensity * bracket
    return StarkShiftResult(shift, bracket, plus, minus, intensity, omega, tuple(sorted(set(flags))))


def polarizability(state: AtomicLevel, omega: float = 0.0, **kwargs) -> float:
    """Dynamic dipole polarisability alpha(omega) = -bracket in atomic units."""
    return -ac_stark_shift(state, omega, 1.0, **kwargs).bracket


def photon_number_scaling(n_photons: int, volume: float, omega: float = 1.0):
    """Split the one-photon coupling sum into the stimulated and spontaneous parts.

    Returns ``(stimulated, remainder)`` where ``stimulated = n w / (2V)`` is the
    intensity-carrying piece and ``remainder = w / (2V)`` is the part without
    the photon-number factor, which vanishes as V -> inf at fixed n/V.
    """
    if n_photons < 0:
        raise ValueError("photon number must be non-negative")
    if not volume > 0:
        raise ValueError("volume must be positive")
    field_sq = omega / (2.0 * volume)
    return n_photons * field_sq, field_sq

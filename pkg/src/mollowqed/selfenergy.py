"""Nonrelativistic (dipole) self-energy of bare hydrogenic states.

The second-order shift from one virtual transverse photon,

    E(K) = (2 alpha / 3 pi) int_0^K dk k^3 <a| x_i (E_a - H - k)^-1 x_i |a>,

diverges like K^3.  Expanding the k^3-weighted resolvent for large k gives

    k^3 P(k) = -<r^2> k^2 + (3/2) k - <p^2> + g(k),
    g(k)      = sum_b w_b^3 |<a|r|b>|^2 / (k + w_b),      w_b = E_b - E_a,

so removing the three polynomial terms leaves g(k) ~ D/k with
D = sum_b w_b^3 |<a|r|b>|^2 = 2 pi Z |psi_a(0)|^2.  The log-divergent rest
defines the Bethe logarithm ln k0 = sum_b w_b^3 |r_ab|^2 ln(w_b/Ry) / D.

Numerically g(k) is evaluated through the sum-rule-equivalent velocity form
(small k) and acceleration form (large k), each in a Coulomb-Sturmian basis
whose exponent follows the resolvent energy E_a - k.  Both forms are free of
the catastrophic cancellation the bare length form suffers at large k.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import quad
from scipy.special import eval_genlaguerre

from .constants import DEFAULT_CONSTANTS, PhysicalConstants
from .hydrogen import AtomicLevel, build_radial_basis, hydrogen_radial, project_radial

__all__ = [
    "SelfEnergyResult",
    "self_energy_sum",
    "self_energy_integrand",
    "bethe_log",
    "richardson_extrapolate",
    "discrete_to_continuum_weight",
    "transverse_angular_average",
    "solid_angle_integral",
    "photon_phase_space_weight",
]

# basis exponent relative to sqrt(2 (k - E_a)); larger values converge faster
_SCALE_FACTOR = 2.0
# minimum cutoff (in units of Z^2 hartree) for the asymptotic expansion to hold
_ASYMPTOTIC_K = 50.0


@dataclass(frozen=True)
class SelfEnergyResult:
    """Self-energy pieces for one state at cutoff ``cutoff`` (atomic units).

    ``raw_integral`` is the unsubtracted (2 alpha/3 pi) int_0^K k^3 P(k) dk and
    ``raw_asymptote`` its large-K polynomial-plus-log form.  ``subtracted_value``
    is the subtracted integral (2 alpha/3 pi) int_0^K g(k) dk, which still grows
    like D ln K; ``finite_part`` removes that logarithm and is K-independent.
    """

    state: AtomicLevel
    cutoff: float
    basis_size: int
    raw_integral: float
    raw_asymptote: float
    subtracted_value: float
    finite_part: float
    bethe_log: float
    bethe_log_at_cutoff: float
    acceleration_sum: float
    low_confidence: bool
    basis_size_ladder: tuple = field(default=())


class _SState:
    """Sources and sum rules of an nS reference state."""

    def __init__(self, state: AtomicLevel):
        if state.l != 0:
            raise NotImplementedError("self-energy is implemented for S states only")
        if state.n > 2:
            # lower-lying nP levels would need a principal-value treatment
            raise NotImplementedError("self-energy is implemented for 1S and 2S only")
        self.n, self.Z = state.n, state.Z
        self.energy = -self.Z ** 2 / (2.0 * self.n ** 2)
        self.decay = self.Z / self.n
        self.r2 = self.n ** 2 * (5 * self.n ** 2 + 1) / (2.0 * self.Z ** 2)
        self.p2 = self.Z ** 2 / self.n ** 2
        self.trk = 1.5
        self.acceleration_sum = 2.0 * self.Z ** 4 / self.n ** 3

    def radial(self, r):
        return hydrogen_radial(self.n, 0, r, self.Z, with_exp=False)

    def radial_derivative(self, r):
        n, Z = self.n, self.Z
        rho = 2.0 * Z * r / n
        lag = eval_genlaguerre(n - 1, 1, rho)
        dlag = -eval_genlaguerre(n - 2, 2, rho) if n >= 2 else 0.0 * rho
        norm = hydrogen_radial(n, 0, 0.0, Z, with_exp=False) / eval_genlaguerre(n - 1, 1, 0.0)
        return norm * (2.0 * Z / n) * (dlag - 0.5 * lag)

    def spectrum(self, k: float, size: int, kinds=("r", "v", "a"), scale: float | None = None):
        """Transition energies and source amplitudes in a basis adapted to photon energy k."""
        lam = _SCALE_FACTOR * math.sqrt(2.0 * (k - self.energy)) if scale is None else scale
        basis = build_radial_basis(1, size, lam, self.Z)
        w = basis.energies - self.energy
        out = {"w": w}
        if "r" in kinds:
            out["r"] = basis.project(project_radial(basis, lambda r: r * r * self.radial(r), self.decay))
        if "v" in kinds:
            out["v"] = basis.project(project_radial(basis, lambda r: -r * self.radial_derivative(r), self.decay))
        if "a" in kinds:
            out["a"] = basis.project(project_radial(basis, lambda r: self.Z * self.radial(r) / r, self.decay))
        return out


def _g_velocity(st: _SState, k: float, size: int) -> float:
    s = st.spectrum(k, size, ("v",))
    return float(np.sum(s["v"] ** 2 * s["w"] / (k + s["w"])))


def _h_acceleration(st: _SState, k: float, size: int) -> float:
    """D/k - g(k) = sum_b |<a|grad V|b>|^2 / (k (k + w_b)), positive."""
    s = st.spectrum(k, size, ("a",))
    return float(np.sum(s["a"] ** 2 / (k + s["w"])) / k)


def _raw_integrand(spec, k: float) -> float:
    return float(-(k ** 3) * np.sum(spec["r"] ** 2 / (k + spec["w"])))


def self_energy_integrand(state: AtomicLevel, k, basis_size: int = 60, subtracted: bool = False):
    """k^3 P(k) (raw, length gauge) or g(k) (subtracted) on an array of photon energies."""
    st = _SState(state)
    k = np.atleast_1d(np.asarray(k, dtype=float))
    if not subtracted:
        fixed = st.spectrum(0.0, basis_size, ("r",), scale=st.decay)
        return np.array([_raw_integrand(fixed, kk) for kk in k])
    split = 2.0 * abs(st.energy)
    return np.array([_g_velocity(st, kk, basis_size) if kk < split
                     else st.acceleration_sum / kk - _h_acceleration(st, kk, basis_size) for kk in k])


def _quad(f, a, b):
    val, _err = quad(f, a, b, limit=200, epsabs=1e-13, epsrel=1e-11)
    return val


def _tail(st, size, k0):
    """int_k0^inf (D/k - g) dk via k = k0/u^2."""
    def f(u):
        if u <= 0.0:
            return 0.0
        k = k0 / (u * u)
        return _h_acceleration(st, k, size) * 2.0 * k0 / u ** 3
    return _quad(f, 0.0, 1.0)


def self_energy_sum(state: AtomicLevel, cutoff: float = 100.0, basis_size: int = 60, channels=(1,),
                    constants: PhysicalConstants = DEFAULT_CONSTANTS) -> SelfEnergyResult:
    """Evaluate the dipole self-energy integral of an S state up to photon energy ``cutoff``.

    Parameters
    ----------
    state : AtomicLevel
        Reference state (1S or 2S).
    cutoff : float
        Photon-energy cutoff K in hartree.
    basis_size : int
        Number of Sturmians per photon energy.
    channels : iterable of int
        Orbital angular momenta of intermediate states.  Without l = 1 the S
        state has no dipole coupling and every piece is zero.

    Returns
    -------
    SelfEnergyResult
        The Bethe log is in the usual Rydberg units, ln(k0 / (Z^2 Ry)).
    """
    if not cutoff > 0:
        raise ValueError("cutoff must be positive")
    prefactor = 2.0 * constants.alpha / (3.0 * math.pi)
    if 1 not in tuple(channels):
        return SelfEnergyResult(state, cutoff, basis_size, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0,
                                cutoff < _ASYMPTOTIC_K * state.Z ** 2)
    st = _SState(state)
    K = float(cutoff)
    D = st.acceleration_sum
    split = min(2.0 * abs(st.energy), K)

    low = _quad(lambda k: _g_velocity(st, k, basis_size), 0.0, split)
    mid = _quad(lambda k: _h_acceleration(st, k, basis_size), split, K) if K > split else 0.0
    tail = _tail(st, basis_size, K)
    # int_0^K g = low + D ln(K/split) - mid
    g_integral = low + D * math.log(K / split) - mid
    rydberg_shift = math.log(2.0 / st.Z ** 2)
    bethe_full = math.log(K) - (g_integral + (-tail)) / D + rydberg_shift
    bethe_cut = math.log(K) - g_integral / D + rydberg_shift

    # r|a> lies in the span of Sturmians with the state's own exponent
    fixed = st.spectrum(0.0, basis_size, ("r",), scale=st.decay)
    raw = _quad(lambda k: _raw_integrand(fixed, k), 0.0, K)
    asym = -st.r2 * K ** 3 / 3.0 + 0.5 * st.trk * K ** 2 - st.p2 * K + D * (math.log(K) - (bethe_full - rydberg_shift))

    return SelfEnergyResult(
        state=state,
        cutoff=K,
        basis_size=basis_size,
        raw_integral=prefactor * raw,
        raw_asymptote=prefactor * asym,
        subtracted_value=prefactor * g_integral,
        finite_part=-prefactor * D * (bethe_full - rydberg_shift),
        bethe_log=bethe_full,
        bethe_log_at_cutoff=bethe_cut,
        acceleration_sum=D,
        low_confidence=K < _ASYMPTOTIC_K * st.Z ** 2,
    )


def richardson_extrapolate(sizes, values, order: int = 2) -> float:
    """Extrapolate values(N) to N -> inf assuming a polynomial in 1/N."""
    x = 1.0 / np.asarray(sizes, dtype=float)
    y = np.asarray(values, dtype=float)
    order = min(order, len(x) - 1)
    coeffs = np.polyfit(x, y, order)
    return float(coeffs[-1])


def bethe_log(state: AtomicLevel, sizes=(40, 60, 80, 100), cutoff: float = 100.0,
              constants: PhysicalConstants = DEFAULT_CONSTANTS) -> SelfEnergyResult:
    """Bethe logarithm from a basis-size ladder with Richardson extrapolation in 1/N.

    Returns the result of the largest basis with ``bethe_log`` replaced by the
    extrapolated value and ``basis_size_ladder`` holding the (N, ln k0) pairs.
    """
    results = [self_energy_sum(state, cutoff, n, constants=constants) for n in sizes]
    ladder = tuple((r.basis_size, r.bethe_log) for r in results)
    extrapolated = richardson_extrapolate([n for n, _ in ladder], [v for _, v in ladder])
    last = results[-1]
    D = last.acceleration_sum
    prefactor = 2.0 * constants.alpha / (3.0 * math.pi)
    rydberg_shift = math.log(2.0 / state.Z ** 2)
    from dataclasses import replace

    return replace(last, bethe_log=extrapolated, finite_part=-prefactor * D * (extrapolated - rydberg_shift),
                   basis_size_ladder=ladder)


# ---------------------------------------------------------------------------
# mode counting and angular averages
# ---------------------------------------------------------------------------


def discrete_to_continuum_weight(volume: float, mode_count: float = 1.0) -> float:
    """k-space volume occupied by ``mode_count`` box modes: mode_count (2 pi)^3 / V.

    With this weight, sum_k f(k)/V equals sum_k weight f(k) / (2 pi)^3, which
    becomes int d^3k/(2 pi)^3 f(k) as V -> inf.
    """
    if not volume > 0:
        raise ValueError("volume must be positive")
    return mode_count * (2.0 * math.pi) ** 3 / volume


def _sphere_rule(n_theta: int = 16, n_phi: int = 32):
    x, wx = np.polynomial.legendre.leggauss(n_theta)
    phi = 2.0 * math.pi * np.arange(n_phi) / n_phi
    st = np.sqrt(1.0 - x ** 2)
    kx = np.outer(st, np.cos(phi)).ravel()
    ky = np.outer(st, np.sin(phi)).ravel()
    kz = np.repeat(x, n_phi)
    w = np.repeat(wx, n_phi) * (2.0 * math.pi / n_phi)
    return np.stack([kx, ky, kz], axis=1), w


def solid_angle_integral(f, n_theta: int = 16, n_phi: int = 32) -> float:
    """Integrate f(unit_vector) over the unit sphere."""
    k, w = _sphere_rule(n_theta, n_phi)
    vals = np.array([f(v) for v in k], dtype=float)
    return float(np.sum(w * vals))


def transverse_angular_average(x) -> float:
    """Average of delta^T_ij(k) x_i x_j over photon directions; equals (2/3)|x|^2."""
    x = np.asarray(x, dtype=complex)

    def f(khat):
        proj = x - khat * np.dot(khat, x)
        return float(np.real(np.vdot(proj, proj)))

    return solid_angle_integral(f) / (4.0 * math.pi)


def photon_phase_space_weight(k):
    """k^3 weight per unit dk after the angular and polarisation sums."""
    return np.asarray(k, dtype=float) ** 3

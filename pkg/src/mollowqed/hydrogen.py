"""Nonrelativistic hydrogenic bound states, dipole matrix elements and a
Coulomb-Sturmian pseudo-state basis.

Energies and lengths are in atomic units (infinite nuclear mass) unless a
function says otherwise.  The reduced-mass factor is applied only where a
physical frequency or rate in s^-1 is produced.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
from scipy.special import eval_genlaguerre, gammaln, roots_laguerre

from .constants import DEFAULT_CONSTANTS, PhysicalConstants, UncertainValue

__all__ = [
    "AtomicLevel",
    "level",
    "level_energy",
    "transition_frequency",
    "radial_integral",
    "angular_factor_z",
    "dipole_matrix_element",
    "reduced_dipole_squared",
    "einstein_a",
    "RadialBasis",
    "BasisError",
    "build_radial_basis",
    "basis_dipole_matrix",
    "project_radial",
    "hydrogen_radial",
]

_L_LETTERS = "SPDFGHIK"


class BasisError(RuntimeError):
    """Diagonalisation of a pseudo-state basis failed or is ill-conditioned."""


@dataclass(frozen=True)
class AtomicLevel:
    """Hydrogenic level (n, l, j).  ``j`` may be None for an l-only label."""

    n: int
    l: int
    j: float | None = None
    lamb_shift: UncertainValue | None = field(default=None, compare=False)
    Z: int = 1

    def __post_init__(self):
        if self.n < 1 or int(self.n) != self.n:
            raise ValueError(f"n must be a positive integer, got {self.n!r}")
        if not (0 <= self.l < self.n):
            raise ValueError(f"need 0 <= l < n, got n={self.n}, l={self.l}")
        if self.j is not None:
            if abs(self.j - (self.l + 0.5)) > 1e-12 and abs(self.j - (self.l - 0.5)) > 1e-12:
                raise ValueError(f"j must be l +/- 1/2, got l={self.l}, j={self.j}")
            if self.j < 0.5:
                raise ValueError(f"j must be >= 1/2, got {self.j}")

    @property
    def energy(self) -> float:
        return level_energy(self)

    @property
    def label(self) -> str:
        base = f"{self.n}{_L_LETTERS[self.l]}"
        if self.j is None or self.l == 0:
            return base
        return f"{base}_{int(round(2 * self.j))}/2"

    def __str__(self):
        return self.label


def level(label: str, Z: int = 1) -> AtomicLevel:
    """Parse labels such as ``"1S"``, ``"3P"``, ``"3P_1/2"``, ``"3P3/2"``."""
    m = re.fullmatch(r"\s*(\d+)([SPDFGHIK])(?:_?(\d)/2)?\s*", label.upper())
    if m is None:
        raise ValueError(f"cannot parse level label {label!r}")
    n, l = int(m.group(1)), _L_LETTERS.index(m.group(2))
    j = None
    if m.group(3) is not None:
        j = int(m.group(3)) / 2
    elif l == 0:
        j = 0.5
    return AtomicLevel(n, l, j, Z=Z)


def level_energy(lvl: AtomicLevel) -> float:
    """Coulomb energy -Z^2/(2 n^2) in hartree."""
    return -lvl.Z ** 2 / (2.0 * lvl.n ** 2)


def transition_frequency(a: AtomicLevel, b: AtomicLevel, constants: PhysicalConstants = DEFAULT_CONSTANTS,
                         reduced_mass: bool = True) -> float:
    """Gross-structure angular frequency (s^-1) for a -> b; positive if n_b > n_a."""
    Z = constants.Z
    f = constants.rydberg_frequency * Z ** 2 * (1.0 / a.n ** 2 - 1.0 / b.n ** 2)
    if reduced_mass:
        f *= constants.reduced_mass_factor
    return 2.0 * math.pi * f


def hydrogen_radial(n: int, l: int, r, Z: int = 1, with_exp: bool = True):
    """Normalised radial function R_nl(r), int R^2 r^2 dr = 1."""
    r = np.asarray(r, dtype=float)
    rho = 2.0 * Z * r / n
    norm = math.sqrt((2.0 * Z / n) ** 3 * math.exp(gammaln(n - l) - gammaln(n + l + 1)) / (2.0 * n))
    out = norm * rho ** l * eval_genlaguerre(n - l - 1, 2 * l + 1, rho)
    if with_exp:
        out = out * np.exp(-rho / 2.0)
    return out


def radial_integral(n1: int, l1: int, n2: int, l2: int, power: int = 1, Z: int = 1) -> float:
    """Exact int_0^inf R_n1l1 R_n2l2 r^(2+power) dr.

    The integrand is a polynomial times exp(-beta r), so Gauss-Laguerre
    quadrature with enough nodes is exact up to rounding.
    """
    beta = Z / n1 + Z / n2
    degree = (n1 - 1) + (n2 - 1) + 2 + power
    if degree < 0:
        raise ValueError("integrand singular at the origin")
    t, w = roots_laguerre(degree // 2 + 2)
    r = t / beta
    f = hydrogen_radial(n1, l1, r, Z, with_exp=False) * hydrogen_radial(n2, l2, r, Z, with_exp=False)
    return float(np.sum(w * f * r ** (2 + power)) / beta)


def angular_factor_z(l1: int, l2: int, m: int = 0) -> float:
    """<l1 m| cos(theta) |l2 m> for |l1 - l2| = 1."""
    if l2 == l1 + 1:
        l = l1
    elif l1 == l2 + 1:
        l = l2
    else:
        return 0.0
    return math.sqrt(((l + 1) ** 2 - m ** 2) / ((2 * l + 1) * (2 * l + 3)))


def dipole_matrix_element(a: AtomicLevel, b: AtomicLevel, m: int = 0) -> float:
    """<a, m| z |b, m> in bohr (linear polarisation, spinless orbitals)."""
    if a.Z != b.Z:
        raise ValueError("levels belong to different nuclei")
    ang = angular_factor_z(a.l, b.l, m)
    if ang == 0.0:
        return 0.0
    return ang * radial_integral(a.n, a.l, b.n, b.l, 1, a.Z)


def reduced_dipole_squared(upper: AtomicLevel, lower: AtomicLevel) -> float:
    """sum over final m of |<lower|r|upper m>|^2, which is the same for every initial m."""
    if abs(upper.l - lower.l) != 1:
        return 0.0
    r = radial_integral(upper.n, upper.l, lower.n, lower.l, 1, upper.Z)
    return max(upper.l, lower.l) / (2 * upper.l + 1) * r * r


def einstein_a(upper: AtomicLevel, lower: AtomicLevel, constants: PhysicalConstants = DEFAULT_CONSTANTS,
               reduced_mass: bool = True) -> float:
    """Spontaneous E1 rate upper -> lower in s^-1.

    A = (4/3) alpha^3 omega^3 |<lower|r|upper>|^2 in atomic units, summed over
    final and averaged over initial magnetic sublevels.  With the reduced mass
    omega scales by mu and the squared dipole by 1/mu^2, so A scales by mu.
    """
    if upper.energy <= lower.energy:
        raise ValueError(f"{upper} is not above {lower}")
    d2 = reduced_dipole_squared(upper, lower)
    if d2 == 0.0:
        return 0.0
    omega = upper.energy - lower.energy
    rate = 4.0 / 3.0 * constants.alpha ** 3 * omega ** 3 * d2 / constants.au_time
    if reduced_mass:
        rate *= constants.reduced_mass_factor
    return rate


# ---------------------------------------------------------------------------
# Coulomb-Sturmian basis
#
# phi_k(r) = x^(l+1) exp(-x/2) L_k^(2l+1)(x) / sqrt(h_k),  x = 2*scale*r,
# h_k = Gamma(k+2l+2)/k!.  Overlap and kinetic matrices are tridiagonal and
# the Coulomb matrix diagonal, all in closed form.
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class RadialBasis:
    """Pseudo-spectrum of the radial Coulomb Hamiltonian for one l.

    ``vectors[:, i]`` holds the expansion of pseudo-state i in the normalised
    Sturmian functions; the columns are orthonormal with respect to ``overlap``.
    """

    l: int
    size: int
    scale: float
    Z: int
    energies: np.ndarray
    vectors: np.ndarray
    overlap: np.ndarray

    def __len__(self):
        return self.size

    def orthonormality_residual(self) -> float:
        g = self.vectors.T @ self.overlap @ self.vectors
        return float(np.max(np.abs(g - np.eye(self.size))))

    def project(self, coefficients) -> np.ndarray:
        """Pseudo-state amplitudes of a function given by its projections onto phi_k."""
        return self.vectors.T @ coefficients


def _sturmian_matrices(l: int, size: int, scale: float, Z: int):
    a = 2 * l + 1
    k = np.arange(size, dtype=float)
    off = -np.sqrt((k[:-1] + 1.0) * (k[:-1] + a + 1.0))
    o = np.diag(2 * k + a + 1.0) + np.diag(off, 1) + np.diag(off, -1)
    overlap = o / (2.0 * scale)
    # T phi_k = (scale*(k+l+1)/r - scale^2/2) phi_k, and <phi|1/r|phi> = 1
    hamiltonian = np.diag(scale * (k + l + 1.0) - Z) - 0.25 * scale * o
    return hamiltonian, overlap


def build_radial_basis(l: int, size: int = 60, scale: float = 0.25, Z: int = 1) -> RadialBasis:
    """Diagonalise the radial Hamiltonian in ``size`` Sturmians of exponent ``scale``."""
    if size < 10:
        raise ValueError(f"basis size must be >= 10, got {size}")
    if not scale > 0:
        raise ValueError(f"scale must be positive, got {scale}")
    if l < 0:
        raise ValueError("l must be >= 0")
    h, s = _sturmian_matrices(l, size, scale, Z)
    try:
        energies, vectors = scipy.linalg.eigh(h, s)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise BasisError(f"diagonalisation failed for l={l}, N={size}, scale={scale}: {exc}") from exc
    if not np.all(np.isfinite(energies)):
        raise BasisError(f"non-finite eigenvalues for l={l}, N={size}, scale={scale}")
    return RadialBasis(l, size, float(scale), Z, energies, vectors, s)


def _laguerre_jacobi(size: int, a: int) -> np.ndarray:
    k = np.arange(size, dtype=float)
    off = -np.sqrt((k[:-1] + 1.0) * (k[:-1] + a + 1.0))
    return np.diag(2 * k + a + 1.0) + np.diag(off, 1) + np.diag(off, -1)


def basis_dipole_matrix(lower: RadialBasis, upper: RadialBasis) -> np.ndarray:
    """Radial matrix <pseudo_i^(l)| r |pseudo_j^(l+1)> between two bases of equal scale."""
    if upper.l != lower.l + 1:
        raise ValueError("bases must have l and l+1")
    if abs(upper.scale - lower.scale) > 1e-14 * lower.scale or upper.Z != lower.Z:
        raise ValueError("bases must share scale and Z")
    n_lo, n_up, lam, a = lower.size, upper.size, lower.scale, 2 * lower.l + 1
    m = max(n_lo, n_up) + 4
    # x^3 in the orthonormal L^(a) polynomial basis
    x3 = np.linalg.matrix_power(_laguerre_jacobi(m, a), 3)[:n_lo, :m]
    # L_m^(a+2) = sum_{j<=m} (m-j+1) L_j^(a)
    j = np.arange(m)
    t = np.zeros((m, n_up))
    for col in range(n_up):
        jj = j[: col + 1]
        t[: col + 1, col] = (col - jj + 1) * np.exp(
            0.5 * (gammaln(jj + a + 1) - gammaln(jj + 1)) - 0.5 * (gammaln(col + a + 3) - gammaln(col + 1))
        )
    d = x3 @ t / (2.0 * lam) ** 2
    return lower.vectors.T @ d @ upper.vectors


def project_radial(basis: RadialBasis, func, decay: float, extra_nodes: int = 40) -> np.ndarray:
    """Projections <phi_k | f> = int phi_k(r) f(r) dr.

    ``func(r)`` must return f(r) * exp(decay * r), a function of at most
    polynomial growth, so Gauss-Laguerre in t = (scale + decay) r applies.
    """
    beta = basis.scale + decay
    t, w = roots_laguerre(basis.size + extra_nodes)
    r = t / beta
    x = 2.0 * basis.scale * r
    a = 2 * basis.l + 1
    k = np.arange(basis.size)
    lognorm = 0.5 * (gammaln(k + a + 1) - gammaln(k + 1))
    phi = np.array([eval_genlaguerre(kk, a, x) for kk in k]) * np.exp(-lognorm)[:, None] * x ** (basis.l + 1)
    return (phi * (np.asarray(func(r)) * w)).sum(axis=1) / beta

"""Master-equation fluorescence spectra of the driven 1S-3P (and 2S) system.

Everything is solved in the frame rotating at the laser frequency with the
rotating-wave drive H = -Delta |3P><3P| + (Omega/2)(|1S><3P| + h.c.), and
internally in units of the reference width Gamma.  Density matrices are
vectorised row-major, so vec(A X B) = kron(A, B.T) vec(X).

The incoherent spectrum follows from the quantum regression theorem,

    S(nu) = Re u . (i nu - L)^-1 w,   u = vec(sigma_+^T),
                                      w = vec(sigma_- rho) - <sigma_-> vec(rho),

with nu the emitted frequency minus the laser frequency.  Since tr w = 0 the
rank-one term |rho><1| can be added to the resolvent without changing the
result, which removes the singularity of (i nu - L) at nu = 0.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg as sla

from .constants import angular_to_khz
from .dressed import A_3P_2S, DriveConfig, generalized_rabi

__all__ = [
    "GAMMA_2S_DEFAULT",
    "DecayChannel",
    "LevelScheme",
    "DensityOperator",
    "SpectrumTrace",
    "PeakEstimate",
    "SteadyStateError",
    "ResolventError",
    "PeakRefinementError",
    "PrecisionBudgetError",
    "lindblad_generator",
    "build_liouvillian",
    "null_state",
    "steady_state",
    "incoherent_spectrum",
    "spectrum_derivatives",
    "refine_peak",
    "find_peaks",
    "multi_level_sideband_shift",
    "power_ratio",
]

# 2S -> 1S rate (s^-1), two-photon decay scale; only needs to be small and nonzero
GAMMA_2S_DEFAULT = 8.229
GROUND, EXCITED, METASTABLE = 0, 1, 2
LABELS = ("1S", "3P", "2S")


class SteadyStateError(RuntimeError):
    pass


class ResolventError(RuntimeError):
    pass


class PeakRefinementError(RuntimeError):
    def __init__(self, message, trajectory):
        lines = "\n".join(f"  {i:3d}  nu={x:.17g}  dS={d1:.6e}  d2S={d2:.6e}" for i, (x, d1, d2) in enumerate(trajectory))
        super().__init__(f"{message}\ntrajectory (offsets in Gamma):\n{lines}")
        self.trajectory = list(trajectory)


class PrecisionBudgetError(RuntimeError):
    pass


@dataclass(frozen=True)
class DecayChannel:
    upper: int
    lower: int
    rate: float  # s^-1

    def __post_init__(self):
        if not self.rate >= 0:
            raise ValueError(f"decay rate must be >= 0, got {self.rate!r}")
        if self.upper == self.lower:
            raise ValueError("decay channel connects a level to itself")


@dataclass(frozen=True)
class LevelScheme:
    """Levels ordered (1S, 3P[, 2S]); the drive couples 1S and 3P only."""

    drive: DriveConfig
    channels: tuple

    def __post_init__(self):
        object.__setattr__(self, "channels", tuple(self.channels))
        d = self.dimension
        if d not in (2, 3):
            raise ValueError(f"dimension must be 2 or 3, got {d}")
        for c in self.channels:
            if not (0 <= c.upper < d and 0 <= c.lower < d):
                raise ValueError(f"channel {c} outside a {d}-level scheme")

    @property
    def dimension(self) -> int:
        return 1 + max([1] + [max(c.upper, c.lower) for c in self.channels])

    @property
    def levels(self) -> tuple:
        return LABELS[: self.dimension]

    @classmethod
    def two_level(cls, drive: DriveConfig, gamma: float | None = None) -> "LevelScheme":
        g = drive.gamma if gamma is None else gamma
        return cls(drive, (DecayChannel(EXCITED, GROUND, g),))

    @classmethod
    def three_level(cls, drive: DriveConfig, gamma_3p_2s: float = A_3P_2S,
                    gamma_2s: float = GAMMA_2S_DEFAULT) -> "LevelScheme":
        return cls(drive, (
            DecayChannel(EXCITED, GROUND, drive.gamma),
            DecayChannel(EXCITED, METASTABLE, gamma_3p_2s),
            DecayChannel(METASTABLE, GROUND, gamma_2s),
        ))

    def rate(self, upper: int, lower: int) -> float:
        return math.fsum(c.rate for c in self.channels if (c.upper, c.lower) == (upper, lower))

    def hamiltonian(self) -> np.ndarray:
        """Rotating-frame Hamiltonian in units of Gamma."""
        g = self.drive.gamma
        H = np.zeros((self.dimension,) * 2, complex)
        H[EXCITED, EXCITED] = -self.drive.detuning / g
        H[GROUND, EXCITED] = H[EXCITED, GROUND] = 0.5 * self.drive.rabi / g
        return H

    def jump_operators(self) -> list:
        d, g = self.dimension, self.drive.gamma
        out = []
        for c in self.channels:
            op = np.zeros((d, d))
            op[c.lower, c.upper] = math.sqrt(c.rate / g)
            out.append(op)
        return out

    def lowering(self) -> np.ndarray:
        """sigma_- on the driven 1S-3P line."""
        op = np.zeros((self.dimension,) * 2)
        op[GROUND, EXCITED] = 1.0
        return op


@dataclass(frozen=True)
class DensityOperator:
    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("density matrix must be square")
        if np.max(np.abs(m - m.conj().T)) > 1e-12:
            raise ValueError("density matrix is not Hermitian")
        if abs(np.trace(m) - 1) > 1e-12:
            raise ValueError(f"trace {np.trace(m).real!r} != 1")
        if np.linalg.eigvalsh(0.5 * (m + m.conj().T)).min() < -1e-10:
            raise ValueError("density matrix is not positive semidefinite")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]

    @property
    def populations(self) -> np.ndarray:
        return self.matrix.diagonal().real.copy()

    def expectation(self, op) -> complex:
        return complex(np.trace(np.asarray(op) @ self.matrix))


def lindblad_generator(H, jump_operators=()) -> np.ndarray:
    """Row-major generator of d rho/dt = -i[H, rho] + sum_c D[c] rho."""
    H = np.asarray(H, complex)
    d = H.shape[0]
    I = np.eye(d)
    L = -1j * (np.kron(H, I) - np.kron(I, H.T))
    for c in jump_operators:
        c = np.asarray(c)
        cdc = c.conj().T @ c
        L += np.kron(c, c.conj()) - 0.5 * np.kron(cdc, I) - 0.5 * np.kron(I, cdc.T)
    return L


def build_liouvillian(scheme: LevelScheme) -> np.ndarray:
    """Lindblad generator of ``scheme`` in units of Gamma."""
    return lindblad_generator(scheme.hamiltonian(), scheme.jump_operators())


def _trace_functional(d):
    return np.eye(d).reshape(-1)


def null_state(L: np.ndarray) -> DensityOperator:
    """Unique trace-one null vector of a Lindblad generator.

    Raises
    ------
    SteadyStateError
        If the kernel is more than one-dimensional.
    """
    d = int(round(math.sqrt(L.shape[0])))
    sv = np.linalg.svd(L, compute_uv=False)
    tol = 1e-13 * max(sv[0], 1.0)
    if np.sum(sv <= tol) > 1:
        raise SteadyStateError("steady state is not unique (degenerate kernel of L)")
    # the first population equation is redundant (trace preservation); replace it by tr rho = 1
    A = L.copy()
    A[0] = _trace_functional(d)
    b = np.zeros(d * d, complex)
    b[0] = 1.0
    rho = np.linalg.solve(A, b).reshape(d, d)
    rho = 0.5 * (rho + rho.conj().T)
    return DensityOperator(rho / np.trace(rho).real)


def steady_state(scheme: LevelScheme, liouvillian: np.ndarray | None = None) -> DensityOperator:
    """Steady state of ``scheme``; a populated 2S level needs gamma_2s > 0."""
    if scheme.dimension == 3 and scheme.rate(METASTABLE, GROUND) <= 0 and scheme.rate(EXCITED, METASTABLE) > 0:
        raise SteadyStateError("2S traps all population (dark steady state); set gamma_2s > 0")
    L = build_liouvillian(scheme) if liouvillian is None else liouvillian
    try:
        return null_state(L)
    except SteadyStateError as exc:
        raise SteadyStateError(f"{exc}; check that every level decays (gamma > 0, gamma_2s > 0)") from None


class _Resolvent:
    """S(nu) and its derivatives for one scheme; nu in units of Gamma."""

    def __init__(self, scheme: LevelScheme):
        self.scheme = scheme
        d = scheme.dimension
        self.L = build_liouvillian(scheme)
        self.rho = steady_state(scheme, self.L)
        sm = scheme.lowering()
        r = self.rho.matrix.reshape(-1)
        self.coherent = self.rho.expectation(sm)
        self.w = (sm @ self.rho.matrix).reshape(-1) - self.coherent * r
        self.u = sm.conj().T.T.reshape(-1)
        # K = L - |rho><1|, regular at nu = 0 on the trace-free subspace
        self.K = self.L - np.outer(r, _trace_functional(d))
        self.I = np.eye(d * d)
        self._eig = None

    def _lu(self, nu):
        M = 1j * nu * self.I - self.K
        lu = sla.lu_factor(M, check_finite=False)
        if np.min(np.abs(np.diag(lu[0]))) == 0:
            raise ResolventError(f"resolvent singular at nu = {nu!r} Gamma")
        return lu

    def derivatives(self, nu, order=2):
        """[S, S', S''] at nu; d^k/dnu^k (i nu - K)^-1 = k! (-i)^k (i nu - K)^-(k+1)."""
        lu = self._lu(nu)
        x = sla.lu_solve(lu, self.w, check_finite=False)
        out = [(self.u @ x).real]
        for k in range(1, order + 1):
            x = sla.lu_solve(lu, x, check_finite=False)
            out.append((math.factorial(k) * (-1j) ** k * (self.u @ x)).real)
        return out

    def direct(self, nus):
        return np.array([self.derivatives(nu, 0)[0] for nu in np.atleast_1d(nus)])

    def eigen(self, nus):
        if self._eig is None:
            lam, V = np.linalg.eig(self.K)
            self._eig = (lam, self.u @ V, np.linalg.solve(V, self.w))
        lam, a, b = self._eig
        nus = np.atleast_1d(np.asarray(nus, float))
        return ((a * b)[None, :] / (1j * nus[:, None] - lam[None, :])).sum(axis=1).real


@dataclass(frozen=True)
class SpectrumTrace:
    """Incoherent spectrum; offsets are angular rates (s^-1) from the laser."""

    offsets: np.ndarray
    intensities: np.ndarray
    scheme: LevelScheme
    method: str = "direct"
    grid: dict = field(default_factory=dict)

    def __post_init__(self):
        s = np.asarray(self.intensities, float)
        if s.size and s.min() < -1e-12 * max(s.max(), 0.0):
            raise ValueError(f"negative spectral density {s.min():.3e}")

    @property
    def offsets_gamma(self) -> np.ndarray:
        return np.asarray(self.offsets) / self.scheme.drive.gamma

    @property
    def offsets_khz(self) -> np.ndarray:
        return angular_to_khz(np.asarray(self.offsets))

    def to_csv(self, path=None) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["offset_gamma", "offset_khz", "intensity"])
        for g, k, s in zip(self.offsets_gamma, self.offsets_khz, self.intensities):
            w.writerow(["%.17g" % g, "%.17g" % k, "%.17g" % s])
        text = buf.getvalue()
        if path is not None:
            with open(path, "w", newline="") as f:
                f.write(text)
        return text


@dataclass(frozen=True)
class PeakEstimate:
    offset: float  # s^-1
    curvature: float  # d2S/dnu2 in units of Gamma^-2
    refinement_residual: float
    intensity: float
    iterations: int
    gamma: float

    @property
    def offset_gamma(self) -> float:
        return self.offset / self.gamma

    @property
    def offset_khz(self) -> float:
        return angular_to_khz(self.offset)


def _resolvent(scheme):
    return scheme if isinstance(scheme, _Resolvent) else _Resolvent(scheme)


def incoherent_spectrum(scheme: LevelScheme, offsets, method: str = "direct") -> SpectrumTrace:
    """Evaluate S at ``offsets`` (s^-1 from the laser) by direct solves or eigendecomposition."""
    res = _resolvent(scheme)
    offsets = np.asarray(offsets, float)
    nus = offsets / res.scheme.drive.gamma
    if method == "direct":
        s = res.direct(nus)
    elif method == "eigen":
        s = res.eigen(nus)
    else:
        raise ValueError(f"unknown method {method!r}")
    return SpectrumTrace(offsets, s, res.scheme, method)


def spectrum_derivatives(scheme: LevelScheme, offset: float):
    """(S, dS/dnu, d2S/dnu2) at ``offset`` (s^-1), derivatives per Gamma."""
    res = _resolvent(scheme)
    return tuple(res.derivatives(offset / res.scheme.drive.gamma))


def refine_peak(scheme: LevelScheme, seed: float, tol: float = 1e-10, max_iter: int = 50,
                max_step: float = 0.25) -> PeakEstimate:
    """Newton iteration on dS/dnu = 0 starting from ``seed`` (s^-1).

    Steps are bounded by ``max_step`` (units of Gamma), and taken uphill
    whenever the local curvature is not negative.
    """
    res = _resolvent(scheme)
    g = res.scheme.drive.gamma
    x = seed / g
    traj = []
    for it in range(1, max_iter + 1):
        s, d1, d2 = res.derivatives(x)
        traj.append((x, d1, d2))
        if d2 < 0:
            dx = -d1 / d2
        else:
            dx = math.copysign(max_step, d1)
        dx = max(-max_step, min(max_step, dx))
        x += dx
        if d2 < 0 and abs(dx) <= tol * max(abs(x), 1.0):
            s, d1, d2 = res.derivatives(x)
            resid = abs(d1) / math.sqrt(abs(s * d2)) if s * d2 != 0 else abs(d1)
            if d2 >= 0:
                break
            return PeakEstimate(x * g, d2, resid, s, it, g)
    raise PeakRefinementError(f"no converged maximum after {max_iter} iterations from seed {seed / g:.6g} Gamma", traj)


def find_peaks(scheme: LevelScheme, offsets=None) -> list:
    """Locate all spectral maxima: sample at the dressed-state seeds (or on ``offsets``), then refine."""
    res = _resolvent(scheme)
    g = res.scheme.drive.gamma
    if offsets is None:
        w = generalized_rabi(res.scheme.drive)
        seeds = [-w, 0.0, w]
    else:
        offsets = np.asarray(offsets, float)
        s = res.direct(offsets / g)
        idx = [i for i in range(1, len(s) - 1) if s[i] >= s[i - 1] and s[i] > s[i + 1]]
        seeds = [offsets[i] for i in idx]
    peaks = []
    for seed in seeds:
        p = refine_peak(res, seed)
        if offsets is not None and not (offsets[0] <= p.offset <= offsets[-1]):
            continue
        if all(abs(p.offset - q.offset) > 1e-6 * g for q in peaks):
            peaks.append(p)
    return sorted(peaks, key=lambda p: p.offset)


def multi_level_sideband_shift(reference2: LevelScheme, reference3: LevelScheme,
                               budget: float = 1e-8, return_peaks: bool = False):
    """Relative blue-sideband shift (p3 - p2)/p2 between the 3- and 2-level spectra."""
    if reference2.drive != reference3.drive:
        raise ValueError("schemes must share the same drive")
    seed = generalized_rabi(reference2.drive)
    p2 = refine_peak(reference2, seed)
    p3 = refine_peak(reference3, seed)
    # Newton residual bounds the offset error relative to the local width ~ Gamma
    err = (p2.refinement_residual + p3.refinement_residual) * reference2.drive.gamma / abs(p2.offset)
    if err > budget:
        raise PrecisionBudgetError(f"estimated relative peak error {err:.2e} exceeds {budget:.0e}")
    shift = (p3.offset - p2.offset) / p2.offset
    return (shift, p2, p3) if return_peaks else shift


def power_ratio(scheme: LevelScheme) -> float:
    """Total incoherent over coherent scattered power on the driven line."""
    rho = steady_state(scheme)
    sm = scheme.lowering()
    coh = abs(rho.expectation(sm)) ** 2
    total = rho.expectation(sm.T @ sm).real
    return (total - coh) / coh

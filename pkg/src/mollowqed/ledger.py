"""Radiative and relativistic corrections to the Mollow sideband positions.

Every correction modifies either the detuning or the Rabi frequency,

    Delta -> Delta - Delta_rad,     Delta_rad = L_bare + B Omega^2 + D_R Omega^2,
    Omega -> Omega (1 + R),          R = A_j - C_j - E_j - F - S,

and the sideband displacement becomes

    Omega_C = sqrt(Omega^2 (1 + R)^2 + (Delta - Delta_rad)^2),
    d_omega_(+/-) = +/- [Omega_C (1 + multi) - Omega_R].

Single-term rows recompute Omega_C exactly with only one correction switched
on; the combined value switches all of them on at once, so it differs from
the sum of the rows.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

from .constants import (
    DEFAULT_CONSTANTS,
    PhysicalConstants,
    UncertainValue,
    angular_to_khz,
    combine_linear,
    combine_quadrature,
    khz_to_angular,
)
from .dressed import DriveConfig, generalized_rabi, reference_drive

__all__ = [
    "Kind",
    "Target",
    "CorrectionTerm",
    "LedgerRow",
    "CorrectionLedger",
    "LAMB_SHIFTS_KHZ",
    "OFF_RESONANT_COEFFICIENT",
    "MULTI_LEVEL_SHIFT",
    "BLOCH_SIEGERT_MODES",
    "REFERENCE_SHIFTS_KHZ",
    "REFERENCE_COMBINED_KHZ",
    "bare_lamb_shift",
    "lamb_term",
    "bloch_siegert",
    "off_resonant",
    "relativistic_dipole",
    "field_configuration",
    "dressed_self_energy",
    "radiative_dipole",
    "secular_correction",
    "all_terms",
    "multi_level_factor",
    "corrected_omega_c",
    "corrected_sideband_displacement",
    "single_term_shift",
    "ledger_report",
    "check_against_reference",
    "format_table",
    "ledgers_to_json",
]


class Kind(str, Enum):
    LAMB_BARE = "LAMB_BARE"
    BLOCH_SIEGERT = "BLOCH_SIEGERT"
    OFF_RESONANT = "OFF_RESONANT"
    REL_DIPOLE_E = "REL_DIPOLE_E"
    FIELD_CONFIG_F = "FIELD_CONFIG_F"
    DRESSED_SE_C = "DRESSED_SE_C"
    RAD_DIPOLE_A = "RAD_DIPOLE_A"
    SECULAR_S = "SECULAR_S"


class Target(str, Enum):
    DETUNING = "DETUNING"
    RABI = "RABI"


KIND_ORDER = tuple(Kind)
TARGETS = {
    Kind.LAMB_BARE: Target.DETUNING,
    Kind.BLOCH_SIEGERT: Target.DETUNING,
    Kind.OFF_RESONANT: Target.DETUNING,
    Kind.REL_DIPOLE_E: Target.RABI,
    Kind.FIELD_CONFIG_F: Target.RABI,
    Kind.DRESSED_SE_C: Target.RABI,
    Kind.RAD_DIPOLE_A: Target.RABI,
    Kind.SECULAR_S: Target.RABI,
}
# sign with which each Rabi coefficient enters R = A - C - E - F - S
RABI_SIGNS = {
    Kind.REL_DIPOLE_E: -1.0,
    Kind.FIELD_CONFIG_F: -1.0,
    Kind.DRESSED_SE_C: -1.0,
    Kind.RAD_DIPOLE_A: +1.0,
    Kind.SECULAR_S: -1.0,
}
J_DEPENDENT = {
    Kind.LAMB_BARE: True,
    Kind.BLOCH_SIEGERT: False,
    Kind.OFF_RESONANT: False,
    Kind.REL_DIPOLE_E: True,
    Kind.FIELD_CONFIG_F: False,
    Kind.DRESSED_SE_C: True,
    Kind.RAD_DIPOLE_A: True,
    Kind.SECULAR_S: False,
}

# bare Lamb shifts, ordinary frequency in kHz
LAMB_SHIFTS_KHZ = {
    "1S": UncertainValue(8172811.0, 32.0),
    "3P_1/2": UncertainValue(-3473.75, 0.03),
    "3P_3/2": UncertainValue(4037.75, 0.03),
}
OFF_RESONANT_COEFFICIENT = UncertainValue(5.202, 0.003)
DRESSED_SE_CONSTANT = UncertainValue(-2.0, 2.0)
RAD_DIPOLE_CONSTANT = UncertainValue(-5.2, 5.2)
# relative sideband shift from the 3P -> 2S -> 1S decay path at the reference drive
MULTI_LEVEL_SHIFT = 6.3e-7
# Bloch-Siegert coefficient B in units of 1/omega_R
BLOCH_SIEGERT_MODES = {"quarter": 0.25, "unity": 1.0}

# individual sideband shifts (kHz) at Omega = 1000 Gamma, Delta = 50 Gamma, with
# acceptance tolerances: ("rel", x) relative or ("abs", x) in kHz
REFERENCE_SHIFTS_KHZ = {
    Kind.LAMB_BARE: ({0.5: 1613618.0, 1.5: 1611093.0}, ("rel", 1e-4)),
    Kind.BLOCH_SIEGERT: ({0.5: -3.025, 1.5: -3.025}, ("rel", 1e-2)),
    Kind.OFF_RESONANT: ({0.5: -62.91, 1.5: -62.91}, ("rel", 5e-3)),
    Kind.REL_DIPOLE_E: ({0.5: -799.16, 1.5: -336.63}, ("rel", 5e-3)),
    Kind.FIELD_CONFIG_F: ({0.5: -52.434, 1.5: -52.434}, ("rel", 5e-3)),
    Kind.DRESSED_SE_C: ({0.5: -29.0, 1.5: -29.0}, ("abs", 1.0)),
    Kind.RAD_DIPOLE_A: ({0.5: 66.0, 1.5: 66.0}, ("abs", 1.0)),
    Kind.SECULAR_S: ({0.5: -13.29, 1.5: -13.29}, ("rel", 5e-3)),
}
REFERENCE_COMBINED_KHZ = ({0.5: 1612394.0, 1.5: 1610305.0}, ("abs", 10.0))

ROW_LABELS = {
    Kind.LAMB_BARE: "Lamb",
    Kind.BLOCH_SIEGERT: "BS",
    Kind.OFF_RESONANT: "OR",
    Kind.REL_DIPOLE_E: "R",
    Kind.FIELD_CONFIG_F: "F",
    Kind.DRESSED_SE_C: "C",
    Kind.RAD_DIPOLE_A: "TDM",
    Kind.SECULAR_S: "S",
}
ROW_DECIMALS = {
    Kind.LAMB_BARE: 0,
    Kind.BLOCH_SIEGERT: 3,
    Kind.OFF_RESONANT: 2,
    Kind.REL_DIPOLE_E: 2,
    Kind.FIELD_CONFIG_F: 3,
    Kind.DRESSED_SE_C: 0,
    Kind.RAD_DIPOLE_A: 0,
    Kind.SECULAR_S: 2,
}


@dataclass(frozen=True)
class CorrectionTerm:
    """One correction.  ``value`` is an angular rate (s^-1) for detuning
    terms and a dimensionless coefficient for Rabi terms; Rabi coefficients
    are stored with their natural sign and combined via ``RABI_SIGNS``.
    """

    kind: Kind
    value: UncertainValue
    note: str = ""

    @property
    def target(self) -> Target:
        return TARGETS[self.kind]

    @property
    def j_dependent(self) -> bool:
        return J_DEPENDENT[self.kind]

    @property
    def signed_value(self) -> float:
        if self.target is Target.DETUNING:
            return self.value.value
        return RABI_SIGNS[self.kind] * self.value.value


def _check_j(j):
    if j not in (0.5, 1.5):
        raise ValueError(f"j must be 1/2 or 3/2, got {j!r}")


def bare_lamb_shift(j: float, lamb_shifts=LAMB_SHIFTS_KHZ) -> UncertainValue:
    """L_bare = L(3P_j) - L(1S) in kHz."""
    _check_j(j)
    return lamb_shifts["3P_1/2" if j == 0.5 else "3P_3/2"] - lamb_shifts["1S"]

def lamb_term(j: float, lamb_shifts=LAMB_SHIFTS_KHZ) -> CorrectionTerm:
    lb = bare_lamb_shift(j, lamb_shifts)
    return CorrectionTerm(Kind.LAMB_BARE, UncertainValue(khz_to_angular(lb.value), khz_to_angular(lb.sigma)))


def bloch_siegert(drive: DriveConfig, mode: str = "quarter") -> CorrectionTerm:
    """B Omega^2 with B = c / omega_R; c = 1/4 reproduces the tabulated row, c = 1 is flagged."""
    c = BLOCH_SIEGERT_MODES[mode]
    note = "" if mode == "quarter" else f"uncalibrated Bloch-Siegert coefficient c={c:g}"
    return CorrectionTerm(Kind.BLOCH_SIEGERT, UncertainValue(c * drive.rabi ** 2 / drive.omega_r), note)


def off_resonant(drive: DriveConfig, coefficient: UncertainValue = OFF_RESONANT_COEFFICIENT) -> CorrectionTerm:
    """D_R Omega^2 with D_R = 5.202(3) / omega_R."""
    return CorrectionTerm(Kind.OFF_RESONANT, coefficient * (drive.rabi ** 2 / drive.omega_r))


def relativistic_dipole(j: float, constants: PhysicalConstants = DEFAULT_CONSTANTS) -> CorrectionTerm:
    _check_j(j)
    za2 = constants.z_alpha_squared
    if j == 0.5:
        e = za2 * (17.0 / 24.0 - math.log(2.0) + 0.5 * math.log(3.0))
    else:
        e = za2 * (5.0 / 24.0 - 0.75 * math.log(2.0) + 0.5 * math.log(3.0))
    return CorrectionTerm(Kind.REL_DIPOLE_E, UncertainValue(e))


def field_configuration(constants: PhysicalConstants = DEFAULT_CONSTANTS) -> CorrectionTerm:
    """Standing wave, atom at an electric-field antinode: F = (Z alpha)^2 / 27."""
    return CorrectionTerm(Kind.FIELD_CONFIG_F, UncertainValue(constants.z_alpha_squared / 27.0))


def dressed_self_energy(j: float, constants: PhysicalConstants = DEFAULT_CONSTANTS,
                        constant: UncertainValue = DRESSED_SE_CONSTANT) -> CorrectionTerm:
    _check_j(j)
    za2 = constants.z_alpha_squared
    pref = constants.alpha * za2 * 10.0 / (9.0 * math.pi)
    return CorrectionTerm(Kind.DRESSED_SE_C, (constant + math.log(1.0 / za2)) * pref)


def radiative_dipole(j: float, constants: PhysicalConstants = DEFAULT_CONSTANTS,
                     constant: UncertainValue = RAD_DIPOLE_CONSTANT) -> CorrectionTerm:
    _check_j(j)
    za2 = constants.z_alpha_squared
    pref = constants.alpha * za2 / math.pi
    log_coeff = 55.0 / 27.0 + 4.0 / 3.0 * math.log(1.5)
    return CorrectionTerm(Kind.RAD_DIPOLE_A, (constant + log_coeff * math.log(1.0 / za2)) * pref)


def secular_correction(drive: DriveConfig) -> CorrectionTerm:
    """Leading non-secular correction S = (Gamma/Omega)^2 / 2."""
    return CorrectionTerm(Kind.SECULAR_S, UncertainValue(0.5 * (drive.gamma / drive.rabi) ** 2))


def all_terms(drive: DriveConfig, cbs_mode: str = "quarter",
              constants: PhysicalConstants = DEFAULT_CONSTANTS) -> list[CorrectionTerm]:
    j = drive.j
    return [
        lamb_term(j),
        bloch_siegert(drive, cbs_mode),
        off_resonant(drive),
        relativistic_dipole(j, constants),
        field_configuration(constants),
        dressed_self_energy(j, constants),
        radiative_dipole(j, constants),
        secular_correction(drive),
    ]


def multi_level_factor(shift: float = MULTI_LEVEL_SHIFT, applied: bool = False) -> UncertainValue:
    """Multiplicative factor (1 + multi).

    By default the shift is carried only as an uncertainty (value 1, sigma
    ``shift``), since both two- and three-level spectra are observed.
    """
    return UncertainValue(1.0 + shift, 0.0) if applied else UncertainValue(1.0, abs(shift))


def _select(terms: Iterable[CorrectionTerm], kinds=None):
    terms = list(terms)
    if kinds is None:
        return terms
    kinds = {Kind(k) for k in kinds}
    return [t for t in terms if t.kind in kinds]


def _corrected(drive: DriveConfig, terms: Sequence[CorrectionTerm]):
    det_rad = math.fsum(t.signed_value for t in terms if t.target is Target.DETUNING)
    rabi_rel = math.fsum(t.signed_value for t in terms if t.target is Target.RABI)
    omega = drive.rabi * (1.0 + rabi_rel)
    delta = drive.detuning - det_rad
    return omega, delta, math.hypot(omega, delta)


def corrected_omega_c(drive: DriveConfig, terms: Sequence[CorrectionTerm]) -> float:
    """Corrected generalized Rabi frequency Omega_C (s^-1)."""
    return _corrected(drive, terms)[2]


def _sensitivities(drive, terms, m):
    """d(shift)/d(term value) for each term, in s^-1 per unit of the term."""
    omega, delta, oc = _corrected(drive, terms)
    out = []
    for t in terms:
        if t.target is Target.DETUNING:
            out.append(-m * delta / oc)
        else:
            out.append(m * RABI_SIGNS[t.kind] * drive.rabi * omega / oc)
    return out


def corrected_sideband_displacement(drive: DriveConfig, terms: Sequence[CorrectionTerm] | None = None,
                                    multi_level: UncertainValue | None = None, sigma_mode: str = "quadrature",
                                    sign: int = +1, kinds=None) -> UncertainValue:
    """Sideband displacement d_omega_(+/-) in kHz.

    ``kinds`` selects a subset of ``terms`` (default: all 8 for ``drive``).
    The sigma combines the term uncertainties through the exact linear
    sensitivities of Omega_C; the multi-level sigma is reported separately by
    :func:`ledger_report`.
    """
    if sign not in (+1, -1):
        raise ValueError("sign must be +1 or -1")
    if terms is None:
        terms = all_terms(drive)
    terms = _select(terms, kinds)
    m = 1.0 if multi_level is None else multi_level.value
    oc = corrected_omega_c(drive, terms)
    value = sign * (oc * m - generalized_rabi(drive))
    contributions = [UncertainValue(0.0, abs(s) * t.value.sigma) for s, t in zip(_sensitivities(drive, terms, m), terms)]
    combine = combine_quadrature if sigma_mode == "quadrature" else combine_linear
    if sigma_mode not in ("quadrature", "linear"):
        raise ValueError(f"unknown sigma mode {sigma_mode!r}")
    sigma = combine(contributions).sigma
    return UncertainValue(angular_to_khz(value), angular_to_khz(sigma))


def single_term_shift(drive: DriveConfig, term: CorrectionTerm, sigma_mode: str = "quadrature") -> UncertainValue:
    return corrected_sideband_displacement(drive, [term], sigma_mode=sigma_mode)


@dataclass(frozen=True)
class LedgerRow:
    term: CorrectionTerm
    shift_khz: UncertainValue

    def as_dict(self) -> dict:
        return {
            "term": self.term.kind.value,
            "target": self.term.target.value,
            "value": self.term.value.value,
            "sigma": self.term.value.sigma,
            "shift_khz": self.shift_khz.value,
            "shift_sigma_khz": self.shift_khz.sigma,
            "j_dependent": self.term.j_dependent,
            "note": self.term.note,
        }


@dataclass(frozen=True)
class CorrectionLedger:
    """All single-term rows and the combined sideband shift for one drive and j."""

    drive: DriveConfig
    terms: tuple
    rows: tuple
    corrected_omega: UncertainValue
    corrected_detuning: UncertainValue
    omega_c: UncertainValue
    multi_level_factor: UncertainValue
    total_khz: UncertainValue
    total_linear_khz: UncertainValue
    multi_level_sigma_khz: float
    sum_of_rows_khz: float
    cbs_mode: str = "quarter"
    sigma_mode: str = "quadrature"
    flags: tuple = field(default=())

    @property
    def j(self) -> float:
        return self.drive.j

    @property
    def joint_minus_sum_khz(self) -> float:
        return self.total_khz.value - self.sum_of_rows_khz

    def row(self, kind) -> LedgerRow:
        kind = Kind(kind)
        for r in self.rows:
            if r.term.kind is kind:
                return r
        raise KeyError(kind)

    def as_dict(self) -> dict:
        total = self.total_khz if self.sigma_mode == "quadrature" else self.total_linear_khz
        return {
            "j": self.j,
            "rabi_s-1": self.drive.rabi,
            "detuning_s-1": self.drive.detuning,
            "gamma_s-1": self.drive.gamma,
            "omega_r_s-1": self.drive.omega_r,
            "cbs_mode": self.cbs_mode,
            "sigma_mode": self.sigma_mode,
            "rows": [r.as_dict() for r in self.rows],
            "combined": {
                "term": "COMBINED",
                "shift_khz": total.value,
                "shift_sigma_khz": total.sigma,
                "shift_sigma_quadrature_khz": self.total_khz.sigma,
                "shift_sigma_linear_khz": self.total_linear_khz.sigma,
                "multi_level_sigma_khz": self.multi_level_sigma_khz,
                "sum_of_rows_khz": self.sum_of_rows_khz,
            },
            "flags": list(self.flags),
        }


def ledger_report(drive: DriveConfig | None = None, cbs_mode: str = "quarter",
                  multi_level: UncertainValue | None = None, sigma_mode: str = "quadrature",
                  constants: PhysicalConstants = DEFAULT_CONSTANTS) -> CorrectionLedger:
    """Evaluate every correction for ``drive`` (default: reference drive, j = 1/2)."""
    drive = reference_drive() if drive is None else drive
    multi_level = multi_level_factor() if multi_level is None else multi_level
    terms = tuple(all_terms(drive, cbs_mode, constants))
    rows = tuple(LedgerRow(t, single_term_shift(drive, t, sigma_mode)) for t in terms)
    omega, delta, oc = _corrected(drive, terms)

    sens_r = [drive.rabi * RABI_SIGNS[t.kind] for t in terms if t.target is Target.RABI]
    sig_r = [t.value.sigma for t in terms if t.target is Target.RABI]
    sig_d = [t.value.sigma for t in terms if t.target is Target.DETUNING]
    corrected_omega = UncertainValue(omega, math.sqrt(math.fsum((s * x) ** 2 for s, x in zip(sens_r, sig_r))))
    corrected_detuning = UncertainValue(delta, math.sqrt(math.fsum(x * x for x in sig_d)))

    total_q = corrected_sideband_displacement(drive, terms, multi_level, "quadrature")
    total_l = corrected_sideband_displacement(drive, terms, multi_level, "linear")
    oc_sigma = khz_to_angular(total_q.sigma) / multi_level.value
    flags = tuple(t.note for t in terms if t.note)
    return CorrectionLedger(
        drive=drive,
        terms=terms,
        rows=rows,
        corrected_omega=corrected_omega,
        corrected_detuning=corrected_detuning,
        omega_c=UncertainValue(oc, oc_sigma),
        multi_level_factor=multi_level,
        total_khz=total_q,
        total_linear_khz=total_l,
        multi_level_sigma_khz=angular_to_khz(oc * multi_level.sigma),
        sum_of_rows_khz=math.fsum(r.shift_khz.value for r in rows),
        cbs_mode=cbs_mode,
        sigma_mode=sigma_mode,
        flags=flags,
    )


def _within(value, ref, tol):
    kind, x = tol
    if kind == "rel":
        return abs(value - ref) <= x * abs(ref)
    return abs(value - ref) <= x


def check_against_reference(ledgers: dict) -> list[dict]:
    """Compare ledgers keyed by j with the tabulated reference shifts.

    Returns one record per (row, j) with keys ``row, j, value, reference,
    tolerance, ok``.  Only meaningful for the reference drive.
    """
    out = []
    for j, led in sorted(ledgers.items()):
        for kind in KIND_ORDER:
            refs, tol = REFERENCE_SHIFTS_KHZ[kind]
            v = led.row(kind).shift_khz.value
            out.append({"row": kind.value, "j": j, "value": v, "reference": refs[j],
                        "tolerance": f"{tol[0]} {tol[1]:g}", "ok": _within(v, refs[j], tol)})
        refs, tol = REFERENCE_COMBINED_KHZ
        v = led.total_khz.value
        out.append({"row": "COMBINED", "j": j, "value": v, "reference": refs[j],
                    "tolerance": f"{tol[0]} {tol[1]:g}", "ok": _within(v, refs[j], tol)})
    return out


def format_table(ledgers: dict) -> str:
    """Fixed-width text table, one column per j, in the order of the tabulated shifts."""
    js = sorted(ledgers)
    head = f"{'Shift':<10}" + "".join(f"{'1S_1/2 <-> 3P_' + ('1/2' if j == 0.5 else '3/2') + ' [kHz]':>30}" for j in js)
    lines = [head, "=" * len(head)]
    for kind in KIND_ORDER:
        d = ROW_DECIMALS[kind]
        cells = []
        for j in js:
            s = ledgers[j].row(kind).shift_khz
            cell = f"{s.value:.{d}f}"
            if s.sigma > 0:
                cell += f" +/- {s.sigma:.{d}f}"
            cells.append(cell.rjust(30))
        lines.append(f"{ROW_LABELS[kind]:<10}" + "".join(cells))
        if kind is Kind.OFF_RESONANT:
            lines.append("-" * len(head))
    lines.append("=" * len(head))
    rows = [
        ("sum rows", lambda L: f"{L.sum_of_rows_khz:.0f}"),
        ("combined", lambda L: f"{L.total_khz.value:.0f}({L.total_khz.sigma:.0f})({L.multi_level_sigma_khz:.0f})"),
        ("sigma lin", lambda L: f"{L.total_linear_khz.sigma:.1f}"),
        ("sigma quad", lambda L: f"{L.total_khz.sigma:.1f}"),
    ]
    for label, fmt in rows:
        lines.append(f"{label:<10}" + "".join(fmt(ledgers[j]).rjust(30) for j in js))
    return "\n".join(lines) + "\n"


def ledgers_to_json(ledgers: dict, extra: dict | None = None) -> str:
    payload = {"ledgers": [ledgers[j].as_dict() for j in sorted(ledgers)]}
    if extra:
        payload.update(extra)
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"

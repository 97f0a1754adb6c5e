"""Command-line front end.

Usage:
    mollowqed table1                       tabulated corrections, both j, with tolerance check
    mollowqed ledger --j 1/2 --rabi 500    ledger for one drive
    mollowqed spectrum --levels 3          fluorescence spectrum CSV and peak summary
    mollowqed scan --rabi-values 200,500,1000 --detuning-ratio 0.05

Exit codes: 0 ok, 1 invalid configuration, 2 out-of-tolerance row, 3 no peak in grid.

A ``--config`` file is a flat JSON object whose keys are the long option
names with dashes replaced by underscores, e.g. ``{"rabi": 500, "j": "3/2"}``.
Command-line flags override the file, which overrides the defaults.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from pathlib import Path

import numpy as np

from . import ledger as lg
from .constants import angular_to_khz
from .dressed import A_3P_1S, DriveConfig, generalized_rabi
from .spectrum import (
    GAMMA_2S_DEFAULT,
    LevelScheme,
    PeakRefinementError,
    find_peaks,
    incoherent_spectrum,
    multi_level_sideband_shift,
)

EXIT_OK, EXIT_CONFIG, EXIT_TOLERANCE, EXIT_NO_PEAKS = 0, 1, 2, 3

DEFAULTS = {
    "j": "both",
    "rabi": 1000.0,
    "detuning": 50.0,
    "gamma": None,
    "omega_r": None,
    "levels": 2,
    "cbs": "quarter",
    "sigma": "quadrature",
    "gamma2s": GAMMA_2S_DEFAULT,
    "out": None,
    "grid_min": None,
    "grid_max": None,
    "grid_points": 9601,
    "rabi_values": "1000",
    "detuning_values": None,
    "detuning_ratio": 0.05,
}
J_ALIASES = {"1/2": 0.5, "0.5": 0.5, "3/2": 1.5, "1.5": 1.5}


class ConfigError(ValueError):
    pass


def _parse_js(value) -> list:
    value = str(value)
    if value == "both":
        return [0.5, 1.5]
    if value not in J_ALIASES:
        raise ConfigError(f"--j must be 1/2, 3/2 or both, got {value!r}")
    return [J_ALIASES[value]]


def _floats(text) -> list:
    if isinstance(text, (int, float)):
        return [float(text)]
    if isinstance(text, (list, tuple)):
        return [float(x) for x in text]
    return [float(x) for x in str(text).split(",") if x.strip()]


def resolve_config(args: argparse.Namespace) -> dict:
    cfg = dict(DEFAULTS)
    if args.config:
        with open(args.config) as f:
            data = json.load(f)
        if not isinstance(data, dict):
            raise ConfigError("config file must hold a flat JSON object")
        unknown = set(data) - set(DEFAULTS)
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        cfg.update(data)
    for key in DEFAULTS:
        v = getattr(args, key, None)
        if v is not None:
            cfg[key] = v
    cfg["command"] = args.command
    cfg["js"] = _parse_js(cfg["j"])
    if not float(cfg["rabi"]) > 0:
        raise ConfigError(f"--rabi must be > 0 (units of Gamma), got {cfg['rabi']!r}")
    if int(cfg["levels"]) not in (2, 3):
        raise ConfigError("--levels must be 2 or 3")
    if cfg["cbs"] not in lg.BLOCH_SIEGERT_MODES:
        raise ConfigError(f"--cbs must be one of {sorted(lg.BLOCH_SIEGERT_MODES)}")
    if cfg["sigma"] not in ("quadrature", "linear"):
        raise ConfigError("--sigma must be quadrature or linear")
    if not float(cfg["gamma2s"]) >= 0:
        raise ConfigError("--gamma2s must be >= 0")
    if int(cfg["grid_points"]) < 3:
        raise ConfigError("--grid-points must be >= 3")
    if cfg["grid_min"] is not None and cfg["grid_max"] is not None and not cfg["grid_max"] > cfg["grid_min"]:
        raise ConfigError("grid must be increasing")
    if any(not r > 0 for r in _floats(cfg["rabi_values"])):
        raise ConfigError("scan Rabi values must be > 0")
    return cfg


def _drive(cfg, j, rabi=None, detuning=None) -> DriveConfig:
    gamma = A_3P_1S if cfg["gamma"] is None else float(cfg["gamma"])
    kw = {} if cfg["omega_r"] is None else {"omega_r": float(cfg["omega_r"])}
    rabi = float(cfg["rabi"]) if rabi is None else rabi
    detuning = float(cfg["detuning"]) if detuning is None else detuning
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return DriveConfig.in_gamma(rabi, detuning, gamma, j=j, **kw)


def _ledgers(cfg, js=None, **kw) -> dict:
    return {j: lg.ledger_report(_drive(cfg, j, **kw), cbs_mode=cfg["cbs"], sigma_mode=cfg["sigma"])
            for j in (cfg["js"] if js is None else js)}


def _out_dir(cfg):
    if cfg["out"] is None:
        return None
    p = Path(cfg["out"])
    p.mkdir(parents=True, exist_ok=True)
    return p


def _write(out, name, text):
    if out is not None:
        with open(out / name, "w", newline="") as f:
            f.write(text)


def run_ledger(cfg) -> int:
    ledgers = _ledgers(cfg)
    text = lg.format_table(ledgers)
    for L in ledgers.values():
        for flag in L.flags:
            text += f"flag: {flag}\n"
    sys.stdout.write(text)
    out = _out_dir(cfg)
    _write(out, "ledger.txt", text)
    _write(out, "ledger.json", lg.ledgers_to_json(ledgers))
    return EXIT_OK


def run_table1(cfg) -> int:
    ledgers = _ledgers(cfg, js=[0.5, 1.5])
    checks = lg.check_against_reference(ledgers)
    text = lg.format_table(ledgers)
    for L in ledgers.values():
        for flag in sorted(set(L.flags)):
            text += f"flag: {flag}\n"
    bad = [c for c in checks if not c["ok"]]
    if bad:
        text += "\nout of tolerance:\n"
        text += f"{'row':<16}{'j':>5}{'computed':>18}{'reference':>18}{'diff':>14}  tolerance\n"
        for c in bad:
            text += (f"{c['row']:<16}{c['j']:>5g}{c['value']:>18.4f}{c['reference']:>18.4f}"
                     f"{c['value'] - c['reference']:>14.4f}  {c['tolerance']}\n")
    else:
        text += "all rows within tolerance\n"
    sys.stdout.write(text)
    out = _out_dir(cfg)
    _write(out, "table1.txt", text)
    _write(out, "table1.json", lg.ledgers_to_json(ledgers, {"checks": checks}))
    return EXIT_TOLERANCE if bad else EXIT_OK


def _peak_record(p):
    return {"offset_gamma": p.offset_gamma, "offset_khz": p.offset_khz, "curvature_gamma-2": p.curvature,
            "intensity": p.intensity, "refinement_residual": p.refinement_residual}


def run_spectrum(cfg) -> int:
    j = cfg["js"][0]
    drive = _drive(cfg, j)
    g = drive.gamma
    w = generalized_rabi(drive) / g
    lo = -1.25 * w if cfg["grid_min"] is None else float(cfg["grid_min"])
    hi = 1.25 * w if cfg["grid_max"] is None else float(cfg["grid_max"])
    grid = np.linspace(lo, hi, int(cfg["grid_points"])) * g
    scheme2 = LevelScheme.two_level(drive)
    scheme = scheme2 if int(cfg["levels"]) == 2 else LevelScheme.three_level(drive, gamma_2s=float(cfg["gamma2s"]))
    trace = incoherent_spectrum(scheme, grid)
    try:
        peaks = find_peaks(scheme, grid)
    except PeakRefinementError as exc:
        print(f"warning: {exc}", file=sys.stderr)
        peaks = []
    summary = {"levels": scheme.dimension, "j": j, "rabi_gamma": drive.rabi / g, "detuning_gamma": drive.detuning / g,
               "gamma_s-1": g, "generalized_rabi_gamma": w, "peaks": [_peak_record(p) for p in peaks]}
    lines = [f"{scheme.dimension}-level spectrum, Omega = {drive.rabi / g:g} Gamma, Delta = {drive.detuning / g:g} Gamma",
             f"{'offset [Gamma]':>22}{'offset [kHz]':>22}{'curvature [Gamma^-2]':>24}"]
    for p in peaks:
        lines.append(f"{p.offset_gamma:>22.10f}{p.offset_khz:>22.4f}{p.curvature:>24.6e}")
    if scheme.dimension == 3:
        shift, p2, p3 = multi_level_sideband_shift(scheme2, scheme, return_peaks=True)
        lines.append(f"relative multi-level blue-sideband shift: {shift:.6e}")
        lines.append(f"absolute: {angular_to_khz(p3.offset - p2.offset):.6f} kHz")
        summary["multi_level_shift"] = shift
        summary["multi_level_shift_khz"] = angular_to_khz(p3.offset - p2.offset)
        summary["gamma2s_s-1"] = float(cfg["gamma2s"])
    text = "\n".join(lines) + "\n"
    sys.stdout.write(text)
    out = _out_dir(cfg)
    if out is not None:
        trace.to_csv(out / "spectrum.csv")
    _write(out, "peaks.json", json.dumps(summary, indent=2, sort_keys=True) + "\n")
    if not peaks:
        print("warning: grid contains no spectral maximum", file=sys.stderr)
        return EXIT_NO_PEAKS
    return EXIT_OK


def run_scan(cfg) -> int:
    rabis = _floats(cfg["rabi_values"])
    kinds = list(lg.KIND_ORDER)
    header = ["rabi_gamma", "detuning_gamma"]
    for j in ("j12", "j32"):
        header += [f"shift_{j}_khz", f"sigma_{j}_khz", f"lamb_only_{j}_khz"]
        header += [f"{k.value.lower()}_{j}_khz" for k in kinds]
    header.append("difference_khz")
    rows = []
    for rabi in rabis:
        if cfg["detuning_values"] is None:
            detunings = [float(cfg["detuning_ratio"]) * rabi]
        else:
            detunings = _floats(cfg["detuning_values"])
        for det in detunings:
            ledgers = _ledgers(cfg, js=[0.5, 1.5], rabi=rabi, detuning=det)
            row = [rabi, det]
            for j in (0.5, 1.5):
                L = ledgers[j]
                row += [L.total_khz.value, L.total_khz.sigma, L.row(lg.Kind.LAMB_BARE).shift_khz.value]
                row += [L.row(k).shift_khz.value for k in kinds]
            row.append(ledgers[0.5].total_khz.value - ledgers[1.5].total_khz.value)
            rows.append(row)
    out = _out_dir(cfg)
    lines = [",".join(header)] + [",".join("%.17g" % x for x in r) for r in rows]
    text = "\n".join(lines) + "\n"
    _write(out, "scan.csv", text)
    sys.stdout.write(text)
    return EXIT_OK


COMMANDS = {"ledger": run_ledger, "table1": run_table1, "spectrum": run_spectrum, "scan": run_scan}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mollowqed", description="Dressed-state QED corrections to Mollow sidebands")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("--config", help="flat JSON file of option values")
        s.add_argument("--j", help="1/2, 3/2 or both")
        s.add_argument("--rabi", type=float, help="Rabi frequency in units of Gamma")
        s.add_argument("--detuning", type=float, help="laser detuning in units of Gamma")
        s.add_argument("--gamma", type=float, help="reference width override, s^-1")
        s.add_argument("--omega-r", dest="omega_r", type=float, help="transition frequency override, s^-1")
        s.add_argument("--levels", type=int, help="2 or 3 (spectrum)")
        s.add_argument("--cbs", help="Bloch-Siegert coefficient: quarter or unity")
        s.add_argument("--sigma", help="uncertainty combination: quadrature or linear")
        s.add_argument("--gamma2s", type=float, help="2S -> 1S rate, s^-1")
        s.add_argument("--out", help="output directory")
        s.add_argument("--grid-min", dest="grid_min", type=float, help="spectrum grid start, Gamma")
        s.add_argument("--grid-max", dest="grid_max", type=float, help="spectrum grid end, Gamma")
        s.add_argument("--grid-points", dest="grid_points", type=int, help="spectrum grid size")
        s.add_argument("--rabi-values", dest="rabi_values", help="comma-separated scan Rabi values, Gamma")
        s.add_argument("--detuning-values", dest="detuning_values", help="comma-separated scan detunings, Gamma")
        s.add_argument("--detuning-ratio", dest="detuning_ratio", type=float,
                       help="scan detuning as a fraction of Omega (when no detuning values)")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args)
    except (ConfigError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return COMMANDS[cfg["command"]](cfg)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())

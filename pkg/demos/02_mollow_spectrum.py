"""
Mollow triplet from the master equation
=======================================

The incoherent fluorescence spectrum of the driven 1S-3P line, computed from
the Lindblad steady state and the quantum regression theorem.
"""

import numpy as np

from mollowqed.dressed import DriveConfig, generalized_rabi, reference_drive
from mollowqed.spectrum import LevelScheme, find_peaks, incoherent_spectrum, refine_peak

# %%
# Resonant drive: three peaks, sidebands one third as high as the centre.
scheme = LevelScheme.two_level(DriveConfig.in_gamma(200.0, 0.0))
for p in find_peaks(scheme):
    print(f"peak at {p.offset_gamma:10.4f} Gamma, height {p.intensity:.5f}")

# %%
# A coarse trace, written as CSV (offsets in Gamma and kHz).
g = scheme.drive.gamma
trace = incoherent_spectrum(scheme, np.linspace(-250, 250, 11) * g)
print(trace.to_csv())

# %%
# The sideband sits slightly inside Omega_R.  The displacement follows the
# non-secular replacement Omega -> Omega (1 - Gamma^2 / (2 Omega^2)).
for rabi in (200.0, 500.0, 1000.0, 2000.0):
    d = DriveConfig.in_gamma(rabi, 0.05 * rabi)
    w = generalized_rabi(d)
    p = refine_peak(LevelScheme.two_level(d), w)
    c = (w - p.offset) / (d.rabi ** 2 / w * (d.gamma / d.rabi) ** 2)
    print(f"Omega = {rabi:6.0f} Gamma: Omega_R - peak = {(w - p.offset) / g:.3e} Gamma, c = {c:.5f}")

# %%
# Reference-drive peak positions in kHz
d = reference_drive()
p = refine_peak(LevelScheme.two_level(d), generalized_rabi(d))
print(f"blue sideband {p.offset_khz:.3f} kHz from the laser")

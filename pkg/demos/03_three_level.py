"""
Leakage to 2S and the multi-level sideband shift
================================================

3P also decays to the metastable 2S level, which returns slowly to 1S.
Most of the population piles up in 2S, but the spectrum emitted on the
1S-3P line keeps its shape.  We compare the blue sideband with the
two-level result.
"""

from mollowqed.dressed import reference_drive
from mollowqed.spectrum import LevelScheme, multi_level_sideband_shift, steady_state

drive = reference_drive()
two = LevelScheme.two_level(drive)

# %%
# Populations (1S, 3P, 2S) for a few 2S -> 1S rates.
for g2s in (1.0, 8.229, 100.0):
    pops = steady_state(LevelScheme.three_level(drive, gamma_2s=g2s)).populations
    print(f"gamma_2S = {g2s:7.3f} s^-1: populations {pops}")

# %%
# Relative blue-sideband shift.  It barely depends on gamma_2S, since that
# rate only sets how much population is still on the driven line.
for g2s in (1.0, 8.229, 100.0):
    shift, p2, p3 = multi_level_sideband_shift(two, LevelScheme.three_level(drive, gamma_2s=g2s), return_peaks=True)
    print(f"gamma_2S = {g2s:7.3f} s^-1: shift = {shift:.4e}  ({p3.offset_khz - p2.offset_khz:.3f} kHz)")

# %%
# This three-level model gives about -1.3e-7.  The value quoted for the
# ledger (6.3e-7) comes from an analysis whose model is not reproduced
# here; the ledger keeps it as an input uncertainty.

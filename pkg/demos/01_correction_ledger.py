"""
Building the sideband correction ledger
=======================================

Each radiative or relativistic correction either shifts the detuning or
rescales the Rabi frequency.  Here we switch them on one at a time at the
reference drive (Omega = 1000 Gamma, Delta = 50 Gamma) and then all at once.
"""

from mollowqed.dressed import generalized_rabi, reference_drive
from mollowqed.ledger import Kind, format_table, ledger_report

# %%
# The bare dressed-state splitting is the generalized Rabi frequency.
drive = reference_drive(j=0.5)
print(f"Omega_R = {generalized_rabi(drive):.6e} s^-1")

# %%
# One ledger per fine-structure component of 3P.
ledgers = {j: ledger_report(reference_drive(j)) for j in (0.5, 1.5)}
print(format_table(ledgers))

# %%
# The rows do not add up to the combined shift: Omega_C is a square root of
# the corrected Rabi frequency and detuning, so the big Lamb-shift term
# changes the weight with which the Rabi corrections enter.
L = ledgers[0.5]
print(f"sum of rows     {L.sum_of_rows_khz:12.2f} kHz")
print(f"joint           {L.total_khz.value:12.2f} kHz")
print(f"difference      {L.joint_minus_sum_khz:12.2f} kHz")

# %%
# Uncertainties: each input sigma is pushed through the exact sensitivity
# of Omega_C.  The Lamb row is dominated by the 1S Lamb shift.
lamb = L.row(Kind.LAMB_BARE)
print(f"Lamb row sigma  {lamb.shift_khz.sigma:.2f} kHz")
print(f"quadrature      {L.total_khz.sigma:.2f} kHz")
print(f"linear          {L.total_linear_khz.sigma:.2f} kHz")
print(f"multi-level     {L.multi_level_sigma_khz:.2f} kHz")

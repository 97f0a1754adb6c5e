"""
Atomic structure from a Sturmian pseudo-spectrum
================================================

Sums over all intermediate states, including the continuum, are replaced by
sums over a finite Coulomb-Sturmian basis.  A few checks of that machinery.
"""

import numpy as np

from mollowqed.hydrogen import basis_dipole_matrix, build_radial_basis, einstein_a, level
from mollowqed.selfenergy import bethe_log, self_energy_sum
from mollowqed.stark import polarizability

# %%
# Thomas-Reiche-Kuhn sum rule for 1S
s = build_radial_basis(0, 60, 1.0)
p = build_radial_basis(1, 60, 1.0)
r = basis_dipole_matrix(s, p)[0]
print("TRK:", 2 / 3 * np.sum((p.energies - s.energies[0]) * r ** 2))

# %%
# Polarizability of 1S, static and dynamic (atomic units)
for w in (0.0, 0.1, 0.2, 0.3):
    print(f"alpha({w:.1f}) = {polarizability(level('1S'), w):.6f}")

# %%
# Decay rates of 3P with the reduced-mass correction
for low in ("1S", "2S"):
    print(f"A(3P -> {low}) = {einstein_a(level('3P'), level(low)):.5e} s^-1")

# %%
# Bethe logarithm: the self-energy integral after removing its power-law
# divergences, for growing basis sizes and extrapolated in 1/N.
res = self_energy_sum(level("1S"), cutoff=100.0, basis_size=60)
print(f"raw integral {res.raw_integral:.6e}, asymptotic form {res.raw_asymptote:.6e}")
bl = bethe_log(level("1S"))
print("ladder:", bl.basis_size_ladder)
print(f"ln k0(1S) = {bl.bethe_log:.5f}")

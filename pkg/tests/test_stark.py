import math

import numpy as np
import pytest
import scipy.sparse as sp
from scipy.sparse.linalg import spsolve

from mollowqed.hydrogen import build_radial_basis, hydrogen_radial, level
from mollowqed.stark import ResonanceError, ac_stark_shift, photon_number_scaling, polarizability

ALPHA_1S_STATIC = 4.5


def dalgarno_lewis_bracket(omega, rmax=60.0, n=12000):
    """Finite-difference oracle: solve (E_1S +/- w - H_p) g = z|1S> on a radial grid."""
    h = rmax / n
    r = h * np.arange(1, n + 1)
    u0 = r * hydrogen_radial(1, 0, r)
    src = r * u0 / math.sqrt(3.0)
    kin = sp.diags([np.full(n - 1, -0.5 / h ** 2), np.full(n, 1.0 / h ** 2), np.full(n - 1, -0.5 / h ** 2)], [-1, 0, 1])
    H = kin + sp.diags(1.0 / r ** 2 - 1.0 / r)
    total = 0.0
    for s in (+1, -1):
        A = (-0.5 + s * omega) * sp.identity(n) - H
        g = spsolve(A.tocsc(), src)
        total += h * np.dot(src, g)
    return total


def test_static_polarizability():
    assert polarizability(level("1S")) == pytest.approx(ALPHA_1S_STATIC, rel=1e-6)


def test_dynamic_matches_dalgarno_lewis():
    b = ac_stark_shift(level("1S"), 0.2).bracket
    assert b == pytest.approx(dalgarno_lewis_bracket(0.2), rel=2e-5)
    assert -dalgarno_lewis_bracket(0.0) == pytest.approx(ALPHA_1S_STATIC, rel=2e-5)


def test_polarizability_grows_towards_resonance():
    vals = [polarizability(level("1S"), w) for w in (0.0, 0.1, 0.2, 0.3)]
    assert all(b > a for a, b in zip(vals, vals[1:]))


def test_high_frequency_limit():
    # with the whole pseudo-spectrum below w the bracket tends to (sum rule)/w^2 = 1/w^2
    top = build_radial_basis(1, 60, 0.1).energies.max()
    assert top < 5.0
    for w in (100.0, 400.0):
        r = ac_stark_shift(level("1S"), w, basis_size=60, scale=0.1)
        assert r.bracket * w * w == pytest.approx(1.0, abs=2e-3)


def test_shift_is_linear_in_intensity():
    a = ac_stark_shift(level("1S"), 0.1, intensity=1e-3)
    b = ac_stark_shift(level("1S"), 0.1, intensity=2e-3)
    assert b.shift == pytest.approx(2 * a.shift, rel=1e-14)
    assert a.plus_term + a.minus_term == pytest.approx(a.bracket)


def test_resonance_detection():
    w_res = build_radial_basis(1, 60, 1.0).energies[3] + 0.5
    with pytest.raises(ResonanceError):
        ac_stark_shift(level("1S"), w_res)
    r = ac_stark_shift(level("1S"), w_res + 5e-4)
    assert r.resonant_denominator_flags


def test_photon_number_scaling():
    stim, rest = photon_number_scaling(10 ** 6, 1e9, 0.5)
    assert stim == pytest.approx(1e6 * rest)
    # fixed n/V: the stimulated part survives, the remainder vanishes
    for V in (1e6, 1e9, 1e12):
        s, rem = photon_number_scaling(int(V), V, 0.5)
        assert s == pytest.approx(0.25)
    assert rem < 1e-12
    with pytest.raises(ValueError):
        photon_number_scaling(-1, 1.0)

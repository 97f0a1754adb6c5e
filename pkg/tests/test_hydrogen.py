import math

import numpy as np
import pytest
from scipy.integrate import quad

from mollowqed.dressed import A_3P_1S, A_3P_2S
from mollowqed.hydrogen import (
    AtomicLevel,
    basis_dipole_matrix,
    build_radial_basis,
    dipole_matrix_element,
    einstein_a,
    hydrogen_radial,
    level,
    radial_integral,
    transition_frequency,
)


def test_level_parsing():
    a = level("3P_3/2")
    assert (a.n, a.l, a.j) == (3, 1, 1.5)
    assert level("1S").j == 0.5
    assert level("3p").label == "3P"
    with pytest.raises(ValueError):
        level("3X")
    with pytest.raises(ValueError):
        AtomicLevel(2, 2)
    with pytest.raises(ValueError):
        AtomicLevel(3, 1, 2.5)


def test_energies():
    assert level("1S").energy == -0.5
    assert level("3P").energy == pytest.approx(-1 / 18)
    assert level("1S", Z=2).energy == -2.0


def test_transition_frequency():
    w = transition_frequency(level("1S"), level("3P"))
    # 1S-3P: about 2.9227e15 Hz with the reduced mass
    assert w / (2 * math.pi) == pytest.approx(2.922712e15, rel=1e-6)
    assert transition_frequency(level("1S"), level("3P"), reduced_mass=False) > w


@pytest.mark.parametrize("n,l", [(1, 0), (2, 0), (2, 1), (3, 1), (3, 2), (4, 0)])
def test_radial_normalisation(n, l):
    val, _ = quad(lambda r: (hydrogen_radial(n, l, r) * r) ** 2, 0, 200, limit=200)
    assert val == pytest.approx(1.0, abs=1e-10)
    assert radial_integral(n, l, n, l, 0) == pytest.approx(1.0, abs=1e-13)


def test_radial_integrals_closed_form():
    # <1S|r|2P> = 128 sqrt(6)/243 and <r> expectation values n^2 (3 - l(l+1)/n^2)/2
    assert radial_integral(1, 0, 2, 1) == pytest.approx(128 * math.sqrt(6) / 243, rel=1e-13)
    for n, l in [(1, 0), (2, 1), (3, 2), (3, 0)]:
        expect = 0.5 * (3 * n * n - l * (l + 1))
        assert radial_integral(n, l, n, l, 1) == pytest.approx(expect, rel=1e-13)
    # the reference radial elements between the levels of the driven scheme
    assert abs(radial_integral(1, 0, 3, 1)) == pytest.approx(0.5166892, abs=1e-7)
    assert abs(radial_integral(2, 0, 3, 1)) == pytest.approx(3.0648154, abs=1e-7)


def test_dipole_selection_rules():
    assert dipole_matrix_element(level("1S"), level("2S")) == 0.0
    assert dipole_matrix_element(level("1S"), level("3D")) == 0.0
    z = dipole_matrix_element(level("1S"), level("2P"))
    assert abs(z) == pytest.approx(128 * math.sqrt(6) / 243 / math.sqrt(3), rel=1e-12)


def test_einstein_a():
    assert einstein_a(level("3P"), level("1S")) == pytest.approx(A_3P_1S, rel=1e-3)
    assert einstein_a(level("3P"), level("2S")) == pytest.approx(A_3P_2S, rel=1e-3)
    # 2P lifetime 1.596 ns
    assert 1 / einstein_a(level("2P"), level("1S")) == pytest.approx(1.596e-9, rel=1e-3)
    assert einstein_a(level("3S"), level("1S")) == 0.0
    with pytest.raises(ValueError):
        einstein_a(level("1S"), level("3P"))


def test_reduced_mass_scaling():
    a = einstein_a(level("3P"), level("1S"))
    b = einstein_a(level("3P"), level("1S"), reduced_mass=False)
    assert a / b == pytest.approx(1 / (1 + 1 / 1836.15267343), rel=1e-9)


@pytest.mark.parametrize("l", [0, 1, 2])
def test_basis_reproduces_bound_states(l):
    b = build_radial_basis(l, 60, 0.25)
    exact = [-0.5 / n ** 2 for n in range(l + 1, l + 4)]
    assert b.energies[:3] == pytest.approx(exact, abs=1e-10)
    assert b.orthonormality_residual() < 1e-10


def test_basis_validation():
    with pytest.raises(ValueError):
        build_radial_basis(0, 5)
    with pytest.raises(ValueError):
        build_radial_basis(0, 20, -1.0)
    with pytest.raises(ValueError):
        build_radial_basis(0, 20, float("nan"))


def test_trk_sum_rule():
    # sum_b (2/3)(E_b - E_1S) |<1S|r|b>|^2 = 1 over the pseudo-spectrum
    s = build_radial_basis(0, 60, 1.0)
    p = build_radial_basis(1, 60, 1.0)
    r = basis_dipole_matrix(s, p)[0]
    trk = 2 / 3 * np.sum((p.energies - s.energies[0]) * r ** 2)
    assert trk == pytest.approx(1.0, abs=1e-3)


def test_basis_dipole_matches_exact():
    s = build_radial_basis(0, 60, 0.25)
    p = build_radial_basis(1, 60, 0.25)
    d = basis_dipole_matrix(s, p)
    # pseudo-states 0, 1 of l=1 are 2P and 3P; sign of eigenvectors is arbitrary
    assert abs(d[0, 1]) == pytest.approx(abs(radial_integral(1, 0, 3, 1)), rel=1e-9)
    assert abs(d[1, 1]) == pytest.approx(abs(radial_integral(2, 0, 3, 1)), rel=1e-9)
    with pytest.raises(ValueError):
        basis_dipole_matrix(p, s)

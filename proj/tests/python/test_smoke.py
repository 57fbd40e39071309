from fractions import Fraction

import pytest

import dii


def test_xi_tilde_and_bernoulli():
    assert dii.xi_tilde(6) == Fraction(1, 252)
    for m in range(2, 41, 2):
        assert dii.xi_tilde(m) * m * (-1) ** (m // 2 + 1) == dii.bernoulli(m)


def test_eigenforms_weight_12():
    (delta,) = dii.eigenforms(12, 10)
    assert delta["coefficients"][2] == [Fraction(-24)]
    assert len(dii.eigenforms(32)) == 2


def test_siegel_series_examples():
    d4 = [[2, 0, 0, 1], [0, 2, 0, 1], [0, 0, 2, 1], [1, 1, 1, 2]]
    F = dii.siegel_series(d4, 2)
    assert F["coeffs"] == [1, -12, 32]
    assert F["functional_equation"] is True
    assert dii.siegel_series([[2, 0], [0, 2]], 3)["coeffs"] == [1]


def test_h_poly():
    assert dii.h_poly(2, 2) == [1, Fraction(3, 4), Fraction(1, 8)]


def test_saito_kurokawa_lift():
    L = dii.Lift(2, 10)
    for T in ([[2, 1], [1, 2]], [[4, 2], [2, 4]], [[2, 0], [0, 6]], [[4, 1], [1, 6]]):
        assert L.coefficient(T) == L.maass(T)
    assert L.coefficient([[2, 1], [1, 2]]) == ["1"]
    ap = int(Fraction(L.f_coeff(2)[0]))
    assert int(Fraction(L.spinor_eigenvalue(2)[0])) == ap + 2**9 + 2**8


def test_errors_carry_their_kind():
    with pytest.raises(dii.DiiError, match="precondition"):
        dii.Lift(2, 10).coefficient([[-2, 0], [0, -2]])
    with pytest.raises(dii.DiiError, match="unsupported"):
        dii.siegel_series([[2, 0, 0], [0, 2, 0], [0, 0, 2]], 2)


def test_example_norm_of_l18():
    norms = dii.critical_value_norms(32, 18)
    assert all(n.numerator % 211 == 0 for n in norms)

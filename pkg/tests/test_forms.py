from fractions import Fraction

import pytest

from campana.forms import BinaryForm, X_FORM


def test_evaluation_and_degree():
    F = BinaryForm({(2, 0): 1, (0, 2): 1})  # x^2 + y^2
    assert F.degree == 2
    assert F(Fraction(1, 2), 1) == Fraction(5, 4)
    assert F(3, 4) == 25


def test_from_x_coeffs():
    # x^2 - 3xy + 2y^2
    F = BinaryForm.from_x_coeffs([2, -3, 1])
    assert F(1, 1) == 0
    assert F(2, 1) == 0
    assert F(5, 1) == 12


def test_homogeneity_enforced():
    with pytest.raises(ValueError):
        BinaryForm({(1, 0): 1, (0, 2): 1})
    with pytest.raises(ValueError):
        BinaryForm({})


def test_dehomogenized():
    F = BinaryForm({(2, 0): 1, (1, 1): -3, (0, 2): 2})
    assert F.dehomogenized() == {2: Fraction(1), 1: Fraction(-3), 0: Fraction(2)}


def test_identity_form():
    assert X_FORM.degree == 1
    assert X_FORM(Fraction(7, 3), 1) == Fraction(7, 3)


def test_homogeneous_scaling():
    F = BinaryForm({(3, 0): 2, (1, 2): -1})
    lam = Fraction(5, 2)
    assert F(lam * 3, lam * 7) == lam**3 * F(3, 7)

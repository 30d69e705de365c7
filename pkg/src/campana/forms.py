"""Homogeneous binary forms F(x, y) with exact rational coefficients."""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Mapping, Sequence, Tuple


class BinaryForm:
    """F = sum of coef * x^i * y^j with i + j constant (homogeneity is
    checked at construction)."""

    __slots__ = ("coeffs", "degree")

    def __init__(self, coeffs: Mapping[Tuple[int, int], "Fraction | int"]):
        cleaned: Dict[Tuple[int, int], Fraction] = {}
        for (i, j), c in coeffs.items():
            c = Fraction(c)
            if c != 0:
                cleaned[(int(i), int(j))] = c
        if not cleaned:
            raise ValueError("zero form")
        degrees = {i + j for i, j in cleaned}
        if len(degrees) != 1:
            raise ValueError(f"form is not homogeneous: degrees {sorted(degrees)}")
        self.coeffs = cleaned
        self.degree = degrees.pop()

    @classmethod
    def from_x_coeffs(cls, coeffs: Sequence["Fraction | int"]) -> "BinaryForm":
        """coeffs[k] multiplies x^k y^(d-k), with d = len(coeffs) - 1."""
        d = len(coeffs) - 1
        return cls({(k, d - k): c for k, c in enumerate(coeffs)})

    def __call__(self, x: "Fraction | int", y: "Fraction | int") -> Fraction:
        x, y = Fraction(x), Fraction(y)
        return sum(
            (c * x**i * y**j for (i, j), c in self.coeffs.items()),
            start=Fraction(0),
        )

    def dehomogenized(self) -> Dict[int, Fraction]:
        """Coefficients of f(x) = F(x, 1) as {power: coef}."""
        return {i: c for (i, j), c in self.coeffs.items()}

    def __repr__(self):
        terms = " + ".join(
            f"{c}*x^{i}*y^{j}" for (i, j), c in sorted(self.coeffs.items())
        )
        return f"BinaryForm({terms})"


X_FORM = BinaryForm({(1, 0): 1})  # F = x, the identity divisor case

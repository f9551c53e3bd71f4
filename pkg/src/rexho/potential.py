"""Exact one-axis potential shapes.

A potential on one axis is stored as omega * F(z) with z = sqrt(omega/2) * x
and F an exact RationalFunction: the harmonic term (omega**2/4) x**2 is
omega * z**2/2, an inverse-square barrier c/x**2 is omega * (c/2)/z**2, and
the rational corrections and additive constants are first order in omega as
well, so a single dimensionless rational function carries the whole shape.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .ratpoly import Polynomial, RationalFunction, as_fraction


@dataclass(frozen=True)
class PotentialForm:
    """V(x) = omega * F(scale * x), scale = sqrt(omega/2).

    `domain` is "full" for the whole line or "half" for x > 0 with a
    Dirichlet wall at 0.  The denominator of F must be nodeless on the open
    domain; that is guaranteed by construction for the catalog families and
    re-checked numerically by the grid code.
    """

    omega: float
    f: RationalFunction
    domain: str = "full"

    def __post_init__(self):
        if self.domain not in ("full", "half"):
            raise ValueError(f"unknown domain {self.domain!r}")
        if self.omega <= 0:
            raise ValueError("omega must be positive")

    @property
    def scale(self) -> float:
        return math.sqrt(self.omega / 2.0)

    # -- exact views -------------------------------------------------------

    @property
    def quadratic_coefficient(self) -> Fraction:
        """Coefficient of z**2 in F (1/2 for every catalog family)."""
        return self.f.polynomial_part().coeff(2)

    @property
    def constant_term(self) -> Fraction:
        """Additive constant of F, i.e. the constant term in units of omega."""
        return self.f.polynomial_part().coeff(0)

    @property
    def inverse_square_coefficient(self) -> Fraction:
        """Coefficient c2 of 1/z**2 in F; in x the barrier term omega*c2/z**2
        equals 2*c2/x**2."""
        num, den = self.f.num, self.f.den
        t = den.trailing_zeros()
        if t == 0:
            return Fraction(0)
        if t > 2:
            raise ValueError("pole at 0 of order > 2")
        reduced_den = den.unshift(t)
        c = num.coeff(0) / reduced_den.coeff(0)
        return c if t == 2 else Fraction(0)

    def correction(self) -> RationalFunction:
        """F minus harmonic, barrier, and constant pieces: the rational
        correction that decays at infinity (in units of omega)."""
        base = RationalFunction(Polynomial.monomial(2, self.quadratic_coefficient))
        base = base + RationalFunction.constant(self.constant_term)
        c2 = self.inverse_square_coefficient
        if c2:
            base = base + RationalFunction(Polynomial.constant(c2), Polynomial.monomial(2))
        return self.f - base

    def shifted(self, delta) -> "PotentialForm":
        """New form with F + delta (delta exact, in units of omega).  Used to
        fold the factorization-energy shift into the potential."""
        return PotentialForm(self.omega, self.f + RationalFunction.constant(as_fraction(delta)), self.domain)

    # -- evaluation --------------------------------------------------------

    def __call__(self, x):
        z = self.scale * np.asarray(x, dtype=float)
        out = self.omega * self.f(z)
        return float(out) if np.isscalar(x) else out

    def __str__(self):
        return f"omega * [{self.f.format('z')}]  (z = sqrt(omega/2) x, omega = {self.omega}, {self.domain} line)"

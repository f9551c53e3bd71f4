"""Orthogonal polynomial family tests: hand values, recurrences, and weight
orthogonality through quadrature."""

from fractions import Fraction

import numpy as np

from rexho.numeric import integrate
from rexho.orthopoly import (
    exceptional_hermite,
    exceptional_laguerre,
    hermite,
    laguerre,
    pseudo_hermite,
)
from rexho.ratpoly import Polynomial

F = Fraction


def test_hermite_hand_values():
    assert hermite(0) == Polynomial.one()
    assert hermite(1) == Polynomial([0, 2])
    assert hermite(2) == Polynomial([-2, 0, 4])
    assert hermite(3) == Polynomial([0, -12, 0, 8])
    assert hermite(4) == Polynomial([12, 0, -48, 0, 16])


def test_hermite_leading_and_parity():
    for n in range(8):
        h = hermite(n)
        assert h.degree == n
        assert h.leading == 2**n
        # H_n(-z) = (-1)^n H_n(z)
        assert h.compose_neg() == h * ((-1) ** n)


def test_pseudo_hermite_hand_values():
    assert pseudo_hermite(0) == Polynomial.one()
    assert pseudo_hermite(1) == Polynomial([0, 2])
    assert pseudo_hermite(2) == Polynomial([2, 0, 4])
    assert pseudo_hermite(3) == Polynomial([0, 12, 0, 8])
    assert pseudo_hermite(4) == Polynomial([12, 0, 48, 0, 16])


def test_pseudo_hermite_is_sign_flipped_hermite():
    """P_m coefficients equal |H_m| coefficients: P_m(z) = (-i)^m H_m(iz)."""
    for m in range(9):
        h = hermite(m)
        p = pseudo_hermite(m)
        for k in range(m + 1):
            assert p.coeff(k) == abs(h.coeff(k))


def test_even_pseudo_hermite_positive_on_real_line():
    # nodelessness is what makes the even members usable as seeds
    zs = np.linspace(-6.0, 6.0, 241)
    for m in (0, 2, 4, 6):
        assert np.all(pseudo_hermite(m)(zs) > 0.0)


def test_laguerre_hand_values():
    a = F(1, 2)
    assert laguerre(0, a) == Polynomial.one()
    assert laguerre(1, a) == Polynomial([F(3, 2), -1])
    assert laguerre(2, a) == Polynomial([F(15, 8), F(-5, 2), F(1, 2)])
    assert laguerre(1, -a) == Polynomial([F(1, 2), -1])


def test_laguerre_value_at_zero_is_binomial():
    # L_n^(a)(0) = C(n+a, n)
    for n in range(6):
        for a in (F(-1, 2), F(1, 2), F(3, 2), F(2)):
            expected = F(1)
            for j in range(1, n + 1):
                expected *= (a + j) / j
            assert laguerre(n, a)(F(0)) == expected


def test_laguerre_derivative_identity():
    # d/ds L_n^(a) = -L_{n-1}^(a+1)
    for n in range(1, 6):
        for a in (F(-1, 2), F(1, 2), F(3)):
            assert laguerre(n, a).derivative() == -laguerre(n - 1, a + 1)


def test_hermite_orthogonality_quadrature():
    import math

    for j in range(5):
        for k in range(j, 5):
            val = integrate(
                lambda z, j=j, k=k: hermite(j)(z) * hermite(k)(z) * np.exp(-z * z),
                -12.0,
                12.0,
                abs_tol=1e-12,
            )
            if j == k:
                assert abs(val - 2**k * math.factorial(k) * math.sqrt(math.pi)) < 1e-10 * val
            else:
                assert abs(val) < 1e-10


def test_laguerre_orthogonality_quadrature():
    # substitute s = t^2 so the s^(1/2) branch point at the wall goes away
    a = 0.5
    for j in range(4):
        for k in range(4):
            val = integrate(
                lambda t, j=j, k=k: (
                    2.0 * t * laguerre(j, F(1, 2))(t * t) * laguerre(k, F(1, 2))(t * t) * (t * t) ** a * np.exp(-t * t)
                ),
                0.0,
                8.0,
                abs_tol=1e-12,
            )
            if j != k:
                assert abs(val) < 1e-9


def test_exceptional_hermite_structure():
    assert exceptional_hermite(0, 2) == Polynomial.one()
    # k=1, m=2: P_2 H_1 + H_0 P_2' = (4z^2+2)(2z) + 8z = 8z^3 + 12z
    assert exceptional_hermite(1, 2) == Polynomial([0, 12, 0, 8])
    for m in (2, 4):
        for k in range(1, 6):
            assert exceptional_hermite(k, m).degree == k + m


def test_exceptional_hermite_weight_orthogonality():
    """Members are orthogonal with weight exp(-z^2)/P_m^2; the k=0 constant
    participates on the same footing (it is the extra-state slot)."""
    for m in (2, 4):
        pm = pseudo_hermite(m)
        for j in range(4):
            for k in range(j + 1, 4):
                val = integrate(
                    lambda z, j=j, k=k, m=m, pm=pm: (
                        exceptional_hermite(j, m)(z) * exceptional_hermite(k, m)(z) * np.exp(-z * z) / pm(z) ** 2
                    ),
                    -12.0,
                    12.0,
                    abs_tol=1e-12,
                )
                assert abs(val) < 1e-9, (m, j, k, val)


def test_exceptional_laguerre_structure():
    # m=0 collapses to the classical shifted family
    for n in range(4):
        assert exceptional_laguerre(n, 0, F(1, 2)) == laguerre(n, F(3, 2))
    # n=1, m=1: (1+a+s)(2+a-s) + (1+a-s) = (1+a)(3+a) - s^2
    for a in (F(-1, 2), F(1, 2)):
        expected = Polynomial([(1 + a) * (3 + a), 0, -1])
        assert exceptional_laguerre(1, 1, a) == expected
    for m in range(4):
        for n in range(1, 5):
            assert exceptional_laguerre(n, m, F(1, 2)).degree == n + m


def test_exceptional_laguerre_denominator_factor_has_no_positive_zeros():
    # L_m^(a)(-s) > 0 for s >= 0: the state denominators never vanish
    ss = np.linspace(0.0, 30.0, 301)
    for m in range(5):
        for a in (F(-1, 2), F(1, 2)):
            assert np.all(laguerre(m, a).compose_neg()(ss) > 0.0)

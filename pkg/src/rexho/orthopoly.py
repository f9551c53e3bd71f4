"""Classical and exceptional orthogonal polynomial families with exact
rational coefficients.

All families are generated by three-term recurrences (or bilinear
combinations of recurrence output), never by closed-form coefficient
formulas, so they can serve as independent inputs to the potential and
eigenstate constructions.  Results are cached; Polynomial is immutable, so
sharing cached instances is safe.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .ratpoly import Polynomial, as_fraction

_Z = Polynomial.monomial(1)


@lru_cache(maxsize=None)
def hermite(n: int) -> Polynomial:
    """Physicists' Hermite polynomial H_n(z).

    H_{k+1} = 2 z H_k - 2 k H_{k-1}, H_0 = 1.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    m2, m1 = Polynomial.zero(), Polynomial.one()
    for k in range(n):
        m2, m1 = m1, 2 * _Z * m1 - (2 * k) * m2
    return m1


@lru_cache(maxsize=None)
def pseudo_hermite(m: int) -> Polynomial:
    """Pseudo-Hermite polynomial, the Hermite recurrence with the sign of the
    second term flipped:

        P_{k+1} = 2 z P_k + 2 k P_{k-1},  P_0 = 1,

    which is (-i)**m H_m(i z) with all coefficients nonnegative.  Even-index
    members are strictly positive on the real line, which is what makes them
    usable as nodeless seed factors.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    m2, m1 = Polynomial.zero(), Polynomial.one()
    for k in range(m):
        m2, m1 = m1, 2 * _Z * m1 + (2 * k) * m2
    return m1


@lru_cache(maxsize=None)
def laguerre(n: int, alpha) -> Polynomial:
    """Generalized Laguerre polynomial L_n^(alpha)(s).

    (k+1) L_{k+1} = (2k+1+alpha-s) L_k - (k+alpha) L_{k-1}, L_0 = 1.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    alpha = as_fraction(alpha)
    m2, m1 = Polynomial.zero(), Polynomial.one()
    for k in range(n):
        m2, m1 = m1, ((2 * k + 1 + alpha - _Z) * m1 - (k + alpha) * m2) * Fraction(1, k + 1)
    return m1


@lru_cache(maxsize=None)
def exceptional_hermite(k: int, m: int) -> Polynomial:
    """Exceptional Hermite polynomial attached to the pseudo-Hermite seed of
    index m.

    The k = 0 entry is fixed to the constant 1 (the ground-state slot); for
    k >= 1 it is the bilinear combination

        P_m H_k + H_{k-1} P_m'

    of Hermite and pseudo-Hermite polynomials, with degree k + m.  Members
    are mutually orthogonal on the real line with weight exp(-z^2)/P_m^2.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if m < 0:
        raise ValueError("m must be nonnegative")
    if k == 0:
        return Polynomial.one()
    pm = pseudo_hermite(m)
    return pm * hermite(k) + hermite(k - 1) * pm.derivative()


@lru_cache(maxsize=None)
def exceptional_laguerre(n: int, m: int, alpha) -> Polynomial:
    """Exceptional Laguerre polynomial attached to the seed of index m:

        L_m^(a)(-s) L_n^(a+1)(s) + L_{m-1}^(a+1)(-s) L_n^(a)(s)

    with the convention L_{-1} = 0, so the m = 0 family collapses to the
    classical L_n^(a+1).  Degree n + m.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if m < 0:
        raise ValueError("m must be nonnegative")
    alpha = as_fraction(alpha)
    first = laguerre(m, alpha).compose_neg() * laguerre(n, alpha + 1)
    if m == 0:
        return first
    return first + laguerre(m - 1, alpha + 1).compose_neg() * laguerre(n, alpha)

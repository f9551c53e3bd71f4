"""First-order factorization machinery.

A nodeless seed solution phi with H phi = eps phi (eps below the ground
state) defines W = (ln phi)' and the pair

    V_minus = W**2 - W' + eps      (the rationally extended potential)
    V_plus  = W**2 + W' + eps      (the starting potential)

with A = d/dx + W, A^dag = -d/dx + W, so that -d^2/dx^2 + V_minus - eps =
A^dag A exactly.  Energies quoted throughout the package are eigenvalues of
the factorized operator H - eps, which is what makes the extra bound state
sit exactly at zero.

Seeds are the non-normalizable inverted-weight solutions: on the full line
phi_m = P_m(z) exp(+z**2/2) with P_m the pseudo-Hermite polynomial (m even),
and on the half line phi_m = x**(alpha+1/2) L_m^(alpha)(-z**2) exp(+z**2/2).
The half-line shape with integer alpha = |gamma| is also the radial seed of
the cylindrical model.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .orthopoly import laguerre, pseudo_hermite
from .potential import PotentialForm
from .ratpoly import ExpPolyFunction, Polynomial, RationalFunction, as_fraction


class InvalidAlpha(ValueError):
    """Half-line index alpha outside the admissible range."""


class SeedHasInteriorZero(ValueError):
    """The requested seed vanishes inside the domain and cannot be inverted."""


class NonPositiveEnergy(ValueError):
    """State mapping was asked to divide by a non-positive factorization gap."""


class SpectralShift(enum.Enum):
    EXTRA_BOUND_STATE = "extra_bound_state"
    STRICTLY_ISOSPECTRAL = "strictly_isospectral"


@dataclass(frozen=True)
class SeedFunction:
    """A seed phi together with its exact data.

    shape        exact representation of phi (Gaussian sign +1)
    epsilon      factorization energy as a rational multiple of omega
    domain       "full" or "half" (the radial axis of the cylindrical model
                 is a half-line seed with alpha = |gamma|)
    """

    domain: str
    m: int
    alpha: Fraction | None
    omega: float
    shape: ExpPolyFunction
    epsilon: Fraction

    def __call__(self, x):
        return self.shape(x)

    @property
    def scale(self) -> float:
        return math.sqrt(self.omega / 2.0)


def build_seed(domain: str, m: int, alpha=None, omega: float = 1.0) -> SeedFunction:
    """Construct the seed of index m.

    Full line: m must be even (odd pseudo-Hermite polynomials vanish at the
    origin).  Half line: alpha must exceed -1; the one-dimensional catalog
    uses alpha = +-1/2 and the cylindrical radial factor uses alpha = |gamma|
    with the r**(alpha+1/2) prefactor carried exactly as a fractional power.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    if omega <= 0:
        raise ValueError("omega must be positive")
    scale = math.sqrt(omega / 2.0)
    if domain == "full":
        if alpha is not None:
            raise InvalidAlpha("full-line seeds take no alpha")
        if m % 2:
            raise SeedHasInteriorZero(f"pseudo-Hermite seed with odd m = {m} vanishes at the origin")
        shape = ExpPolyFunction(0, pseudo_hermite(m), None, +1, scale)
        eps = -(Fraction(m) + Fraction(1, 2))
        return SeedFunction("full", m, None, omega, shape, eps)
    if domain == "half":
        if alpha is None:
            raise InvalidAlpha("half-line seeds need alpha")
        alpha = as_fraction(alpha)
        if alpha <= -1:
            raise InvalidAlpha(f"alpha = {alpha} is not admissible (needs alpha > -1)")
        # L_m^(alpha)(-z**2) has strictly positive coefficients for alpha > -1,
        # so the seed is nodeless on the open half line.
        poly = laguerre(m, alpha).compose_neg_square()
        shape = ExpPolyFunction(alpha + Fraction(1, 2), poly, None, +1, scale)
        eps = -(2 * m + 1 + alpha)
        return SeedFunction("half", m, alpha, omega, shape, eps)
    raise ValueError(f"unknown domain {domain!r}")


@dataclass(frozen=True)
class Superpotential:
    """W(x) = scale * g(z), the logarithmic derivative of the seed."""

    g: RationalFunction
    omega: float
    seed: SeedFunction

    @property
    def scale(self) -> float:
        return math.sqrt(self.omega / 2.0)

    def __call__(self, x):
        z = self.scale * np.asarray(x, dtype=float)
        out = self.scale * self.g(z)
        return float(out) if np.isscalar(x) else out


def superpotential(seed: SeedFunction) -> Superpotential:
    """W = (ln phi)' = scale * (z + p/z + N'/N) in the z variable."""
    shape = seed.shape
    n = shape.num
    if not shape.den.degree == 0:
        raise ValueError("seed shapes are polynomial")
    p = shape.power
    # g = z + p/z + N'/N over the common denominator z*N
    num = Polynomial.monomial(2) * n + p * n + Polynomial.monomial(1) * n.derivative()
    den = Polynomial.monomial(1) * n
    return Superpotential(RationalFunction(num, den), seed.omega, seed)


@dataclass(frozen=True)
class PartnerPair:
    """The two members of a factorization, as exact potential forms, plus
    the factorization energy (rational, units of omega)."""

    v_plus: PotentialForm
    v_minus: PotentialForm
    epsilon: Fraction
    omega: float


def partner_pair(w: Superpotential) -> PartnerPair:
    """V_minus/plus = W**2 -/+ W' + eps, assembled exactly in z.

    W = scale*g gives W**2 = omega/2 * g**2 and W' = omega/2 * g', so both
    partners are omega times a rational function of z.
    """
    seed = w.seed
    eps = seed.epsilon
    g2 = w.g * w.g
    gp = w.g.derivative()
    half = Fraction(1, 2)
    f_minus = (g2 - gp) * half + eps
    f_plus = (g2 + gp) * half + eps
    return PartnerPair(
        PotentialForm(w.omega, f_plus, seed.domain),
        PotentialForm(w.omega, f_minus, seed.domain),
        eps,
        w.omega,
    )


def apply_A(w: Superpotential, f: ExpPolyFunction) -> ExpPolyFunction:
    """(d/dx + W) f, exact.  One power of scale is picked up."""
    return f.derivative() + (f * w.g).bump_scale_power(1)


def apply_A_dagger(w: Superpotential, f: ExpPolyFunction) -> ExpPolyFunction:
    """(-d/dx + W) f, exact."""
    return (-f.derivative()) + (f * w.g).bump_scale_power(1)


def map_state(w: Superpotential, psi_plus: ExpPolyFunction, e_gap: Fraction) -> ExpPolyFunction:
    """Image A^dag psi_plus of a partner eigenstate, exact and unnormalized.

    e_gap is the eigenvalue of psi_plus in the factorized pair, i.e.
    E_plus - eps in units of omega; the conventional normalization divides
    the image by sqrt(e_gap * omega), which the numeric layer applies when
    it compares against catalog states.
    """
    if as_fraction(e_gap) <= 0:
        raise NonPositiveEnergy(f"gap {e_gap} is not positive")
    return apply_A_dagger(w, psi_plus)


def inverse_seed(seed: SeedFunction) -> ExpPolyFunction:
    """1/phi, the candidate extra ground state of V_minus."""
    shape = seed.shape
    return ExpPolyFunction(-shape.power, shape.den, shape.num, -shape.gauss_sign, shape.scale, -shape.scale_power)


def classify_seed(seed: SeedFunction) -> SpectralShift:
    """Does 1/phi qualify as a bound state of V_minus?

    1/phi always has Gaussian decay (the seed grows like exp(+z**2/2)), so
    the question is boundary behavior.  Full line: the even pseudo-Hermite
    seeds are strictly positive, 1/phi is finite everywhere, and the family
    gains one state at zero energy.  Half line: 1/phi behaves like
    x**(-(alpha+1/2)) at the wall, which either diverges (alpha = +1/2) or
    tends to a nonzero constant (alpha = -1/2); both violate the Dirichlet
    condition, so the half-line families are strictly isospectral.
    """
    if seed.domain == "full":
        return SpectralShift.EXTRA_BOUND_STATE
    return SpectralShift.STRICTLY_ISOSPECTRAL


def q_vanishing_check(seeds: list[SeedFunction], points: np.ndarray) -> float:
    """Cross-derivative cancellation behind the vanishing of the higher
    supercharge components.

    For separable seed products Prod phi_j, each component of the candidate
    charge is a multiple of (W_j d_k - W_k d_j) Prod phi, which cancels
    because d_j acting on the product is multiplication by W_j.  The two
    sides are evaluated through independent code paths (exact derivative of
    the seed shape versus the superpotential rational function) and the
    worst relative mismatch over all points and axis pairs is returned.
    One-dimensional products have no cross term and return exactly 0.
    """
    dim = len(seeds)
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    if pts.shape[1] != dim:
        raise ValueError(f"points must have {dim} columns")
    if dim == 1:
        return 0.0
    ws = [superpotential(s) for s in seeds]
    vals = np.column_stack([seeds[j].shape(pts[:, j]) for j in range(dim)])
    derivs = np.column_stack([seeds[j].shape.derivative()(pts[:, j]) for j in range(dim)])
    wvals = np.column_stack([ws[j](pts[:, j]) for j in range(dim)])
    worst = 0.0
    for j in range(dim):
        for k in range(j + 1, dim):
            rest = np.prod(np.delete(vals, [j, k], axis=1), axis=1) if dim > 2 else np.ones(len(pts))
            # d_k (prod phi) = phi_k' * prod_{i != k} phi_i, and likewise for j
            t1 = wvals[:, j] * derivs[:, k] * vals[:, j] * rest
            t2 = wvals[:, k] * derivs[:, j] * vals[:, k] * rest
            scale = np.maximum(np.maximum(np.abs(t1), np.abs(t2)), 1e-300)
            worst = max(worst, float(np.max(np.abs(t1 - t2) / scale)))
    return worst

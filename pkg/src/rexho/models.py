"""Catalog of rationally extended oscillator models.

One-dimensional families
------------------------
Full line (m even):   V(x) = omega**2 x**2/4 - 2[(ln P_m)'' + omega/2], with
P_m the pseudo-Hermite seed polynomial in z = sqrt(omega/2) x.  The family
gains one bound state at zero energy; the excited levels sit at
(n + m + 1) omega.

Half line (x > 0, Dirichlet wall, alpha = +-1/2):
V(x) = omega**2 x**2/4 + 2*(alpha+1/2)/x**2 - 2[(ln L_m^(alpha)(-z**2))'' + omega/2],
strictly isospectral with levels 2(n + m + 1 + alpha) omega.

All energies are eigenvalues of the factorized operator H - eps (see susy);
PotentialForm keeps the closed form above, and the numeric layer discretizes
PotentialForm.shifted(-eps_coeff).

Multi-dimensional models are separable tensor products.  The state listing
follows the source families: either every full-line axis sits in its extra
zero mode (the global ground tuple) or every full-line axis is excited.
Mixed extra-times-excited products solve the separable equation too but are
not part of the listed solution set, and the degeneracy counts here are
counts over the listing.  For the mixed full/half family the excited
energies use (n1 + m1 + 1) omega_x + 2(n2 + m2 + beta + 1) omega_y, matching
the displayed eigenfunctions; a variant with (n1 + 2 m1 + 1) omega_x appears
in some prose summaries of the same family and is not implemented.

The cylindrical model (omega_x = omega_y = omega) reduces, for angular
momentum gamma, to a half-line radial factor with alpha = |gamma| (built
through the susy machinery, not transcribed) and a full-line axial factor.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction

import numpy as np

from .orthopoly import exceptional_hermite, exceptional_laguerre, hermite, laguerre, pseudo_hermite
from .potential import PotentialForm
from .ratpoly import ExpPolyFunction, Polynomial, RationalFunction, as_fraction
from .susy import InvalidAlpha, SeedFunction, build_seed, partner_pair, superpotential

HALF = Fraction(1, 2)


class OddMOnFullLine(ValueError):
    """Full-line seeds need even m."""


class OddM2(ValueError):
    """The cylindrical axial seed index m2 must be even."""


class IrrationalRatioUnsupported(ValueError):
    """Exact degeneracy counting needs rational frequency ratios."""


class InvalidSpec(ValueError):
    """Malformed model specification."""


def exact_frequency(omega) -> Fraction:
    """Exact rational value of a frequency given as int/Fraction/float.

    Floats are accepted only when they round-trip through a small-denominator
    rational, so accidental sqrt(2)-style inputs are refused instead of being
    silently treated as their binary expansion.
    """
    if isinstance(omega, (int, Fraction)):
        return Fraction(omega)
    if isinstance(omega, float):
        cand = Fraction(omega).limit_denominator(10 ** 6)
        # a few ulp of slack forgives accumulated float arithmetic (0.2 + 0.1)
        # but still rejects irrationals, whose best 10^6-denominator
        # approximants sit hundreds of ulp away
        if abs(float(cand) - omega) <= 4 * math.ulp(max(1.0, abs(omega))):
            return cand
        raise IrrationalRatioUnsupported(f"frequency {omega!r} is not a small rational")
    raise TypeError(f"cannot take {type(omega).__name__} as a frequency")


# ---------------------------------------------------------------------------
# one-dimensional building blocks

def _log_second_derivative(p: Polynomial) -> RationalFunction:
    """(ln p)'' = (p'' p - p'**2)/p**2, exact in z."""
    return RationalFunction(p.derivative().derivative() * p - p.derivative() * p.derivative(), p * p)


def full_line_potential(m: int, omega: float = 1.0) -> PotentialForm:
    """Closed-form rationally extended full-line potential for even m."""
    if m % 2:
        raise OddMOnFullLine(f"m = {m} is odd")
    f = RationalFunction(Polynomial.monomial(2, HALF)) - _log_second_derivative(pseudo_hermite(m)) - 1
    return PotentialForm(float(omega), f, "full")


def full_line_epsilon(m: int) -> Fraction:
    return -(m + HALF)


def full_line_energy(k: int, m: int) -> Fraction:
    """Level k of the full-line family in units of omega: 0 for the extra
    state, k + m for k >= 1 (oscillator level k-1 shifted by m + 1)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    return Fraction(0) if k == 0 else Fraction(k + m)


def full_line_state(k: int, m: int, omega: float = 1.0) -> "Eigenstate":
    """Normalizable eigenstate k of the full-line family (unnormalized).

    k = 0 is the extra state 1/phi_m; k >= 1 is the image of oscillator
    level k-1, proportional to Hhat_{k,m}(z) exp(-z**2/2) / P_m(z).
    """
    if m % 2:
        raise OddMOnFullLine(f"m = {m} is odd")
    scale = math.sqrt(float(omega) / 2.0)
    shape = ExpPolyFunction(0, exceptional_hermite(k, m), pseudo_hermite(m), -1, scale)
    return Eigenstate((k,), (full_line_energy(k, m),), (float(omega),), (shape,), ("full",))


def half_line_potential(m: int, alpha, omega: float = 1.0) -> PotentialForm:
    """Closed-form rationally extended half-line potential, alpha = +-1/2."""
    alpha = _check_half_alpha(alpha)
    k = alpha + HALF  # 0 or 1; the barrier 2k/x**2 is omega*k/z**2
    f = RationalFunction(Polynomial.monomial(2, HALF)) - _log_second_derivative(
        laguerre(m, alpha).compose_neg_square()
    ) - 1
    if k:
        f = f + RationalFunction(Polynomial.constant(k), Polynomial.monomial(2))
    return PotentialForm(float(omega), f, "half")


def half_line_epsilon(m: int, alpha) -> Fraction:
    alpha = _check_half_alpha(alpha)
    return -(2 * m + 1 + alpha)


def half_line_energy(n: int, m: int, alpha) -> Fraction:
    """Level n of the half-line family: 2(n + m + 1 + alpha), units of omega."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    alpha = _check_half_alpha(alpha)
    return 2 * (n + m + 1 + alpha)


def half_line_state(n: int, m: int, alpha, omega: float = 1.0) -> "Eigenstate":
    """Eigenstate n of the half-line family (unnormalized):
    x**(alpha+3/2) exp(-z**2/2) Lhat_{n,m}^(alpha)(z**2) / L_m^(alpha)(-z**2).
    """
    alpha = _check_half_alpha(alpha)
    scale = math.sqrt(float(omega) / 2.0)
    shape = ExpPolyFunction(
        alpha + Fraction(3, 2),
        exceptional_laguerre(n, m, alpha).compose_square(),
        laguerre(m, alpha).compose_neg_square(),
        -1,
        scale,
    )
    return Eigenstate((n,), (half_line_energy(n, m, alpha),), (float(omega),), (shape,), ("half",))


def _check_half_alpha(alpha) -> Fraction:
    alpha = as_fraction(alpha)
    if alpha not in (HALF, -HALF):
        raise InvalidAlpha(f"half-line catalog needs alpha = +-1/2, got {alpha}")
    return alpha


def oscillator_state(domain: str, n: int, alpha=None, omega: float = 1.0) -> tuple[ExpPolyFunction, Fraction]:
    """Eigenfunction n of the unextended oscillator (the plus-side partner)
    and its energy in units of omega: H_n(z) exp(-z**2/2) at (n + 1/2), or
    z**(alpha+1/2) L_n^(alpha)(z**2) exp(-z**2/2) at (2n + 1 + alpha).

    These are formal eigenfunctions of V_plus; for alpha = -1/2 they do not
    satisfy the half-line wall condition themselves, but their images under
    the intertwiner do.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    scale = math.sqrt(float(omega) / 2.0)
    if domain == "full":
        return ExpPolyFunction(0, hermite(n), None, -1, scale), n + HALF
    alpha = as_fraction(alpha)
    if alpha <= -1:
        raise InvalidAlpha(f"alpha = {alpha} must exceed -1")
    shape = ExpPolyFunction(alpha + HALF, laguerre(n, alpha).compose_square(), None, -1, scale)
    return shape, 2 * n + 1 + alpha


# ---------------------------------------------------------------------------
# axis abstraction

@dataclass(frozen=True)
class AxisModel:
    """One separable axis: domain "full" (m even) or "half" (alpha = +-1/2)."""

    domain: str
    omega: float
    m: int
    alpha: Fraction | None = None

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("m must be nonnegative")
        if self.omega <= 0:
            raise ValueError("omega must be positive")
        if self.domain == "full":
            if self.m % 2:
                raise OddMOnFullLine(f"m = {self.m} is odd")
            if self.alpha is not None:
                raise InvalidAlpha("full-line axes take no alpha")
        elif self.domain == "half":
            object.__setattr__(self, "alpha", _check_half_alpha(self.alpha))
        else:
            raise ValueError(f"unknown domain {self.domain!r}")

    def potential(self) -> PotentialForm:
        if self.domain == "full":
            return full_line_potential(self.m, self.omega)
        return half_line_potential(self.m, self.alpha, self.omega)

    def epsilon(self) -> Fraction:
        if self.domain == "full":
            return full_line_epsilon(self.m)
        return half_line_epsilon(self.m, self.alpha)

    def energy_coeff(self, k: int) -> Fraction:
        if self.domain == "full":
            return full_line_energy(k, self.m)
        return half_line_energy(k, self.m, self.alpha)

    def state_factor(self, k: int) -> ExpPolyFunction:
        if self.domain == "full":
            return full_line_state(k, self.m, self.omega).factors[0]
        return half_line_state(k, self.m, self.alpha, self.omega).factors[0]

    def seed(self) -> SeedFunction:
        if self.domain == "full":
            return build_seed("full", self.m, None, self.omega)
        return build_seed("half", self.m, self.alpha, self.omega)

    def levels(self, count: int) -> list[Fraction]:
        """Ascending axis levels in units of omega (k = 0 .. count-1)."""
        return [self.energy_coeff(k) for k in range(count)]

    def has_extra_state(self) -> bool:
        return self.domain == "full"

    def to_spec(self) -> dict:
        out = {"domain": self.domain, "omega": self.omega, "m": self.m}
        if self.alpha is not None:
            out["alpha"] = str(self.alpha)
        return out


# ---------------------------------------------------------------------------
# eigenstates

@dataclass(frozen=True)
class Eigenstate:
    """Separable eigenstate: product of one exact factor per axis.

    energy_coeffs are exact rational multiples of the respective axis
    frequencies; norm is a floating overall factor fixed by the numeric
    layer (1.0 until normalized).
    """

    indices: tuple[int, ...]
    energy_coeffs: tuple[Fraction, ...]
    omegas: tuple[float, ...]
    factors: tuple[ExpPolyFunction, ...]
    domains: tuple[str, ...]
    norm: float = 1.0

    @property
    def energy(self) -> float:
        return float(sum(float(c) * w for c, w in zip(self.energy_coeffs, self.omegas)))

    @property
    def dimension(self) -> int:
        return len(self.factors)

    def __call__(self, *coords):
        if len(coords) != self.dimension:
            raise ValueError(f"state takes {self.dimension} coordinate arrays")
        out = self.norm
        for f, c in zip(self.factors, coords):
            out = out * f(c)
        return out

    def with_norm(self, norm: float) -> "Eigenstate":
        return replace(self, norm=float(norm))

    def energy_json(self) -> dict:
        return {
            "coeffs": [str(c) for c in self.energy_coeffs],
            "omegas": list(self.omegas),
            "value": self.energy,
        }


# ---------------------------------------------------------------------------
# tensor models

@dataclass(frozen=True)
class TensorModel:
    """Separable product of 1 to 3 rationally extended axes."""

    axes: tuple[AxisModel, ...]

    def __post_init__(self):
        if not 1 <= len(self.axes) <= 3:
            raise ValueError("tensor models have 1 to 3 axes")

    @property
    def dimension(self) -> int:
        return len(self.axes)

    def is_listed(self, indices: tuple[int, ...]) -> bool:
        """Membership in the catalog listing: all axes at 0 (global ground),
        or every full-line axis excited (index >= 1)."""
        if len(indices) != self.dimension or any(k < 0 for k in indices):
            return False
        if all(k == 0 for k in indices):
            return True
        return all(k >= 1 for ax, k in zip(self.axes, indices) if ax.has_extra_state())

    def state(self, indices) -> Eigenstate:
        indices = tuple(int(k) for k in indices)
        if not self.is_listed(indices):
            raise ValueError(f"indices {indices} are not in the catalog listing")
        return Eigenstate(
            indices,
            tuple(ax.energy_coeff(k) for ax, k in zip(self.axes, indices)),
            tuple(ax.omega for ax in self.axes),
            tuple(ax.state_factor(k) for ax, k in zip(self.axes, indices)),
            tuple(ax.domain for ax in self.axes),
        )

    def listed_indices(self, n_max: int):
        """All catalog tuples with every index <= n_max, lexicographic."""
        ranges = [range(n_max + 1)] * self.dimension
        for tup in _product(ranges):
            if self.is_listed(tup):
                yield tup

    def energy_value(self, indices) -> Fraction:
        """Exact energy of a tuple, using exact frequencies."""
        freqs = [exact_frequency(ax.omega) for ax in self.axes]
        return sum(
            (ax.energy_coeff(k) * w for ax, k, w in zip(self.axes, indices, freqs)),
            Fraction(0),
        )

    def to_spec(self) -> dict:
        return {"kind": "tensor", "axes": [ax.to_spec() for ax in self.axes]}


def _product(ranges):
    if len(ranges) == 1:
        for a in ranges[0]:
            yield (a,)
    elif len(ranges) == 2:
        for a in ranges[0]:
            for b in ranges[1]:
                yield (a, b)
    else:
        for a in ranges[0]:
            for b in ranges[1]:
                for c in ranges[2]:
                    yield (a, b, c)


def assemble_tensor(axes) -> TensorModel:
    """Build a separable model from AxisModel entries (or spec dicts)."""
    built = []
    for ax in axes:
        if isinstance(ax, AxisModel):
            built.append(ax)
        else:
            built.append(_axis_from_spec(ax))
    return TensorModel(tuple(built))


def degeneracy(model, energy, n_max: int = 20) -> tuple[int, list[tuple[int, ...]]]:
    """Count catalog tuples with the given exact energy.

    Frequencies and the target are converted to exact rationals;
    IrrationalRatioUnsupported is raised when that is not possible.
    Returns (count, witnesses) with witnesses in lexicographic order.
    """
    target = exact_frequency(energy) if not isinstance(energy, Fraction) else energy
    witnesses = [tup for tup in model.listed_indices(n_max) if model.energy_value(tup) == target]
    return len(witnesses), witnesses


# ---------------------------------------------------------------------------
# cylindrical model

@dataclass(frozen=True)
class CylindricalModel:
    """Cylindrically symmetric 3D model with omega_x = omega_y = omega.

    After peeling off exp(i gamma phi)/sqrt(r), the radial factor solves a
    half-line problem with centrifugal barrier (gamma**2 - 1/4)/r**2 whose
    rational extension comes from the seed with alpha = |gamma|; the axial
    factor is a full-line family with index m2 (even).  The radial part is
    strictly isospectral, the axial part contributes the extra state.
    """

    gamma: int
    m1: int
    m2: int
    omega: float
    omega_z: float

    def __post_init__(self):
        if self.m2 % 2:
            raise OddM2(f"m2 = {self.m2} is odd")
        if self.m1 < 0 or self.m2 < 0:
            raise ValueError("seed indices must be nonnegative")
        if self.omega <= 0 or self.omega_z <= 0:
            raise ValueError("frequencies must be positive")

    @property
    def abs_gamma(self) -> int:
        return abs(self.gamma)

    @property
    def dimension(self) -> int:
        return 2

    def radial_seed(self) -> SeedFunction:
        return build_seed("half", self.m1, Fraction(self.abs_gamma), self.omega)

    def radial_potential(self) -> PotentialForm:
        """Effective radial potential, built through the factorization (the
        closed form is kept separately for the discrepancy report)."""
        return partner_pair(superpotential(self.radial_seed())).v_minus

    def axial_potential(self) -> PotentialForm:
        return full_line_potential(self.m2, self.omega_z)

    def radial_epsilon(self) -> Fraction:
        return -(2 * self.m1 + 1 + Fraction(self.abs_gamma))

    def axial_epsilon(self) -> Fraction:
        return full_line_epsilon(self.m2)

    def radial_energy(self, n1: int) -> Fraction:
        """2(n1 + m1 + |gamma| + 1), units of omega."""
        if n1 < 0:
            raise ValueError("n1 must be nonnegative")
        return Fraction(2 * (n1 + self.m1 + self.abs_gamma + 1))

    def axial_energy(self, k2: int) -> Fraction:
        return full_line_energy(k2, self.m2)

    def radial_factor(self, n1: int) -> ExpPolyFunction:
        a = Fraction(self.abs_gamma)
        scale = math.sqrt(self.omega / 2.0)
        return ExpPolyFunction(
            a + Fraction(3, 2),
            exceptional_laguerre(n1, self.m1, a).compose_square(),
            laguerre(self.m1, a).compose_neg_square(),
            -1,
            scale,
        )

    def is_listed(self, indices) -> bool:
        n1, k2 = indices
        if n1 < 0 or k2 < 0:
            return False
        return k2 >= 1 or (n1 == 0 and k2 == 0)

    def state(self, indices) -> Eigenstate:
        n1, k2 = (int(k) for k in indices)
        if not self.is_listed((n1, k2)):
            raise ValueError(f"indices {(n1, k2)} are not in the catalog listing")
        axial = full_line_state(k2, self.m2, self.omega_z).factors[0]
        return Eigenstate(
            (n1, k2),
            (self.radial_energy(n1), self.axial_energy(k2)),
            (self.omega, self.omega_z),
            (self.radial_factor(n1), axial),
            ("half", "full"),
        )

    def listed_indices(self, n_max: int):
        for tup in _product([range(n_max + 1), range(n_max + 1)]):
            if self.is_listed(tup):
                yield tup

    def energy_value(self, indices) -> Fraction:
        n1, k2 = indices
        w = exact_frequency(self.omega)
        wz = exact_frequency(self.omega_z)
        return self.radial_energy(n1) * w + self.axial_energy(k2) * wz

    def ground_energy(self) -> Fraction:
        return self.radial_energy(0)

    def to_spec(self) -> dict:
        return {
            "kind": "cylindrical",
            "gamma": self.gamma,
            "axes": [
                {"domain": "radial", "omega": self.omega, "m": self.m1},
                {"domain": "full", "omega": self.omega_z, "m": self.m2},
            ],
        }


def cylindrical_model(gamma: int, m1: int, m2: int, omega: float = 1.0, omega_z: float = 1.0) -> CylindricalModel:
    return CylindricalModel(int(gamma), int(m1), int(m2), float(omega), float(omega_z))


def cylindrical_reference_radial(gamma: int, m1: int, omega: float = 1.0) -> PotentialForm:
    """Transcription of the closed-form effective radial potential as
    printed, with the stray Laguerre subscript read as m1 - 2:

        omega**2 r**2/4 + (gamma**2 - 1/4)/r**2 + 2|gamma|/r**2 + 1/r**2
        - (2 m1 + 1) omega
        + 2 r**2 omega**2 Lb**2 / La**2
        + omega [ (2|gamma| + r**2 omega) Lb - r**2 omega Lc ] / La

    with La = L_{m1}^(|g|), Lb = L_{m1-1}^(|g|+1), Lc = L_{m1-2}^(|g|+2),
    all at argument -omega r**2/2.  Kept only for cross-checking the
    seed-built potential; see cylindrical_closed_form_report.
    """
    g = abs(int(gamma))
    la = laguerre(m1, Fraction(g)).compose_neg_square()
    lb = laguerre(m1 - 1, Fraction(g + 1)).compose_neg_square() if m1 >= 1 else Polynomial.zero()
    lc = laguerre(m1 - 2, Fraction(g + 2)).compose_neg_square() if m1 >= 2 else Polynomial.zero()
    z2 = Polynomial.monomial(2)
    f = RationalFunction(Polynomial.monomial(2, HALF))
    f = f + RationalFunction(Polynomial.constant(Fraction(4 * g * g - 1, 8) + Fraction(g, 1) + HALF), z2)
    f = f - (2 * m1 + 1)
    f = f + RationalFunction(4 * z2 * lb * lb, la * la)
    f = f + RationalFunction((2 * g + 2 * z2) * lb - 2 * z2 * lc, la)
    return PotentialForm(float(omega), f, "half")


def cylindrical_reference_axial(m2: int, omega_z: float = 1.0) -> PotentialForm:
    """Transcription of the printed axial part, whose quadratic term reads
    omega_z**2 z**2/2 (the factorization gives /4)."""
    if m2 % 2:
        raise OddM2(f"m2 = {m2} is odd")
    f = RationalFunction(Polynomial.monomial(2, 1)) - _log_second_derivative(pseudo_hermite(m2)) - 1
    return PotentialForm(float(omega_z), f, "full")


def cylindrical_closed_form_report(model: CylindricalModel) -> dict:
    """Exact comparison of the seed-built effective potential against the
    transcribed closed form.  No equality is asserted; the report records
    the exact differences and the two suspected misprints."""
    built_r = model.radial_potential()
    printed_r = cylindrical_reference_radial(model.gamma, model.m1, model.omega)
    built_a = model.axial_potential()
    printed_a = cylindrical_reference_axial(model.m2, model.omega_z)
    diff_r = printed_r.f - built_r.f
    diff_a = printed_a.f - built_a.f
    notes = [
        "closed form printed with subscript 'm-2' on the L^(|gamma|+2) factor; transcribed as m1-2",
        "printed axial quadratic term omega_z^2 z^2/2 differs from the factorized omega_z^2 z^2/4",
    ]
    return {
        "radial_difference": diff_r.to_json(),
        "radial_matches_construction": diff_r.is_zero(),
        "axial_difference": diff_a.to_json(),
        "axial_matches_construction": diff_a.is_zero(),
        "axial_quadratic_coefficient": {
            "printed": str(printed_a.quadratic_coefficient),
            "constructed": str(built_a.quadratic_coefficient),
        },
        "notes": notes,
    }


# ---------------------------------------------------------------------------
# model specs

def _axis_from_spec(d: dict) -> AxisModel:
    try:
        domain = d["domain"]
        omega = float(d["omega"])
        m = int(d["m"])
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidSpec(f"bad axis entry {d!r}") from exc
    alpha = d.get("alpha")
    if alpha is not None:
        try:
            alpha = Fraction(alpha)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidSpec(f"bad alpha {alpha!r}") from exc
    try:
        return AxisModel(domain, omega, m, alpha)
    except ValueError as exc:
        raise InvalidSpec(str(exc)) from exc


def from_spec(spec: dict):
    """Build a model from its JSON spec.

    {"kind": "tensor", "axes": [{"domain": "full"|"half", "omega": w,
    "m": m, "alpha": "1/2"}]} or {"kind": "cylindrical", "gamma": g,
    "axes": [{"domain": "radial", "omega": w, "m": m1},
             {"domain": "full", "omega": wz, "m": m2}]}.
    """
    if not isinstance(spec, dict):
        raise InvalidSpec("model spec must be a JSON object")
    kind = spec.get("kind")
    if kind == "tensor":
        axes = spec.get("axes")
        if not isinstance(axes, list) or not axes:
            raise InvalidSpec("tensor spec needs a nonempty axes list")
        return assemble_tensor(axes)
    if kind == "cylindrical":
        axes = spec.get("axes")
        if not isinstance(axes, list) or len(axes) != 2:
            raise InvalidSpec("cylindrical spec needs exactly two axes")
        radial, axial = axes
        if radial.get("domain") != "radial" or axial.get("domain") != "full":
            raise InvalidSpec("cylindrical axes must be [radial, full]")
        try:
            return cylindrical_model(
                int(spec.get("gamma", 0)),
                int(radial["m"]),
                int(axial["m"]),
                float(radial["omega"]),
                float(axial["omega"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, (OddM2, InvalidSpec)):
                raise
            raise InvalidSpec(f"bad cylindrical spec {spec!r}") from exc
    raise InvalidSpec(f"unknown model kind {kind!r}")

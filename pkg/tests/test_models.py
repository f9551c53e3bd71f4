"""Catalog-level tests: closed-form potentials and eigenfunctions against
hand transcriptions, exact energies, listing rules, and the assembled 2D/3D
models.

The transcription constants below are typed directly from the published
closed forms in the u = omega*x**2 variable.  Two of the m = 3 eigenfunction
multipliers are misprinted at the source (their denominators contradict the
same source's own potential table); those rows are checked against the
corrected Laguerre forms and the inconsistency of the printed ones is
asserted explicitly rather than silently patched.
"""

from fractions import Fraction

import numpy as np
import pytest

from rexho.models import (
    AxisModel,
    CylindricalModel,
    InvalidSpec,
    IrrationalRatioUnsupported,
    OddM2,
    OddMOnFullLine,
    TensorModel,
    assemble_tensor,
    cylindrical_closed_form_report,
    cylindrical_model,
    cylindrical_reference_radial,
    degeneracy,
    exact_frequency,
    from_spec,
    full_line_energy,
    full_line_potential,
    full_line_state,
    half_line_energy,
    half_line_potential,
    half_line_state,
    oscillator_state,
)
from rexho.orthopoly import exceptional_hermite, exceptional_laguerre, laguerre, pseudo_hermite
from rexho.ratpoly import ExpPolyFunction, Polynomial, RationalFunction
from rexho.susy import build_seed, partner_pair, superpotential

F = Fraction
HALF = F(1, 2)

U = Polynomial([0, 0, 2])  # u = omega x**2 = 2 z**2
S = Polynomial([0, HALF])  # s = omega x**2 / 2 = u/2


def u_poly(*coeffs):
    """Polynomial in u from low-order-first integer coefficients."""
    return Polynomial(coeffs)


def table_row(a_u, b_u, q_u, alpha):
    """Closed-form F(z) of a transcribed potential row:
    z**2/2 [+ 1/z**2] - 1 + A(u)/Q(u) + B(u)/Q(u)**2 with u = 2 z**2."""
    f = RationalFunction(Polynomial.monomial(2, HALF)) - 1
    if alpha == HALF:
        f = f + RationalFunction(Polynomial.one(), Polynomial.monomial(2))
    qa = q_u.compose(U)
    f = f + RationalFunction(a_u.compose(U), qa)
    f = f + RationalFunction(b_u.compose(U), qa * qa)
    return f


# (m, alpha) -> (A, B, Q), numerators/denominator in u, units of omega
POTENTIAL_ROWS = {
    (0, -HALF): (u_poly(0), u_poly(0), u_poly(1)),
    (0, HALF): (u_poly(0), u_poly(0), u_poly(1)),
    (1, -HALF): (u_poly(4), u_poly(-8), u_poly(1, 1)),
    (1, HALF): (u_poly(4), u_poly(-24), u_poly(3, 1)),
    (2, -HALF): (u_poly(-24, 8), u_poly(0, 192), u_poly(3, 6, 1)),
    (2, HALF): (u_poly(-40, 8), u_poly(0, 320), u_poly(15, 10, 1)),
    (3, -HALF): (u_poly(540, 0, 12), u_poly(-10800, -21600, -6480), u_poly(15, 45, 15, 1)),
    (3, HALF): (u_poly(588, 0, 12), u_poly(-105840, -70560, -11088), u_poly(105, 105, 21, 1)),
}

# (m, alpha) -> (num, den) of the bracket multiplier in u; m <= 2 rows are
# verbatim, the multiplier is simply absent (ratio 1) for m = 0
MULTIPLIER_ROWS = {
    (0, -HALF): (u_poly(1), u_poly(1)),
    (0, HALF): (u_poly(1), u_poly(1)),
    (1, -HALF): (u_poly(3, 1), u_poly(1, 1)),
    (1, HALF): (u_poly(5, 1), u_poly(3, 1)),
    (2, -HALF): (u_poly(15, 10, 1), u_poly(3, 6, 1)),
    (2, HALF): (u_poly(35, 14, 1), u_poly(15, 10, 1)),
}

# m = 3 rows as printed (corrupted) and as corrected from the Laguerre forms
PRINTED_M3 = {
    (3, -HALF): (u_poly(105, 105, 42, 4), u_poly(15, 45, 30, 4)),
    (3, HALF): (u_poly(315, 189, 27, 2), u_poly(105, 105, 42, 4)),
}
CORRECTED_M3 = {
    (3, -HALF): (u_poly(105, 105, 21, 1), u_poly(15, 45, 15, 1)),
    (3, HALF): (u_poly(315, 189, 27, 1), u_poly(105, 105, 21, 1)),
}


@pytest.mark.parametrize("m,alpha", sorted(POTENTIAL_ROWS, key=str))
def test_half_line_potentials_match_transcription(m, alpha):
    a_u, b_u, q_u = POTENTIAL_ROWS[(m, alpha)]
    assert half_line_potential(m, alpha).f == table_row(a_u, b_u, q_u, alpha)


def test_full_line_potentials_match_even_rows():
    # the full-line m=0 potential is the alpha=-1/2 row without the wall
    assert full_line_potential(0).f == table_row(u_poly(0), u_poly(0), u_poly(1), -HALF)
    pot = full_line_potential(2)
    assert pot.domain == "full"
    # built from the pseudo-Hermite seed: denominator P_2-squared in z
    assert pot.f.den == (pseudo_hermite(2).monic()) ** 2


def multiplier(m, alpha):
    """My bracket multiplier L_m^(a+1)(-s)/L_m^(a)(-s) as a canonical
    rational function of u."""
    num = laguerre(m, alpha + 1).compose_neg().compose(S)
    den = laguerre(m, alpha).compose_neg().compose(S)
    return RationalFunction(num, den)


@pytest.mark.parametrize("m,alpha", sorted(MULTIPLIER_ROWS, key=str))
def test_eigenfunction_multipliers_match_transcription(m, alpha):
    num_u, den_u = MULTIPLIER_ROWS[(m, alpha)]
    assert multiplier(m, alpha) == RationalFunction(num_u, den_u)


@pytest.mark.parametrize("alpha", [-HALF, HALF])
def test_m3_multiplier_rows_are_misprinted_at_source(alpha):
    """The printed m=3 multipliers contradict the same source's potential
    table: the multiplier denominator must be proportional to the potential
    denominator Q (both are L_3^(a)(-s)), and the printed one is not."""
    printed = RationalFunction(*PRINTED_M3[(3, alpha)])
    corrected = RationalFunction(*CORRECTED_M3[(3, alpha)])
    mine = multiplier(3, alpha)
    assert mine == corrected
    assert mine != printed
    q_u = POTENTIAL_ROWS[(3, alpha)][2]
    den_printed = PRINTED_M3[(3, alpha)][1]
    den_corrected = CORRECTED_M3[(3, alpha)][1]
    # proportionality test: p/q is constant iff the rational function reduces
    # to a degree-0/degree-0 form
    ratio_ok = RationalFunction(den_corrected, q_u)
    ratio_bad = RationalFunction(den_printed, q_u)
    assert ratio_ok.num.degree == 0 and ratio_ok.den.degree == 0
    assert ratio_bad.num.degree > 0 or ratio_bad.den.degree > 0


def test_bracket_identity():
    """The displayed eigenfunction form equals the constructive one:
    Lhat_{n,m} = L_m^(a)(-s) L_{n-1}^(a+1)(s) + L_m^(a+1)(-s) L_n^(a)(s)."""
    for m in range(4):
        for n in range(1, 5):
            for a in (-HALF, HALF):
                displayed = laguerre(m, a).compose_neg() * laguerre(n - 1, a + 1) + laguerre(
                    m, a + 1
                ).compose_neg() * laguerre(n, a)
                assert exceptional_laguerre(n, m, a) == displayed


def test_half_line_state_structure():
    for m in range(3):
        for a in (-HALF, HALF):
            for n in range(3):
                st = half_line_state(n, m, a, omega=2.0)
                # states vanish like x^(alpha+3/2) at the wall, one power
                # above the seed's alpha+1/2
                expected = ExpPolyFunction(
                    a + F(3, 2),
                    exceptional_laguerre(n, m, a).compose_square(),
                    laguerre(m, a).compose_neg_square(),
                    -1,
                    1.0,
                )
                assert st.factors[0] == expected
                assert st.domains == ("half",)


def test_full_line_state_structure():
    for m in (0, 2):
        for k in range(4):
            st = full_line_state(k, m)
            expected = ExpPolyFunction(0, exceptional_hermite(k, m), pseudo_hermite(m), -1, np.sqrt(0.5))
            assert st.factors[0] == expected
            assert st.indices == (k,)


def test_energies():
    assert full_line_energy(0, 2) == 0
    assert [full_line_energy(k, 2) for k in (1, 2, 3, 4, 5)] == [3, 4, 5, 6, 7]
    assert [half_line_energy(n, 1, -HALF) for n in range(4)] == [3, 5, 7, 9]
    assert [half_line_energy(n, 1, HALF) for n in range(4)] == [5, 7, 9, 11]
    assert half_line_energy(0, 0, -HALF) == 1  # plain oscillator, shifted
    _, e = oscillator_state("full", 3)
    assert e == F(7, 2)
    _, e = oscillator_state("half", 2, HALF)
    assert e == F(11, 2)


def test_axis_levels_and_extra_state():
    ax = AxisModel("full", 1.0, 2, None)
    assert ax.has_extra_state()
    assert ax.levels(6) == [0, 3, 4, 5, 6, 7]
    ax = AxisModel("half", 1.0, 1, HALF)
    assert not ax.has_extra_state()
    assert ax.levels(4) == [5, 7, 9, 11]


def test_axis_validation():
    with pytest.raises(OddMOnFullLine):
        AxisModel("full", 1.0, 1, None)
    with pytest.raises(ValueError):
        AxisModel("full", -1.0, 2, None)


@pytest.mark.parametrize(
    "domain,m,alpha,omega",
    [("full", 0, None, 1.0), ("full", 2, None, 2.0)]
    + [("half", m, a, 1.0) for m in range(4) for a in (-HALF, HALF)],
)
def test_seed_reconstruction_equals_catalog(domain, m, alpha, omega):
    """Criterion behind every closed form: rebuilding V- from the seed
    through the factorization reproduces the catalog potential exactly."""
    rebuilt = partner_pair(superpotential(build_seed(domain, m, alpha, omega))).v_minus
    catalog = full_line_potential(m, omega) if domain == "full" else half_line_potential(m, alpha, omega)
    assert rebuilt.f == catalog.f
    assert rebuilt.omega == catalog.omega
    assert rebuilt.domain == catalog.domain


def test_exact_frequency():
    assert exact_frequency(0.5) == HALF
    assert exact_frequency(F(2, 3)) == F(2, 3)
    assert exact_frequency(2) == 2
    assert exact_frequency(1.0 / 3.0) == F(1, 3)
    with pytest.raises(IrrationalRatioUnsupported):
        exact_frequency(np.pi)


def test_tensor_listing_rule():
    model = assemble_tensor([AxisModel("full", 1.0, 2, None), AxisModel("full", 1.0, 2, None)])
    assert model.is_listed((0, 0))
    assert model.is_listed((1, 1)) and model.is_listed((3, 1))
    assert not model.is_listed((0, 1)) and not model.is_listed((2, 0))
    mixed = assemble_tensor([AxisModel("full", 1.0, 2, None), AxisModel("half", 1.0, 1, HALF)])
    assert mixed.is_listed((0, 0))
    assert mixed.is_listed((2, 0))  # half axis has no extra state to protect
    assert not mixed.is_listed((0, 2))


def test_tensor_energy_and_degeneracy():
    model = assemble_tensor(
        [AxisModel("full", 1.0, 2, None), AxisModel("full", 1.0, 2, None)]
    )
    assert model.energy_value((0, 0)) == 0
    assert model.energy_value((1, 3)) == 8
    count, witnesses = degeneracy(model, 8)
    assert count == 3
    assert witnesses == [(1, 3), (2, 2), (3, 1)]
    count, witnesses = degeneracy(model, 0)
    assert count == 1 and witnesses == [(0, 0)]


def test_mixed_tensor_multiplicity_differs():
    pure = assemble_tensor([AxisModel("full", 1.0, 2, None), AxisModel("full", 1.0, 2, None)])
    mixed = assemble_tensor([AxisModel("full", 1.0, 2, None), AxisModel("half", 1.0, 1, HALF)])
    # both models have catalog states at E = 8, with different multiplicity
    assert degeneracy(pure, 8)[0] == 3
    assert degeneracy(mixed, 8)[0] == 1


def test_tensor_energy_with_rational_frequencies():
    model = assemble_tensor([AxisModel("full", 0.5, 2, None), AxisModel("full", 1.0 / 3.0, 0, None)])
    # (k1+2)/2 + (k2)/3, exact
    assert model.energy_value((1, 1)) == F(3, 2) + F(1, 3)


def test_tensor_state_is_separable_product():
    model = assemble_tensor([AxisModel("full", 1.0, 2, None), AxisModel("half", 2.0, 1, -HALF)])
    st = model.state((1, 2))
    xs = np.array([0.7, -0.4, 1.9])
    ys = np.array([0.3, 1.1, 2.4])
    vals = st(xs, ys)
    assert np.allclose(vals, st.factors[0](xs) * st.factors[1](ys), rtol=1e-14)
    assert st.dimension == 2
    assert st.domains == ("full", "half")
    assert st.energy == pytest.approx(3.0 + 2.0 * 7.0)


def test_tensor_rejects_unlisted_indices():
    model = assemble_tensor([AxisModel("full", 1.0, 2, None), AxisModel("full", 1.0, 2, None)])
    with pytest.raises(ValueError):
        model.state((0, 1))


def test_cylindrical_radial_matches_printed_closed_form():
    """With the stray subscript read as m1-2, the printed effective radial
    potential equals the seed-built one exactly."""
    for gamma, m1 in [(0, 0), (1, 1), (1, 2), (2, 1), (-1, 1), (2, 3)]:
        model = cylindrical_model(gamma, m1, 0)
        assert model.radial_potential().f == cylindrical_reference_radial(gamma, m1).f


def test_cylindrical_report_flags_axial_quadratic_term():
    report = cylindrical_closed_form_report(cylindrical_model(1, 1, 2))
    assert report["radial_matches_construction"] is True
    assert report["axial_matches_construction"] is False
    assert report["axial_quadratic_coefficient"] == {"printed": "1", "constructed": "1/2"}
    assert len(report["notes"]) == 2
    assert any("m1-2" in note or "m-2" in note for note in report["notes"])
    assert any("quadratic" in note for note in report["notes"])


def test_cylindrical_energies_and_listing():
    model = cylindrical_model(1, 1, 2)
    assert [model.radial_energy(n) for n in range(4)] == [6, 8, 10, 12]
    assert model.axial_energy(0) == 0
    assert [model.axial_energy(k) for k in (1, 2, 3)] == [3, 4, 5]
    assert model.ground_energy() == 6
    assert model.is_listed((0, 0)) and model.is_listed((4, 1))
    assert not model.is_listed((1, 0))
    assert model.energy_value((0, 0)) == 6
    assert model.energy_value((1, 2)) == 8 + 4


def test_cylindrical_state_factors():
    model = cylindrical_model(1, 1, 2, omega=2.0, omega_z=1.0)
    st = model.state((0, 1))
    assert st.domains == ("half", "full")
    # radial factor vanishes like r^(|gamma|+3/2) at the axis
    assert st.factors[0].power == F(5, 2)
    rs = np.array([0.5, 1.0, 2.0])
    zs = np.array([-1.0, 0.2, 1.4])
    assert np.allclose(st(rs, zs), st.factors[0](rs) * st.factors[1](zs), rtol=1e-14)


def test_cylindrical_validation():
    with pytest.raises(OddM2):
        cylindrical_model(1, 1, 3)
    with pytest.raises(ValueError):
        cylindrical_model(1, -1, 0)


def test_spec_round_trip():
    model = assemble_tensor([AxisModel("full", 1.0, 2, None), AxisModel("half", 2.0, 1, HALF)])
    again = from_spec(model.to_spec())
    assert isinstance(again, TensorModel)
    assert again.axes == model.axes

    cyl = cylindrical_model(1, 1, 2, omega=1.0, omega_z=0.5)
    again = from_spec(cyl.to_spec())
    assert isinstance(again, CylindricalModel)
    assert again == cyl


def test_from_spec_accepts_string_alpha():
    model = from_spec({"kind": "tensor", "axes": [{"domain": "half", "omega": 1.0, "m": 1, "alpha": "-1/2"}]})
    assert model.axes[0].alpha == -HALF


def test_from_spec_rejects_garbage():
    for bad in [
        [],
        {"kind": "ring"},
        {"kind": "tensor", "axes": []},
        {"kind": "tensor", "axes": [{"domain": "full", "m": 2}]},
        {"kind": "cylindrical", "axes": [{"domain": "radial", "omega": 1, "m": 0}]},
        {"kind": "tensor", "axes": [{"domain": "half", "omega": 1.0, "m": 1, "alpha": "x"}]},
    ]:
        with pytest.raises(InvalidSpec):
            from_spec(bad)
    with pytest.raises(OddM2):
        from_spec(
            {
                "kind": "cylindrical",
                "gamma": 1,
                "axes": [
                    {"domain": "radial", "omega": 1.0, "m": 1},
                    {"domain": "full", "omega": 1.0, "m": 3},
                ],
            }
        )

"""Rationally extended harmonic oscillators: exact potentials and
eigenstates from first-order factorizations, with grid oracles that verify
every closed-form claim."""

from .models import (
    AxisModel,
    CylindricalModel,
    Eigenstate,
    InvalidSpec,
    IrrationalRatioUnsupported,
    OddM2,
    OddMOnFullLine,
    TensorModel,
    assemble_tensor,
    cylindrical_closed_form_report,
    cylindrical_model,
    degeneracy,
    from_spec,
    full_line_potential,
    full_line_state,
    half_line_potential,
    half_line_state,
    oscillator_state,
)
from .numeric import (
    ConvergenceFailure,
    Grid,
    PotentialPoleOnGrid,
    SpectrumReport,
    VerificationFailed,
    convergence_study,
    discretize,
    gram_matrix,
    inner_product,
    intertwine_check,
    lowest_eigenvalues,
    node_count,
    normalize_state,
    residual,
    verify_axis,
    verify_model,
    verify_spectrum,
)
from .orthopoly import exceptional_hermite, exceptional_laguerre, hermite, laguerre, pseudo_hermite
from .potential import PotentialForm
from .ratpoly import ExpPolyFunction, PoleEvaluation, Polynomial, RationalFunction, ZeroDenominator
from .susy import (
    InvalidAlpha,
    NonPositiveEnergy,
    PartnerPair,
    SeedFunction,
    SeedHasInteriorZero,
    SpectralShift,
    Superpotential,
    apply_A,
    apply_A_dagger,
    build_seed,
    classify_seed,
    inverse_seed,
    map_state,
    partner_pair,
    q_vanishing_check,
    superpotential,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]

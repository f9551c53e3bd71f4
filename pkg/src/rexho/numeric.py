"""Grid oracles for the exact constructions.

Everything here treats the closed forms as claims to be tested: potentials
are discretized with second-order central differences (fd2) or the
fourth-order Numerov three-point scheme, eigenvalues are extracted by
bisection on a Sturm/LDL sign count (deterministic, no iterative
eigensolver), and inner products use composite Gauss-Legendre panels with
deterministic refinement.  Units are hbar = 2M = 1, so the operator is
-d^2/dx^2 + V on the line or half line with Dirichlet walls.

The Numerov scheme produces the generalized pencil A y = E B y with
A = T + B diag(V) (T the Dirichlet Laplacian stencil, B the 1-10-1 over 12
average).  A is not symmetric, but B^{-1} A = B^{-1} T + diag(V) is (T and
B are polynomials in the same Toeplitz shift and commute), so the pencil is
similar to a symmetric problem and the eigenvalue count below a shift E
equals the negative-inertia count of the symmetrized A - E B.  The LDL
recurrence needs only the products of paired off-diagonal entries, so both
schemes share one count routine, with fd2 as the B = identity special case.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .models import AxisModel, CylindricalModel, TensorModel, oscillator_state
from .potential import PotentialForm
from .ratpoly import ExpPolyFunction
from .susy import apply_A_dagger, superpotential

_GL_NODES = 40


class PotentialPoleOnGrid(ValueError):
    """A potential evaluation on the grid came out non-finite."""


class ConvergenceFailure(RuntimeError):
    """An iteration failed to reach its tolerance."""


class VerificationFailed(RuntimeError):
    """A spectrum report exceeded its tolerance."""


@dataclass(frozen=True)
class Grid:
    """Uniform Dirichlet grid on [a, b]: n interior points, spacing
    h = (b-a)/(n+1), walls at a and b."""

    a: float
    b: float
    n: int

    def __post_init__(self):
        if not self.b > self.a:
            raise ValueError("need b > a")
        if self.n < 2:
            raise ValueError("need at least 2 interior points")

    @property
    def h(self) -> float:
        return (self.b - self.a) / (self.n + 1)

    def points(self) -> np.ndarray:
        return self.a + self.h * np.arange(1, self.n + 1)


def grid_for(domain: str, length: float, n: int) -> Grid:
    """[-L, L] on the full line, (0, L] on the half line."""
    if domain == "full":
        return Grid(-length, length, n)
    return Grid(0.0, length, n)


@dataclass(frozen=True)
class DiscretizedOperator:
    """Tridiagonal pencil A y = E B y; B is Toeplitz (b_diag, b_off),
    the identity for fd2."""

    grid: Grid
    scheme: str
    v: np.ndarray
    a_diag: np.ndarray
    a_sub: np.ndarray
    a_super: np.ndarray
    b_diag: float
    b_off: float


def discretize(v, grid: Grid, scheme: str = "fd2") -> DiscretizedOperator:
    """Assemble the tridiagonal pencil for potential v (a PotentialForm or
    any callable on the grid points)."""
    x = grid.points()
    try:
        vals = np.asarray(v(x), dtype=float)
    except ZeroDivisionError as exc:
        raise PotentialPoleOnGrid(f"potential has a pole on the grid: {exc}") from exc
    if vals.shape != x.shape:
        raise ValueError("potential evaluation has wrong shape")
    if not np.all(np.isfinite(vals)):
        raise PotentialPoleOnGrid("potential is non-finite on the grid")
    h2 = grid.h * grid.h
    if scheme == "fd2":
        a_diag = 2.0 / h2 + vals
        off = np.full(grid.n - 1, -1.0 / h2)
        return DiscretizedOperator(grid, scheme, vals, a_diag, off, off.copy(), 1.0, 0.0)
    if scheme == "numerov":
        a_diag = 2.0 / h2 + (10.0 / 12.0) * vals
        a_super = -1.0 / h2 + vals[1:] / 12.0
        a_sub = -1.0 / h2 + vals[:-1] / 12.0
        return DiscretizedOperator(grid, scheme, vals, a_diag, a_sub, a_super, 10.0 / 12.0, 1.0 / 12.0)
    raise ValueError(f"unknown scheme {scheme!r}")


def _count_below(op: DiscretizedOperator, lam: float) -> int:
    """Number of pencil eigenvalues strictly below lam (LDL sign count on
    the symmetrized shifted matrix; off-diagonal entries enter only through
    their pairwise products)."""
    diag = op.a_diag - lam * op.b_diag
    if op.b_off:
        offprod = (op.a_super - lam * op.b_off) * (op.a_sub - lam * op.b_off)
    else:
        offprod = op.a_super * op.a_sub
    if np.any(offprod < 0.0):
        raise ValueError("grid too coarse for the sign count (an off-diagonal pair changed sign)")
    d_list = diag.tolist()
    p_list = offprod.tolist()
    d = d_list[0]
    if d == 0.0:
        d = -1e-300
    count = 1 if d < 0.0 else 0
    for i in range(1, len(d_list)):
        d = d_list[i] - p_list[i - 1] / d
        if d == 0.0:
            d = -1e-300
        if d < 0.0:
            count += 1
    return count


def lowest_eigenvalues(op: DiscretizedOperator, k: int, tol: float = 1e-13, max_iter: int = 200) -> list[float]:
    """The k smallest pencil eigenvalues by deterministic Sturm bisection.

    Brackets are shared: every sign count tightens the bracket of each
    target it separates, so later targets start out mostly converged.
    """
    if k < 1 or k > op.grid.n:
        raise ValueError("k out of range")
    vmin = float(np.min(op.v))
    vmax = float(np.max(op.v))
    h2 = op.grid.h * op.grid.h
    lo = [vmin - 1.0] * k
    hi = [6.0 / h2 + vmax + 1.0] * k
    for j in range(k):
        it = 0
        while hi[j] - lo[j] > tol * max(1.0, abs(lo[j]) + abs(hi[j])):
            it += 1
            if it > max_iter:
                raise ConvergenceFailure(f"bisection stalled on eigenvalue {j}")
            mid = 0.5 * (lo[j] + hi[j])
            c = _count_below(op, mid)
            for t in range(k):
                if c >= t + 1:
                    if mid < hi[t]:
                        hi[t] = mid
                elif mid > lo[t]:
                    lo[t] = mid
    return [0.5 * (lo[j] + hi[j]) for j in range(k)]


# ---------------------------------------------------------------------------
# quadrature

def _leggauss():
    if not hasattr(_leggauss, "cache"):
        _leggauss.cache = np.polynomial.legendre.leggauss(_GL_NODES)
    return _leggauss.cache


def integrate(f, a: float, b: float, rel_tol: float = 1e-10, abs_tol: float = 0.0, max_panels: int = 1024) -> float:
    """Composite Gauss-Legendre integral of f over [a, b], doubling the
    panel count until two refinements agree to rel_tol (or abs_tol, which
    callers must supply when the integral itself can be near zero)."""
    nodes, weights = _leggauss()
    prev = None
    panels = 4
    while panels <= max_panels:
        edges = np.linspace(a, b, panels + 1)
        centers = 0.5 * (edges[:-1] + edges[1:])[:, None]
        half = 0.5 * (edges[1] - edges[0])
        pts = centers + half * nodes[None, :]
        vals = np.asarray(f(pts.ravel()), dtype=float).reshape(pts.shape)
        total = float(half * np.sum(vals @ weights))
        if prev is not None and abs(total - prev) <= max(rel_tol * abs(total), abs_tol):
            return total
        prev = total
        panels *= 2
    raise ConvergenceFailure("quadrature did not settle")


def factor_extent(f: ExpPolyFunction) -> float:
    """Integration half-length for one Gaussian-decaying factor: z = 10 is
    far outside every catalog tail (exp(-100) against polynomial growth)."""
    return max(12.0, 10.0 / f.scale)


def inner_product(f, g, domain: str, length: float, rel_tol: float = 1e-10, abs_tol: float = 0.0) -> float:
    """L2 inner product of two real functions on the domain."""
    a = 0.0 if domain == "half" else -length
    return integrate(lambda x: f(x) * g(x), a, length, rel_tol, abs_tol)


def norm(f, domain: str, length: float) -> float:
    return math.sqrt(inner_product(f, f, domain, length))


def normalize_state(state, length: float | None = None):
    """The state scaled to unit L2 norm, sign fixed so the product of the
    factors' leading coefficients is positive."""
    total = 1.0
    sign = 1.0
    for f, dom in zip(state.factors, state.domains):
        half_len = length if length is not None else factor_extent(f)
        total *= inner_product(f, f, dom, half_len)
        if f.num.leading < 0:
            sign = -sign
    return state.with_norm(sign / math.sqrt(total))


def gram_matrix(factors, domain: str, length: float | None = None) -> np.ndarray:
    """Pairwise L2 inner products of normalized 1D factors.  Off-diagonal
    entries are resolved to 1e-12 absolute (relative to the unit diagonal),
    since orthogonal pairs integrate to zero."""
    factors = list(factors)
    if length is None:
        length = max(factor_extent(f) for f in factors)
    scales = [norm(f, domain, length) for f in factors]
    g = np.eye(len(factors))
    for i in range(len(factors)):
        for j in range(i + 1, len(factors)):
            raw = inner_product(factors[i], factors[j], domain, length, abs_tol=1e-12 * scales[i] * scales[j])
            g[i, j] = g[j, i] = raw / (scales[i] * scales[j])
    return g


# ---------------------------------------------------------------------------
# pointwise checks

def residual(potential: PotentialForm, epsilon: Fraction, f: ExpPolyFunction, energy_coeff: Fraction, points) -> float:
    """max |(-f'' + (V - eps) f - E f)| / max |f| over the points, with the
    second derivative taken exactly before evaluation."""
    pts = np.asarray(points, dtype=float)
    shifted = potential.shifted(-epsilon)
    d2 = f.derivative().derivative()
    e_val = float(energy_coeff) * potential.omega
    fv = f(pts)
    res = -d2(pts) + shifted(pts) * fv - e_val * fv
    scale = float(np.max(np.abs(fv)))
    if scale == 0.0:
        raise ValueError("state vanishes on all sample points")
    return float(np.max(np.abs(res))) / scale


def node_count(values) -> int:
    """Sign changes of a sampled function, ignoring near-zero samples."""
    v = np.asarray(values, dtype=float)
    tiny = 1e-12 * float(np.max(np.abs(v)))
    signs = np.sign(v[np.abs(v) > tiny])
    return int(np.sum(signs[1:] != signs[:-1]))


def intertwine_check(axis: AxisModel, n: int) -> float:
    """L2 distance between the intertwined oscillator state and the catalog
    state it should equal: || A^dag psi_n / sqrt(E - eps) - psi_catalog ||.

    The oscillator state is normalized first, so its image needs only the
    energy-gap factor; the catalog state is normalized independently.  On
    the full line oscillator level n maps to catalog index n + 1 (index 0
    is the extra state, outside the intertwiner's range).
    """
    w = superpotential(axis.seed())
    psi_plus, e_plus = oscillator_state(axis.domain, n, axis.alpha, axis.omega)
    gap = float(e_plus - axis.epsilon()) * axis.omega
    mapped = apply_A_dagger(w, psi_plus)
    target = axis.state_factor(n + 1 if axis.domain == "full" else n)
    length = max(factor_extent(psi_plus), factor_extent(target))
    c_map = 1.0 / (norm(psi_plus, axis.domain, length) * math.sqrt(gap))
    c_tgt = 1.0 / norm(target, axis.domain, length)
    if inner_product(mapped, target, axis.domain, length) < 0:
        c_tgt = -c_tgt
    diff = lambda x: c_map * mapped(x) - c_tgt * target(x)
    diff2 = inner_product(diff, diff, axis.domain, length, abs_tol=1e-20)
    return math.sqrt(max(diff2, 0.0))


# ---------------------------------------------------------------------------
# spectrum verification

@dataclass(frozen=True)
class LevelCheck:
    index: int
    analytic_coeff: Fraction
    analytic: float
    numeric: float

    @property
    def abs_error(self) -> float:
        return abs(self.numeric - self.analytic)

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "analytic_coeff": str(self.analytic_coeff),
            "analytic": self.analytic,
            "numeric": self.numeric,
            "abs_error": self.abs_error,
        }


@dataclass(frozen=True)
class SpectrumReport:
    """Comparison of grid eigenvalues against the exact catalog levels for
    one axis (of the shifted operator H - eps)."""

    label: str
    domain: str
    scheme: str
    grid: Grid
    omega: float
    epsilon: Fraction
    tolerance: float
    levels: tuple[LevelCheck, ...]

    @property
    def max_abs_error(self) -> float:
        return max(lv.abs_error for lv in self.levels)

    @property
    def passed(self) -> bool:
        return self.max_abs_error <= self.tolerance

    def to_json(self) -> dict:
        return {
            "label": self.label,
            "domain": self.domain,
            "scheme": self.scheme,
            "grid": {"a": self.grid.a, "b": self.grid.b, "n": self.grid.n},
            "omega": self.omega,
            "epsilon": str(self.epsilon),
            "tolerance": self.tolerance,
            "levels": [lv.to_json() for lv in self.levels],
            "max_abs_error": self.max_abs_error,
            "passed": self.passed,
        }


def verify_spectrum(
    potential: PotentialForm,
    epsilon: Fraction,
    coeffs,
    *,
    label: str = "",
    scheme: str = "numerov",
    n_points: int = 4000,
    length: float = 14.0,
    tol: float = 1e-6,
) -> SpectrumReport:
    """Discretize the shifted potential and compare its lowest eigenvalues
    with the exact levels (coeffs are rational multiples of omega)."""
    coeffs = list(coeffs)
    shifted = potential.shifted(-epsilon)
    grid = grid_for(potential.domain, length, n_points)
    op = discretize(shifted, grid, scheme)
    numeric = lowest_eigenvalues(op, len(coeffs))
    levels = tuple(
        LevelCheck(i, c, float(c) * potential.omega, e) for i, (c, e) in enumerate(zip(coeffs, numeric))
    )
    return SpectrumReport(label, potential.domain, scheme, grid, potential.omega, epsilon, tol, levels)


def verify_axis(axis: AxisModel, count: int = 6, **kw) -> SpectrumReport:
    kw.setdefault("label", f"{axis.domain} m={axis.m}" + ("" if axis.alpha is None else f" alpha={axis.alpha}"))
    return verify_spectrum(axis.potential(), axis.epsilon(), axis.levels(count), **kw)


def verify_model(model, count: int = 6, **kw):
    """Spectrum reports for every separable factor of a model."""
    if isinstance(model, AxisModel):
        return [verify_axis(model, count, **kw)]
    if isinstance(model, TensorModel):
        reports = []
        for i, ax in enumerate(model.axes):
            axis_kw = dict(kw)
            axis_kw.setdefault(
                "label", f"axis{i}: {ax.domain} m={ax.m}" + ("" if ax.alpha is None else f" alpha={ax.alpha}")
            )
            reports.append(verify_spectrum(ax.potential(), ax.epsilon(), ax.levels(count), **axis_kw))
        return reports
    if isinstance(model, CylindricalModel):
        radial_kw = dict(kw)
        radial_kw.setdefault("label", f"radial |gamma|={model.abs_gamma} m1={model.m1}")
        radial = verify_spectrum(
            model.radial_potential(),
            model.radial_epsilon(),
            [model.radial_energy(n) for n in range(count)],
            **radial_kw,
        )
        axial_kw = dict(kw)
        axial_kw.setdefault("label", f"axial m2={model.m2}")
        axial = verify_spectrum(
            model.axial_potential(),
            model.axial_epsilon(),
            [model.axial_energy(k) for k in range(count)],
            **axial_kw,
        )
        return [radial, axial]
    raise TypeError(f"cannot verify {type(model).__name__}")


def convergence_study(
    potential: PotentialForm,
    epsilon: Fraction,
    coeff: Fraction,
    index: int,
    *,
    scheme: str,
    n_list,
    length: float = 14.0,
) -> list[tuple[float, float]]:
    """(h, absolute error) rows for one level across grid refinements."""
    exact = float(coeff) * potential.omega
    shifted = potential.shifted(-epsilon)
    rows = []
    for n in n_list:
        grid = grid_for(potential.domain, length, n)
        op = discretize(shifted, grid, scheme)
        e = lowest_eigenvalues(op, index + 1)[index]
        rows.append((grid.h, abs(e - exact)))
    return rows

"""Command-line surface: emit potentials, states, spectra, and table data,
run the verification suite, and enumerate degeneracies.

All commands are deterministic: fixed row ordering, floats rounded to 12
significant digits before serialization, no randomness anywhere.  Exit
codes: 0 success, 1 verification failure, 2 invalid input.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

import numpy as np

from . import models, numeric
from .models import (
    AxisModel,
    CylindricalModel,
    InvalidSpec,
    IrrationalRatioUnsupported,
    OddM2,
    OddMOnFullLine,
    TensorModel,
)
from .orthopoly import laguerre, pseudo_hermite
from .potential import PotentialForm
from .ratpoly import PoleEvaluation, Polynomial, ZeroDenominator
from .susy import InvalidAlpha, NonPositiveEnergy, SeedHasInteriorZero

HALF = Fraction(1, 2)

U_VAR = "omega*x^2"


def _fmt(x: float) -> str:
    return f"{x + 0.0:.12g}"  # + 0.0 turns -0.0 into 0.0


def _round_floats(obj):
    """Round every float to 12 significant digits so serialized output is
    stable across platforms."""
    if isinstance(obj, float):
        return float(_fmt(obj))
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    return obj


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(doc: dict, out: str | None):
    _emit(json.dumps(_round_floats(doc), indent=2) + "\n", out)


def _emit_csv(header, rows, out: str | None):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(row)
    _emit(buf.getvalue(), out)


# ---------------------------------------------------------------------------
# display rendering in the table variable u = omega x^2

def _even_poly_in_t(p: Polynomial) -> Polynomial:
    """Rewrite an even polynomial in z as a polynomial in t = z**2."""
    for k in range(1, p.degree + 1, 2):
        if p.coeff(k) != 0:
            raise ValueError("polynomial is not even")
    return Polynomial(tuple(p.coeff(2 * j) for j in range(p.degree // 2 + 1)))


def _poly_t_to_u(p: Polynomial) -> Polynomial:
    """Substitute t = u/2."""
    return Polynomial(tuple(c * HALF ** j for j, c in enumerate(p.coeffs)))


def _partial_fractions_u(pot: PotentialForm, q0_z: Polynomial):
    """Split the rational correction of a potential into A/Q + B/Q**2 with
    Q the primitive integer form of the family denominator in u = omega x^2.
    Returns (Q, A, B) with A, B exact polynomials in u."""
    corr = pot.correction()
    num_t = _even_poly_in_t(corr.num)
    den_t = _even_poly_in_t(corr.den)
    q0_t = _even_poly_in_t(q0_z)
    q2 = q0_t * q0_t
    cofactor = q2.exact_div(den_t)
    a_t, b_t = divmod(num_t * cofactor, q0_t)
    lam, q_u = _poly_t_to_u(q0_t).primitive()
    # Q0(t(u)) = lam * Q_u, so A/Q0 = (A/lam)/Q_u and B/Q0**2 = (B/lam**2)/Q_u**2
    a_u = _poly_t_to_u(a_t) * (1 / lam)
    b_u = _poly_t_to_u(b_t) * (1 / lam) * (1 / lam)
    return q_u, a_u, b_u


def _term(sign_parts: list, coeff_poly: Polynomial, q_u: Polynomial, power: int):
    """Append '+ N*omega/(Q)^power' with the leading sign pulled out."""
    if coeff_poly.is_zero():
        return
    sign = "+"
    if coeff_poly.leading < 0:
        sign = "-"
        coeff_poly = -coeff_poly
    if coeff_poly.degree == 0:
        c = coeff_poly.coeff(0)
        num = "omega" if c == 1 else f"{c}*omega"
    else:
        num = f"({coeff_poly.format(U_VAR)})*omega"
    den = f"({q_u.format(U_VAR)})"
    if power > 1:
        den += f"^{power}"
    sign_parts.append((sign, f"{num}/{den}"))


def _join_terms(parts: list) -> str:
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def render_potential(pot: PotentialForm, q0_z: Polynomial) -> dict:
    """Human-readable x-space form of a catalog potential, ordered as
    harmonic, rational terms over Q and Q**2, barrier, constant; plus the
    exact pieces (all in u = omega x^2)."""
    if pot.quadratic_coefficient != HALF:
        raise ValueError("renderer expects the standard omega**2 x**2/4 harmonic term")
    q_u, a_u, b_u = _partial_fractions_u(pot, q0_z)
    parts = [("+", "omega^2*x^2/4")]
    _term(parts, a_u, q_u, 1)
    _term(parts, b_u, q_u, 2)
    barrier = 2 * pot.inverse_square_coefficient
    if barrier:
        body = f"{barrier}/x^2" if barrier.denominator == 1 else f"({barrier})/x^2"
        parts.append(("-" if barrier < 0 else "+", body.lstrip("-")))
    const = pot.constant_term
    if const:
        mag = abs(const)
        parts.append(("-" if const < 0 else "+", "omega" if mag == 1 else f"{mag}*omega"))
    return {
        "display": _join_terms(parts),
        "q": [str(q_u.coeff(k)) for k in range(q_u.degree + 1)],
        "num_over_q": [str(a_u.coeff(k)) for k in range(a_u.degree + 1)],
        "num_over_q2": [str(b_u.coeff(k)) for k in range(b_u.degree + 1)],
        "barrier_coeff": str(barrier),
        "constant_coeff": str(const),
    }


def _family_denominator(axis: AxisModel) -> Polynomial:
    if axis.domain == "full":
        return pseudo_hermite(axis.m)
    return laguerre(axis.m, axis.alpha).compose_neg_square()


# ---------------------------------------------------------------------------
# model resolution

def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise InvalidSpec(f"not a rational number: {text!r}") from e


def _resolve_model(args):
    """Model from --model (JSON file path or inline JSON) or from the
    inline single-axis / cylindrical flags."""
    spec_text = getattr(args, "model", None)
    if spec_text:
        if spec_text.strip().startswith("{"):
            raw = spec_text
        else:
            try:
                with open(spec_text) as fh:
                    raw = fh.read()
            except OSError as e:
                raise InvalidSpec(f"cannot read model file: {e}") from e
        try:
            spec = json.loads(raw)
        except json.JSONDecodeError as e:
            raise InvalidSpec(f"model spec is not valid JSON: {e}") from e
        return models.from_spec(spec)
    if getattr(args, "gamma", None) is not None:
        omega_z = args.omega_z if args.omega_z is not None else args.omega
        return models.cylindrical_model(args.gamma, args.m, args.m2, args.omega, omega_z)
    if getattr(args, "alpha", None) is not None:
        return TensorModel((AxisModel("half", args.omega, args.m, _parse_fraction(args.alpha)),))
    return TensorModel((AxisModel("full", args.omega, args.m),))


def _energy_coeffs(model, indices):
    if isinstance(model, CylindricalModel):
        return [model.radial_energy(indices[0]), model.axial_energy(indices[1])]
    return [ax.energy_coeff(k) for ax, k in zip(model.axes, indices)]


def _model_omegas(model):
    if isinstance(model, CylindricalModel):
        return [model.omega, model.omega_z]
    return [ax.omega for ax in model.axes]


def _lowest_listed(model, count: int):
    """The count lowest-energy catalog tuples, ordered by exact energy then
    lexicographically."""
    if isinstance(model, CylindricalModel):
        m_max = max(model.m1, model.m2)
    else:
        m_max = max(ax.m for ax in model.axes)
    n_max = count + m_max + 6
    tuples = sorted(model.listed_indices(n_max), key=lambda t: (model.energy_value(t), t))
    return tuples[:count]


# ---------------------------------------------------------------------------
# subcommands

TABLE_ROWS = [(m, a) for m in range(4) for a in (-HALF, HALF)]


def cmd_table1(args) -> int:
    rows = []
    for m, alpha in TABLE_ROWS:
        pot = models.half_line_potential(m, alpha)
        rendered = render_potential(pot, laguerre(m, alpha).compose_neg_square())
        rows.append({"m": m, "alpha": str(alpha), **rendered})
    if args.format == "csv":
        _emit_csv(["m", "alpha", "display"], [[r["m"], r["alpha"], r["display"]] for r in rows], args.out)
    else:
        _emit_json({"table": 1, "u": U_VAR, "rows": rows}, args.out)
    return 0


def cmd_table2(args) -> int:
    rows = []
    for m, alpha in TABLE_ROWS:
        num_t = _even_poly_in_t(laguerre(m, alpha + 1).compose_neg_square())
        den_t = _even_poly_in_t(laguerre(m, alpha).compose_neg_square())
        cn, num_u = _poly_t_to_u(num_t).primitive()
        cd, den_u = _poly_t_to_u(den_t).primitive()
        if cn != cd:
            num_u = num_u * (cn / cd)
        power = alpha + Fraction(3, 2)
        x_pref = "x" if power == 1 else f"x^{power}"
        first = f"L_{{n-1}}^{{({alpha + 1})}}({U_VAR}/2)"
        second = f"L_n^{{({alpha})}}({U_VAR}/2)"
        if num_u == den_u:
            mult_str = ""
        else:
            mult_str = f"(({num_u.format(U_VAR)})/({den_u.format(U_VAR)}))*"
        display = f"{x_pref}*exp(-{U_VAR}/4)*[{first} + {mult_str}{second}]"
        rows.append(
            {
                "m": m,
                "alpha": str(alpha),
                "x_power": str(power),
                "multiplier_num": [str(num_u.coeff(k)) for k in range(num_u.degree + 1)],
                "multiplier_den": [str(den_u.coeff(k)) for k in range(den_u.degree + 1)],
                "display": display,
            }
        )
    if args.format == "csv":
        _emit_csv(
            ["m", "alpha", "x_power", "display"],
            [[r["m"], r["alpha"], r["x_power"], r["display"]] for r in rows],
            args.out,
        )
    else:
        _emit_json({"table": 2, "u": U_VAR, "rows": rows}, args.out)
    return 0


def cmd_figure1(args) -> int:
    alphas = [_parse_fraction(args.alpha)] if args.alpha else [-HALF, HALF]
    n_list = list(range(args.levels))
    xs = np.linspace(0.0, args.grid_l, args.grid_n)
    curves = []
    for alpha in alphas:
        for n in n_list:
            state = numeric.normalize_state(models.half_line_state(n, args.m, alpha, args.omega))
            curves.append((alpha, n, state(xs)))
    if args.format == "json":
        doc = {
            "m": args.m,
            "omega": args.omega,
            "x": [float(v) for v in xs],
            "curves": [
                {"alpha": str(a), "n": n, "values": [float(v) for v in vals]} for a, n, vals in curves
            ],
        }
        _emit_json(doc, args.out)
    else:
        header = ["x"] + [f"psi(n={n},alpha={a})" for a, n, _ in curves]
        rows = [[_fmt(x)] + [_fmt(vals[i]) for _, _, vals in curves] for i, x in enumerate(xs)]
        _emit_csv(header, rows, args.out)
    return 0


def cmd_spectrum(args) -> int:
    model = _resolve_model(args)
    tuples = _lowest_listed(model, args.levels)
    omegas = _model_omegas(model)
    levels = []
    for t in tuples:
        coeffs = _energy_coeffs(model, t)
        levels.append(
            {
                "indices": list(t),
                "coeffs": [str(c) for c in coeffs],
                "value": float(sum(float(c) * w for c, w in zip(coeffs, omegas))),
            }
        )
    doc = {"model": model.to_spec(), "levels": levels}
    if args.format == "csv":
        dim = len(omegas)
        header = [f"n{i}" for i in range(dim)] + ["value"]
        rows = [[*lv["indices"], _fmt(lv["value"])] for lv in levels]
        _emit_csv(header, rows, args.out)
    else:
        _emit_json(doc, args.out)
    return 0


VERIFY_SUITE = [
    TensorModel((AxisModel("full", 1.0, 0),)),
    TensorModel((AxisModel("full", 1.0, 2),)),
    TensorModel((AxisModel("half", 1.0, 0, -HALF),)),
    TensorModel((AxisModel("half", 1.0, 0, HALF),)),
    TensorModel((AxisModel("half", 1.0, 1, -HALF),)),
    TensorModel((AxisModel("half", 1.0, 1, HALF),)),
    models.cylindrical_model(1, 1, 2),
]


def cmd_verify(args) -> int:
    if getattr(args, "model", None) == "all":
        targets = VERIFY_SUITE
    else:
        targets = [_resolve_model(args)]
    reports = []
    for model in targets:
        reports.extend(
            numeric.verify_model(
                model,
                args.levels,
                scheme=args.scheme,
                n_points=args.grid_n,
                length=args.grid_l,
                tol=args.tol,
            )
        )
    all_passed = all(r.passed for r in reports)
    if args.format == "csv":
        rows = []
        for r in reports:
            for lv in r.levels:
                rows.append(
                    [r.label, lv.index, _fmt(lv.analytic), _fmt(lv.numeric), _fmt(lv.abs_error), r.passed]
                )
        _emit_csv(["label", "index", "analytic", "numeric", "abs_error", "passed"], rows, args.out)
    else:
        _emit_json({"reports": [r.to_json() for r in reports], "all_passed": all_passed}, args.out)
    if not all_passed:
        raise numeric.VerificationFailed(
            "; ".join(f"{r.label}: max error {_fmt(r.max_abs_error)}" for r in reports if not r.passed)
        )
    return 0


def cmd_degeneracy(args) -> int:
    model = _resolve_model(args)
    if args.energy is None:
        raise InvalidSpec("degeneracy needs --energy")
    target = _parse_fraction(args.energy)
    count, witnesses = models.degeneracy(model, target, args.n_max)
    doc = {
        "model": model.to_spec(),
        "energy": str(target),
        "n_max": args.n_max,
        "count": count,
        "witnesses": [list(t) for t in witnesses],
    }
    if args.format == "csv":
        _emit_csv(
            [f"n{i}" for i in range(len(witnesses[0]))] if witnesses else ["indices"],
            [list(t) for t in witnesses],
            args.out,
        )
    else:
        _emit_json(doc, args.out)
    return 0


def cmd_potential(args) -> int:
    model = _resolve_model(args)
    axes = []
    if isinstance(model, CylindricalModel):
        radial = model.radial_potential()
        axial = model.axial_potential()
        axes.append(
            (
                f"radial |gamma|={model.abs_gamma} m1={model.m1}",
                radial,
                model.radial_epsilon(),
                laguerre(model.m1, Fraction(model.abs_gamma)).compose_neg_square(),
            )
        )
        axes.append((f"axial m2={model.m2}", axial, model.axial_epsilon(), pseudo_hermite(model.m2)))
    else:
        for i, ax in enumerate(model.axes):
            tag = f"axis{i}: {ax.domain} m={ax.m}" + ("" if ax.alpha is None else f" alpha={ax.alpha}")
            axes.append((tag, ax.potential(), ax.epsilon(), _family_denominator(ax)))
    if args.format == "csv":
        rows = []
        for label, pot, _eps, _q in axes:
            lo = 0.0 if pot.domain == "half" else -args.grid_l
            xs = np.linspace(lo, args.grid_l, args.grid_n)
            if pot.domain == "half":
                xs = xs[xs > 0]
            for x, v in zip(xs, pot(xs)):
                rows.append([label, _fmt(x), _fmt(v)])
        _emit_csv(["axis", "x", "v"], rows, args.out)
    else:
        doc = {
            "model": model.to_spec(),
            "axes": [
                {
                    "label": label,
                    "domain": pot.domain,
                    "omega": pot.omega,
                    "epsilon": str(eps),
                    "f": pot.f.to_json(),
                    **render_potential(pot, q),
                }
                for label, pot, eps, q in axes
            ],
        }
        _emit_json(doc, args.out)
    return 0


def cmd_states(args) -> int:
    model = _resolve_model(args)
    tuples = _lowest_listed(model, args.levels)
    omegas = _model_omegas(model)
    states = [numeric.normalize_state(model.state(t)) for t in tuples]
    if args.format == "csv":
        if len(omegas) != 1:
            raise InvalidSpec("csv state output is one-dimensional only; use json")
        domain = states[0].domains[0]
        lo = 0.0 if domain == "half" else -args.grid_l
        xs = np.linspace(lo, args.grid_l, args.grid_n)
        cols = [st(xs) for st in states]
        header = ["x"] + [f"psi(n={t[0]})" for t in tuples]
        rows = [[_fmt(x)] + [_fmt(col[i]) for col in cols] for i, x in enumerate(xs)]
        _emit_csv(header, rows, args.out)
        return 0
    doc = {
        "model": model.to_spec(),
        "states": [
            {
                "indices": list(st.indices),
                "energy": st.energy_json(),
                "norm": st.norm,
                "factors": [f.to_json() for f in st.factors],
            }
            for st in states
        ],
    }
    _emit_json(doc, args.out)
    return 0


# ---------------------------------------------------------------------------
# argument parsing

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rexho", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, grid_n=4000, grid_l=14.0, fmt="json"):
        p.add_argument("--model", help="model spec: JSON file path, inline JSON, or 'all' (verify)")
        p.add_argument("--omega", type=float, default=1.0)
        p.add_argument("--m", type=int, default=0)
        p.add_argument("--alpha", help="half-line axis parameter, e.g. -1/2")
        p.add_argument("--gamma", type=int, help="build the cylindrical model with this angular momentum")
        p.add_argument("--m2", type=int, default=0, help="cylindrical axial seed index")
        p.add_argument("--omega-z", type=float, help="cylindrical axial frequency (defaults to --omega)")
        p.add_argument("--grid-N", dest="grid_n", type=int, default=grid_n)
        p.add_argument("--grid-L", dest="grid_l", type=float, default=grid_l)
        p.add_argument("--scheme", choices=("fd2", "numerov"), default="numerov")
        p.add_argument("--format", choices=("json", "csv"), default=fmt)
        p.add_argument("--out", help="output path (default stdout)")
        p.add_argument("--tol", type=float, default=1e-6)
        p.add_argument("--levels", type=int, default=6, help="number of levels/states")

    p = sub.add_parser("table1", help="half-line potentials, m=0..3, alpha=+-1/2")
    common(p)
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("table2", help="half-line eigenfunction families")
    common(p)
    p.set_defaults(func=cmd_table2)

    p = sub.add_parser("figure1", help="sampled normalized half-line eigenfunctions")
    common(p, grid_n=401, grid_l=10.0, fmt="csv")
    p.set_defaults(func=cmd_figure1, m=1)
    p.set_defaults(levels=4)

    p = sub.add_parser("spectrum", help="lowest catalog levels of a model")
    common(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("verify", help="compare catalog levels against the grid oracle")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("degeneracy", help="count catalog tuples at an energy")
    common(p)
    p.add_argument("--energy", help="exact target energy, e.g. 8 or 17/2")
    p.add_argument("--n-max", dest="n_max", type=int, default=20)
    p.set_defaults(func=cmd_degeneracy)

    p = sub.add_parser("potential", help="closed-form potential data")
    common(p, grid_n=401)
    p.set_defaults(func=cmd_potential)

    p = sub.add_parser("states", help="exact eigenstate data")
    common(p, grid_n=401)
    p.set_defaults(func=cmd_states)

    return parser


INPUT_ERRORS = (
    InvalidSpec,
    InvalidAlpha,
    OddMOnFullLine,
    OddM2,
    IrrationalRatioUnsupported,
    NonPositiveEnergy,
    SeedHasInteriorZero,
    ZeroDenominator,
    PoleEvaluation,
    numeric.PotentialPoleOnGrid,
)


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except numeric.VerificationFailed as e:
        print(f"verification failed: {e}", file=sys.stderr)
        return 1
    except INPUT_ERRORS as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

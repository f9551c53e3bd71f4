"""Exact rational arithmetic for polynomials, rational functions, and
Gaussian-weighted rational shapes.

Everything is built on fractions.Fraction so that algebraic identities can be
checked bit for bit; floating point only enters through the evaluation
variable.  The dimensionless variable is z = scale*x with scale = sqrt(omega/2),
so scale**2 is rational and even powers of the scale factor stay exact.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

Rational = Fraction


class ZeroDenominator(ZeroDivisionError):
    """A rational function was built with an identically zero denominator."""


class PoleEvaluation(ZeroDivisionError):
    """Evaluation hit a zero of a denominator."""


def as_fraction(value) -> Fraction:
    """Coerce int/Fraction/"p/q" string to Fraction.  Floats are refused so
    that inexact values cannot leak into the exact layer unnoticed."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"expected exact rational, got {type(value).__name__}")


class Polynomial:
    """Dense univariate polynomial over Fraction, ascending powers."""

    __slots__ = ("coeffs", "_float_coeffs")

    def __init__(self, coeffs=()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)
        self._float_coeffs = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls(())

    @classmethod
    def one(cls) -> "Polynomial":
        return cls((1,))

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls((as_fraction(c),))

    @classmethod
    def monomial(cls, k: int, c=1) -> "Polynomial":
        return cls((0,) * k + (as_fraction(c),))

    # -- basic structure ---------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def coeff(self, k: int) -> Fraction:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    def trailing_zeros(self) -> int:
        """Multiplicity of the root at 0 (0 for the zero polynomial)."""
        for k, c in enumerate(self.coeffs):
            if c != 0:
                return k
        return 0

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] += c
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            c = as_fraction(other)
            return Polynomial(tuple(c * a for a in self.coeffs))
        if not isinstance(other, Polynomial):
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return Polynomial.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise ValueError("negative power")
        out = Polynomial.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, k: int) -> "Polynomial":
        """Multiply by z**k."""
        if self.is_zero():
            return self
        return Polynomial((Fraction(0),) * k + self.coeffs)

    def unshift(self, k: int) -> "Polynomial":
        """Exact division by z**k."""
        if self.is_zero():
            return self
        if self.trailing_zeros() < k:
            raise ValueError("not divisible by z**k")
        return Polynomial(self.coeffs[k:])

    def __divmod__(self, other) -> tuple["Polynomial", "Polynomial"]:
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other)
        if other.is_zero():
            raise ZeroDenominator("division by zero polynomial")
        q = [Fraction(0)] * max(1, len(self.coeffs) - len(other.coeffs) + 1)
        rem = list(self.coeffs)
        dlead = other.leading
        dn = other.degree
        while len(rem) - 1 >= dn and any(c != 0 for c in rem):
            while rem and rem[-1] == 0:
                rem.pop()
            if len(rem) - 1 < dn:
                break
            k = len(rem) - 1 - dn
            f = rem[-1] / dlead
            q[k] = f
            for j, c in enumerate(other.coeffs):
                rem[k + j] -= f * c
            rem.pop()
        return Polynomial(q), Polynomial(rem)

    def __floordiv__(self, other) -> "Polynomial":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "Polynomial":
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Polynomial":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ValueError("inexact polynomial division")
        return q

    def monic(self) -> "Polynomial":
        if self.is_zero():
            return self
        lead = self.leading
        return Polynomial(tuple(c / lead for c in self.coeffs))

    def gcd(self, other) -> "Polynomial":
        """Monic greatest common divisor (1 when coprime)."""
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
            if not b.is_zero():
                b = b.monic()
        return a.monic() if not a.is_zero() else Polynomial.zero()

    # -- calculus and composition -----------------------------------------

    def derivative(self) -> "Polynomial":
        if self.degree < 1:
            return Polynomial.zero()
        return Polynomial(tuple(k * c for k, c in enumerate(self.coeffs) if k))

    def compose(self, inner: "Polynomial") -> "Polynomial":
        """self(inner(z)) by Horner on the outer coefficients."""
        out = Polynomial.zero()
        for c in reversed(self.coeffs):
            out = out * inner + c
        return out

    def compose_neg(self) -> "Polynomial":
        """p(-s)."""
        return Polynomial(tuple(c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs)))

    def compose_square(self) -> "Polynomial":
        """p(z**2)."""
        out = [Fraction(0)] * (2 * len(self.coeffs) - 1) if self.coeffs else []
        for k, c in enumerate(self.coeffs):
            out[2 * k] = c
        return Polynomial(out)

    def compose_neg_square(self) -> "Polynomial":
        """p(-z**2)."""
        out = [Fraction(0)] * (2 * len(self.coeffs) - 1) if self.coeffs else []
        for k, c in enumerate(self.coeffs):
            out[2 * k] = -c if k % 2 else c
        return Polynomial(out)

    def is_even(self) -> bool:
        return all(c == 0 for k, c in enumerate(self.coeffs) if k % 2)

    # -- evaluation --------------------------------------------------------

    def __call__(self, x):
        """Horner evaluation.  Exact for Fraction/int input, floating for
        float/ndarray input."""
        if isinstance(x, (Fraction, int)):
            acc = Fraction(0)
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc
        if self._float_coeffs is None:
            self._float_coeffs = np.array([float(c) for c in self.coeffs] or [0.0])
        return np.polynomial.polynomial.polyval(x, self._float_coeffs)

    # -- integer normal form and serialization ----------------------------

    def content(self) -> Fraction:
        """Positive rational c such that self/c has coprime integer
        coefficients; 0 for the zero polynomial."""
        if self.is_zero():
            return Fraction(0)
        num_gcd = 0
        den_lcm = 1
        for c in self.coeffs:
            num_gcd = math.gcd(num_gcd, abs(c.numerator))
            den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, c.denominator)
        return Fraction(num_gcd, den_lcm)

    def primitive(self) -> tuple[Fraction, "Polynomial"]:
        """Split into content (signed to make the leading coefficient
        positive) times a primitive integer-coefficient polynomial."""
        if self.is_zero():
            return Fraction(0), self
        c = self.content()
        if self.leading < 0:
            c = -c
        return c, self * (1 / c)

    def to_json(self) -> list[str]:
        return [f"{c.numerator}/{c.denominator}" for c in self.coeffs]

    @classmethod
    def from_json(cls, data) -> "Polynomial":
        return cls(tuple(Fraction(s) for s in data))

    def __str__(self):
        return self.format()

    def format(self, var: str = "z") -> str:
        if self.is_zero():
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeff(k)
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = f"{mag}"
            else:
                base = var if var.isidentifier() else f"({var})"
                zk = var if k == 1 else f"{base}^{k}"
                cs = f"{mag}" if mag.denominator == 1 else f"({mag})"
                body = zk if mag == 1 else f"{cs}*{zk}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Polynomial({self.format()})"


class RationalFunction:
    """Quotient of two Polynomials in canonical form: gcd-reduced with a
    monic denominator, so equal functions compare equal structurally."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, Polynomial):
            num = Polynomial.constant(num) if not isinstance(num, (tuple, list)) else Polynomial(num)
        if den is None:
            den = Polynomial.one()
        elif not isinstance(den, Polynomial):
            den = Polynomial.constant(den) if not isinstance(den, (tuple, list)) else Polynomial(den)
        if den.is_zero():
            raise ZeroDenominator("rational function with zero denominator")
        if num.is_zero():
            self.num = Polynomial.zero()
            self.den = Polynomial.one()
            return
        g = num.gcd(den)
        if g.degree > 0:
            num = num.exact_div(g)
            den = den.exact_div(g)
        lead = den.leading
        if lead != 1:
            num = num * (1 / lead)
            den = den * (1 / lead)
        self.num = num
        self.den = den

    @classmethod
    def zero(cls) -> "RationalFunction":
        return cls(Polynomial.zero())

    @classmethod
    def constant(cls, c) -> "RationalFunction":
        return cls(Polynomial.constant(c))

    @classmethod
    def monomial(cls, k: int, c=1) -> "RationalFunction":
        if k >= 0:
            return cls(Polynomial.monomial(k, c))
        return cls(Polynomial.constant(c), Polynomial.monomial(-k))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, Polynomial)):
            other = RationalFunction(other if isinstance(other, Polynomial) else Polynomial.constant(other))
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other) -> "RationalFunction":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other) -> "RationalFunction":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other) -> "RationalFunction":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalFunction":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise ZeroDenominator("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    @staticmethod
    def _coerce(other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Polynomial):
            return RationalFunction(other)
        if isinstance(other, (int, Fraction)):
            return RationalFunction(Polynomial.constant(other))
        return NotImplemented

    def derivative(self) -> "RationalFunction":
        return RationalFunction(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den,
        )

    def polynomial_part(self) -> Polynomial:
        return self.num // self.den

    def proper_part(self) -> "RationalFunction":
        return RationalFunction(self.num % self.den, self.den)

    def __call__(self, x):
        if isinstance(x, (Fraction, int)):
            d = self.den(x)
            if d == 0:
                raise PoleEvaluation(f"pole at {x}")
            return self.num(x) / d
        d = self.den(x)
        if np.any(d == 0.0):
            raise PoleEvaluation("pole on evaluation grid")
        return self.num(x) / d

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data) -> "RationalFunction":
        return cls(Polynomial.from_json(data["num"]), Polynomial.from_json(data["den"]))

    def format(self, var: str = "z") -> str:
        if self.is_polynomial():
            return self.num.format(var)
        return f"({self.num.format(var)}) / ({self.den.format(var)})"

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"RationalFunction({self.format()})"


class ExpPolyFunction:
    """Shape scale**scale_power * z**power * (num/den)(z) * exp(sign*z**2/2)
    with z = scale*x.

    All rational data is exact; `scale` is the only float and only matters at
    evaluation time.  scale_power counts the sqrt(omega/2) factors picked up
    by each x-derivative, so that second-order combinations (scale**2 =
    omega/2) stay exactly rational.  `power` is a Fraction because cylindrical
    radial factors carry half-integer powers of r; the one-dimensional
    catalog states all have nonnegative integer power.
    """

    __slots__ = ("power", "num", "den", "gauss_sign", "scale", "scale_power")

    def __init__(self, power, num, den=None, gauss_sign=-1, scale=1.0, scale_power=0):
        if gauss_sign not in (-1, 1):
            raise ValueError("gauss_sign must be -1 or +1")
        if not isinstance(num, Polynomial):
            num = Polynomial(num) if isinstance(num, (tuple, list)) else Polynomial.constant(num)
        if den is None:
            den = Polynomial.one()
        elif not isinstance(den, Polynomial):
            den = Polynomial(den) if isinstance(den, (tuple, list)) else Polynomial.constant(den)
        if den.is_zero():
            raise ZeroDenominator("exp-poly function with zero denominator")
        power = as_fraction(power) if not isinstance(power, Fraction) else power
        if num.is_zero():
            self.power = Fraction(0)
            self.num = Polynomial.zero()
            self.den = Polynomial.one()
        else:
            g = num.gcd(den)
            if g.degree > 0:
                num = num.exact_div(g)
                den = den.exact_div(g)
            lead = den.leading
            if lead != 1:
                num = num * (1 / lead)
                den = den * (1 / lead)
            a = num.trailing_zeros()
            b = den.trailing_zeros()
            if a:
                num = num.unshift(a)
            if b:
                den = den.unshift(b)
            self.power = power + a - b
            self.num = num
            self.den = den
        self.gauss_sign = gauss_sign
        self.scale = float(scale)
        self.scale_power = int(scale_power)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExpPolyFunction):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        return (
            self.gauss_sign == other.gauss_sign
            and self.scale == other.scale
            and self.scale_power == other.scale_power
            and self.power == other.power
            and self.num == other.num
            and self.den == other.den
        )

    def _compatible(self, other, what):
        if self.gauss_sign != other.gauss_sign:
            raise ValueError(f"cannot {what}: mismatched Gaussian signs")
        if self.scale != other.scale:
            raise ValueError(f"cannot {what}: mismatched scales")
        if self.scale_power != other.scale_power and not (self.is_zero() or other.is_zero()):
            raise ValueError(f"cannot {what}: mismatched scale powers")

    def __add__(self, other) -> "ExpPolyFunction":
        if not isinstance(other, ExpPolyFunction):
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        self._compatible(other, "add")
        delta = self.power - other.power
        if delta.denominator != 1:
            raise ValueError("cannot add: powers differ by a non-integer")
        d = int(delta)
        n1, n2 = self.num, other.num
        base = other.power
        if d >= 0:
            n1 = n1.shift(d)
        else:
            n2 = n2.shift(-d)
            base = self.power
        return ExpPolyFunction(
            base,
            n1 * other.den + n2 * self.den,
            self.den * other.den,
            self.gauss_sign,
            self.scale,
            self.scale_power,
        )

    def __neg__(self) -> "ExpPolyFunction":
        return ExpPolyFunction(self.power, -self.num, self.den, self.gauss_sign, self.scale, self.scale_power)

    def __sub__(self, other) -> "ExpPolyFunction":
        if not isinstance(other, ExpPolyFunction):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> "ExpPolyFunction":
        """Multiply by an exact rational constant, Polynomial, or
        RationalFunction (in z)."""
        if isinstance(other, (int, Fraction)):
            return ExpPolyFunction(self.power, self.num * other, self.den, self.gauss_sign, self.scale, self.scale_power)
        if isinstance(other, Polynomial):
            return ExpPolyFunction(self.power, self.num * other, self.den, self.gauss_sign, self.scale, self.scale_power)
        if isinstance(other, RationalFunction):
            return ExpPolyFunction(
                self.power, self.num * other.num, self.den * other.den, self.gauss_sign, self.scale, self.scale_power
            )
        return NotImplemented

    __rmul__ = __mul__

    def bump_scale_power(self, k: int = 1) -> "ExpPolyFunction":
        return ExpPolyFunction(self.power, self.num, self.den, self.gauss_sign, self.scale, self.scale_power + k)

    def derivative(self) -> "ExpPolyFunction":
        """Exact d/dx.  The chain rule contributes one factor of scale, so
        scale_power goes up by one."""
        if self.is_zero():
            return self.bump_scale_power(1)
        n, d, p, sg = self.num, self.den, self.power, self.gauss_sign
        bracket = (p * n * d) + (n.derivative() * d - n * d.derivative()).shift(1) + (sg * n * d).shift(2)
        return ExpPolyFunction(p - 1, bracket, d * d, sg, self.scale, self.scale_power + 1)

    def rational_part_at(self, z: Fraction) -> Fraction:
        """Exact value of z**power * num/den at rational z (integer power
        only), ignoring the Gaussian and scale factors."""
        if self.power.denominator != 1:
            raise ValueError("fractional power has no exact rational value")
        z = as_fraction(z)
        d = self.den(z)
        if d == 0:
            raise PoleEvaluation(f"pole at {z}")
        p = int(self.power)
        if p < 0 and z == 0:
            raise PoleEvaluation("negative power at z = 0")
        return (z ** p) * self.num(z) / d

    def __call__(self, x):
        scalar = np.isscalar(x)
        z = self.scale * np.asarray(x, dtype=float)
        if self.is_zero():
            out = np.zeros_like(z)
            return float(out) if scalar else out
        den_val = self.den(z)
        if np.any(den_val == 0.0):
            raise PoleEvaluation("pole on evaluation grid")
        p = self.power
        if p == 0:
            zp = np.ones_like(z)
        elif p.denominator == 1:
            if int(p) < 0 and np.any(z == 0.0):
                raise PoleEvaluation("negative power at z = 0")
            zp = z ** int(p)
        else:
            if np.any(z < 0.0):
                raise ValueError("fractional power needs z >= 0")
            if np.any(z == 0.0) and p < 0:
                raise PoleEvaluation("negative power at z = 0")
            zp = z ** float(p)
        out = (self.scale ** self.scale_power) * zp * (self.num(z) / den_val) * np.exp(0.5 * self.gauss_sign * z * z)
        return float(out) if scalar else out

    def proportional_to(self, other) -> Fraction | None:
        """Exact rational c with self == c*other, or None.  Requires matching
        structural fields (sign, scale, scale_power, power)."""
        if not isinstance(other, ExpPolyFunction):
            raise TypeError("expected ExpPolyFunction")
        if self.is_zero():
            return Fraction(0)
        if other.is_zero():
            return None
        if (
            self.gauss_sign != other.gauss_sign
            or self.scale != other.scale
            or self.scale_power != other.scale_power
            or self.power != other.power
            or self.den != other.den
            or self.num.degree != other.num.degree
        ):
            return None
        c = self.num.leading / other.num.leading
        return c if self.num == other.num * c else None

    def to_json(self) -> dict:
        return {
            "power": f"{self.power.numerator}/{self.power.denominator}",
            "num": self.num.to_json(),
            "den": self.den.to_json(),
            "gauss_sign": self.gauss_sign,
            "scale_power": self.scale_power,
        }

    def __repr__(self):
        sg = "-" if self.gauss_sign < 0 else "+"
        body = f"z^{self.power}" if self.power else ""
        rat = self.num.format() if self.den.degree == 0 else f"({self.num.format()})/({self.den.format()})"
        sp = f" * scale^{self.scale_power}" if self.scale_power else ""
        return f"ExpPolyFunction({body}{'*' if body else ''}{rat} * exp({sg}z^2/2){sp})"

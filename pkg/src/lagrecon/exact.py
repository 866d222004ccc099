"""Exact univariate polynomials and rational functions over the rationals.

Everything here is built on :class:`fractions.Fraction`; no floating point is
involved. Polynomials are stored densely, coefficient ``c[k]`` multiplying
``xi**k``, with trailing zeros trimmed so that equality is structural.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial, gcd, lcm
from typing import Iterable, Sequence, Union

from .errors import PoleError

Number = Union[int, Fraction]


def as_fraction(x) -> Fraction:
    """Coerce ints, Fractions and exact strings ("p/q", "p") to Fraction.

    Floats and decimal strings are refused: accepting them would silently
    introduce binary rounding into an otherwise exact pipeline.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``; decimal points and exponents are rejected."""
    s = text.strip()
    if not s or any(ch in s for ch in ".eE_ "):
        raise ValueError(f"not an exact rational: {text!r}")
    num, sep, den = s.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"not an exact rational: {text!r}") from None
    if q == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(p, q)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class Poly:
    """Dense polynomial in one variable with Fraction coefficients.

    The zero polynomial has an empty coefficient tuple and degree -1.
    Instances are immutable and hashable.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- construction helpers -------------------------------------------
    @classmethod
    def constant(cls, c: Number) -> "Poly":
        return cls([c])

    @classmethod
    def monomial(cls, k: int, c: Number = 1) -> "Poly":
        return cls([0] * k + [c])

    @classmethod
    def from_roots(cls, roots: Iterable[Number], lead: Number = 1) -> "Poly":
        p = cls([lead])
        for r in roots:
            p = p * cls([-as_fraction(r), 1])
        return p

    # -- basic queries ----------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("Poly", self.coeffs))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    # -- arithmetic -------------------------------------------------------
    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __add__(self, other) -> "Poly":
        other = _lift(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        other = _lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return Poly(x * c for x in self.coeffs)
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, c) -> "Poly":
        if isinstance(c, Poly):
            if c.degree != 0:
                raise TypeError("use divmod for polynomial division")
            c = c.lead
        c = as_fraction(c)
        return Poly(x / c for x in self.coeffs)

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative power")
        out, base = Poly([1]), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __divmod__(self, other: "Poly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db, lb = other.degree, other.lead
        if len(rem) <= db:
            return Poly(), self
        quo = [Fraction(0)] * (len(rem) - db)
        bc = other.coeffs
        for i in range(len(rem) - 1, db - 1, -1):
            q = rem[i] / lb
            if q:
                quo[i - db] = q
                for j in range(db + 1):
                    rem[i - db + j] -= q * bc[j]
        return Poly(quo), Poly(rem[:db])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    # -- calculus & evaluation -------------------------------------------
    def __call__(self, x):
        """Horner evaluation. ``x`` may be a rational or another Poly."""
        if isinstance(x, Poly):
            out = Poly()
            for c in reversed(self.coeffs):
                out = out * x + c
            return out
        x = as_fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def sign_at(self, x) -> int:
        v = self(x)
        return (v > 0) - (v < 0)

    def derivative(self, order: int = 1) -> "Poly":
        cs = self.coeffs
        for _ in range(order):
            cs = tuple(k * c for k, c in enumerate(cs) if k)
        return Poly(cs)

    def antiderivative(self) -> "Poly":
        """Antiderivative with zero constant term."""
        return Poly([0] + [c / (k + 1) for k, c in enumerate(self.coeffs)])

    def shift(self, c) -> "Poly":
        """Return the polynomial ``xi -> self(xi + c)``."""
        return self(Poly([as_fraction(c), 1]))

    def reflect(self) -> "Poly":
        """Return ``xi -> self(-xi)``."""
        return Poly(c if k % 2 == 0 else -c for k, c in enumerate(self.coeffs))

    def monic(self) -> "Poly":
        return self / self.lead if self.coeffs else self

    def primitive(self) -> "Poly":
        """Positive rational multiple with coprime integer coefficients."""
        if not self.coeffs:
            return self
        den = lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = gcd(*ints)
        return Poly(Fraction(v, g) for v in ints)

    # -- presentation -----------------------------------------------------
    def to_json(self) -> list:
        return [format_rational(c) for c in self.coeffs]

    @classmethod
    def from_json(cls, data: Sequence[str]) -> "Poly":
        return cls(parse_rational(s) for s in data)

    def pretty(self, var: str = "xi") -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = format_rational(a)
            else:
                mono = var if k == 1 else f"{var}^{k}"
                body = mono if a == 1 else f"{format_rational(a)}*{mono}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def latex(self, var: str = r"\xi") -> str:
        if not self.coeffs:
            return "0"
        out = ""
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            a = abs(c)
            coef = "" if (a == 1 and k) else (
                str(a.numerator) if a.denominator == 1
                else rf"\tfrac{{{a.numerator}}}{{{a.denominator}}}")
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{{{k}}}")
            sign = "-" if c < 0 else ("+" if out else "")
            out += f"{sign}{coef}{mono}"
        return out

    def __repr__(self) -> str:
        return f"Poly({self.pretty()})"


def _lift(x):
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return Poly([x])
    return NotImplemented


XI = Poly([0, 1])


def poly_eval(p: Poly, x) -> Fraction:
    return p(as_fraction(x))


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (zero only if both inputs are zero)."""
    a, b = a.primitive(), b.primitive()
    while b:
        a, b = b, (a % b).primitive()
    return a.monic()


# -- tau numbers and the sliding-average bijection ------------------------

@lru_cache(maxsize=None)
def _tau_even(k: int) -> Fraction:
    if k == 0:
        return Fraction(1)
    return -sum(
        (_tau_even(k - s) / (4 ** s * factorial(2 * s + 1)) for s in range(1, k + 1)),
        Fraction(0),
    )


def tau(n: int) -> Fraction:
    """Deconvolution coefficient tau_n (Taylor coefficients of (x/2)/sinh(x/2))."""
    if n < 0:
        raise ValueError("tau is defined for n >= 0")
    if n % 2:
        return Fraction(0)
    return _tau_even(n // 2)


def sliding_average(p: Poly) -> Poly:
    """Unit-width sliding average: xi -> integral of p over [xi-1/2, xi+1/2]."""
    P = p.antiderivative()
    half = Fraction(1, 2)
    return P.shift(half) - P.shift(-half)


def deconvolve(p: Poly) -> Poly:
    """Inverse of :func:`sliding_average` on polynomials."""
    out, d, k = Poly(), p, 0
    while d:
        out = out + d * tau(2 * k)
        d = d.derivative(2)
        k += 1
    return out


# -- rational functions -----------------------------------------------------

class RationalFunction:
    """Reduced quotient of two polynomials with a monic denominator."""

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: Poly, denominator: Poly | None = None):
        den = Poly([1]) if denominator is None else denominator
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        num = numerator
        if num.is_zero():
            num, den = Poly(), Poly([1])
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
            lc = den.lead
            num, den = num / lc, den / lc
        object.__setattr__(self, "numerator", num)
        object.__setattr__(self, "denominator", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFunction is immutable")

    def __eq__(self, other) -> bool:
        other = _lift_rf(other)
        if other is NotImplemented:
            return other
        return self.numerator == other.numerator and self.denominator == other.denominator

    def __hash__(self) -> int:
        return hash((self.numerator, self.denominator))

    def __add__(self, other):
        other = _lift_rf(other)
        if other is NotImplemented:
            return other
        if self.denominator == other.denominator:
            return RationalFunction(self.numerator + other.numerator, self.denominator)
        return RationalFunction(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.numerator, self.denominator)

    def __sub__(self, other):
        other = _lift_rf(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _lift_rf(other)
        if other is NotImplemented:
            return other
        return RationalFunction(self.numerator * other.numerator,
                                self.denominator * other.denominator)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _lift_rf(other)
        if other is NotImplemented:
            return other
        return RationalFunction(self.numerator * other.denominator,
                                self.denominator * other.numerator)

    def __call__(self, x) -> Fraction:
        x = as_fraction(x)
        d = self.denominator(x)
        if d == 0:
            raise PoleError(f"denominator vanishes at xi = {format_rational(x)}")
        return self.numerator(x) / d

    def is_polynomial(self) -> bool:
        return self.denominator.degree == 0

    def to_json(self) -> dict:
        return {"num": self.numerator.to_json(), "den": self.denominator.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "RationalFunction":
        return cls(Poly.from_json(data["num"]), Poly.from_json(data["den"]))

    def pretty(self, var: str = "xi") -> str:
        if self.is_polynomial():
            return self.numerator.pretty(var)
        return f"({self.numerator.pretty(var)}) / ({self.denominator.pretty(var)})"

    def __repr__(self) -> str:
        return f"RationalFunction({self.pretty()})"


def _lift_rf(x):
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, Poly):
        return RationalFunction(x)
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return RationalFunction(Poly([x]))
    return NotImplemented


def ratfun_reduce(num: Poly, den: Poly) -> RationalFunction:
    return RationalFunction(num, den)

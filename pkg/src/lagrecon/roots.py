"""Real-root isolation with Sturm sequences, in exact arithmetic.

A real algebraic number is carried around as an :class:`IsolatingInterval`:
a square-free polynomial together with rational bounds ``lo < hi`` such that
the polynomial has exactly one root in the open interval and does not vanish
at either bound. Rational roots that are found exactly are stored as
degenerate intervals with ``lo == hi``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from .errors import CertificationError
from .exact import Poly, as_fraction, format_rational, poly_gcd


@dataclass(frozen=True)
class IsolatingInterval:
    lo: Fraction
    hi: Fraction
    poly: Poly
    multiplicity: int = 1

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __float__(self) -> float:
        return float(self.midpoint)

    def describe(self) -> str:
        if self.is_exact:
            return format_rational(self.lo)
        return f"({format_rational(self.lo)}, {format_rational(self.hi)})"

    def to_json(self) -> dict:
        return {
            "lo": format_rational(self.lo),
            "hi": format_rational(self.hi),
            "poly": self.poly.to_json(),
            "multiplicity": self.multiplicity,
        }


def exact_root(r, poly: Optional[Poly] = None) -> IsolatingInterval:
    r = as_fraction(r)
    return IsolatingInterval(r, r, poly if poly is not None else Poly([-r, 1]))


# -- square-free machinery -----------------------------------------------

def squarefree_part(p: Poly) -> Poly:
    if p.degree <= 0:
        return p.primitive()
    g = poly_gcd(p, p.derivative())
    return (p // g).primitive() if g.degree > 0 else p.primitive()


def squarefree_decomposition(p: Poly) -> List[Tuple[Poly, int]]:
    """Yun's algorithm: pairs (factor, multiplicity) with square-free, coprime factors."""
    if p.degree <= 0:
        return []
    out = []
    a = p.monic()
    b = a.derivative()
    c = poly_gcd(a, b)
    w = a // c
    y = b // c
    i = 1
    while w.degree > 0:
        z = y - w.derivative()
        g = poly_gcd(w, z)
        if g.degree > 0:
            out.append((g, i))
        w = w // g
        y = z // g
        i += 1
    return out


# -- Sturm sequences --------------------------------------------------------

def sturm_chain(p: Poly) -> List[Poly]:
    """Sturm sequence of ``p``; remainders are rescaled by positive constants."""
    chain = [p.primitive() if p.lead > 0 else -(-p).primitive()]
    d = p.derivative()
    if d.is_zero():
        return chain
    chain.append(d.primitive())
    while True:
        r = chain[-2] % chain[-1]
        if r.is_zero():
            return chain
        chain.append(-r.primitive())


def _sign(v: Fraction) -> int:
    return (v > 0) - (v < 0)


def _variations(signs: Iterable[int]) -> int:
    count, last = 0, 0
    for s in signs:
        if s:
            if last and s != last:
                count += 1
            last = s
    return count


def _signs_at(chain: Sequence[Poly], x) -> List[int]:
    if x is None or x == "-inf" or x == "+inf":
        raise ValueError("use _signs_at_infinity")
    return [_sign(q(x)) for q in chain]


def _signs_at_infinity(chain: Sequence[Poly], positive: bool) -> List[int]:
    out = []
    for q in chain:
        s = _sign(q.lead)
        if not positive and q.degree % 2:
            s = -s
        out.append(s)
    return out


class SturmCounter:
    """Counts distinct real roots of a polynomial over half-open intervals."""

    def __init__(self, p: Poly):
        if p.is_zero():
            raise ValueError("zero polynomial has no finite root set")
        self.poly = squarefree_part(p)
        self.chain = sturm_chain(self.poly)

    def variations(self, x) -> int:
        if x is None:
            raise ValueError("x must be finite")
        return _variations(_signs_at(self.chain, x))

    def total(self) -> int:
        return (_variations(_signs_at_infinity(self.chain, False))
                - _variations(_signs_at_infinity(self.chain, True)))

    def count(self, lo=None, hi=None) -> int:
        """Number of distinct roots in (lo, hi]; ``None`` stands for infinity."""
        vlo = (_variations(_signs_at_infinity(self.chain, False)) if lo is None
               else self.variations(lo))
        vhi = (_variations(_signs_at_infinity(self.chain, True)) if hi is None
               else self.variations(hi))
        return vlo - vhi

    def count_open(self, lo, hi) -> int:
        """Number of distinct roots in the open interval (lo, hi)."""
        n = self.count(lo, hi)
        if hi is not None and self.poly(hi) == 0:
            n -= 1
        return n


def count_real_roots(p: Poly, lo=None, hi=None) -> int:
    """Distinct real roots of ``p`` in (lo, hi]; unbounded sides default to infinity."""
    return SturmCounter(p).count(lo, hi)


def root_bound(p: Poly) -> Fraction:
    """A power of two strictly larger than the modulus of every root (Cauchy)."""
    lc = abs(p.lead)
    b = 1 + max((abs(c) / lc for c in p.coeffs[:-1]), default=Fraction(0))
    out = Fraction(1)
    while out <= b:
        out *= 2
    return out


def _pin_rational(p: Poly, lo: Fraction, hi: Fraction) -> Tuple[Fraction, Fraction, bool]:
    """Shrink (lo, hi) around the simple root of ``p`` until a rational root would show.

    Every rational root of the primitive integer polynomial has a denominator
    dividing its leading coefficient L. Once the interval is narrower than
    1/(2 L^2), the only candidate fraction with denominator <= L is the best
    approximation of the midpoint, which is then tested exactly.
    """
    L = abs(p.primitive().lead.numerator)
    target = Fraction(1, 2 * L * L)
    slo = p.sign_at(lo)
    while hi - lo >= target:
        mid = (lo + hi) / 2
        s = p.sign_at(mid)
        if s == 0:
            return mid, mid, True
        if s == slo:
            lo = mid
        else:
            hi = mid
    cand = ((lo + hi) / 2).limit_denominator(L)
    if lo < cand < hi and p(cand) == 0:
        return cand, cand, True
    return lo, hi, False


def sturm_isolate(p: Poly, exact_rationals: bool = True) -> List[IsolatingInterval]:
    """Isolate every distinct real root of ``p`` (sorted ascending).

    Each interval refers to the square-free part of ``p`` and records the
    multiplicity of its root in ``p``. With ``exact_rationals`` every rational
    root is reported as a degenerate interval.
    """
    if p.is_zero():
        raise ValueError("cannot isolate roots of the zero polynomial")
    if p.degree <= 0:
        return []
    counter = SturmCounter(p)
    q = counter.poly
    B = root_bound(q)
    out: List[Tuple[Fraction, Fraction]] = []
    stack = [(-B, B, counter.count(-B, B))]
    while stack:
        lo, hi, n = stack.pop()
        if n == 0:
            continue
        if n == 1 and q(lo) != 0 and q(hi) != 0:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        vmid = counter.variations(mid)
        left = counter.variations(lo) - vmid  # roots in (lo, mid]
        if q(mid) == 0:
            out.append((mid, mid))
            left -= 1
        stack.append((lo, mid, left))
        stack.append((mid, hi, n - left - (1 if q(mid) == 0 else 0)))
    results = []
    for lo, hi in out:
        if lo != hi and exact_rationals:
            lo, hi, _ = _pin_rational(q, lo, hi)
        results.append(IsolatingInterval(lo, hi, q))
    results.sort(key=lambda iv: iv.lo)
    mult = _multiplicities(p)
    return [IsolatingInterval(iv.lo, iv.hi, iv.poly, _mult_of(iv, mult)) for iv in results]


def _multiplicities(p: Poly):
    return squarefree_decomposition(p)


def _mult_of(iv: IsolatingInterval, decomposition) -> int:
    for factor, m in decomposition:
        if factor.degree <= 0:
            continue
        if iv.is_exact:
            if factor(iv.lo) == 0:
                return m
        elif factor.sign_at(iv.lo) * factor.sign_at(iv.hi) < 0:
            return m
    return 1


def bracket(p: Poly, lo, hi) -> IsolatingInterval:
    """Certify that square-free ``p`` has exactly one root in [lo, hi] and wrap it.

    Raises :class:`CertificationError` unless ``p`` changes sign strictly
    across the interval or vanishes at exactly one point inspected.
    """
    lo, hi = as_fraction(lo), as_fraction(hi)
    slo, shi = p.sign_at(lo), p.sign_at(hi)
    if slo == 0 or shi == 0:
        raise CertificationError("bracket endpoint is a root")
    if slo == shi:
        raise CertificationError("no sign change on the bracket")
    if SturmCounter(p).count(lo, hi) != 1:
        raise CertificationError("bracket holds more than one root")
    return IsolatingInterval(lo, hi, squarefree_part(p))


def refine_root(iv: IsolatingInterval, width) -> IsolatingInterval:
    """Bisect ``iv`` until ``hi - lo <= width``; exact hits collapse to [r, r]."""
    width = as_fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    if iv.is_exact or iv.width <= width:
        return iv
    p, lo, hi = iv.poly, iv.lo, iv.hi
    slo = p.sign_at(lo)
    while hi - lo > width:
        mid = (lo + hi) / 2
        s = p.sign_at(mid)
        if s == 0:
            return IsolatingInterval(mid, mid, p, iv.multiplicity)
        if s == slo:
            lo = mid
        else:
            hi = mid
    return IsolatingInterval(lo, hi, p, iv.multiplicity)


def _halve(iv: IsolatingInterval) -> IsolatingInterval:
    return refine_root(iv, iv.width / 2)


def roots_equal(a: IsolatingInterval, b: IsolatingInterval) -> bool:
    return compare_roots(a, b) == 0


def compare_roots(a: IsolatingInterval, b: IsolatingInterval) -> int:
    """Exact three-way comparison of the real numbers isolated by ``a`` and ``b``."""
    for _ in range(10_000):
        if a.is_exact and b.is_exact:
            return _sign(a.lo - b.lo)
        if a.is_exact:
            return -_cmp_rational(b, a.lo)
        if b.is_exact:
            return _cmp_rational(a, b.lo)
        if a.hi <= b.lo:
            return -1
        if b.hi <= a.lo:
            return 1
        g = poly_gcd(a.poly, b.poly)
        if g.degree > 0:
            lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
            if lo < hi and SturmCounter(g).count_open(lo, hi) > 0:
                return 0
        a, b = _halve(a), _halve(b)
    raise CertificationError("root comparison did not terminate")


def _cmp_rational(iv: IsolatingInterval, r: Fraction) -> int:
    """Sign of (root of iv) - r for a non-degenerate ``iv``."""
    if r <= iv.lo:
        return 1
    if r >= iv.hi:
        return -1
    s = iv.poly.sign_at(r)
    if s == 0:
        return 0
    # the root lies on the side where the sign differs from sign(p(r))
    return -1 if s != iv.poly.sign_at(iv.lo) else 1


def root_max(items: Sequence[IsolatingInterval]) -> IsolatingInterval:
    best = items[0]
    for it in items[1:]:
        if compare_roots(it, best) > 0:
            best = it
    return best


def root_min(items: Sequence[IsolatingInterval]) -> IsolatingInterval:
    best = items[0]
    for it in items[1:]:
        if compare_roots(it, best) < 0:
            best = it
    return best


def reflect_root(iv: IsolatingInterval) -> IsolatingInterval:
    """The interval isolating ``-x`` where ``iv`` isolates ``x``."""
    return IsolatingInterval(-iv.hi, -iv.lo, iv.poly.reflect(), iv.multiplicity)


def is_root_of(iv: IsolatingInterval, p: Poly) -> bool:
    """Exact test whether the number isolated by ``iv`` is a root of ``p``."""
    if p.is_zero():
        return True
    if iv.is_exact:
        return p(iv.lo) == 0
    g = poly_gcd(iv.poly, p)
    if g.degree <= 0:
        return False
    return SturmCounter(g).count_open(iv.lo, iv.hi) > 0


def decimal_str(iv: IsolatingInterval, digits: int = 12) -> str:
    """Decimal rendering with ``digits`` significant digits after refinement."""
    if iv.is_exact:
        return _fmt_decimal(iv.lo, digits)
    mag = max(abs(iv.lo), abs(iv.hi), Fraction(1, 10 ** 6))
    w = mag / Fraction(10) ** (digits + 2)
    r = refine_root(iv, w)
    return _fmt_decimal(r.midpoint, digits)


def _fmt_decimal(x: Fraction, digits: int) -> str:
    from decimal import Decimal, localcontext

    with localcontext() as ctx:
        ctx.prec = digits
        v = Decimal(x.numerator) / Decimal(x.denominator)
        return format(+v, "g") if v != 0 else "0"

"""Intervals around xi = 1/2 on which every weight-function lies in (0, 1).

Endpoints are algebraic numbers, namely roots of fundamental reconstruction
polynomials on edge stencils. They are carried as isolating intervals.
Positivity is certified exactly. The square-free product ``g`` of every
numerator and denominator of the family has no root strictly inside the
interval (Sturm counts), so each weight keeps one sign there, and one
interior sample fixes that sign.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from .errors import CertificationError, NotPositiveError
from .exact import Poly
from .fundamental import named_root
from .roots import (IsolatingInterval, SturmCounter, compare_roots, decimal_str,
                    exact_root, poly_gcd, reflect_root, refine_root, root_max, root_min,
                    squarefree_part)
from .stencil import Stencil, Subdivision, is_positive_subdivision, standard_subdivision
from .weights import sigma_family

HALF = Fraction(1, 2)
DEFAULT_WIDTH = Fraction(1, 10 ** 12)

# (m_minus, m_plus, ell, n): the root of alpha_R1 on stencil (m_minus, m_plus)
# for node ell that lies in the window (n - 1/2, n + 1/2)
RootName = Tuple[int, int, int, int]


@dataclass(frozen=True)
class ConvexityInterval:
    sd: Subdivision
    lo: IsolatingInterval
    hi: IsolatingInterval
    lo_name: RootName
    hi_name: RootName

    def refined(self, width=DEFAULT_WIDTH) -> "ConvexityInterval":
        return ConvexityInterval(self.sd, refine_root(self.lo, width),
                                 refine_root(self.hi, width), self.lo_name, self.hi_name)

    def length_bounds(self, width=DEFAULT_WIDTH) -> Tuple[Fraction, Fraction]:
        r = self.refined(width)
        return r.hi.lo - r.lo.hi, r.hi.hi - r.lo.lo

    def approx(self, digits: int = 12) -> Tuple[str, str, str]:
        lo, hi = decimal_str(self.lo, digits), decimal_str(self.hi, digits)
        a, b = self.length_bounds(Fraction(1, 10 ** (digits + 3)))
        from .roots import _fmt_decimal
        return lo, hi, _fmt_decimal((a + b) / 2, digits)

    def contains_half(self) -> bool:
        h = exact_root(HALF)
        return compare_roots(self.lo, h) < 0 < compare_roots(self.hi, h)

    def to_json(self, digits: int = 12) -> dict:
        lo, hi, length = self.approx(digits)
        r = self.refined()
        return {
            "subdivision": self.sd.to_json(),
            "lo": {"approx": lo, "root": list(self.lo_name), **r.lo.to_json()},
            "hi": {"approx": hi, "root": list(self.hi_name), **r.hi.to_json()},
            "length": length,
        }


def _root(name: RootName) -> Tuple[IsolatingInterval, RootName]:
    mm, mp, ell, n = name
    return named_root(Stencil(mm, mp), ell, n), name


def _pick(cands, chooser):
    ivs = [c[0] for c in cands]
    best = chooser(ivs)
    return next(c for c in cands if c[0] is best)


def _ks1_names(s: Stencil) -> Tuple[List[RootName], List[RootName]]:
    mm, mp = s.m_minus, s.m_plus
    if mm == 0:
        lows = [(mm, mp, mp, 0)]
    else:
        lows = [(mm, mp, mp, 0), (mm, mp, -mm, 0), (mm, mp - 1, -mm, 0)]
    if mp == 1:
        highs = [(mm, mp, -mm, 1)]
    else:
        highs = [(mm, mp, -mm, 1), (mm, mp, mp, 1), (mm - 1, mp, mp, 1)]
    return lows, highs


def convexity_interval_ks1(s: Stencil) -> ConvexityInterval:
    """Level-1 interval: max of the named n=0 roots up to min of the named n=1 roots."""
    if s.M < 2 or not (-s.m_minus <= 0 < 1 <= s.m_plus):
        raise NotPositiveError(f"stencil {s.label()} needs M >= 2 and -M- <= 0 < 1 <= M+")
    lows, highs = _ks1_names(s)
    lo = _pick([_root(n) for n in lows], root_max)
    hi = _pick([_root(n) for n in highs], root_min)
    return ConvexityInterval(Subdivision(s, 1), lo[0], hi[0], lo[1], hi[1])


def level1_stencils(sd: Subdivision) -> List[Stencil]:
    """Stencils of every level-1 split met while recursing down to level Ks."""
    return [Stencil(sd.m_minus - ls, sd.m_plus - L + ls)
            for L in range(sd.ks) for ls in range(L + 1)]


def convexity_interval(sd: Subdivision) -> ConvexityInterval:
    """Intersection of the level-1 intervals of all constituent stencils."""
    if not is_positive_subdivision(sd):
        raise NotPositiveError(f"{sd.label()} is not a positive subdivision")
    parts = [convexity_interval_ks1(s) for s in level1_stencils(sd)]
    lo = _pick([(p.lo, p.lo_name) for p in parts], root_max)
    hi = _pick([(p.hi, p.hi_name) for p in parts], root_min)
    return ConvexityInterval(sd, lo[0], hi[0], lo[1], hi[1])


# -- certification ------------------------------------------------------------

@dataclass
class PositivityReport:
    ok: bool
    reason: str = ""
    samples: int = 0
    inner: Tuple[Fraction, Fraction] = (Fraction(0), Fraction(0))
    endpoint_roots: Tuple[bool, bool] = (False, False)
    details: dict = field(default_factory=dict)


def family_polynomial(sd: Subdivision) -> Poly:
    """Square-free product of every numerator and denominator of the weight family."""
    prod = Poly([1])
    for rf in sigma_family(sd):
        for p in (rf.numerator, rf.denominator):
            if p.degree > 0:
                prod = prod * squarefree_part(p)
    return squarefree_part(prod)


def _clear_sliver(iv: IsolatingInterval, g: Poly, gc: SturmCounter,
                  max_iter: int = 400) -> Optional[IsolatingInterval]:
    """Shrink ``iv`` until any root of ``g`` inside it is the isolated number itself."""
    for _ in range(max_iter):
        if iv.is_exact:
            return iv
        h = poly_gcd(g, iv.poly)
        nh = SturmCounter(h).count_open(iv.lo, iv.hi) if h.degree > 0 else 0
        if gc.count_open(iv.lo, iv.hi) == nh and g(iv.lo) != 0 and g(iv.hi) != 0:
            return iv
        iv = refine_root(iv, iv.width / 2)
    return None


def certify_positive(sd: Subdivision, lo: IsolatingInterval, hi: IsolatingInterval,
                     samples: int = 32) -> PositivityReport:
    """Exactly certify that every weight lies in (0, 1) on the open interval (lo, hi)."""
    if compare_roots(lo, hi) >= 0:
        return PositivityReport(False, "empty interval")
    fam = sigma_family(sd)
    g = family_polynomial(sd)
    tight = (_is_root(lo, g), _is_root(hi, g))
    if g.degree <= 0:
        gc = None
    else:
        gc = SturmCounter(g)
    # separate the two brackets
    for _ in range(400):
        if lo.hi < hi.lo or (lo.is_exact and hi.is_exact):
            break
        lo = refine_root(lo, lo.width / 2) if not lo.is_exact else lo
        hi = refine_root(hi, hi.width / 2) if not hi.is_exact else hi
    else:
        raise CertificationError("could not separate interval endpoints")
    if gc is not None:
        lo2, hi2 = _clear_sliver(lo, g, gc), _clear_sliver(hi, g, gc)
        if lo2 is None or hi2 is None:
            return PositivityReport(False, "a weight changes sign next to an endpoint")
        lo, hi = lo2, hi2
    a, b = lo.hi, hi.lo
    if gc is not None:
        inside = gc.count(a, b)
        if hi.is_exact and g(b) == 0:
            inside -= 1
        if inside:
            return PositivityReport(False, f"{inside} zero/pole crossing(s) inside",
                                    inner=(a, b), endpoint_roots=tight)
    # sample points: the midpoint, both inward neighbours, and an even grid
    pts = {(a + b) / 2}
    if HALF > a and HALF < b:
        pts.add(HALF)
    eps = (b - a) / 10 ** 6
    pts.add(a if not lo.is_exact else a + eps)
    pts.add(b if not hi.is_exact else b - eps)
    for j in range(1, samples + 1):
        pts.add(a + (b - a) * Fraction(j, samples + 1))
    for x in sorted(pts):
        for k, rf in enumerate(fam):
            v = rf(x)
            if not 0 < v < 1:
                return PositivityReport(False, f"sigma_{k}({x}) = {v} not in (0,1)",
                                        samples=len(pts), inner=(a, b), endpoint_roots=tight)
    return PositivityReport(True, "", samples=len(pts), inner=(a, b), endpoint_roots=tight)


def _is_root(iv: IsolatingInterval, g: Poly) -> bool:
    from .roots import is_root_of
    return g.degree > 0 and is_root_of(iv, g)


def certify_convexity(ci: ConvexityInterval, samples: int = 32) -> PositivityReport:
    if not ci.contains_half():
        return PositivityReport(False, "interval does not contain 1/2")
    return certify_positive(ci.sd, ci.lo, ci.hi, samples)


def certify_reflected(sd: Subdivision, samples: int = 32) -> PositivityReport:
    """Positivity on the mirror image of the interval, i.e. around xi = -1/2."""
    ci = convexity_interval(sd)
    return certify_positive(sd, reflect_root(ci.hi), reflect_root(ci.lo), samples)


# -- standard-stencil table ------------------------------------------------------

@dataclass(frozen=True)
class IntervalRow:
    M: int
    sd: Subdivision
    interval: ConvexityInterval
    lo: str
    hi: str
    length: str


def interval_table(max_m: int, digits: int = 12, min_m: int = 2) -> List[IntervalRow]:
    if max_m < 2:
        raise ValueError("max_m must be >= 2")
    rows = []
    for M in range(min_m, max_m + 1):
        sd = standard_subdivision(M)
        ci = convexity_interval(sd)
        lo, hi, length = ci.approx(digits)
        rows.append(IntervalRow(M, sd, ci, lo, hi, length))
    return rows


def compare_lengths(a: ConvexityInterval, b: ConvexityInterval,
                    max_digits: int = 60) -> int:
    """Exact-enough comparison of interval lengths by refining until the bounds separate.

    Returns 0 only if the bounds still overlap at ``10**-max_digits``; the
    lengths are then treated as indistinguishable.
    """
    w = Fraction(1, 10 ** 6)
    while w >= Fraction(1, 10 ** max_digits):
        la, ha = a.length_bounds(w)
        lb, hb = b.length_bounds(w)
        if ha < lb:
            return -1
        if hb < la:
            return 1
        w /= 10 ** 6
    return 0

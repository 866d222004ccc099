"""Rational weight-functions combining substencil reconstructions.

For a subdivision of level K the full-stencil reconstructing polynomial is
``sum_k sigma_k(xi) * p_k(xi)`` where ``p_k`` reconstructs on substencil k.
The sigma are rational in xi. They are built level by level from the K=1
quotients of fundamental polynomials and are always stored in reduced form.
"""

from __future__ import annotations

import json
import os
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .errors import PoleError, SingularSystemError
from .exact import Poly, RationalFunction, as_fraction, format_rational
from .fundamental import alpha_recon, lambda_recon, solve_linear
from .roots import IsolatingInterval, is_root_of, squarefree_part, sturm_isolate
from .stencil import Stencil, Subdivision, substencils

_ONE = RationalFunction(Poly([1]))

_memo: Dict[Tuple[int, int, int, int], RationalFunction] = {}
_memo_lock = threading.Lock()


def sigma_level1(s: Stencil, k_s: int) -> RationalFunction:
    """Weights of the two substencils (M-, M+-1) and (M- -1, M+) of ``s``."""
    if s.M < 2:
        raise ValueError(f"level-1 weights need M >= 2, got M={s.M}")
    if k_s == 0:
        return RationalFunction(alpha_recon(s, -s.m_minus),
                                alpha_recon(Stencil(s.m_minus, s.m_plus - 1), -s.m_minus))
    if k_s == 1:
        return RationalFunction(alpha_recon(s, s.m_plus),
                                alpha_recon(Stencil(s.m_minus - 1, s.m_plus), s.m_plus))
    raise ValueError(f"k_s must be 0 or 1 at level 1, got {k_s}")


def sigma_level1_lambda(s: Stencil, k_s: int) -> RationalFunction:
    """The same level-1 weights written as quotients of error polynomials."""
    if s.M < 2:
        raise ValueError(f"level-1 weights need M >= 2, got M={s.M}")
    a = lambda_recon(Stencil(s.m_minus - 1, s.m_plus), s.M)
    b = lambda_recon(Stencil(s.m_minus, s.m_plus - 1), s.M)
    if k_s == 0:
        return RationalFunction(a, a - b)
    if k_s == 1:
        return RationalFunction(b, b - a)
    raise ValueError(f"k_s must be 0 or 1 at level 1, got {k_s}")


def sigma(sd: Subdivision, k_s: int) -> RationalFunction:
    """Weight-function of substencil ``k_s`` at subdivision level ``sd.ks``."""
    K = sd.ks
    if not 0 <= k_s <= K:
        raise ValueError(f"k_s={k_s} outside 0..{K}")
    return _sigma(sd.m_minus, sd.m_plus, K, k_s)


def _sigma(mm: int, mp: int, K: int, k: int) -> RationalFunction:
    if K == 0:
        return _ONE
    key = (mm, mp, K, k)
    hit = _memo.get(key)
    if hit is not None:
        return hit
    total = RationalFunction(Poly())
    for ls in range(max(0, k - 1), min(K - 1, k) + 1):
        parent = _sigma(mm, mp, K - 1, ls)
        child = sigma_level1(Stencil(mm - ls, mp - (K - 1) + ls), k - ls)
        total = total + parent * child
    with _memo_lock:
        _memo.setdefault(key, total)
    return _memo[key]


def sigma_family(sd: Subdivision) -> List[RationalFunction]:
    return [sigma(sd, k) for k in range(sd.ks + 1)]


def clear_memo() -> None:
    with _memo_lock:
        _memo.clear()


def load_memo(path: str) -> int:
    """Merge a JSON memo written by :func:`save_memo`; returns the entry count read."""
    if not os.path.exists(path):
        return 0
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    with _memo_lock:
        for entry in data:
            key = tuple(int(v) for v in entry["key"])
            _memo.setdefault(key, RationalFunction.from_json(entry["value"]))
    return len(data)


def save_memo(path: str) -> None:
    with _memo_lock:
        items = sorted(_memo.items())
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump([{"key": list(k), "value": v.to_json()} for k, v in items], fh)
    os.replace(tmp, path)


# -- poles ------------------------------------------------------------------

@dataclass(frozen=True)
class PoleSet:
    sd: Subdivision
    poles: Tuple[IsolatingInterval, ...]
    denominator: Poly  # square-free product of all reduced denominators

    def to_json(self) -> dict:
        return {"subdivision": self.sd.to_json(),
                "poles": [p.to_json() for p in self.poles]}


def denominator_product(sd: Subdivision) -> Poly:
    """Square-free polynomial whose roots are exactly the poles of the family."""
    prod = Poly([1])
    for rf in sigma_family(sd):
        prod = prod * squarefree_part(rf.denominator)
    return squarefree_part(prod)


def pole_set(sd: Subdivision) -> PoleSet:
    den = denominator_product(sd)
    return PoleSet(sd, tuple(sturm_isolate(den)), den)


def pole_superset_polys(sd: Subdivision) -> List[Poly]:
    """Edge polynomials whose roots bound the pole set from above."""
    out = []
    for L in range(sd.ks):
        for ls in range(L + 1):
            s = Stencil(sd.m_minus - 1 - ls, sd.m_plus - L + ls)
            out.append(alpha_recon(s, s.m_plus))
    return out


def poles_within_superset(ps: PoleSet) -> bool:
    polys = pole_superset_polys(ps.sd)
    return all(any(is_root_of(p, q) for q in polys) for p in ps.poles)


# -- evaluation -------------------------------------------------------------

def weights_at(sd: Subdivision, xi) -> List[Fraction]:
    """Exact weights at ``xi``; raises PoleError if any reduced denominator vanishes."""
    xi = as_fraction(xi)
    out = []
    for k, rf in enumerate(sigma_family(sd)):
        if rf.denominator(xi) == 0:
            raise PoleError(
                f"sigma_{k} of {sd.label()} has a pole at xi = {format_rational(xi)}")
        out.append(rf(xi))
    return out


def oracle_weights_at(sd: Subdivision, xi, method: str = "lambda") -> List[Fraction]:
    """Weights from a (Ks+1)x(Ks+1) linear system at fixed ``xi``.

    ``"lambda"``: consistency plus annihilation of the substencil error
    terms of orders M-Ks+1..M. ``"alpha"``: consistency plus the
    basis-representation equations for the Ks leftmost nodes. Neither path
    touches the recursion, which is what makes them useful as oracles.
    """
    xi = as_fraction(xi)
    subs = substencils(sd)
    K, M = sd.ks, sd.M
    rows: List[List[Fraction]] = [[Fraction(1)] * (K + 1)]
    rhs: List[Fraction] = [Fraction(1)]
    if method == "lambda":
        for n in range(M - K + 1, M + 1):
            rows.append([lambda_recon(s, n)(xi) for s in subs])
            rhs.append(Fraction(0))
    elif method == "alpha":
        for ell in range(-sd.m_minus, -sd.m_minus + K):
            rows.append([alpha_recon(s, ell)(xi) if ell in s else Fraction(0) for s in subs])
            rhs.append(alpha_recon(sd.stencil, ell)(xi))
    else:
        raise ValueError(f"unknown method {method!r}")
    try:
        sol = solve_linear(rows, [[r] for r in rhs])
    except ZeroDivisionError:
        raise SingularSystemError(
            f"oracle system singular for {sd.label()} at xi = {format_rational(xi)}") from None
    return [r[0] for r in sol]


def combine_reconstructions(sd: Subdivision, samples: Sequence) -> RationalFunction:
    """sum_k sigma_k * p_k as a rational function, for full-stencil cell averages."""
    from .fundamental import reconstructing_polynomial

    vals = [as_fraction(v) for v in samples]
    if len(vals) != sd.M + 1:
        raise ValueError(f"expected {sd.M + 1} samples, got {len(vals)}")
    total = RationalFunction(Poly())
    for k, s in enumerate(substencils(sd)):
        off = k  # substencil k starts k cells right of the parent's left edge
        p = reconstructing_polynomial(s, vals[off:off + s.M + 1])
        total = total + sigma(sd, k) * p
    return total

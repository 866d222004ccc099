"""Property suites behind ``lagrecon verify``.

Each suite expands into independent cases. A case is a top-level function
plus plain arguments, so the list can fan out over worker processes and
still be reported in a fixed order.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, List, Sequence, Tuple

from .convexity import (certify_convexity, certify_reflected, compare_lengths,
                        convexity_interval, convexity_interval_ks1, family_polynomial,
                        interval_table)
from .errors import CertificationError, PoleError, SingularSystemError
from .exact import Poly, RationalFunction, poly_gcd, sliding_average
from .fundamental import (alpha_interp, alpha_recon, alpha_recon_shu, certify_roots,
                          inverse_vandermonde_direct, inverse_vandermonde_stirling,
                          lambda_recon, leading_coefficient, mu_recon, nu)
from .roots import SturmCounter, is_root_of, squarefree_part
from .stencil import (Stencil, Subdivision, is_positive_subdivision, standard_subdivision,
                      stencils_of_width, substencils, subdivisions_up_to)
from .weights import (denominator_product, oracle_weights_at, pole_set, poles_within_superset,
                      sigma, sigma_family, sigma_level1, sigma_level1_lambda, weights_at)

SUITES = ("identities", "roots", "consistency", "uniqueness", "convexity")


@dataclass(frozen=True)
class CaseResult:
    suite: str
    case: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        tail = f"  {self.detail}" if self.detail else ""
        return f"{'PASS' if self.ok else 'FAIL'} {self.suite} {self.case}{tail}"


Case = Tuple[str, str, Callable, tuple]


# -- polynomial-level checks ---------------------------------------------------

def check_closed_forms(mm: int, mp: int) -> Tuple[bool, str]:
    """Inverse-Vandermonde paths, nu deltas, pair property, three alpha_R1 paths."""
    s = Stencil(mm, mp)
    if inverse_vandermonde_direct(s) != inverse_vandermonde_stirling(s):
        return False, "inverse Vandermonde paths differ"
    for m in range(s.M + 1):
        for k in range(s.M + 1):
            if nu(s, m, k) != (1 if m == k else 0):
                return False, f"nu[{m},{k}] is not a delta"
    for ell in s.points:
        a = alpha_recon(s, ell)
        if a != alpha_recon(s, ell, "deconvolve") or a != alpha_recon_shu(s, ell):
            return False, f"alpha_R1 paths differ at ell={ell}"
        ai = alpha_interp(s, ell)
        if ai != alpha_interp(s, ell, "product"):
            return False, f"alpha_I paths differ at ell={ell}"
        if sliding_average(a) != ai:
            return False, f"pair property fails at ell={ell}"
        lc = leading_coefficient(s, ell)
        if a.degree != s.M or a.lead != lc or ai.lead != lc:
            return False, f"leading coefficient mismatch at ell={ell}"
    return True, ""


def check_identities(mm: int, mp: int) -> Tuple[bool, str]:
    """The five alpha/lambda identities on the stencil (mm, mp), M >= 2."""
    s = Stencil(mm, mp)
    M = s.M
    left = Stencil(mm - 1, mp)   # drops the leftmost point
    right = Stencil(mm, mp - 1)  # drops the rightmost point
    sgn = -1 if (M - 1) % 2 else 1
    a_left_edge = alpha_recon(left, mp)
    if a_left_edge != alpha_recon(right, -mm) * sgn:
        return False, "(a)"
    for ell in range(-mm + 1, mp):
        if alpha_recon(right, ell) == alpha_recon(left, ell):
            return False, f"(b) at ell={ell}"
    lam_left, lam_right = lambda_recon(left, M), lambda_recon(right, M)
    if lam_left != alpha_recon(s, -mm) * sgn:
        return False, "(c)"
    if lam_right != -alpha_recon(s, mp):
        return False, "(d)"
    if a_left_edge != lam_left - lam_right:
        return False, "(e)"
    return True, ""


def check_error_expansion(mm: int, mp: int, extra: int = 2) -> Tuple[bool, str]:
    """Error polynomials reproduce the exact reconstruction error of monomials."""
    from .fundamental import reconstructing_polynomial

    s = Stencil(mm, mp)
    M = s.M
    for N in range(M + 1, M + 2 + extra):
        h = Poly.monomial(N)
        f = sliding_average(h)
        err = reconstructing_polynomial(s, [f(ell) for ell in s.points]) - h
        via_lambda = Poly()
        via_mu = Poly()
        for n in range(M + 1, N + 1):
            via_lambda = via_lambda + lambda_recon(s, n) * h.derivative(n)
            via_mu = via_mu + mu_recon(s, n) * f.derivative(n)(0)
        if err != via_lambda:
            return False, f"lambda expansion fails for xi^{N}"
        if err != via_mu:
            return False, f"mu expansion fails for xi^{N}"
    if lambda_recon(s, M + 1) != mu_recon(s, M + 1):
        return False, "lambda_{M+1} != mu_{M+1}"
    return True, ""


def check_roots(mm: int, mp: int) -> Tuple[bool, str]:
    """Root certificates, extrema count, and the integer-root pattern."""
    s = Stencil(mm, mp)
    M = s.M
    for ell in s.points:
        try:
            cert = certify_roots(s, ell)
        except CertificationError as exc:
            return False, f"ell={ell}: {exc}"
        if cert.sturm_count != M or len(cert.roots) != M:
            return False, f"ell={ell}: {cert.sturm_count} roots"
        d = alpha_recon(s, ell).derivative()
        extrema = SturmCounter(d).total() if d.degree > 0 else 0
        if extrema != M - 1:
            return False, f"ell={ell}: derivative does not have M-1 real roots"
        expected = integer_roots_predicted(s, ell)
        if tuple(sorted(cert.integer_roots)) != expected:
            return False, f"ell={ell}: integer roots {cert.integer_roots} != {expected}"
    return True, ""


def integer_roots_predicted(s: Stencil, ell: int) -> Tuple[int, ...]:
    """Integer roots predicted for alpha_R1: none for even M, two edge roots for odd M."""
    M = s.M
    if M % 2 == 0:
        return ()
    out = []
    if ell == -s.m_minus:
        out.append((s.m_plus - s.m_minus + 1) // 2)
    if ell == s.m_plus:
        out.append((s.m_plus - s.m_minus - 1) // 2)
    return tuple(sorted(out))


# -- weight-function checks ---------------------------------------------------------

def _combination_equals(rfs: Sequence[RationalFunction], polys: Sequence[Poly],
                        target: Poly) -> bool:
    """Exact test of sum_k rfs[k] * polys[k] == target via a common denominator."""
    D = Poly([1])
    for rf in rfs:
        D = D * rf.denominator // poly_gcd(D, rf.denominator)
    lhs = Poly()
    for rf, p in zip(rfs, polys):
        lhs = lhs + rf.numerator * (D // rf.denominator) * p
    return lhs == target * D


def check_consistency(mm: int, mp: int, K: int, extra: int = 2) -> Tuple[bool, str]:
    sd = Subdivision.of(mm, mp, K)
    M = sd.M
    fam = sigma_family(sd)
    subs = substencils(sd)
    if not _combination_equals(fam, [Poly([1])] * len(fam), Poly([1])):
        return False, "weights do not sum to 1"
    for n in range(M - K + 1, M + 2 + extra):
        target = Poly() if n <= M else lambda_recon(sd.stencil, n)
        if not _combination_equals(fam, [lambda_recon(s, n) for s in subs], target):
            return False, f"lambda identity fails at n={n}"
        mu_target = Poly() if n <= M else mu_recon(sd.stencil, n)
        if not _combination_equals(fam, [mu_recon(s, n) for s in subs], mu_target):
            return False, f"mu identity fails at n={n}"
    for ell in sd.stencil.points:
        polys = [alpha_recon(s, ell) if ell in s else Poly() for s in subs]
        if not _combination_equals(fam, polys, alpha_recon(sd.stencil, ell)):
            return False, f"alpha representation fails at ell={ell}"
    if K == 1 and M >= 2:
        for k in (0, 1):
            if sigma_level1(sd.stencil, k) != sigma_level1_lambda(sd.stencil, k):
                return False, f"level-1 lambda quotient differs for k={k}"
    return True, ""


def check_poles(mm: int, mp: int, K: int) -> Tuple[bool, str]:
    sd = Subdivision.of(mm, mp, K)
    den = denominator_product(sd)
    for twice in range(-2 * mm - 3, 2 * mp + 4, 2):
        x = Fraction(twice, 2)
        if den(x) == 0:
            return False, f"pole at half-integer {x}"
    if den.degree > 0 and SturmCounter(den).total() != den.degree:
        return False, "denominator has non-real roots"
    ps = pole_set(sd)
    if len(ps.poles) != den.degree:
        return False, "pole count differs from denominator degree"
    if not poles_within_superset(ps):
        return False, "pole outside the edge-polynomial superset"
    return True, ""


def check_uniqueness(mm: int, mp: int, K: int, count: int = 20, seed: int = 0
                     ) -> Tuple[bool, str]:
    """Recursion values against both linear-system oracles at seeded random points."""
    sd = Subdivision.of(mm, mp, K)
    rng = random.Random(f"{seed}:{mm}:{mp}:{K}")
    notes = []
    for _ in range(count):
        x = Fraction(rng.randint(-60 * (mm + 1), 60 * (mp + 1)), rng.randint(1, 40))
        try:
            w = weights_at(sd, x)
        except PoleError:
            for method in ("lambda", "alpha"):
                try:
                    oracle_weights_at(sd, x, method)
                except SingularSystemError:
                    continue
                return False, f"oracle solvable at pole {x}"
            continue
        for method in ("lambda", "alpha"):
            try:
                o = oracle_weights_at(sd, x, method)
            except SingularSystemError:
                notes.append(f"{method} singular off-pole at {x}")
                continue
            if o != w:
                return False, f"{method} oracle differs at xi={x}"
    return True, "; ".join(notes)


def check_convexity(mm: int, mp: int, K: int) -> Tuple[bool, str]:
    sd = Subdivision.of(mm, mp, K)
    ci = convexity_interval(sd)
    rep = certify_convexity(ci)
    if not rep.ok:
        return False, rep.reason
    from .roots import compare_roots
    for s in _level1(sd):
        part = convexity_interval_ks1(s)
        if compare_roots(part.lo, ci.lo) > 0 or compare_roots(part.hi, ci.hi) < 0:
            return False, f"not inside the level-1 interval of {s.label()}"
    if K == 1 and not all(rep.endpoint_roots):
        return False, "level-1 endpoint is not a zero or pole of a weight"
    return True, ""


def _level1(sd):
    from .convexity import level1_stencils
    return level1_stencils(sd)


def check_reflection(M: int) -> Tuple[bool, str]:
    rep = certify_reflected(standard_subdivision(M))
    return rep.ok, rep.reason


def check_length_trend(max_m: int) -> Tuple[bool, str]:
    rows = interval_table(max_m)
    by_m = {r.M: r.interval for r in rows}
    for M in by_m:
        if M + 2 in by_m and compare_lengths(by_m[M + 2], by_m[M]) >= 0:
            return False, f"length does not drop from M={M} to M={M + 2}"
        if M % 2 == 0:
            for nb in (M - 1, M + 1):
                if nb in by_m and nb >= 2 and compare_lengths(by_m[M], by_m[nb]) <= 0:
                    return False, f"M={M} not longer than M={nb}"
    return True, ""


# -- suite assembly -------------------------------------------------------------

def _stencils(min_m: int, max_m: int) -> Iterator[Stencil]:
    for M in range(min_m, max_m + 1):
        yield from stencils_of_width(M)


def cases(suite: str, max_m: int) -> List[Case]:
    out: List[Case] = []
    if suite == "identities":
        for s in _stencils(0, max_m):
            out.append((suite, f"closed-forms{s.label()}", check_closed_forms,
                        (s.m_minus, s.m_plus)))
        for s in _stencils(2, max_m):
            out.append((suite, f"identities{s.label()}", check_identities,
                        (s.m_minus, s.m_plus)))
        for s in _stencils(0, max_m):
            out.append((suite, f"error-expansion{s.label()}", check_error_expansion,
                        (s.m_minus, s.m_plus)))
    elif suite == "roots":
        for s in _stencils(1, max_m):
            out.append((suite, f"roots{s.label()}", check_roots, (s.m_minus, s.m_plus)))
    elif suite == "consistency":
        for sd in subdivisions_up_to(max_m):
            out.append((suite, f"identities{sd.label()}", check_consistency,
                        (sd.m_minus, sd.m_plus, sd.ks)))
            out.append((suite, f"poles{sd.label()}", check_poles,
                        (sd.m_minus, sd.m_plus, sd.ks)))
    elif suite == "uniqueness":
        for sd in subdivisions_up_to(max_m):
            out.append((suite, f"oracle{sd.label()}", check_uniqueness,
                        (sd.m_minus, sd.m_plus, sd.ks)))
    elif suite == "convexity":
        for sd in subdivisions_up_to(max_m):
            if is_positive_subdivision(sd):
                out.append((suite, f"interval{sd.label()}", check_convexity,
                            (sd.m_minus, sd.m_plus, sd.ks)))
        for M in range(2, max_m + 1, 2):
            out.append((suite, f"reflected(M={M})", check_reflection, (M,)))
        if max_m >= 3:
            out.append((suite, f"length-trend(M<={max_m})", check_length_trend, (max_m,)))
    else:
        raise ValueError(f"unknown suite {suite!r}")
    return out


def _run_case(case: Case) -> CaseResult:
    suite, name, fn, args = case
    try:
        ok, detail = fn(*args)
    except Exception as exc:  # a crash is a failed case, reported not raised
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return CaseResult(suite, name, bool(ok), detail)


def run_suites(suites: Sequence[str], max_m: int, jobs: int = 1) -> Iterator[CaseResult]:
    """Yield results in a fixed order, whatever the degree of parallelism."""
    todo: List[Case] = []
    for s in suites:
        todo.extend(cases(s, max_m))
    if jobs <= 1:
        for c in todo:
            yield _run_case(c)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        yield from pool.map(_run_case, todo, chunksize=4)

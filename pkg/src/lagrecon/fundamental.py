"""Fundamental polynomials of Lagrange interpolation and reconstruction.

Conventions
-----------
* ``xi = (x - x_i)/dx`` on a unit grid; the pivot cell is ``x_i = 0``.
* The node-power Vandermonde matrix of a stencil has ``V[l][m] = l**m`` for
  node ``l`` (row) and power ``m`` (column). Its inverse is therefore indexed
  ``Vinv[m][l]``: row = power, column = node, which is the orientation in
  which ``alpha_I(xi) = sum_m Vinv[m][l] xi**m``. Indices here are 0-based
  and nodes are stored by offset ``l + M-``.
* ``alpha_recon`` multiplies cell averages; ``alpha_interp`` multiplies point
  values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import List, Sequence, Tuple

from .errors import CertificationError
from .exact import XI, Poly, as_fraction, deconvolve, sliding_average, tau
from .roots import IsolatingInterval, SturmCounter, exact_root, squarefree_part
from .stencil import Stencil

__all__ = [
    "tau", "InvVandermonde", "inverse_vandermonde", "inverse_vandermonde_direct",
    "inverse_vandermonde_stirling", "nu", "alpha_interp", "alpha_recon",
    "alpha_recon_shu", "mu_recon", "mu_interp", "lambda_recon", "lambda_interp",
    "RootCertificate", "certify_roots", "reconstructing_polynomial",
    "interpolating_polynomial", "leading_coefficient",
]

Matrix = Tuple[Tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class InvVandermonde:
    stencil: Stencil
    entries: Matrix = field(repr=False)

    def entry(self, m: int, ell: int) -> Fraction:
        """Coefficient of ``xi**m`` in the interpolation basis polynomial of node ``ell``."""
        return self.entries[m][ell + self.stencil.m_minus]

    def as_lists(self) -> List[List[Fraction]]:
        return [list(r) for r in self.entries]


# -- inverse Vandermonde: two independent constructions ----------------------

@lru_cache(maxsize=None)
def _stirling1(n: int, k: int) -> int:
    """Unsigned Stirling numbers of the first kind."""
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return _stirling1(n - 1, k - 1) + (n - 1) * _stirling1(n - 1, k)


def _inv_vandermonde_origin(M: int) -> Matrix:
    # closed form for nodes {0..M}; 1-based i (power) and j (node) as in the formula
    rows = []
    for i in range(1, M + 2):
        row = []
        for j in range(1, M + 2):
            acc = Fraction(0)
            for k in range(j, M + 2):
                acc += Fraction(comb(k - 1, j - 1) * _stirling1(k - 1, i - 1), factorial(k - 1))
            row.append(acc if (i + j) % 2 == 0 else -acc)
        rows.append(tuple(row))
    return tuple(rows)


@lru_cache(maxsize=None)
def inverse_vandermonde_stirling(s: Stencil) -> InvVandermonde:
    """Stirling-number closed form on {0..M}, moved to the stencil by the binomial shift."""
    M, a = s.M, s.m_minus
    base = _inv_vandermonde_origin(M)
    rows = []
    for i in range(1, M + 2):
        row = []
        for j in range(1, M + 2):
            acc = Fraction(0)
            for n in range(0, M + 2 - i):
                acc += a ** n * comb(n + i - 1, n) * base[i + n - 1][j - 1]
            row.append(acc)
        rows.append(tuple(row))
    return InvVandermonde(s, tuple(rows))


@lru_cache(maxsize=None)
def inverse_vandermonde_direct(s: Stencil) -> InvVandermonde:
    """Gauss-Jordan inverse of ``V[l][m] = l**m``; the result is indexed [power][node]."""
    n = s.M + 1
    V = [[Fraction(ell) ** m for m in range(n)] for ell in s.points]
    eye = [[Fraction(int(r == c)) for c in range(n)] for r in range(n)]
    inv = solve_linear(V, eye)
    return InvVandermonde(s, tuple(tuple(r) for r in inv))


def inverse_vandermonde(s: Stencil) -> InvVandermonde:
    """Production path is the closed form; tests hold it against direct inversion."""
    return inverse_vandermonde_stirling(s)


def solve_linear(A: Sequence[Sequence], B: Sequence[Sequence]) -> List[List[Fraction]]:
    """Exact ``A^{-1} B`` by Gauss-Jordan elimination (``A`` square).

    Raises ZeroDivisionError when ``A`` is singular.
    """
    n = len(A)
    rows = [[Fraction(x) for x in A[r]] + [Fraction(x) for x in B[r]] for r in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        rows[col], rows[piv] = rows[piv], rows[col]
        p = rows[col][col]
        rows[col] = [x / p for x in rows[col]]
        for r in range(n):
            f = rows[r][col]
            if r != col and f != 0:
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[col])]
    return [row[n:] for row in rows]


# -- nu coefficients and fundamental polynomials ------------------------------

def nu(s: Stencil, m: int, k: int) -> Fraction:
    """nu_{m,k} = sum_l Vinv[m][l] * l**k; equals the Kronecker delta for k <= M."""
    if not 0 <= m <= s.M or k < 0:
        raise IndexError(f"nu index out of range: m={m}, k={k}, M={s.M}")
    return _nu_row(s, k)[m]


@lru_cache(maxsize=None)
def _nu_row(s: Stencil, k: int) -> Tuple[Fraction, ...]:
    V = inverse_vandermonde(s)
    return tuple(
        sum((V.entry(m, ell) * Fraction(ell) ** k for ell in s.points), Fraction(0))
        for m in range(s.M + 1)
    )


def _check_ell(s: Stencil, ell: int) -> None:
    if ell not in s:
        raise ValueError(f"ell={ell} outside stencil {s.label()}")


@lru_cache(maxsize=None)
def alpha_interp(s: Stencil, ell: int, method: str = "vandermonde") -> Poly:
    """Lagrange interpolation basis polynomial of node ``ell``.

    ``method`` is ``"vandermonde"`` (coefficients read off the inverse
    Vandermonde column) or ``"product"`` (the textbook product of linear
    factors).
    """
    _check_ell(s, ell)
    if method == "vandermonde":
        V = inverse_vandermonde(s)
        return Poly(V.entry(m, ell) for m in range(s.M + 1))
    if method == "product":
        p = Poly([1])
        for k in s.points:
            if k != ell:
                p = p * Poly([Fraction(-k, ell - k), Fraction(1, ell - k)])
        return p
    raise ValueError(f"unknown method {method!r}")


@lru_cache(maxsize=None)
def alpha_recon(s: Stencil, ell: int, method: str = "closed") -> Poly:
    """Reconstruction basis polynomial multiplying the cell average at ``ell``.

    ``"closed"`` uses the tau / inverse-Vandermonde sum, ``"deconvolve"``
    maps the interpolation basis through the inverse sliding average, and
    ``"shu"`` is the primitive-function sum (kept as an oracle).
    """
    _check_ell(s, ell)
    if method == "closed":
        V = inverse_vandermonde(s)
        M = s.M
        coeffs = []
        for m in range(M + 1):
            acc = Fraction(0)
            for k in range((M - m) // 2 + 1):
                acc += tau(2 * k) * Fraction(factorial(m + 2 * k), factorial(m)) \
                    * V.entry(m + 2 * k, ell)
            coeffs.append(acc)
        return Poly(coeffs)
    if method == "deconvolve":
        return deconvolve(alpha_interp(s, ell))
    if method == "shu":
        return alpha_recon_shu(s, ell)
    raise ValueError(f"unknown method {method!r}")


def alpha_recon_shu(s: Stencil, ell: int, offset: int | None = None) -> Poly:
    """Primitive-function form: derivative of the Lagrange interpolant of the primitive.

    Interfaces are ``z_q = q - 1/2 - offset`` for ``q = 0..M+1``; the
    geometrically correct offset is ``M-`` (the default). ``offset=0``
    reproduces the expression exactly as often printed, which is only right
    for stencils starting at the pivot.
    """
    _check_ell(s, ell)
    M = s.M
    off = s.m_minus if offset is None else offset
    z = [Fraction(2 * q - 1, 2) - off for q in range(M + 2)]
    out = Poly()
    for m in range(ell + s.m_minus + 1, M + 2):
        den = Fraction(1)
        for p in range(M + 2):
            if p != m:
                den *= m - p
        num = Poly()
        for p in range(M + 2):
            if p == m:
                continue
            term = Poly([1])
            for q in range(M + 2):
                if q != m and q != p:
                    term = term * Poly([-z[q], 1])
            num = num + term
        out = out + num / den
    return out


def leading_coefficient(s: Stencil, ell: int) -> Fraction:
    """Closed form of the common leading coefficient of alpha_I and alpha_R1."""
    sign = 1 if (ell + s.m_plus) % 2 == 0 else -1
    return Fraction(sign * comb(s.M, ell + s.m_minus), factorial(s.M))


# -- truncation-error polynomials ----------------------------------------------

def _check_order(s: Stencil, n: int) -> None:
    if n <= s.M:
        raise ValueError(f"error polynomial needs n >= M+1 = {s.M + 1}, got {n}")


@lru_cache(maxsize=None)
def mu_recon(s: Stencil, n: int) -> Poly:
    """Coefficient of ``dx**n f^(n)(x_i)`` in the reconstruction error about the pivot."""
    _check_order(s, n)
    M = s.M
    out = Poly()
    for k in range(n // 2 + 1):
        out = out + Poly.monomial(n - 2 * k, -tau(2 * k) / factorial(n - 2 * k))
    coeffs = []
    for m in range(M + 1):
        acc = Fraction(0)
        for k in range((M - m) // 2 + 1):
            acc += tau(2 * k) * nu(s, m + 2 * k, n) * Fraction(
                factorial(m + 2 * k), factorial(n) * factorial(m))
        coeffs.append(acc)
    return out + Poly(coeffs)


@lru_cache(maxsize=None)
def lambda_recon(s: Stencil, n: int) -> Poly:
    """Coefficient of ``dx**n h^(n)(x)`` in the reconstruction error about ``x`` itself."""
    _check_order(s, n)
    half = Fraction(1, 2)
    lo, hi = XI - half, XI + half
    out = Poly()
    for l in range(n - s.M):
        w = (lo ** (l + 1) - hi ** (l + 1)) * Fraction((-1) ** (l + 1), factorial(l + 1))
        out = out + mu_recon(s, n - l) * w
    return out


@lru_cache(maxsize=None)
def mu_interp(s: Stencil, n: int) -> Poly:
    _check_order(s, n)
    body = Poly.monomial(n, -1) + Poly(nu(s, m, n) for m in range(s.M + 1))
    return body / factorial(n)


@lru_cache(maxsize=None)
def lambda_interp(s: Stencil, n: int) -> Poly:
    _check_order(s, n)
    out = Poly()
    for l in range(n - s.M):
        out = out + (-XI) ** l / factorial(l) * mu_interp(s, n - l)
    return out


# -- reconstruction from data ----------------------------------------------

def reconstructing_polynomial(s: Stencil, samples: Sequence) -> Poly:
    """sum_l alpha_R1(s, l) * f_l for cell averages given in stencil order."""
    if len(samples) != s.M + 1:
        raise ValueError(f"expected {s.M + 1} samples, got {len(samples)}")
    out = Poly()
    for ell, f in zip(s.points, samples):
        out = out + alpha_recon(s, ell) * as_fraction(f)
    return out


def interpolating_polynomial(s: Stencil, samples: Sequence) -> Poly:
    if len(samples) != s.M + 1:
        raise ValueError(f"expected {s.M + 1} samples, got {len(samples)}")
    out = Poly()
    for ell, f in zip(s.points, samples):
        out = out + alpha_interp(s, ell) * as_fraction(f)
    return out


# -- root certificates --------------------------------------------------------

@dataclass(frozen=True)
class RootCertificate:
    stencil: Stencil
    ell: int
    roots: Tuple[IsolatingInterval, ...]
    windows: Tuple[int, ...]
    integer_roots: Tuple[int, ...]
    sturm_count: int

    def root_in_window(self, n: int) -> IsolatingInterval:
        return self.roots[self.windows.index(n)]

    def to_json(self) -> dict:
        return {
            "stencil": self.stencil.to_json(),
            "ell": self.ell,
            "sturm_count": self.sturm_count,
            "integer_roots": list(self.integer_roots),
            "roots": [dict(window=n, **iv.to_json())
                      for n, iv in zip(self.windows, self.roots)],
        }


@lru_cache(maxsize=None)
def certify_roots(s: Stencil, ell: int) -> RootCertificate:
    """Bracket the M real roots of alpha_R1, one per window (n-1/2, n+1/2), n != ell.

    A strict sign change on each of M disjoint windows gives at least M real
    roots; since the degree is M that is all of them, so each window holds
    exactly one. The Sturm count is computed independently as a cross-check.
    """
    _check_ell(s, ell)
    if s.M < 1:
        raise ValueError("root certificates need M >= 1")
    p = alpha_recon(s, ell)
    if p.degree != s.M:
        raise CertificationError(f"degree {p.degree} != M for {s.label()}, ell={ell}")
    sq = squarefree_part(p)
    half = Fraction(1, 2)
    roots, windows, ints = [], [], []
    for n in s.points:
        if n == ell:
            continue
        lo, hi = n - half, n + half
        if p.sign_at(lo) * p.sign_at(hi) >= 0:
            raise CertificationError(
                f"no strict sign change on ({lo}, {hi}) for {s.label()}, ell={ell}")
        if p(n) == 0:
            roots.append(exact_root(n, sq))
            ints.append(n)
        else:
            roots.append(IsolatingInterval(lo, hi, sq))
        windows.append(n)
    count = SturmCounter(p).total()
    if count != s.M:
        raise CertificationError(f"Sturm count {count} != M = {s.M}")
    return RootCertificate(s, ell, tuple(roots), tuple(windows), tuple(ints), count)


def named_root(s: Stencil, ell: int, n: int) -> IsolatingInterval:
    """The root of alpha_R1(s, ell) lying in (n - 1/2, n + 1/2)."""
    return certify_roots(s, ell).root_in_window(n)

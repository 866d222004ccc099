"""Independent reference computations built on sympy.

Nothing here imports the package under test. Reconstruction is derived the
classical way: interpolate the primitive of the cell averages at the cell
interfaces, then differentiate.
"""

from fractions import Fraction
from functools import lru_cache

import sympy as sp

X = sp.Symbol("x")


def to_fraction(v) -> Fraction:
    v = sp.Rational(v)
    return Fraction(int(v.p), int(v.q))


@lru_cache(maxsize=None)
def recon_basis(mm: int, mp: int):
    """Sympy polynomials multiplying the cell averages -mm..mp, via the primitive."""
    M = mm + mp
    faces = [sp.Rational(2 * q - 1, 2) - mm for q in range(M + 2)]
    basis = []
    for j in range(M + 1):
        # primitive of the j-th unit cell-average vector, sampled at the faces
        prim = [sp.Integer(1) if q > j else sp.Integer(0) for q in range(M + 2)]
        P = sp.interpolate(list(zip(faces, prim)), X) if M + 2 > 1 else sp.Integer(0)
        basis.append(sp.expand(sp.diff(P, X)))
    return tuple(basis)


def recon_basis_coeffs(mm: int, mp: int, ell: int):
    """Coefficient list (index = power) of the basis polynomial for node ``ell``."""
    p = sp.Poly(recon_basis(mm, mp)[ell + mm], X)
    return [to_fraction(c) for c in reversed(p.all_coeffs())]


def weights_by_elimination(mm: int, mp: int, K: int, xi):
    """Weights making the substencil combination reproduce the full reconstruction at xi.

    Uses every one of the M+1 coefficient equations and lets sympy solve the
    overdetermined (but consistent) system.
    """
    xi = sp.Rational(xi.numerator, xi.denominator) if isinstance(xi, Fraction) else sp.Rational(xi)
    M = mm + mp
    full = [b.subs(X, xi) for b in recon_basis(mm, mp)]
    w = sp.symbols(f"w0:{K + 1}")
    total = [0] * (M + 1)
    for k in range(K + 1):
        a, b = mm - k, mp - K + k
        for j, bj in enumerate(recon_basis(a, b)):
            total[k + j] += w[k] * bj.subs(X, xi)
    sol = sp.solve([sp.Eq(total[j], full[j]) for j in range(M + 1)], w, dict=True)
    if len(sol) != 1 or len(sol[0]) != K + 1:
        return None
    return [to_fraction(sol[0][wk]) for wk in w]


def tau_bernoulli(n: int) -> Fraction:
    """Taylor coefficient of (x/2)/sinh(x/2) from the Bernoulli-number formula."""
    if n % 2:
        return Fraction(0)
    k = n // 2
    v = (2 - sp.Integer(2) ** (2 * k)) * sp.bernoulli(2 * k) / sp.factorial(2 * k) / sp.Integer(2) ** (2 * k)
    return to_fraction(v)


def tau_series(n: int) -> Fraction:
    t = sp.Symbol("t")
    ser = sp.series((t / 2) / sp.sinh(t / 2), t, 0, n + 2).removeO()
    return to_fraction(ser.coeff(t, n))


def real_root_count(coeffs) -> int:
    p = sp.Poly([sp.Rational(c.numerator, c.denominator) for c in reversed(coeffs)], X)
    return len(set(sp.real_roots(p)))

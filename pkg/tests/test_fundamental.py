from fractions import Fraction as F
from math import factorial

import pytest

from lagrecon.errors import CertificationError
from lagrecon.exact import Poly, XI, sliding_average
from lagrecon.fundamental import (alpha_interp, alpha_recon, alpha_recon_shu, certify_roots,
                                  interpolating_polynomial, inverse_vandermonde,
                                  inverse_vandermonde_direct, inverse_vandermonde_stirling,
                                  lambda_interp, lambda_recon, leading_coefficient, mu_interp,
                                  mu_recon, named_root, nu, reconstructing_polynomial,
                                  solve_linear)
from lagrecon.stencil import Stencil, stencils_of_width

from oracles import recon_basis_coeffs

HALF = F(1, 2)


def all_stencils(lo, hi, negative=False):
    out = []
    for M in range(lo, hi + 1):
        out += stencils_of_width(M)
        if negative and M >= 1:
            out += [Stencil(-1, M + 1), Stencil(M + 1, -1)]
    return out


class TestInverseVandermonde:
    def test_two_point_example(self):
        # rows are powers, columns are nodes
        assert inverse_vandermonde(Stencil(0, 1)).as_lists() == [[1, 0], [-1, 1]]

    def test_three_point_example(self):
        V = inverse_vandermonde(Stencil(1, 1)).as_lists()
        assert V == [[0, 1, 0], [F(-1, 2), 0, HALF], [HALF, -1, HALF]]

    @pytest.mark.parametrize("s", all_stencils(0, 8, negative=True), ids=str)
    def test_closed_form_matches_gauss_jordan(self, s):
        assert inverse_vandermonde_stirling(s) == inverse_vandermonde_direct(s)

    @pytest.mark.parametrize("s", all_stencils(0, 6), ids=str)
    def test_is_inverse(self, s):
        V = inverse_vandermonde(s)
        for node in s.points:
            for k in s.points:
                got = sum(V.entry(m, node) * F(k) ** m for m in range(s.M + 1))
                assert got == (1 if k == node else 0)

    def test_solve_linear_singular(self):
        with pytest.raises(ZeroDivisionError):
            solve_linear([[1, 2], [2, 4]], [[1], [2]])


class TestNu:
    @pytest.mark.parametrize("s", all_stencils(0, 7), ids=str)
    def test_delta_up_to_M(self, s):
        for m in range(s.M + 1):
            for k in range(s.M + 1):
                assert nu(s, m, k) == (m == k)

    def test_beyond_M(self):
        # x^2 on {-1,0,1} interpolates x^4 with coefficient 1 on x^2
        s = Stencil(1, 1)
        assert [nu(s, m, 4) for m in range(3)] == [0, 0, 1]
        assert [nu(s, m, 3) for m in range(3)] == [0, 1, 0]

    def test_out_of_range(self):
        with pytest.raises(IndexError):
            nu(Stencil(1, 1), 3, 0)


class TestAlpha:
    def test_interp_example(self):
        assert alpha_interp(Stencil(1, 1), 0) == Poly([1, 0, -1])
        assert alpha_interp(Stencil(0, 1), 1) == XI

    def test_recon_examples(self):
        assert alpha_recon(Stencil(1, 1), 0) == Poly([F(13, 12), 0, -1])
        assert alpha_recon(Stencil(1, 1), 1) == Poly([F(-1, 24), HALF, HALF])
        assert alpha_recon(Stencil(0, 0), 0) == Poly([1])

    @pytest.mark.parametrize("s", all_stencils(0, 7, negative=True), ids=str)
    def test_against_primitive_oracle(self, s):
        for ell in s.points:
            want = Poly(recon_basis_coeffs(s.m_minus, s.m_plus, ell))
            assert alpha_recon(s, ell) == want

    @pytest.mark.parametrize("s", all_stencils(0, 10, negative=True), ids=str)
    def test_three_paths_and_pair(self, s):
        for ell in s.points:
            a = alpha_recon(s, ell, "closed")
            assert a == alpha_recon(s, ell, "deconvolve") == alpha_recon(s, ell, "shu")
            assert sliding_average(a) == alpha_interp(s, ell)
            assert alpha_interp(s, ell) == alpha_interp(s, ell, "product")

    def test_literal_primitive_form_needs_offset(self):
        s = Stencil(0, 2)
        assert all(alpha_recon_shu(s, l, offset=0) == alpha_recon(s, l) for l in s.points)
        s = Stencil(1, 2)
        assert any(alpha_recon_shu(s, l, offset=0) != alpha_recon(s, l) for l in s.points)

    @pytest.mark.parametrize("s", all_stencils(1, 9), ids=str)
    def test_leading_coefficient(self, s):
        for ell in s.points:
            c = leading_coefficient(s, ell)
            assert alpha_recon(s, ell).lead == c == alpha_interp(s, ell).lead

    @pytest.mark.parametrize("s", all_stencils(0, 8), ids=str)
    def test_partition_of_unity(self, s):
        total = sum((alpha_recon(s, l) for l in s.points), Poly())
        assert total == Poly([1])

    def test_node_outside_stencil(self):
        with pytest.raises(ValueError):
            alpha_recon(Stencil(1, 1), 2)


class TestReconstruction:
    @pytest.mark.parametrize("s", [Stencil(1, 1), Stencil(2, 3), Stencil(0, 4), Stencil(-1, 3)],
                             ids=str)
    def test_reproduces_polynomials_of_degree_M(self, s):
        h = Poly([F(3), F(-2, 7), F(1, 3), 0, F(5, 11)][: s.M + 1])
        f = sliding_average(h)
        assert reconstructing_polynomial(s, [f(l) for l in s.points]) == h
        assert interpolating_polynomial(s, [f(l) for l in s.points]) == f

    def test_sample_count(self):
        with pytest.raises(ValueError):
            reconstructing_polynomial(Stencil(1, 1), [1, 2])


def _poly_of_degree(n):
    # a fixed polynomial with nonzero coefficients up to degree n
    return Poly([F(k + 1, k + 2) * (-1) ** k for k in range(n + 1)])


class TestErrorExpansions:
    def test_orders_below_M_rejected(self):
        with pytest.raises(ValueError):
            mu_recon(Stencil(1, 1), 2)

    def test_small_examples(self):
        s = Stencil(0, 1)
        assert mu_interp(s, 2) == Poly([0, F(1, 2), F(-1, 2)])
        assert lambda_interp(s, 2) == Poly([0, F(1, 2), F(-1, 2)])

    def test_recon_examples(self):
        left = Poly([F(1, 24), F(-1, 2), F(-1, 2)])
        assert mu_recon(Stencil(1, 0), 2) == lambda_recon(Stencil(1, 0), 2) == left
        assert mu_recon(Stencil(0, 1), 2) == Poly([F(1, 24), F(1, 2), F(-1, 2)])
        assert left == -alpha_recon(Stencil(1, 1), 1)

    @pytest.mark.parametrize("s", all_stencils(0, 5, negative=True), ids=str)
    def test_mu_expansion_about_pivot(self, s):
        # reading 1: p_R1 - h = sum_n mu_n(xi) f^(n)(0), f the sliding average of h
        for extra in (1, 2, 3):
            n_max = s.M + extra
            h = _poly_of_degree(n_max)
            f = sliding_average(h)
            err = reconstructing_polynomial(s, [f(l) for l in s.points]) - h
            series = Poly()
            for n in range(s.M + 1, n_max + 1):
                series = series + mu_recon(s, n) * f.derivative(n)(0)
            assert err == series

    @pytest.mark.parametrize("s", all_stencils(0, 5, negative=True), ids=str)
    def test_lambda_expansion_about_xi(self, s):
        # reading 2: p_R1 - h = sum_n lambda_n(xi) h^(n)(xi)
        for extra in (1, 2, 3):
            n_max = s.M + extra
            h = _poly_of_degree(n_max)
            f = sliding_average(h)
            err = reconstructing_polynomial(s, [f(l) for l in s.points]) - h
            series = Poly()
            for n in range(s.M + 1, n_max + 1):
                series = series + lambda_recon(s, n) * h.derivative(n)
            assert err == series

    @pytest.mark.parametrize("s", all_stencils(0, 5), ids=str)
    def test_interp_expansions(self, s):
        n_max = s.M + 2
        f = _poly_of_degree(n_max)
        err = interpolating_polynomial(s, [f(l) for l in s.points]) - f
        mu = sum((mu_interp(s, n) * f.derivative(n)(0)
                  for n in range(s.M + 1, n_max + 1)), Poly())
        lam = sum((lambda_interp(s, n) * f.derivative(n)
                   for n in range(s.M + 1, n_max + 1)), Poly())
        assert err == mu == lam


class TestRoots:
    def test_integer_roots_of_34(self):
        s = Stencil(3, 4)
        assert certify_roots(s, -3).integer_roots == (1,)
        assert certify_roots(s, 4).integer_roots == (0,)
        assert named_root(s, -3, 1).is_exact and named_root(s, -3, 1).lo == 1
        assert named_root(s, 4, 0).lo == 0

    def test_no_integer_roots_of_33(self):
        s = Stencil(3, 3)
        assert all(certify_roots(s, l).integer_roots == () for l in s.points)

    def test_quadratic_example(self):
        cert = certify_roots(Stencil(1, 1), 0)
        assert cert.windows == (-1, 1) and cert.sturm_count == 2
        r = cert.root_in_window(1)
        assert r.lo ** 2 < F(13, 12) < r.hi ** 2 or r.lo ** 2 <= F(13, 12) <= r.hi ** 2

    @pytest.mark.parametrize("s", all_stencils(1, 8), ids=str)
    def test_one_root_per_window(self, s):
        for ell in s.points:
            cert = certify_roots(s, ell)
            assert cert.sturm_count == s.M
            assert list(cert.windows) == [n for n in s.points if n != ell]
            for n, iv in zip(cert.windows, cert.roots):
                assert n - HALF <= iv.lo <= iv.hi <= n + HALF
                assert alpha_recon(s, ell).sign_at(iv.lo) * alpha_recon(s, ell).sign_at(iv.hi) <= 0

    def test_degree_zero_rejected(self):
        with pytest.raises(ValueError):
            certify_roots(Stencil(0, 0), 0)

    def test_json_shape(self):
        js = certify_roots(Stencil(3, 4), -3).to_json()
        assert js["sturm_count"] == 7 and js["integer_roots"] == [1]
        assert [r["window"] for r in js["roots"]] == [-2, -1, 0, 1, 2, 3, 4]


def test_certification_error_is_runtime_error():
    assert issubclass(CertificationError, RuntimeError)


def test_factorial_scaling_of_leading_coefficient():
    # the alternating binomial pattern scaled by 1/M!
    s = Stencil(2, 2)
    assert [leading_coefficient(s, l) * factorial(4) for l in s.points] == [1, -4, 6, -4, 1]

"""Exact Lagrange reconstruction on uniform stencils and its rational weight-functions."""

__version__ = "0.1.0"

from .errors import CertificationError, NotPositiveError, PoleError, SingularSystemError
from .exact import (Poly, RationalFunction, deconvolve, format_rational, parse_rational,
                    poly_eval, ratfun_reduce, sliding_average, tau)
from .roots import IsolatingInterval, refine_root, sturm_isolate
from .stencil import Stencil, Subdivision, is_positive_subdivision, substencils
from .fundamental import (alpha_interp, alpha_recon, certify_roots, inverse_vandermonde,
                          lambda_interp, lambda_recon, mu_interp, mu_recon, nu,
                          reconstructing_polynomial)
from .weights import (oracle_weights_at, pole_set, sigma, sigma_family, sigma_level1,
                      weights_at)
from .convexity import convexity_interval, convexity_interval_ks1, interval_table

__all__ = [
    "CertificationError", "NotPositiveError", "PoleError", "SingularSystemError",
    "Poly", "RationalFunction", "deconvolve", "format_rational", "parse_rational",
    "poly_eval", "ratfun_reduce", "sliding_average", "tau",
    "IsolatingInterval", "refine_root", "sturm_isolate",
    "Stencil", "Subdivision", "is_positive_subdivision", "substencils",
    "alpha_interp", "alpha_recon", "certify_roots", "inverse_vandermonde",
    "lambda_interp", "lambda_recon", "mu_interp", "mu_recon", "nu",
    "reconstructing_polynomial",
    "oracle_weights_at", "pole_set", "sigma", "sigma_family", "sigma_level1", "weights_at",
    "convexity_interval", "convexity_interval_ks1", "interval_table",
]

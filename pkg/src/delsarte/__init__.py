"""Exact Delsarte linear-programming bounds for codes in association schemes.

The closed-form Hamming and Johnson parameter tables are exact rationals;
certificates (Hamming, Elias-Bassalygo, MRRW) are verified with zero
tolerance, and a clique oracle gives the true code sizes for small cases.
"""
from .certificates import (
    Certificate,
    check_and_bound,
    dual_laplacian_check,
    eb_certificate,
    hamming_certificate,
    mrrw_certificate,
    mrrw_closed_form,
)
from .errors import *  # noqa: F401,F403
from .exact import HahnSpec, KrawtchoukSpec, binomial, hahn_eval, krawtchouk_eval
from .kernels import BACKEND
from .lp import LpSolution, solve_primal
from .oracle import FamilySpec, max_code_size, sandwich_check
from .params import (
    Code,
    RadialFunction,
    SchemeParameters,
    check_q_polynomial,
    distance_distribution,
    hamming_parameters,
    hat,
    johnson_parameters,
    ostar,
    star,
    tilde,
)
from .scheme import ExplicitScheme, engine_parameters, hamming_space, johnson_space, parse_scheme

__version__ = "0.1.0"

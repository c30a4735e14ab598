"""Exact arithmetic for F_q-linear series, Carlitz constants, power sums and zeta values."""

from .field import FieldCtx, FieldElem, field_extension, field_from_order, field_make, frobenius
from .algebra import LaurentSeries, Poly, RatFunc, function_field, laurent_expand
from .report import EXPECTED_FAIL, FAIL, PASS, SCHEMA, VerifyReport
from .linear import LinearSeries, comp_inverse, compose, from_root_space
from .carlitz import CarlitzCtx, bernoulli, carlitz_binomial, carlitz_exp, carlitz_factorial, carlitz_log
from .powersums import PowerSumQuery, powersum_brute, powersum_fast
from .zeta import ZetaQuery, multizeta, zeta
from .suite import verify_all

__version__ = "0.1.0"

__all__ = [
    "CarlitzCtx", "EXPECTED_FAIL", "FAIL", "FieldCtx", "FieldElem", "LaurentSeries", "LinearSeries",
    "PASS", "Poly", "PowerSumQuery", "RatFunc", "SCHEMA", "VerifyReport", "ZetaQuery", "bernoulli",
    "carlitz_binomial", "carlitz_exp", "carlitz_factorial", "carlitz_log", "comp_inverse", "compose",
    "field_extension", "field_from_order", "field_make", "from_root_space", "frobenius",
    "function_field", "laurent_expand", "multizeta", "powersum_brute", "powersum_fast",
    "verify_all", "zeta",
]

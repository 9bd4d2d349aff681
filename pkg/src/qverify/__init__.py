"""Exact truncated q-series, Bailey pairs and Hecke-type sums, with an identity checker."""

from .kernels import BACKEND
from .report import Mismatch, VerificationReport
from .series import (
    EXACT,
    Monomial,
    SeriesError,
    TruncatedSeries,
    eq_to_order,
    inverse,
    mul,
    poch_finite,
    poch_inf,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "EXACT",
    "Mismatch",
    "Monomial",
    "SeriesError",
    "TruncatedSeries",
    "VerificationReport",
    "eq_to_order",
    "inverse",
    "mul",
    "poch_finite",
    "poch_inf",
]

"""Exact higher-order autocorrelations and reconstruction up to translation on finite abelian grids."""

from .cyclotomic import CycNum, CyclotomicContext, get_context
from .errors import GridReconError
from .families import (
    agreement_order,
    family_delta,
    family_divisor,
    family_sharp,
    family_threer,
    family_z6,
)
from .groups import GroupSpec, Subgroup, make_group
from .moments import MomentOracle, MomentTable, ZeroSumSeq, autocorr, moment_table, zero_sum
from .recon import ReconConfig, reconstruct, reconstruct_with_report, verify_translation
from .spectral import RatFn, SpecFn, dft, idft, idft_rational, rationality_check, support

__all__ = [
    "CycNum",
    "CyclotomicContext",
    "GridReconError",
    "GroupSpec",
    "MomentOracle",
    "MomentTable",
    "RatFn",
    "ReconConfig",
    "SpecFn",
    "Subgroup",
    "ZeroSumSeq",
    "agreement_order",
    "autocorr",
    "dft",
    "family_delta",
    "family_divisor",
    "family_sharp",
    "family_threer",
    "family_z6",
    "get_context",
    "idft",
    "idft_rational",
    "make_group",
    "moment_table",
    "rationality_check",
    "reconstruct",
    "reconstruct_with_report",
    "support",
    "verify_translation",
    "zero_sum",
]

__version__ = "0.1.0"

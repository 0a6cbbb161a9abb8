"""Congruences mod p for truncated sums of C(3k+e, k) x^k, with exact verification tools."""

from .binom import binom_mod_lucas, vanishing_ranges
from .congruences import (
    CheckOptions,
    check_cardano,
    check_cor_3k,
    check_p2_fibonacci,
    check_range_relation,
    check_thm_2k,
    check_thm_3k,
    check_zws,
)
from .gfq import FqContext, build_field
from .modmath import PrimePower
from .polyring import DensePoly
from .report import CongruenceReport, Witness
from .series import RationalSeries, check_cardano_series, check_section2_identities
from .zerosum import SumSpec, check_thm_zero, eval_sum, numeric_suite, special_value_scan, tail_suite

__all__ = [
    "CheckOptions",
    "CongruenceReport",
    "DensePoly",
    "FqContext",
    "PrimePower",
    "RationalSeries",
    "SumSpec",
    "Witness",
    "binom_mod_lucas",
    "build_field",
    "check_cardano",
    "check_cardano_series",
    "check_cor_3k",
    "check_p2_fibonacci",
    "check_range_relation",
    "check_section2_identities",
    "check_thm_2k",
    "check_thm_3k",
    "check_thm_zero",
    "check_zws",
    "eval_sum",
    "numeric_suite",
    "special_value_scan",
    "tail_suite",
    "vanishing_ranges",
]

"""Test harness: white-box projection, verifiers, reports and the CLI."""

from ..numtheory import miller_rabin
from .census import closure_size, element_census
from .hermitian import HermitianResult, find_hermitian_form, is_hermitian
from .report import Report
from .verify import (
    enriched_generation_check,
    generation_check,
    uniformity_pvalue,
    verify_enrichment,
    verify_frobenius,
    verify_homomorphism,
    verify_inverse_transpose,
    verify_shift_order,
    verify_uniformity,
)
from .whitebox import WhiteBox

__all__ = [
    "HermitianResult",
    "Report",
    "WhiteBox",
    "closure_size",
    "element_census",
    "enriched_generation_check",
    "find_hermitian_form",
    "generation_check",
    "is_hermitian",
    "miller_rabin",
    "uniformity_pvalue",
    "verify_enrichment",
    "verify_frobenius",
    "verify_homomorphism",
    "verify_inverse_transpose",
    "verify_shift_order",
    "verify_uniformity",
]

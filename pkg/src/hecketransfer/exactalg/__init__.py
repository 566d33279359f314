"""Exact arithmetic over cyclotomic fields and factored rational functions."""

from .cyclotomic import (CycRational, cyclotomic_poly, divisors, euler_phi, set_zeta_order,
                         zeta_order)
from .frf import (FactoredRatFn, IrrationalCoefficients, LaurentPoly, NonCyclotomicRemainder,
                  SignedCycloProduct, SubstitutionResult, compare_up_to_unit, cyclo_present,
                  expand, substitute)
from .modeval import RandomCompare, random_compare, random_equal
from .monomial import Canonical, Constant, Factor, Monomial, Zero, canonicalize_factor

__all__ = [
    "Canonical", "Constant", "CycRational", "FactoredRatFn", "Factor", "IrrationalCoefficients",
    "LaurentPoly", "Monomial", "NonCyclotomicRemainder", "RandomCompare", "SignedCycloProduct",
    "SubstitutionResult", "Zero", "canonicalize_factor", "compare_up_to_unit", "cyclo_present",
    "cyclotomic_poly", "divisors", "euler_phi", "expand", "random_compare", "random_equal",
    "set_zeta_order", "substitute", "zeta_order",
]

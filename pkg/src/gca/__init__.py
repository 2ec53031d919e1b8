"""Exact workbench for generalized cluster algebras of geometric type."""

from .laurent import (
    LaurentPoly,
    LexOrder,
    add,
    compose,
    decompose_by_variable,
    divide_exact,
    gcd,
    leading_term_wrt,
    multiply,
    rational_rank,
    specialize,
)
from .seed import (
    ExchangePolynomial,
    GeneralizedSeed,
    GeneralizedString,
    exchange_polynomial,
    freeze,
    mutate,
    skew_symmetrizer,
    validate_seed,
)
from .structure import acyclic_certificate, coprimality_check, gamma_graph, is_acyclic
from .bounds import (
    enumerate_standard_monomials,
    f_image_generators,
    independence_check,
    reduce_to_standard,
    standard_monomial_expand,
    upper_bound_membership,
)
from .explore import (
    detect_period,
    explore_exchange_graph,
    finite_upper_intersection_membership,
    isolated_closure,
    unit_ideal_certificate,
    verify_laurent_phenomenon,
)
from .cli import format_laurent_canonical, parse_laurent, parse_seed_file, serialize_seed

__version__ = "0.1.0"

__all__ = [
    "LaurentPoly",
    "LexOrder",
    "add",
    "multiply",
    "divide_exact",
    "gcd",
    "decompose_by_variable",
    "leading_term_wrt",
    "specialize",
    "rational_rank",
    "compose",
    "GeneralizedSeed",
    "GeneralizedString",
    "ExchangePolynomial",
    "validate_seed",
    "skew_symmetrizer",
    "exchange_polynomial",
    "mutate",
    "freeze",
    "gamma_graph",
    "acyclic_certificate",
    "is_acyclic",
    "coprimality_check",
    "standard_monomial_expand",
    "enumerate_standard_monomials",
    "independence_check",
    "upper_bound_membership",
    "reduce_to_standard",
    "f_image_generators",
    "explore_exchange_graph",
    "detect_period",
    "verify_laurent_phenomenon",
    "unit_ideal_certificate",
    "isolated_closure",
    "finite_upper_intersection_membership",
    "parse_seed_file",
    "serialize_seed",
    "format_laurent_canonical",
    "parse_laurent",
    "__version__",
]

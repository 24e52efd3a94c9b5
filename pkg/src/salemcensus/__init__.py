"""Exact census engine for Salem numbers and square-rootable Salem numbers.

The package enumerates Salem numbers of fixed degree up to a bound, decides
square-rootability over the rationals with certified witnesses, evaluates
the matching asymptotic main terms, and turns the censuses into lower
bounds on mean multiplicities in length spectra of hyperbolic orbifolds.
"""

from .config import CensusBudgetError, RunConfig
from .polynomials import (
    IntPoly,
    PalindromicPoly,
    PolynomialParseError,
    TracePoly,
    compose_square,
    count_real_roots_in,
    exact_divide,
    format_poly,
    multiply,
    parse_poly,
    trace_inverse,
    trace_transform,
)
from .roots import RootCertificationError, RootEnclosure, certified_roots, complex_roots
from .salem import (
    ClassifyResult,
    CoeffBox,
    Kind,
    SalemRecord,
    classify,
    coeff_box,
    cyclotomic,
    cyclotomic_factor,
    enumerate_salem,
    is_irreducible,
    record_from_minimal_poly,
)
from .squarerootable import (
    SqrtDecomposition,
    VerificationResult,
    enumerate_square_rootable,
    enumerate_witnesses_for_alpha,
    find_decompositions,
    is_square_rootable,
    salem_value,
    square_free_part,
    verify_decomposition,
)
from .theory import (
    BoundReport,
    distinct_length_bound,
    sq_bound_correction,
    explicit_constant,
    mean_multiplicity_bound,
    predict_salem_count,
    predict_square_rootable_count,
    predict_witness_count,
    prime_geodesic_main_term,
    squarefree_harmonic,
    squarefree_zeta,
    squarefree_zeta_partial_sum,
    volume_constant,
    volume_constant_bound_holds,
    witness_lattice_determinant,
)

__all__ = [
    "CensusBudgetError",
    "RunConfig",
    "IntPoly",
    "PalindromicPoly",
    "TracePoly",
    "PolynomialParseError",
    "multiply",
    "exact_divide",
    "compose_square",
    "trace_transform",
    "trace_inverse",
    "count_real_roots_in",
    "parse_poly",
    "format_poly",
    "RootEnclosure",
    "RootCertificationError",
    "complex_roots",
    "certified_roots",
    "Kind",
    "ClassifyResult",
    "SalemRecord",
    "CoeffBox",
    "classify",
    "is_irreducible",
    "cyclotomic",
    "cyclotomic_factor",
    "coeff_box",
    "enumerate_salem",
    "record_from_minimal_poly",
    "SqrtDecomposition",
    "VerificationResult",
    "square_free_part",
    "find_decompositions",
    "verify_decomposition",
    "is_square_rootable",
    "salem_value",
    "enumerate_witnesses_for_alpha",
    "enumerate_square_rootable",
    "volume_constant",
    "volume_constant_bound_holds",
    "sq_bound_correction",
    "squarefree_harmonic",
    "squarefree_zeta",
    "squarefree_zeta_partial_sum",
    "predict_salem_count",
    "predict_square_rootable_count",
    "predict_witness_count",
    "witness_lattice_determinant",
    "prime_geodesic_main_term",
    "distinct_length_bound",
    "mean_multiplicity_bound",
    "explicit_constant",
    "BoundReport",
]

__version__ = "0.1.0"

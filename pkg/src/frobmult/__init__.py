"""Exact Frobenius-power invariants and multiplicity bounds for graded rings."""

__version__ = "0.1.0"

from .field_poly import Field, Polynomial, Ring, parse_polynomial  # noqa: E402
from .groebner import Ideal, colon_ideal, groebner_basis, monomial_map_kernel  # noqa: E402
from .hilbert import hilbert_series, multiplicity_hsop, quotient_length  # noqa: E402
from .thresholds import least_power_in, nu, nu_table, threshold_bracket  # noqa: E402
from .bounds import verify_main_inequality, verify_nu_bound  # noqa: E402

__all__ = [
    "Field", "Polynomial", "Ring", "parse_polynomial",
    "Ideal", "colon_ideal", "groebner_basis", "monomial_map_kernel",
    "hilbert_series", "multiplicity_hsop", "quotient_length",
    "least_power_in", "nu", "nu_table", "threshold_bracket",
    "verify_main_inequality", "verify_nu_bound",
]

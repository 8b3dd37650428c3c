"""Character degrees of C x| Gal(E/F) for finite fields, computed three ways."""

from .char_degrees import (
    CharOrbit,
    DegreeReport,
    GroupElement,
    conjugacy_class_count,
    degree_set_bruteforce,
    degree_set_divisor_formula,
    group_multiply,
    main_theorem_prediction,
    no_degree_two_witness,
    orbit,
    stabilizer_degree,
)
from .field_model import (
    GaloisConnectionRow,
    GroupSpec,
    HypothesisReport,
    admissible_orders,
    hat_degree,
    subfield_intersection_order,
    validate_hypotheses,
    verify_galois_connection,
)
from .numtheory import (
    Factorization,
    PrimeSet,
    divisors,
    factorize,
    is_pi_number,
    is_prime,
    lucas_lehmer,
    multiplicative_order,
)

__version__ = "0.1.0"

from .scalars import (
    GAUSSIAN,
    CyclotomicField,
    CyclotomicScalar,
    GaussianField,
    GaussianRational,
    Rational,
    cyclotomic_polynomial,
    field_of,
    format_scalar,
    parse_scalar,
    scalar_from_json,
    scalar_to_json,
)
from .linalg import (
    EchelonSpan,
    Matrix,
    canonical_basis,
    check_field,
    dot,
    kernel,
    linear_combination,
    mat_vec,
    rank,
    rref,
    solve_linear,
    span_contains,
    span_equal,
    span_membership,
)

__all__ = [
    'GAUSSIAN', 'CyclotomicField', 'CyclotomicScalar', 'GaussianField',
    'GaussianRational', 'Rational', 'cyclotomic_polynomial', 'field_of',
    'format_scalar', 'parse_scalar', 'scalar_from_json', 'scalar_to_json',
    'EchelonSpan', 'Matrix', 'canonical_basis', 'check_field', 'dot', 'kernel',
    'linear_combination', 'mat_vec', 'rank', 'rref', 'solve_linear',
    'span_contains', 'span_equal', 'span_membership',
]

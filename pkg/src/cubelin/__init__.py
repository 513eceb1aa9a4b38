"""cubelin: exact certificates, inversion, and search for cubic-linear maps.

A cubic-linear map is F(X) = X + (AX)^{*3} for a square matrix A over the
Gaussian rationals, where (AX)^{*3} cubes each row's linear form.  The
package computes everything exactly: the trace condition and the rank
bound 2 rank(A) <= n + delta as a checkable certificate, Keller testing
through Jacobian nilpotency, polynomial inversion with verified
compositions, rank reduction to dimension rank(A), and a deterministic
search harness over matrix alphabets.
"""

from .scalars import (
    GaussianRational,
    ParseError,
    Rational,
    format_gaussian,
    parse_gaussian,
)
from .poly import (
    ArityMismatchError,
    Polynomial,
    PolyMap,
    PolyMatrix,
    UnsupportedSizeError,
    compose,
    compose_polynomial,
    cube_linear_form,
    det,
    linear_combination,
    jacobian,
)
from .linalg import ScalarMatrix, rank, rank_factorization, rref
from .druzkowski import (
    DruzkowskiMap,
    RankBoundCertificate,
    cubic_part,
    delta,
    expand_map,
    gram_and_condition,
    linear_forms,
    rank_bound_certificate,
    trace_condition_holds,
    trace_poly,
    zero_diagonal_count,
)
from .invert import (
    InverseResult,
    decide_automorphism,
    default_degree_bound,
    formal_inverse,
    is_keller,
    nilpotency_index,
)
from .pairing import (
    CorollaryReport,
    GZPair,
    corollary_pipeline,
    gz_reduce,
    lift_inverse,
)
from .kernel import BACKEND, certificate
from .matrixio import (
    MatrixParseError,
    builtin_example,
    builtin_example_names,
    format_matrix,
    parse_matrix,
)
from .harness import (
    CandidateRecord,
    CeilingExceededError,
    SearchConfig,
    SearchReport,
    iter_candidate_matrices,
    run_search,
    splitmix64,
)

__version__ = "1.0.0"

__all__ = [
    "ArityMismatchError",
    "BACKEND",
    "CandidateRecord",
    "CeilingExceededError",
    "CorollaryReport",
    "DruzkowskiMap",
    "GZPair",
    "GaussianRational",
    "InverseResult",
    "MatrixParseError",
    "ParseError",
    "PolyMap",
    "PolyMatrix",
    "Polynomial",
    "Rational",
    "RankBoundCertificate",
    "ScalarMatrix",
    "SearchConfig",
    "SearchReport",
    "UnsupportedSizeError",
    "builtin_example",
    "builtin_example_names",
    "certificate",
    "compose",
    "compose_polynomial",
    "corollary_pipeline",
    "cube_linear_form",
    "cubic_part",
    "decide_automorphism",
    "default_degree_bound",
    "delta",
    "det",
    "expand_map",
    "formal_inverse",
    "format_gaussian",
    "format_matrix",
    "gram_and_condition",
    "gz_reduce",
    "is_keller",
    "iter_candidate_matrices",
    "jacobian",
    "lift_inverse",
    "linear_forms",
    "nilpotency_index",
    "parse_gaussian",
    "parse_matrix",
    "rank",
    "rank_bound_certificate",
    "rank_factorization",
    "rref",
    "run_search",
    "splitmix64",
    "trace_condition_holds",
    "trace_poly",
    "zero_diagonal_count",
]

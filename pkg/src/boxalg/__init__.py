"""Exact arithmetic for the idempotent limit of odd-power mean sums.

The package computes with the symmetric, idempotent, non-associative
addition that odd-power sums converge to, together with its associative
lower and upper envelopes, permutation-expansion determinants, Cramer
style solvers, max-equation solvers, hyperplanes, characteristic
monomials with eigenvalue regions, a balance-pair semiring, and a
finite-exponent sweep oracle that measures convergence.
"""

from .core import (
    LOWER,
    UPPER,
    Scalar,
    as_scalar,
    as_vector,
    boxminus,
    boxplus,
    inner,
    nary_boxplus,
    residual_set,
    smile,
    smile_binary,
    xi,
)
from .eigen import (
    DEFAULT_CHAR_CAP,
    Monomial,
    MonomialList,
    boxtimes_eig_check,
    char_monomials,
    charpoly_eval,
    eigen_region,
    expected_monomial_count,
    perron_p,
    reduced_monomials,
)
from .errors import (
    BoxAlgError,
    CapacityError,
    ConvergenceError,
    DegenerateConfigurationError,
    DomainError,
)
from .geom import LimitHyperplane, hyperplane_contains, hyperplane_through
from .linalg import (
    DEFAULT_DET_CAP,
    BoxMatrix,
    as_matrix,
    cofactor_inf,
    det_inf,
    det_inf_reg,
    det_p,
    matmul_limit,
    matvec_limit,
    permutation_products,
    replace_column,
    signed_permutations,
    wedge_eval,
)
from .oracle import DEFAULT_P_MAX, DEFAULT_TOL, SweepReport, predict_near_tie, sweep
from .signedlog import (
    SignedLog,
    odd_exponent,
    phi_p_sum,
    psi_exp,
    psi_ln,
    slog_boxplus,
    slog_mul,
    slog_roundtrip,
)
from .solve import (
    LimitSystem,
    RowBounds,
    SolveReport,
    TwoSidedRowCheck,
    TwoSidedSystem,
    VerifyReport,
    cramer_limit_solve,
    is_regular,
    kaykobad_check,
    kaykobad_p_check,
    maxsys_candidate,
    maxsys_existence_permutation,
    maxsys_reduce,
    maxsys_solve,
    twosided_is_regular,
    twosided_row_checks,
    twosided_solve,
    verify_limit_system,
)
from .sym import (
    S_ONE,
    S_ZERO,
    SPair,
    balanced,
    s_add,
    s_det,
    s_embed,
    s_embed_matrix,
    s_mul,
    s_pair,
    v_identity_check,
    v_map,
)

__version__ = "0.1.0"

__all__ = [
    "BoxAlgError",
    "BoxMatrix",
    "CapacityError",
    "ConvergenceError",
    "DEFAULT_CHAR_CAP",
    "DEFAULT_DET_CAP",
    "DEFAULT_P_MAX",
    "DEFAULT_TOL",
    "DegenerateConfigurationError",
    "DomainError",
    "LOWER",
    "LimitHyperplane",
    "LimitSystem",
    "Monomial",
    "MonomialList",
    "RowBounds",
    "S_ONE",
    "S_ZERO",
    "SPair",
    "Scalar",
    "SignedLog",
    "SolveReport",
    "SweepReport",
    "TwoSidedRowCheck",
    "TwoSidedSystem",
    "UPPER",
    "VerifyReport",
    "as_matrix",
    "as_scalar",
    "as_vector",
    "balanced",
    "boxminus",
    "boxplus",
    "boxtimes_eig_check",
    "char_monomials",
    "charpoly_eval",
    "cofactor_inf",
    "cramer_limit_solve",
    "det_inf",
    "det_inf_reg",
    "det_p",
    "eigen_region",
    "expected_monomial_count",
    "hyperplane_contains",
    "hyperplane_through",
    "inner",
    "is_regular",
    "kaykobad_check",
    "kaykobad_p_check",
    "matmul_limit",
    "matvec_limit",
    "maxsys_candidate",
    "maxsys_existence_permutation",
    "maxsys_reduce",
    "maxsys_solve",
    "nary_boxplus",
    "odd_exponent",
    "permutation_products",
    "perron_p",
    "phi_p_sum",
    "predict_near_tie",
    "psi_exp",
    "psi_ln",
    "reduced_monomials",
    "replace_column",
    "residual_set",
    "s_add",
    "s_det",
    "s_embed",
    "s_embed_matrix",
    "s_mul",
    "s_pair",
    "signed_permutations",
    "slog_boxplus",
    "slog_mul",
    "slog_roundtrip",
    "smile",
    "smile_binary",
    "sweep",
    "twosided_is_regular",
    "twosided_row_checks",
    "twosided_solve",
    "v_identity_check",
    "v_map",
    "verify_limit_system",
    "wedge_eval",
    "xi",
]

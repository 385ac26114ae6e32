"""Exact-arithmetic toolkit for filiform Lie algebras and affine structures.

Everything computes over exact rationals: algebra catalogs, derivation
algebras, characteristic-nilpotency verdicts, and the construction and
exhaustive verification of affine (left-symmetric) products, with
self-contained JSON certificates for third-party re-checking.
"""

from .__about__ import __version__
from .affine import (
    AffineReport,
    AffineStructure,
    Certificate,
    CheckResult,
    ReverifyReport,
    find_symplectic,
    from_derived_regular,
    from_regular_derivation,
    from_symplectic,
    reverify_certificate,
    synthesize,
    verify_affine,
)
from .catalog import (
    fill_aij,
    make_abelian,
    make_ank,
    make_benoist,
    make_bnk,
    make_cn,
    make_ln,
    make_qn,
    standard_torus,
)
from .derivations import (
    CHAR_NILPOTENT_LIKELY,
    NOT_CHAR_NILPOTENT,
    CharNilpVerdict,
    DerivationSpace,
    TorusReport,
    char_nilpotent_verdict,
    derivation_space,
    diagonal_derivations,
    find_derived_regular_derivation,
    find_regular_derivation,
    is_derivation,
    minimal_polynomial,
    restrict_to_derived,
    verify_torus,
    verify_witness,
)
from .errors import (
    BadDimension,
    BadRange,
    DegenerateFormError,
    DimensionMismatch,
    LieToolError,
    NoStrategySucceeded,
    NotADerivationError,
    NotClosedError,
    NotInvariantError,
    SchemaError,
    SingularMatrixError,
    SingularOnDerivedError,
    UnknownFamily,
    WrongLambdaCount,
)
from .liealg import (
    LieAlgebra,
    TwoForm,
    algebra_hash,
    derived_subalgebra,
    dtheta_residual,
    is_filiform,
    is_nilpotent_algebra,
    jacobi_report,
    lower_central_series,
    nondegenerate,
)
from .linalg import (
    Matrix,
    Subspace,
    determinant,
    invert,
    is_nilpotent,
    nullspace,
    rank,
    rat,
    rref,
    solve,
    span,
    unit_vector,
    vector,
)

__all__ = [
    "__version__",
    "AffineReport",
    "AffineStructure",
    "BadDimension",
    "BadRange",
    "Certificate",
    "CharNilpVerdict",
    "CheckResult",
    "CHAR_NILPOTENT_LIKELY",
    "DegenerateFormError",
    "DerivationSpace",
    "DimensionMismatch",
    "LieAlgebra",
    "LieToolError",
    "Matrix",
    "NoStrategySucceeded",
    "NotADerivationError",
    "NotClosedError",
    "NotInvariantError",
    "NOT_CHAR_NILPOTENT",
    "ReverifyReport",
    "SchemaError",
    "SingularMatrixError",
    "SingularOnDerivedError",
    "Subspace",
    "TorusReport",
    "TwoForm",
    "UnknownFamily",
    "WrongLambdaCount",
    "algebra_hash",
    "char_nilpotent_verdict",
    "derivation_space",
    "derived_subalgebra",
    "determinant",
    "diagonal_derivations",
    "dtheta_residual",
    "fill_aij",
    "find_derived_regular_derivation",
    "find_regular_derivation",
    "find_symplectic",
    "from_derived_regular",
    "from_regular_derivation",
    "from_symplectic",
    "invert",
    "is_derivation",
    "is_filiform",
    "is_nilpotent",
    "is_nilpotent_algebra",
    "jacobi_report",
    "lower_central_series",
    "make_abelian",
    "make_ank",
    "make_benoist",
    "make_bnk",
    "make_cn",
    "make_ln",
    "make_qn",
    "minimal_polynomial",
    "nondegenerate",
    "nullspace",
    "rank",
    "rat",
    "restrict_to_derived",
    "reverify_certificate",
    "rref",
    "solve",
    "span",
    "standard_torus",
    "synthesize",
    "unit_vector",
    "vector",
    "verify_affine",
    "verify_torus",
    "verify_witness",
]

"""Schatten-class norms, divided differences, discrete multilinear operator
integrals, explicit isometric embeddings and a numerical obstruction check
for isometric embeddings between Schatten classes."""

from .divdiff import SymbolFunction, abs_pow_symbol, divided_difference, polynomial_symbol
from .embed import (
    EmbeddingMap,
    Field,
    Kind,
    SpaceSpec,
    apply,
    compose,
    corner_embedding,
    cubature_embedding_2_4_3,
    diag_embedding,
    element_norm,
    first_row_embedding,
    lambda_bound,
    s2_to_sp_embedding,
    sum_diff_embedding,
    vec_embedding,
    verify_isometry,
)
from .errors import NumericalError, PreconditionError
from .matcore import (
    SpectralDecomposition,
    function_calculus,
    hermitian_eig,
    random_unitary,
    singular_values,
)
from .moi import MoiProblem, fd_second_derivative, moi_apply, second_derivative_schatten
from .obstruct import (
    CandidatePair,
    ObstructionReport,
    Verdict,
    check_candidate,
    double_map,
    eigenvalue_curves,
    scalar_identity_residual,
    second_derivative_obstruction,
)
from .schatten import schatten_norm, vector_pnorm

__version__ = "0.1.0"

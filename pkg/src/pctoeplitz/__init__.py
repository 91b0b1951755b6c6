"""Block Toeplitz determinants of matrix-valued piecewise continuous symbols.

Jump analysis, Fredholm index, canonical factorization, the constants
G, Omega, E of det T_n(phi) ~ G^n n^Omega E, and numerical verification.
"""
from .builtins import builtin, indicator_pair, kitaev_iota, offdiag_ratio_eigenvalues
from .constants import (
    AsymptoticConstants, asymptotic_constants, barnes_factor, compute_G, compute_G_from_c, compute_Omega,
)
from .errors import (
    BoundaryCase, BranchFailure, DimensionMismatch, HypothesisViolation, IndexNonzero, InvalidInput,
    JumpPointEvaluation, NonIntegerWinding, NotIRegular, NumericalFailure, PCToeplitzError, PoleOfBarnes,
    QuadratureNonConvergence, ResidualJump, RouteMismatch, SectionSingular, SimilarityMismatch,
    SingularValue, UnwindFailure,
)
from .factorization import Factorization, factorize, reconstruct, similarity_chain
from .fourier import FourierTable, fourier_jump, fourier_table
from .jumps import JumpAnalysis, analyze_jumps, jump_ratio, principal_log_2pii
from .schema import decode_symbol, encode_symbol, load_symbol
from .special import barnes_g, log_barnes_g, loggamma
from .symbols import (
    SymbolExpr, UnitPoint, constant, determinant, eval_sided, evaluate, evaluate_many, exp_laurent,
    identity, inverse, jump, laurent, piecewise_constant, product, tilde,
)
from .toeplitz import (
    AsymptoticReport, ToeplitzSection, det_section, det_tn, estimate_E_opdet, toeplitz_section,
    verify_asymptotics, widom_identity_residual,
)
from .winding import (
    ArcIncrement, arc_increment, fredholm_index, scalar_c, winding_c, winding_continuous, winding_I,
)

__version__ = "0.1.0"

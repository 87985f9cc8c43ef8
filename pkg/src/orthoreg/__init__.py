"""Structure-preserving regularization of ill-conditioned linear systems.

Orthogonalize or biorthogonalize a basis by polar projection onto the
orthogonal group, trade accuracy against numerical stability with a homotopy
or a quartic-penalty regularizer, and benchmark both against Tikhonov,
basis-pursuit denoising and the Dantzig selector on exponentially
ill-conditioned Vandermonde systems.
"""

from ._backend import BACKEND_NAME, NUMBA_ENABLED
from .baselines import (
    IterativeResult,
    SolverOptions,
    bpdn,
    bpdn_objective,
    dantzig,
    dantzig_objective,
    tikhonov,
)
from .errors import (
    ConvergenceError,
    NotNearlyOrthogonalError,
    NumericalError,
    SingularMatrixError,
)
from .experiment import (
    ExperimentConfig,
    MethodOutcome,
    TradeoffPoint,
    TrialRecord,
    aggregate,
    element_curves,
    make_ground_truth,
    parse_config,
    read_config,
    run_experiment,
    run_trial,
    sample_sigmas,
    tradeoff_curve,
    vandermonde_basis,
)
from .io import read_matrix, read_vector, write_matrix, write_vector
from .linalg import (
    SvdFactors,
    biorthogonal,
    condition_number,
    det_sign,
    gram_residual,
    matrix_to_vectors,
    solve_gaussian,
    svd,
    vectors_to_matrix,
)
from .measures import (
    biorthogonality_defect,
    grad_cross_defect,
    grad_self_defect,
    grad_squared_distance,
    squared_distance,
)
from .projection import (
    OrthogonalSystem,
    SeriesCertificate,
    manifold_of,
    orthogonal_dual,
    polar_project,
    series_project,
)
from .regularize import (
    ALL_METHODS,
    REGULARIZED_METHODS,
    OptimizerReport,
    RhoSearchResult,
    homotopy_system,
    quartic_objective,
    regularized_system,
    rho_search,
    solve_quartic,
    solve_with_method,
)
from .rng import SplitMix64, substream
from .simplex import LpProblem, LpSolution, lp_solve

__version__ = "0.1.0"

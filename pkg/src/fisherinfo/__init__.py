"""Fisher information for small parameterized quantum models.

Classical, Bayesian and quantum (SLD and context-maximized) information
measures, grid-based Bayesian estimation, and randomized checks of the
classical and quantum data-processing inequalities.
"""

from .bayes import (
    BcrbReport,
    PosteriorGrid,
    PriorGrid,
    bayes_estimator,
    bayes_risk,
    check_bcrb,
    gaussian_prior,
    parse_prior_spec,
    posterior,
    uniform_prior,
)
from .dpi import (
    DpiTrialReport,
    StochasticMap,
    classical_dpi_suite,
    postprocess_likelihood,
    postprocessed_fisher,
    pushforward_likelihood,
    quantum_dpi_suite,
)
from .errors import (
    DerivativeOffSupport,
    DimensionMismatch,
    DocumentError,
    FisherinfoError,
    InvalidChannel,
    InvalidPovm,
    InvalidState,
    NotHermitian,
    NotNormalized,
    NotUnitary,
    SingularOutcome,
    ZeroEvidence,
)
from .fisher import (
    FisherValue,
    SldResult,
    bayesian_information,
    classical_fisher,
    sld_optimal_povm,
    sld_solve,
)
from .linalg import PAULI_X, PAULI_Y, PAULI_Z, eig_hermitian, unitary_exp
from .models import (
    ComposedModel,
    KrausFamily,
    ParameterizedModel,
    UnitaryFamily,
    compose,
    make_unitary_family,
)
from .optimize import (
    ContextSpace,
    ModelFamily,
    OptimizationResult,
    circumvention_report,
    maximize_bayesian,
    maximize_fisher,
)
from .quantum import (
    DensityMatrix,
    DualChannel,
    KrausChannel,
    Povm,
    apply_channel,
    born_probabilities,
    depolarizing_channel,
    dual_channel,
    dual_povm,
    maximally_mixed,
    projective_povm,
    pure_state,
    unitary_channel,
)
from .sampling import random_channel

__version__ = "0.1.0"

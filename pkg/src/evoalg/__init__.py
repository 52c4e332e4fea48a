"""Structural invariants of complex evolution algebras via homotopy continuation."""

from .errors import (
    BackendMismatch,
    BadParameters,
    DimensionMismatch,
    EvoAlgError,
    InternalConsistencyError,
    NotIdempotent,
    NotRegular,
    SchemaError,
    SingularMatrix,
)
from .evolution_core import (
    Element,
    EvolutionAlgebra,
    Subspace,
    algebra_from_json,
    algebra_to_json,
    basis_element,
    chain_algebra,
    exact_algebra,
    float_algebra,
    is_regular,
    is_simple_candidate,
    make_classification_algebra,
    multiply,
    nilpotency,
    solvability,
    span,
    subspace_product,
    to_float_algebra,
)
from .harness import (
    CampaignReport,
    ConjectureVerdict,
    classification_sweep,
    conjecture_campaign,
    random_algebra,
    test_conjecture,
    verify_idempotent_existence,
    verify_theorem_main,
)
from .homotopy_solver import (
    PathResult,
    Solution,
    SolveOutcome,
    SolverConfig,
    solve,
    start_system,
    track_path,
)
from .quadratic_system import GENERAL, IDEMPOTENT, SUBALGEBRA, QuadraticSystem, build, evaluate, jacobian
from .scalar_linalg import (
    EXACT,
    FLOAT,
    GaussianRational,
    Matrix,
    determinant,
    exact_matrix,
    float_matrix,
    gq,
    is_nonsingular,
    rank,
    solve_linear,
)
from .structure_analysis import (
    IdempotentWitness,
    ObstructionWitness,
    analyze_algebra,
    completeness_obstruction,
    filter_real,
    find_idempotents,
    is_natural_vector,
    one_dim_subalgebras,
)

__version__ = "0.1.0"

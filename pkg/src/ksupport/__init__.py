"""Generalized top-k / k-support norms and the geometry of their unit balls.

Submodules
----------
core
    Supports, projections, sorting permutations, level-index machinery.
norms
    lp / top-(q,k) / k-support norm evaluation and top-ball projection.
faces
    Optimal supports, exposed faces, normal cones, finite atom engine.
polytopes
    Exact rational combinatorics of the p = inf case.
solver
    Conditional-gradient solver for k-support-penalized minimization.
oracles
    Independent brute-force ground truth for tests and verification.
cli
    Command-line interface (``ksupport`` entry point).
"""

from .core import (
    DEFAULT_TOL,
    ConvergenceError,
    InvalidInputError,
    LevelIndexData,
    ScaleLimitError,
    Tolerance,
    ZeroVectorError,
    abs_sort_permutation,
    k_subsets,
    l0,
    level_index,
    project_support,
    support_of,
)
from .faces import (
    FaceDescription,
    NormalConeDescription,
    atomset_face,
    exposed_face_sp,
    normal_cone_membership,
    normal_cone_of,
    optimal_support_lattice_bounds,
    optimal_supports,
    support_bound_from_dual,
    v_p,
)
from .norms import (
    EvalReport,
    NormSpec,
    dual_ascent_ksupport,
    ksupport_norm,
    ksupport_norm_oracle,
    ksupport_value,
    lp_norm,
    project_top_ball,
    top_norm,
)
from .polytopes import (
    FanRefinementReport,
    RationalPolytope,
    enumerate_proper_faces_top1k,
    facet_from_sign_vector,
    fan_refinement_check,
    is_hypersimplex,
    ksup_inf_ball,
    top1k_ball,
)
from .solver import (
    SmoothObjective,
    SolveOptions,
    SolveReport,
    SupportIdentification,
    ZeroGradientError,
    certify_optimality,
    check_gradient,
    identified_support,
    lmo_sp_ball,
    logistic_objective,
    quadratic_objective,
    solve_penalized,
)

__version__ = "0.1.0"

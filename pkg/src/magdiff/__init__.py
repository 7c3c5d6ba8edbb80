"""Sharp-front self-similar solution of the nonlinear magnetic diffusion
problem with step resistivity, and an independent 1D finite-volume
verification harness.
"""

from .errors import (
    AccuracyError,
    AmbiguousRootError,
    DomainTooSmallError,
    FrontNotFoundError,
    NoRootError,
    NumericalFailureError,
)
from .exact import (
    ExactSolution,
    ScanRow,
    SimilarityProfile,
    SolvedConstants,
    bc1_of_h,
    bc2_of_h,
    bracket_curve,
    build_profile,
    dimensionless_solve,
    f_prime,
    front_velocity,
    scan_table,
    solve_constants,
    x_c,
)
from .params import BENCHMARK_PARAMS, MU0_DEFAULT, FieldProfile, ProblemParams
from .quadrature import (
    QuadratureSpec,
    adaptive_integrate,
    i1_tilde,
    i2_tilde,
    i3_tilde,
)
from .simulator import (
    Mesh1D,
    SimConfig,
    SimState,
    extract_front,
    init_state,
    run,
    stable_dt,
    step,
)
from .verify import (
    ComparisonEntry,
    ComparisonReport,
    OrderRecord,
    build_report,
    convergence_orders,
    norms,
    report_from_profiles,
    verdict,
)

__version__ = "0.1.0"

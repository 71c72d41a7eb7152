"""Graded multilinear operations with partial compositions, brace algebra,
a coboundary complex with exact cohomology, and Lax-type time evolution.

The public surface re-exports the working vocabulary; the modules group as

    multiop     dense operations, partial composition, evaluation
    braces      total composition, cup product, tri/tetrabraces, bracket
    coboundary  the operator [., mu] and its derivation deviations
    cohomology  exact matrices, ranks, Betti tables, preimages
    dynamics    RK4 integration of dL/dt = [M, L] plus the closed-form oracle
    oscillator  the harmonic-oscillator Lax pair and transported solutions
    verify      randomized identity suites behind the `operadics verify` CLI
"""

from .braces import (
    bracket,
    compose_associator,
    cup,
    mu_squared,
    tetrabrace,
    total_compose,
    tribrace,
)
from .bundled import bundled_path
from .coboundary import (
    adjoint_action,
    brace_deviation,
    coboundary,
    coboundary_square,
    coboundary_via_unit,
    compose_deviation,
    cup_deviation,
)
from .cohomology import (
    AlgebraSpec,
    BettiTable,
    CoboundaryMatrix,
    betti_table,
    cocycle_basis,
    coboundary_matrix,
    default_n_max,
    exact_rank,
    is_coboundary,
    load_algebra,
    nullspace,
    random_cocycle,
    save_algebra,
    solve_linear,
)
from .dynamics import (
    LaxSystem,
    TrajectorySample,
    conjugation_oracle,
    evolution_rhs,
    integrate,
    lax_rhs,
    load_initial_op,
    load_lax_system,
    matrix_exp,
    monitor_associator,
    monitor_trace_power,
)
from .errors import (
    ArityMismatchError,
    BackendMismatchError,
    ConfigError,
    DegreeMismatchError,
    DegreeUnderflowError,
    DimMismatchError,
    NonFiniteError,
    NotAssociativeError,
    OperadError,
    ParseError,
    ShapeMismatchError,
    SizeCapError,
    SlotOutOfRangeError,
    VarianceMismatchError,
)
from .multiop import (
    COENDO,
    ENDO,
    EXACT,
    FLOAT,
    SIZE_CAP,
    MultiOp,
    add,
    allclose,
    apply,
    flat_index,
    identity_op,
    is_zero,
    max_abs_diff,
    op_norm,
    partial_compose,
    random_op,
    scale,
    sub,
    zero_op,
)
from .oscillator import (
    MonodromyReport,
    OscillatorParams,
    canonical_flow,
    classical_lax,
    classical_lax_time_derivative,
    exact_flow,
    hamiltonian,
    lax_residual_classical,
    m_matrix,
    monodromy_report,
    oscillator_system,
    resolve_l_init,
    transport_solution,
)
from .scalars import format_exact, format_float, parse_exact, sign_pow
from .verify import (
    SuiteConfig,
    SuiteResult,
    derive_seed,
    diagonal_mu,
    dual_numbers_spec,
    run_all,
    run_suite,
    suite_names,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]

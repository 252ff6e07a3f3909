"""Localization of PSD operators and quantum states within subspaces.

A positive-semidefinite operator A and a subspace V determine a unique
splitting A = inside + outside where the inside component is supported
within V and the outside component's support meets V only at zero. For a
density matrix the inside trace is the probability that the state is
located in V. This package computes the splitting, exposes its quantum
reading (weights, probability tables, masking, reconstruction from probe
weights), and ships self-contained randomized verification suites for the
inequalities and identities the construction satisfies.
"""

from .errors import (
    AgreementError,
    BlockInconsistency,
    ChainNotNested,
    ConvergenceFailure,
    DimensionMismatch,
    DomainError,
    FileFormatError,
    InconsistentProbes,
    Infeasible,
    LocalizationError,
    NegativeEigenvalue,
    NotDensity,
    NotHermitian,
    NotPositiveDefinite,
    NotPSD,
    SupportViolation,
    ToleranceBreakdown,
    UnderdeterminedSystem,
    UnknownSuite,
    ZeroVector,
)
from .linalg import (
    DEFAULT_TOL,
    EigenSystem,
    Subspace,
    ToleranceConfig,
    apply_map,
    certify_hermitian,
    certify_psd,
    complement,
    eigh,
    hermitize,
    intersect,
    is_disjoint,
    is_psd,
    is_pvm,
    pseudo_power,
    range_of,
    same_subspace,
    spectral_norm,
    subspace_sum,
    tensor,
    tensor_subspace,
)
from .decomp import (
    BlockForm,
    ChainDecomposition,
    Decomposition,
    block_form,
    chain_decompose,
    decompose,
    decompose_via_inverse,
    decompose_via_projection,
    deficiency_operator,
    line_weight,
    oblique_projector,
    trace_bounds,
    trace_inside,
    trace_outside,
    trace_overlap,
    warped_inner,
)
from .quantum import (
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    BlochVector,
    ComponentCell,
    Mixture,
    MultiSplitTable,
    ProbabilityTable,
    QubitWeights,
    StateDecomposition,
    bloch_vector,
    certify_density,
    entropy,
    log_weight,
    mask,
    measurement_projector,
    mixture_including,
    multi_probability_table,
    probability_table,
    qubit_state,
    qubit_weights,
    reconstruct,
    state_decompose,
    support,
    unmask,
)
from .verify import (
    SUITES,
    AscentResult,
    CheckStats,
    FalsifierResult,
    InstanceSpec,
    SuiteReport,
    feasible_trace_ascent,
    list_suites,
    maximality_falsifier,
    random_density,
    random_psd,
    random_subspace,
    random_unit_vector,
    run_all,
    run_suite,
)

__version__ = "0.1.0"

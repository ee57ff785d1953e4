"""Finite-rank qubit-register model of the quantized harmonic oscillator.

One qubit per site; the single-occupancy keys 2**n serve as oscillator
levels.  The package provides the exact single-site operator algebra, sparse
register states with CNOT/transpose gates and circuits, the bosonic ladder
and observable operators with their gate decompositions, coherent states
with free evolution, and an independent dense-oracle cross-check suite.
"""

from .bosonic import (
    BosonicSubspaceVector,
    PhysParams,
    RegisterOperator,
    b_lower,
    b_raise,
    bosonic_identity,
    bosonic_projector,
    check_transbosonic,
    circuit_as_operator,
    embed,
    gate_decomposition,
    hamiltonian,
    is_bosonic_operator,
    is_bosonic_state,
    ladder,
    momentum,
    number_state,
    position,
    project,
    register_block,
    site_ladder,
    site_product,
)
from .checks import (
    CRITERION_NAMES,
    MUTATIONS,
    CriterionResult,
    VerifyConfig,
    run_criteria,
)
from .coherent import (
    CoherentSpec,
    CoherentState,
    Trajectory,
    coherent_series,
    displacement_apply,
    displacement_generator_gateform,
    evolve,
    expectation,
    number_distribution,
    trajectory,
)
from .errors import (
    BosonRegError,
    NotBosonicError,
    NotFiniteCountableError,
    RankMismatchError,
    RankTooLargeError,
    TruncationRiskError,
    ZeroVectorError,
)
from .fock import FockOperatorSet, build_fock, intertwine_check
from .gates import (
    Circuit,
    CircuitPair,
    CircuitTerm,
    apply_circuit,
    apply_cnot,
    apply_cnot_transpose,
    apply_site_op,
    apply_transpose,
    apply_transpose_theta,
    circuit_from_json,
    circuit_to_json,
    circuit_to_matrix,
    cnot,
    cnot_transpose,
    conjugated_cnot_matrix,
    local,
    transpose,
    transpose_theta,
)
from .qubit import (
    PRODUCT_TABLE,
    PhaseTransform,
    ScaledSiteOp,
    SiteOp,
    op_adjoint,
    op_matrix,
    op_product,
    phase_conjugate,
)
from .register import (
    BasisIndex,
    EventuallyPeriodicSequence,
    GateKind,
    LogicFunction,
    RegisterState,
    SequenceClass,
    binary_gate,
    classify,
    computational_map,
    computational_value,
    continuum_map,
    count_no,
    count_yes,
    negation,
    rank2_coefficients,
    separability_check,
)

__version__ = "0.1.0"

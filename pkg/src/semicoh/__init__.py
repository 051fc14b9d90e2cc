"""Semicoherent quantum evolution toolkit.

Operator primitives, symmetric split-evolution forms and their
symmetry classification, the cos/sin measurement gadget and spectral
walks, single-qubit Trotter benchmarks, a Heisenberg-ring variational
solver, and Mermin-polynomial constructions, with a unified CLI.

Module-scoped constants that would clash at the top level (the default
t grids of symforms and trotter1q) stay on their modules.
"""

from __future__ import annotations

from .errors import (
    BranchAmbiguity,
    BranchCut,
    DegenerateGrid,
    DegenerateSpectrum,
    DimMismatch,
    EvenOrder,
    NonDiagonalizable,
    NonFinite,
    NotHermitian,
    NotInvolutive,
    NotUnitary,
    OddLength,
    SemicohError,
    SingularInverse,
    UnknownProcess,
    ZeroBranch,
    ZeroField,
    ZeroState,
    ZeroSuccess,
)
from .gadget import (
    AncillaGate,
    GadgetOutcome,
    apply_gadget,
    apply_gadget_general,
    sample_step,
    transition_probs,
)
from .heisenberg import (
    AnsatzParams,
    SpinChainModel,
    ansatz_n_params,
    build_afhm,
    exact_ground,
    h_total_action,
    hva_state,
    optimize,
    rayleigh_energy,
    symhva_state,
    valence_bond_initial,
)
from .linalg import (
    SpectralData,
    anticommutator,
    as_matrix,
    commutator,
    ensure_hermitian,
    ensure_same_dim,
    ensure_square,
    ensure_unitary,
    expm,
    fro_norm,
    herm_eig,
    kron,
    logm,
    matfunc,
)
from .matio import (
    load_matrix,
    load_vector,
    matrix_from_obj,
    matrix_to_obj,
    save_matrix,
    save_vector,
    vector_from_obj,
    vector_to_obj,
)
from .mermin import (
    EquivalenceReport,
    MerminOperators,
    MerminSetting,
    ghz_minus,
    ghz_plus,
    ghz_tilde,
    measure_mermin_circuit,
    measure_product_circuit,
    measurement_equivalence_check,
    mermin_A,
    mermin_closed,
    mermin_recursive,
    random_setting,
    sample_success,
    svetlichny,
    transfer_matrix_eval,
    xy_setting,
)
from .pauli import SIGMA, I2, PauliString, X, Y, Z, pauli_on
from .randomops import (
    random_anti_hermitian,
    random_density,
    random_hermitian,
    random_product_state,
    random_state,
    random_unitary,
)
from .streams import stream
from .symforms import (
    PROCESS_IDS,
    SplitGenerator,
    SymmetryErrorReport,
    TableRow,
    bch_terms,
    estimate_order,
    jordan_product,
    process_matrix,
    random_split,
    symmetry_errors,
    symmetry_table,
    table_row,
    u_pm,
    z_odd,
    z_plus,
)
from .tolerances import TOL, ToleranceConfig
from .trotter1q import (
    OneQubitSplit,
    PolarReport,
    default_t_range,
    default_theta_range,
    exact_u,
    generators,
    lctu_plus,
    polar_matrix,
    richardson_coefficient,
    sweep_grid,
    trotter2,
    unitary_distance,
)
from .walk import (
    BornReport,
    WalkConfig,
    WalkTrajectory,
    born_statistics,
    compile_1q_walk_circuit,
    cv_channel,
    estimate_energy_scale,
    iterate_channel,
    kraus_step,
    measured_bits,
    one_qubit_walk,
    qze_complements,
    qze_survival,
    random_schedule,
    run_trajectory,
    run_walk,
    simulate_compiled_walk,
    tris_control_error,
    tris_decomposition,
)

__version__ = "0.1.0"

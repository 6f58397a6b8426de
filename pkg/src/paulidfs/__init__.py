"""Decoherence-free subspace characterization for Pauli subgroups.

The package closes subgroups of the Pauli group from error generators,
enumerates their one-dimensional characters, builds irrep projectors,
extracts and verifies DFS bases, and drives group-algebra Kraus channels
over density matrices.
"""

from .channels import (
    ChannelConstraintError,
    DegenerateKrausError,
    KrausSet,
    ProbeReport,
    ScanReport,
    apply_channel,
    assert_density_matrix,
    code_fix_residual,
    decoherence_scan,
    density_matrix_from_state,
    purity,
    q8_constrained_kraus,
    q8_genericity_probe,
    random_group_algebra_kraus,
    state_fidelity,
    uniform_group_channel,
)
from .dfs import (
    DfsBasis,
    IrrepProjector,
    JointEigenspace,
    SearchResult,
    VerificationReport,
    applicable_phase_class,
    dfs_basis,
    dimension_formula,
    multiplicity,
    nonabelian_one_dim_search,
    projector,
    projector_rank,
    subspace_distance,
    verify_dfs,
)
from .pauli import (
    DENSE_QUBIT_LIMIT,
    DenseLimitError,
    PauliElement,
    PauliParseError,
    QubitCountError,
    adjoint,
    commutes,
    format_pauli,
    identity,
    mul,
    parse_pauli,
    pauli_group_order,
    pauli_string_count,
    to_matrix,
)
from .presets import (
    PRESET_NAMES,
    preset_generators,
    preset_group,
    q8_code_states,
    q8_invariant_planes,
)
from .subgroup import (
    Character,
    ClosureCapError,
    NotAbelianError,
    PauliSubgroup,
    characters,
    closure,
    reducibility_sum,
    subgroup_from_error_generators,
)

__version__ = "0.1.0"

__all__ = [
    "ChannelConstraintError",
    "Character",
    "ClosureCapError",
    "DENSE_QUBIT_LIMIT",
    "DegenerateKrausError",
    "DenseLimitError",
    "DfsBasis",
    "IrrepProjector",
    "JointEigenspace",
    "KrausSet",
    "NotAbelianError",
    "PRESET_NAMES",
    "PauliElement",
    "PauliParseError",
    "PauliSubgroup",
    "ProbeReport",
    "QubitCountError",
    "ScanReport",
    "SearchResult",
    "VerificationReport",
    "adjoint",
    "applicable_phase_class",
    "apply_channel",
    "assert_density_matrix",
    "characters",
    "closure",
    "code_fix_residual",
    "commutes",
    "decoherence_scan",
    "density_matrix_from_state",
    "dfs_basis",
    "dimension_formula",
    "format_pauli",
    "identity",
    "mul",
    "multiplicity",
    "nonabelian_one_dim_search",
    "parse_pauli",
    "pauli_group_order",
    "pauli_string_count",
    "preset_generators",
    "preset_group",
    "projector",
    "projector_rank",
    "purity",
    "q8_code_states",
    "q8_constrained_kraus",
    "q8_genericity_probe",
    "q8_invariant_planes",
    "random_group_algebra_kraus",
    "reducibility_sum",
    "state_fidelity",
    "subgroup_from_error_generators",
    "subspace_distance",
    "to_matrix",
    "uniform_group_channel",
    "verify_dfs",
]

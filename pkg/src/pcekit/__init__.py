"""Pauli-component-erasing (PCE) channels on N qubits.

A PCE map acts diagonally in the Pauli basis, multiplying each Pauli
component of a density matrix by 0 or 1.  This package packs such a map
into an integer bitmask, decides complete positivity symbolically (the
kept indices must form a bit-XOR-closed subspace), enumerates all channels
per preserved dimension, factors any channel into elementary single-label
generators, and simulates the associated semigroup and collision dynamics.
Dense-matrix routines mirror every symbolic result at small N so the two
paths can be cross-checked.
"""

from .dense import (
    apply_generator_kraus,
    apply_pce,
    choi_dense,
    choi_pauli_vector,
    common_eigenbasis,
    from_pauli_components,
    is_positive_semidefinite,
    partial_trace,
    pauli_components,
    pauli_transfer_matrix,
    purity_from_components,
    qc_channel,
    qc_project,
)
from .diagram import parse_ascii, render_ascii, render_svg
from .dynamics import (
    CollisionSchedule,
    DissipativeProcess,
    collide,
    collision_unitary,
    decay_rates,
    evolve,
    evolve_components,
    fixed_point_components,
    lindbladian_apply,
    pce_limit,
    rk4_evolve,
    semigroup_apply,
)
from .enumeration import (
    ChannelCensus,
    census,
    count_channels,
    enumerate_subspaces,
    recount_by_enumeration,
)
from .errors import (
    CapacityError,
    DimensionMismatchError,
    InvalidStabilizerSetError,
    NotAChannelError,
    PceError,
    TracePreservationError,
)
from .generators import (
    decompose,
    generator_map,
    generator_subspace,
    local_action,
    recompose,
    reflection_parity,
)
from .maps import (
    ChoiSpectrum,
    PceMap,
    Subspace,
    choi_spectrum,
    closure,
    closure_witness,
    compose,
    dump_channel_document,
    is_closed_subspace,
    is_completely_positive,
    load_channel_document,
    map_to_subspace,
    reflect,
    subspace_to_map,
    tau_from_spectrum,
)
from .pauli import (
    MultiIndex,
    N_MAX,
    commutes,
    klein_add,
    pauli_basis,
    pauli_string_dense,
    sign_transform,
    symplectic_product,
    symplectic_product_row,
)

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "ChannelCensus",
    "ChoiSpectrum",
    "CollisionSchedule",
    "DimensionMismatchError",
    "DissipativeProcess",
    "InvalidStabilizerSetError",
    "MultiIndex",
    "N_MAX",
    "NotAChannelError",
    "PceError",
    "PceMap",
    "Subspace",
    "TracePreservationError",
    "apply_generator_kraus",
    "apply_pce",
    "census",
    "choi_dense",
    "choi_pauli_vector",
    "choi_spectrum",
    "closure",
    "closure_witness",
    "collide",
    "collision_unitary",
    "common_eigenbasis",
    "commutes",
    "compose",
    "count_channels",
    "decay_rates",
    "decompose",
    "dump_channel_document",
    "enumerate_subspaces",
    "evolve",
    "evolve_components",
    "fixed_point_components",
    "from_pauli_components",
    "generator_map",
    "generator_subspace",
    "is_closed_subspace",
    "is_completely_positive",
    "is_positive_semidefinite",
    "klein_add",
    "lindbladian_apply",
    "load_channel_document",
    "local_action",
    "map_to_subspace",
    "parse_ascii",
    "partial_trace",
    "pauli_basis",
    "pauli_components",
    "pauli_string_dense",
    "pauli_transfer_matrix",
    "pce_limit",
    "purity_from_components",
    "qc_channel",
    "qc_project",
    "recompose",
    "recount_by_enumeration",
    "reflect",
    "reflection_parity",
    "render_ascii",
    "render_svg",
    "rk4_evolve",
    "semigroup_apply",
    "sign_transform",
    "subspace_to_map",
    "symplectic_product",
    "symplectic_product_row",
    "tau_from_spectrum",
]

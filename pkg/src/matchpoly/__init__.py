"""matchpoly: perfect matching polytopes of bipartite graphs at desk scale.

Matching enumeration, polytope skeletons and their (monotone) diameters,
circuit moves with exact rational arithmetic, tower gadgets, flip-sequence
construction and verification, and the two hardness reductions.
"""

from .errors import (
    CapExceeded,
    DisconnectedSkeleton,
    Error,
    NoPerfectMatching,
    NotAlternating,
    NotHamiltonian,
    NotSpanning,
    PreconditionViolation,
    UnboundedDirection,
    Unreachable,
    UnreachableOptimum,
    WrongOrigin,
    ZeroStep,
)
from .graphs import (
    BipartiteGraph,
    Cycle,
    PerfectMatching,
    SimpleGraph,
    adjacent,
    alternating_cycles,
    edge_key,
    enumerate_cycles,
    enumerate_perfect_matchings,
    flip,
    has_perfect_matching,
    is_perfect_matching,
    random_perfect_matching,
    symmetric_difference_cycle_count,
    symmetric_difference_cycles,
)
from .skeleton import (
    CostFunction,
    SkeletonGraph,
    build_skeleton,
    diameter,
    monotone_diameter,
    monotone_distance,
    witness_cost_function,
)
from .gadgets import (
    GHOrigin,
    TowerDescriptor,
    ToweredGraph,
    add_tower,
    add_towers,
    build_GH,
    contract_matching,
    contract_tower,
    depth,
    horizontal_indices,
    touches,
    tower_path,
)
from .flips import (
    FlipSequence,
    FlipVerification,
    aux_matching,
    extend_over_tower,
    far_matchings,
    hamiltonian_upper_walk,
    min_flip_distance,
    min_touching_flips,
    normalize_to_aux,
    verify_flip_sequence,
)
from .reductions import (
    Hypergraph4DM,
    ReductionCertificate,
    brute_4dm,
    brute_hamiltonian,
    choose_height,
    extract_hamiltonian_from_cycle,
    four_cycles,
    has_4cycle_cover,
    is_hamiltonian_cycle,
    lift_3dm_to_4dm,
    reduce_4dm_to_4cycle_cover,
    reduce_hamiltonian_to_diameter,
)
from .circuits import (
    CircuitVector,
    HalfspaceSystem,
    IncidenceVector,
    circuit_diameter_small,
    circuit_move,
    enumerate_circuits,
    monotone_circuit_distance,
    one_step_set,
    pmp_halfspaces,
)

__version__ = "0.1.0"

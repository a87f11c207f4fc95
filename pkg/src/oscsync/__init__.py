"""Structural synchronization analysis for arrays of identical oscillators.

An interconnection couples q oscillators through two edge families:
dissipative edges (damper/resistor-like, acting on velocities) and
restorative edges (spring/inductor-like, acting on positions).  This
package decides two structural questions about such a wiring diagram —
can SOME positive coupling weights synchronize the array, and do ALL of
them — and backs each verdict with explicit certificates: synthesized
weights with a verified spectral margin on the one side, exact rational
sign witnesses (equivalently, nontrivial current/potential distributions)
on the other, cross-validated by closed-form topology tests and direct
simulation of the coupled dynamics.
"""

from .graphs import (
    ComponentPartition,
    Edge,
    Interconnection,
    components,
    incidence,
    is_connected,
    normalize_edge,
    normalize_edges,
    reduce,
)
from .laplacians import (
    TAU_LAP,
    ConstructionError,
    GenericLaplacianTrace,
    GenericStep,
    ValidationResult,
    WeightedLaplacian,
    generic_laplacian,
    laplacian,
    rescale,
    sample_laplacian,
    tau_eig,
    validate_laplacian,
)
from .spectral import SpectralReport, eigenvector_obstruction, lhp_free, spectrum
from .structural import (
    BudgetExceededError,
    SignWitness,
    SSSVerdict,
    SSVerdict,
    construct_synchronizing_weights,
    falsify_by_sampling,
    is_ss,
    is_sss,
    verify_witness,
    witness_to_laplacians,
)
from .topology import (
    Distribution,
    DistributionCheck,
    TopologyClass,
    classify,
    cycle_sss,
    find_distribution,
    path_sss,
    tree_sss_sufficient,
    verify_distribution,
)
from .dynamics import (
    TAIL_DESYNC,
    TAIL_SYNCED,
    ArrayState,
    CrosscheckReport,
    CrosscheckRow,
    InstabilityError,
    OscillatorSystem,
    SyncTrace,
    check_controllability,
    closed_loop_matrix,
    harmonic,
    node_energies,
    random_state,
    simulate,
    spread_state,
    verdict_crosscheck,
)
from .fixtures import Fixture, alternating_cycle, braced_chain, circuit_laplacians, gallery, twin_triangles
from .fileio import (
    ParseError,
    ParsedDocument,
    parse_document,
    parse_interconnection,
    parse_system,
    parse_witness,
    write_document,
    write_system,
    write_witness,
)

__version__ = "0.1.0"

__all__ = [
    "ArrayState",
    "BudgetExceededError",
    "ComponentPartition",
    "ConstructionError",
    "CrosscheckReport",
    "CrosscheckRow",
    "Distribution",
    "DistributionCheck",
    "Edge",
    "Fixture",
    "GenericLaplacianTrace",
    "GenericStep",
    "InstabilityError",
    "Interconnection",
    "OscillatorSystem",
    "ParseError",
    "ParsedDocument",
    "SignWitness",
    "SpectralReport",
    "SSSVerdict",
    "SSVerdict",
    "SyncTrace",
    "TAIL_DESYNC",
    "TAIL_SYNCED",
    "TAU_LAP",
    "TopologyClass",
    "ValidationResult",
    "WeightedLaplacian",
    "alternating_cycle",
    "braced_chain",
    "check_controllability",
    "circuit_laplacians",
    "classify",
    "closed_loop_matrix",
    "components",
    "construct_synchronizing_weights",
    "cycle_sss",
    "eigenvector_obstruction",
    "falsify_by_sampling",
    "find_distribution",
    "gallery",
    "generic_laplacian",
    "harmonic",
    "incidence",
    "is_connected",
    "is_ss",
    "is_sss",
    "laplacian",
    "lhp_free",
    "node_energies",
    "normalize_edge",
    "normalize_edges",
    "parse_document",
    "parse_interconnection",
    "parse_system",
    "parse_witness",
    "path_sss",
    "random_state",
    "reduce",
    "rescale",
    "sample_laplacian",
    "simulate",
    "spectrum",
    "spread_state",
    "tau_eig",
    "tree_sss_sufficient",
    "twin_triangles",
    "validate_laplacian",
    "verdict_crosscheck",
    "verify_distribution",
    "verify_witness",
    "witness_to_laplacians",
    "write_document",
    "write_system",
    "write_witness",
]

"""digenergy: digraph spectra and energy, walk-based spectral bounds,
equality-structure recognition, and exhaustive verification."""

from .bounds import (
    BoundReport,
    bound_chain_report,
    energy_upper_mcclelland,
    energy_upper_radius,
    energy_upper_walk_mean,
    energy_upper_walk_ratio,
    energy_upper_walk_rms,
    inject_fault,
    rho_lower_walk_mean,
    rho_lower_walk_ratio,
    rho_lower_walk_rms,
    walk_ratio,
)
from .digraph import (
    ClosedWalkProfile,
    Digraph,
    Graph,
    SccPartition,
    adjacency_matrix,
    cycle_arc_reduction,
    from_graph,
    geometric_symmetrization,
    parse_edge_list,
    serialize_edge_list,
    strongly_connected_components,
    underlying_graph_if_symmetric,
    walk_profile,
)
from .errors import (
    BoundInapplicableError,
    DigraphValidationError,
    EdgeListParseError,
    EigensolverError,
    PurelyImaginaryEigenvalueError,
    UnknownCheckError,
)
from .kernels import BACKEND, HAVE_COMPILED
from .oracle import (
    CHECK_NAMES,
    VerificationReport,
    Violation,
    enumerate_digraphs,
    random_digraph,
    verify_all,
)
from .spectrum import (
    CharPoly,
    MomentIdentities,
    Spectrum,
    characteristic_polynomial,
    coulson_energy,
    eigenvalues,
    energy,
    moment_identities,
    spectral_radius,
)
from .structure import (
    StructureVerdict,
    equality_verdict_energy_upper,
    equality_verdict_rho_lower,
    is_pseudo_regular,
    is_pseudo_semiregular_bipartite,
    is_regular,
    is_semiregular_bipartite,
    is_strongly_regular,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BoundInapplicableError",
    "BoundReport",
    "CHECK_NAMES",
    "CharPoly",
    "ClosedWalkProfile",
    "Digraph",
    "DigraphValidationError",
    "EdgeListParseError",
    "EigensolverError",
    "Graph",
    "HAVE_COMPILED",
    "MomentIdentities",
    "PurelyImaginaryEigenvalueError",
    "SccPartition",
    "Spectrum",
    "StructureVerdict",
    "UnknownCheckError",
    "VerificationReport",
    "Violation",
    "adjacency_matrix",
    "bound_chain_report",
    "characteristic_polynomial",
    "coulson_energy",
    "cycle_arc_reduction",
    "eigenvalues",
    "energy",
    "energy_upper_mcclelland",
    "energy_upper_radius",
    "energy_upper_walk_mean",
    "energy_upper_walk_ratio",
    "energy_upper_walk_rms",
    "enumerate_digraphs",
    "equality_verdict_energy_upper",
    "equality_verdict_rho_lower",
    "from_graph",
    "geometric_symmetrization",
    "inject_fault",
    "is_pseudo_regular",
    "is_pseudo_semiregular_bipartite",
    "is_regular",
    "is_semiregular_bipartite",
    "is_strongly_regular",
    "moment_identities",
    "parse_edge_list",
    "random_digraph",
    "rho_lower_walk_mean",
    "rho_lower_walk_ratio",
    "rho_lower_walk_rms",
    "serialize_edge_list",
    "spectral_radius",
    "strongly_connected_components",
    "underlying_graph_if_symmetric",
    "verify_all",
    "walk_profile",
    "walk_ratio",
]

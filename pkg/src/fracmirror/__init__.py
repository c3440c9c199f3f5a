"""fracmirror: mirror symmetry of branched double covers from nef-partitions.

Exact-arithmetic tooling for the polytope duality (nef-partitions and their
duals), the topological test (Euler characteristics and Hodge numbers of the
covers), and the quantum test (GKZ systems, Picard–Fuchs operators, mirror
maps, Yukawa couplings, and cohomology-valued I-functions).
"""

from .errors import FracmirrorError, InvalidNefPartition, SmoothnessError
from .polytope import (
    LatticePolytope,
    cayley_polytope,
    ehrhart_polynomial,
    lattice_transform,
    pyramid_over,
)
from .nefpart import (
    NefPartition,
    dual_nef_partition,
    polytope_of_part,
    validate_nef_partition,
)
from .topology import (
    CoverTopology,
    HodgeTable,
    dk_intersection_euler,
    euler_double_cover,
    euler_mpcp,
    euler_snc_union_oracle,
    hodge_numbers,
)
from .series import (
    EpsPoly,
    LogSeries,
    NilpotentSeries,
    RationalSeries,
    fraction_str,
    parse_fraction,
)
from .gkz import (
    GkzSystem,
    box_annihilation_check,
    build_gkz,
    gkz_solution_terms,
    holo_solution,
    principal_kernel_vector,
    rising,
)
from .picard_fuchs import (
    ThetaOperator,
    apply,
    holomorphic_kernel,
    theta_conjugate,
    yukawa_ode_rhs,
)
from .mirror import (
    FrobeniusPair,
    YukawaData,
    a_model_correlation,
    classical_normalization,
    frobenius_pair,
    mirror_map,
    yukawa_z,
)
from .cohom import (
    CohomRing,
    b_series,
    deformed_solution,
    frobenius_residue,
    i_function_mirror_map,
    i_function_untwisted,
    i_weights_from_kernel,
    pairing_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "FracmirrorError",
    "InvalidNefPartition",
    "SmoothnessError",
    "LatticePolytope",
    "cayley_polytope",
    "ehrhart_polynomial",
    "lattice_transform",
    "pyramid_over",
    "NefPartition",
    "dual_nef_partition",
    "polytope_of_part",
    "validate_nef_partition",
    "CoverTopology",
    "HodgeTable",
    "dk_intersection_euler",
    "euler_double_cover",
    "euler_mpcp",
    "euler_snc_union_oracle",
    "hodge_numbers",
    "EpsPoly",
    "LogSeries",
    "NilpotentSeries",
    "RationalSeries",
    "fraction_str",
    "parse_fraction",
    "GkzSystem",
    "box_annihilation_check",
    "build_gkz",
    "gkz_solution_terms",
    "holo_solution",
    "principal_kernel_vector",
    "rising",
    "ThetaOperator",
    "apply",
    "holomorphic_kernel",
    "theta_conjugate",
    "yukawa_ode_rhs",
    "FrobeniusPair",
    "YukawaData",
    "a_model_correlation",
    "classical_normalization",
    "frobenius_pair",
    "mirror_map",
    "yukawa_z",
    "CohomRing",
    "b_series",
    "deformed_solution",
    "frobenius_residue",
    "i_function_mirror_map",
    "i_function_untwisted",
    "i_weights_from_kernel",
    "pairing_matrix",
]

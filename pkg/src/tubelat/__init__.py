"""Combinatorics of graph associahedra: maximal tubings, the flip order,
weak-order congruences via arcs, and tubing Hopf structures."""

from .errors import TubelatError
from .graphs import (
    Graph,
    GraphFamily,
    LabeledGraph,
    contract,
    delete,
    dual_graph,
    family_complete,
    family_cycle,
    family_empty,
    family_from_A,
    family_h,
    family_odd_bipartite,
    family_path,
    filled_status,
    induced_subgraph,
    is_tube,
    minimal_non_edges,
    minors,
    parse_family,
    parse_graph,
    standardize,
    tubes,
)
from .tubings import (
    GForest,
    Tubing,
    chi,
    compatible,
    descents,
    enumerate_maximal_tubings,
    flip,
    forest_inversions,
    ideals,
    linear_extensions,
    quotient_tubing,
    restrict_tubing,
    sigma_max,
    sigma_min,
    tau,
    top,
    vertex_coordinates,
)
from .posets import Poset, build_lg, tubing_face_interval
from .weakorder import (
    Arc,
    Congruence,
    arc_delete,
    arc_insertions,
    arc_of_cover,
    congruence_classes,
    congruence_from_generators,
    generators_of_theta_g,
    inversions,
    is_g_permutation,
    is_insertional,
    is_lattice_quotient_map,
    is_subarc,
    is_translational,
    perm_of_arc,
    pi_down,
    psi,
    quotient_poset,
    theta_g,
    weak_covers,
    weak_join,
    weak_le,
    weak_meet,
)
from .hopf import (
    FormalSum,
    check_associativity,
    check_c_commutes_with_delta,
    coarsen,
    embed_c,
    fiber_sum,
    is_admissible,
    is_restriction_compatible,
    mr_coproduct,
    mr_product,
    recover_A,
    tubing_coproduct,
    tubing_product,
)

__version__ = "0.1.0"

"""Finite Stone-style duality for meet-semilattices and monotone expansions.

The package implements, at finite scale, the dual-space construction for
semilattices, their canonical extensions as closure systems over the dual
space, upper and lower extensions of order-preserving maps, the
multirelational duality for monotone operators, and the correspondence
between congruences and hit-set families on the dual space — with every
structural theorem wired to an executable cross-check.
"""

from .core import (
    Congruence,
    Homomorphism,
    MonotoneSemilattice,
    Semilattice,
    congruence,
    enumerate_semilattices,
    homomorphisms,
    identity_hom,
    kernel_congruence,
    leq,
    monotone_operators,
    quotient,
    semilattices_of_size,
    validate_monotone,
    validate_semilattice,
)
from .extension import (
    CanonicalExtension,
    build_extension,
    closed_open_elements,
    ext_join,
    ext_meet,
    extension_to_json,
    filter_completion_comparison,
    hull,
    ideal_avoiding,
    points_avoiding,
    verify_compact,
    verify_dense,
)
from .maps import OrderMap, order_map, pi_ext, pi_relation, sigma_ext, sigma_relation
from .modal import (
    MeetRelation,
    MSSpace,
    MultiRelation,
    box,
    check_ms_space,
    compose_star,
    dual_multirelation,
    dual_of_hom,
    duality_roundtrip,
    induced_operator,
    is_meet_relation,
    is_monotone_meet_relation,
    multirelation_to_json,
    relation_to_json,
    saturated_hitting,
    specialization_relation,
    transported_multirelation,
)
from .order import (
    all_filters,
    all_order_ideals,
    generated_filter,
    irreducible_filters,
    is_F_ideal,
    is_irreducible,
    is_irreducible_char,
    separate,
)
from .space import (
    SSpace,
    check_s_space,
    check_bounding_family,
    closure,
    dot_membership,
    dot_specialization,
    double_dual_map,
    dual_elements,
    dual_semilattice,
    dual_space,
    element_image,
    filter_of_closed,
    is_bounding_family,
    make_space,
    points_containing,
    points_extending,
    specialization,
    subbasic_closed,
    subbasic_saturated,
)
from .vietoris import (
    VietorisFamily,
    algebraic_filter_subsets,
    all_congruences,
    check_vietoris_family,
    congruence_filter_duality,
    congruence_lattice_json,
    congruence_of_family,
    family_of_congruence,
    family_of_relation,
    hit_members,
    induced_multirelation,
    is_one_to_one,
    make_family,
    monotone_family_check,
    quotient_family_space,
    relation_of_family,
    saturated_filters,
    vietoris_lattice,
)

__version__ = "0.1.0"

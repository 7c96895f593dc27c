from .jackson import (
    SECTION_ORDER,
    JacksonData,
    build_jackson_data,
    build_jackson_quadruple,
    find_normal_Q,
    hypotheses,
    jackson_chi,
    run_jackson,
    verify_chi_values,
    verify_no_fixed_vectors,
    verify_normal_intersection,
    verify_quadruple_factorization,
    verify_restrictions_are_characters,
    verify_subfamily_connectivity,
    verify_subgroup_shapes,
)
from .rank_one import RankOneData, build_rank_one_diagram, check_free_family, rank_one_family, verify_rank_one
from .reduction import noncyclic_center_reduction

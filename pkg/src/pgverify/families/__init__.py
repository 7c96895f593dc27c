from .family import SubgroupFamily, family_trivial_intersection, subfamily_closure
from .poset import (
    PosetDiagram,
    SubfamilyDiagram,
    almost_strongly_connected,
    check_covering,
    graph_is_tree,
    poset_DH,
    strongly_connected,
)
from .quadruple import (
    QuadrupleBundle,
    check_assignment_compatibility,
    check_compatible_family,
    check_diagram_of_reps,
    check_factorization,
    conjugation_embedding,
    restriction_family,
)
from .types import (
    TypeClassification,
    build_jackson_subfamilies,
    classify_types,
    rank_two_elementary,
    typeE_max_elementary,
)

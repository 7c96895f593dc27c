from .catalog import (
    CATALOG,
    build_catalog_group,
    cyclic,
    direct_product,
    elementary_abelian,
    extraspecial5,
    from_permutations,
    heisenberg,
    metacyclic,
    read_group_file,
    semidirect,
    semidirect_product,
    write_group_file,
)
from .core import (
    ConjugacyPartition,
    Group,
    GroupEmbedding,
    SubgroupSet,
    conjugacy_classes,
    mask_from_indices,
)
from .iso import find_isomorphism, is_isomorphic
from .subgroups import (
    all_subgroups,
    as_group,
    canonical_conjugate,
    center,
    centralizer,
    closure,
    conjugates,
    conjugating_elements,
    is_elementary_abelian,
    is_normal,
    is_subconjugate,
    local_index,
    local_subgroup,
    normalizer,
    omega1,
    rank,
    subgroup_generators,
    subgroups_of,
    transversal,
)

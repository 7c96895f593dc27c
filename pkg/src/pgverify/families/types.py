"""Classification of the family members relative to a normal Q = C_p x C_p and its
centralizer, and the subfamilies built from it."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..groups.core import SubgroupSet
from ..groups.subgroups import canonical_conjugate, is_elementary_abelian, subgroups_of
from .family import SubgroupFamily
from .poset import PosetDiagram, SubfamilyDiagram

TAGS = ("A", "B", "C", "E")


@dataclass
class TypeClassification:
    tags: dict[int, frozenset[str]]
    # members where "K = H ∩ C_G(Q) cyclic" and "H cyclic" disagree
    divergent: list[SubgroupSet] = field(default_factory=list)

    def of(self, H: SubgroupSet) -> frozenset[str]:
        return self.tags[H.mask]

    def with_tag(self, family: SubgroupFamily, tag: str) -> list[SubgroupSet]:
        return [H for H in family if tag in self.tags[H.mask]]

    def counts(self) -> dict[str, int]:
        return {t: sum(t in v for v in self.tags.values()) for t in TAGS}


def classify_types(family: SubgroupFamily, Q: SubgroupSet, centralizer_Q: SubgroupSet
                   ) -> TypeClassification:
    """A for members inside C_G(Q); outside it, B when cyclic and E otherwise.
    Cyclic type-A members lying inside some B or E member also get C."""
    tags: dict[int, set[str]] = {}
    divergent = []
    outside = []
    for H in family:
        if H <= centralizer_Q:
            tags[H.mask] = {"A"}
            continue
        outside.append(H)
        tags[H.mask] = {"B" if H.is_cyclic else "E"}
        K = H.intersect(centralizer_Q)
        if K.is_cyclic != H.is_cyclic:
            divergent.append(H)
    for H in family:
        if "A" in tags[H.mask] and any(H.mask & B.mask == H.mask for B in outside):
            tags[H.mask].add("C")
    return TypeClassification({m: frozenset(t) for m, t in tags.items()}, divergent)


def rank_two_elementary(H: SubgroupSet) -> list[SubgroupSet]:
    """Elementary abelian subgroups of order p^2 inside ``H``."""
    from ..groups.core import prime_power

    pp = prime_power(H.order)
    if pp is None:
        return []
    p = pp[0]
    return [S for S in subgroups_of(H) if S.order == p * p and is_elementary_abelian(S)]


def typeE_max_elementary(family: SubgroupFamily, types: TypeClassification
                         ) -> tuple[list[SubgroupSet], dict[int, SubgroupSet]]:
    """Canonical representatives of the rank-two elementary abelian subgroups of the
    type-E members, and for each type-E member its (unique) such subgroup.

    Raises ValueError if some type-E member has zero or several of them.
    """
    of_member: dict[int, SubgroupSet] = {}
    reps: dict[int, SubgroupSet] = {}
    for H in types.with_tag(family, "E"):
        es = rank_two_elementary(H)
        if len(es) != 1:
            raise ValueError(f"type-E member {H.hex} has {len(es)} rank-two elementary subgroups")
        of_member[H.mask] = es[0]
        R = canonical_conjugate(es[0])
        reps[R.mask] = R
    return [reps[m] for m in sorted(reps)], of_member


def build_jackson_subfamilies(family: SubgroupFamily, types: TypeClassification,
                              reps: list[SubgroupSet], of_member: dict[int, SubgroupSet]
                              ) -> SubfamilyDiagram:
    """Discrete diagram {a, e_1, ..., e_m}: H_a is every type-A member; H_{e_i} is every
    type-E member containing a conjugate of E_i, together with all of their subgroups."""
    G = family.group
    nodes = ["a"] + [f"e{i + 1}" for i in range(len(reps))]
    fams: dict[str, SubgroupFamily] = {}
    fams["a"] = SubgroupFamily(G, types.with_tag(family, "A"), "a")
    rep_index = {R.mask: i for i, R in enumerate(reps)}
    tops: list[list[SubgroupSet]] = [[] for _ in reps]
    for H in types.with_tag(family, "E"):
        tops[rep_index[canonical_conjugate(of_member[H.mask]).mask]].append(H)
    for i, members in enumerate(tops):
        closed = []
        for T in family:
            if any(T.mask & H.mask == T.mask for H in members):
                closed.append(T)
        fams[nodes[i + 1]] = SubgroupFamily(G, closed, nodes[i + 1])
    return SubfamilyDiagram(PosetDiagram(tuple(nodes)), fams, family)

"""Families of subgroups: sets closed under conjugation and under taking subgroups."""

from __future__ import annotations

from typing import Iterable, Iterator

from ..errors import NotClosed
from ..groups.core import Group, SubgroupSet
from ..groups.subgroups import all_subgroups


class SubgroupFamily:
    """A deduplicated, sorted set of subgroups of one group."""

    def __init__(self, group: Group, members: Iterable[SubgroupSet], label: str = "",
                 *, check: bool = True):
        uniq: dict[int, SubgroupSet] = {}
        for S in members:
            if S.parent is not group:
                raise ValueError("family member belongs to another group")
            uniq.setdefault(S.mask, S)
        self.group = group
        self.label = label
        self.members: list[SubgroupSet] = sorted(uniq.values())
        self.masks: frozenset[int] = frozenset(uniq)
        if check:
            problem = self.closure_problem()
            if problem is not None:
                raise NotClosed(f"family {label!r} not closed: {problem}")

    def __contains__(self, S: SubgroupSet) -> bool:
        return S.mask in self.masks

    def __iter__(self) -> Iterator[SubgroupSet]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __repr__(self) -> str:
        return f"SubgroupFamily({self.label or self.group.label}, {len(self)} members)"

    def closure_problem(self) -> dict | None:
        """First violation of subgroup- or conjugation-closure, or None."""
        G = self.group
        if self.members and G.trivial.mask not in self.masks:
            return {"kind": "missing_trivial"}
        gens = G.generators
        for S in self.members:
            for g in gens:
                T = S.conjugate(g)
                if T.mask not in self.masks:
                    return {"kind": "conjugation", "subgroup": S.hex, "element": int(g)}
        subs = all_subgroups(G)
        for S in self.members:
            for T in subs:
                if T.order >= S.order:
                    break
                if T.mask & S.mask == T.mask and T.mask not in self.masks:
                    return {"kind": "subgroup", "subgroup": S.hex, "missing": T.hex}
        return None

    def union(self, other: SubgroupFamily, label: str = "") -> SubgroupFamily:
        return SubgroupFamily(self.group, self.members + other.members, label, check=False)


def family_trivial_intersection(G: Group, Z0: SubgroupSet, label: str = "") -> SubgroupFamily:
    """All subgroups meeting ``Z0`` trivially."""
    return SubgroupFamily(G, [H for H in all_subgroups(G) if H.mask & Z0.mask == 1],
                          label or f"trivial intersection with {Z0.hex}")


def subfamily_closure(G: Group, seeds: Iterable[SubgroupSet], within: SubgroupFamily | None = None,
                      label: str = "") -> SubgroupFamily:
    """Smallest family containing ``seeds`` (intersected with ``within`` when given)."""
    from ..groups.subgroups import conjugates

    seed_masks = set()
    for S in seeds:
        for T in conjugates(S):
            seed_masks.add(T.mask)
    out = []
    for T in all_subgroups(G):
        if within is not None and T not in within:
            continue
        if any(T.mask & m == T.mask for m in seed_masks):
            out.append(T)
    return SubgroupFamily(G, out, label)

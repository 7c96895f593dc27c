"""Finite posets of dimension at most one, diagrams of subfamilies over them, and
the connectedness conditions on the subposets D_H = {d : H in H_d}."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import NotOneDimensional
from ..groups.core import SubgroupSet
from ..verdict import Verdict
from .family import SubgroupFamily


@dataclass(frozen=True)
class PosetDiagram:
    objects: tuple[str, ...]
    relations: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        objs = set(self.objects)
        if len(objs) != len(self.objects):
            raise ValueError("duplicate poset objects")
        rel = set(self.relations)
        for x, y in rel:
            if x not in objs or y not in objs:
                raise ValueError(f"relation ({x}, {y}) mentions unknown objects")
            if x == y:
                raise ValueError("self-pairs are implicit and must not be listed")
            if (y, x) in rel:
                raise ValueError(f"relation ({x}, {y}) is not antisymmetric")
        lower = {x for x, _ in rel}
        upper = {y for _, y in rel}
        middle = lower & upper
        if middle:
            raise NotOneDimensional(f"object {sorted(middle)[0]!r} lies in a chain of length two")

    @property
    def dimension(self) -> str:
        return "one-dimensional" if self.relations else "discrete"

    def below(self, y: str) -> list[str]:
        return [a for a, b in self.relations if b == y]

    def full_subposet(self, keep) -> PosetDiagram:
        keep = set(keep)
        return PosetDiagram(tuple(o for o in self.objects if o in keep),
                            tuple((x, y) for x, y in self.relations if x in keep and y in keep))


def graph_is_tree(nodes, edges) -> bool:
    """A graph realization is simply connected iff it is nonempty, connected, and V - E = 1."""
    nodes = list(nodes)
    if not nodes:
        return False
    parent = {v: v for v in nodes}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for x, y in edges:
        parent[find(x)] = find(y)
    roots = {find(v) for v in nodes}
    return len(roots) == 1 and len(nodes) - len(edges) == 1


@dataclass
class SubfamilyDiagram:
    """A family H_d for each object d, monotone along relations."""

    poset: PosetDiagram
    families: dict[str, SubgroupFamily]
    ambient: SubgroupFamily | None = None
    notes: dict = field(default_factory=dict)

    def __post_init__(self):
        if set(self.families) != set(self.poset.objects):
            raise ValueError("one subfamily per poset object required")
        for x, y in self.poset.relations:
            extra = self.families[x].masks - self.families[y].masks
            if extra:
                raise ValueError(f"subfamily of {x} is not contained in that of {y}")

    def nodes_of(self, H: SubgroupSet) -> list[str]:
        return [d for d in self.poset.objects if H in self.families[d]]

    def covered(self) -> set[int]:
        out: set[int] = set()
        for fam in self.families.values():
            out |= fam.masks
        return out


def poset_DH(diagram: SubfamilyDiagram, H: SubgroupSet) -> PosetDiagram:
    """The full subposet of objects whose subfamily contains ``H``."""
    return diagram.poset.full_subposet(diagram.nodes_of(H))


def _is_cyclic_prime_power(H: SubgroupSet) -> bool:
    from ..groups.core import prime_power

    return H.is_cyclic and (H.order == 1 or prime_power(H.order) is not None)


def check_covering(diagram: SubfamilyDiagram, family: SubgroupFamily) -> Verdict:
    covered = diagram.covered()
    missing = [H for H in family if H.mask not in covered]
    outside = sorted(m for m in covered if m not in family.masks)
    ok = not missing and not outside
    witness = None
    if missing:
        witness = {"uncovered": missing[0].hex, "order": missing[0].order}
    elif outside:
        witness = {"foreign_member": format(outside[0], "x")}
    return Verdict.of("covering", ok, "the subfamilies cover the whole family", witness,
                      uncovered=len(missing))


def strongly_connected(diagram: SubfamilyDiagram, family: SubgroupFamily) -> Verdict:
    """Every D_H realizes to a simply connected graph."""
    for H in family:
        DH = poset_DH(diagram, H)
        if not graph_is_tree(DH.objects, DH.relations):
            return Verdict.of("strongly_connected", False, "every D_H is simply connected",
                              {"subgroup": H.hex, "order": H.order, "nodes": list(DH.objects),
                               "edges": [list(e) for e in DH.relations]})
    return Verdict.of("strongly_connected", True, "every D_H is simply connected",
                      subgroups=len(family))


def almost_strongly_connected(diagram: SubfamilyDiagram, family: SubgroupFamily) -> Verdict:
    """Like strongly_connected, except that a cyclic prime-power H may instead have
    D_H empty or a disjoint union of points."""
    claim = "D_H simply connected, or edgeless for cyclic prime-power H"
    relaxed = 0
    for H in family:
        DH = poset_DH(diagram, H)
        if graph_is_tree(DH.objects, DH.relations):
            continue
        if _is_cyclic_prime_power(H) and not DH.relations:
            relaxed += 1
            continue
        return Verdict.of("almost_strongly_connected", False, claim,
                          {"subgroup": H.hex, "order": H.order, "cyclic": _is_cyclic_prime_power(H),
                           "nodes": list(DH.objects), "edges": [list(e) for e in DH.relations]})
    return Verdict.of("almost_strongly_connected", True, claim, subgroups=len(family),
                      relaxed_cyclic=relaxed)

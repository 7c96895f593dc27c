"""The data (groups, representations, subfamilies, assignments) through which a
compatible family factors, and the checkers for each condition it must meet."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..characters.classfunc import ClassFunction, pullback
from ..characters.cyclotomic import Cyclotomic
from ..errors import DegreeMismatch
from ..groups.core import Group, GroupEmbedding, SubgroupSet
from ..groups.subgroups import as_group, centralizer, local_index, subgroup_generators, transversal
from ..verdict import Verdict
from .family import SubgroupFamily
from .poset import SubfamilyDiagram


def restriction_family(chi: ClassFunction, family: SubgroupFamily) -> dict[int, ClassFunction]:
    """H -> restriction of a class function on G, for every member H."""
    from ..characters.classfunc import restrict

    return {H.mask: restrict(chi, H) for H in family}


def conjugation_embedding(H: SubgroupSet, g: int, target: SubgroupSet) -> GroupEmbedding:
    """as_group(H) -> as_group(target), h -> g h g^-1; requires gHg^-1 <= target."""
    G = H.parent
    src, _ = as_group(H)
    dst, _ = as_group(target)
    images = local_index(target)[G.conj[g, H.elements]]
    return GroupEmbedding(src, dst, images, "conjugation", int(g))


@dataclass
class QuadrupleBundle:
    diagram: SubfamilyDiagram
    groups: dict[str, SubgroupSet]
    reps: dict[str, ClassFunction]
    witnesses: dict[str, dict[int, int]]
    notes: dict = field(default_factory=dict)

    def __post_init__(self):
        self._alpha: dict[tuple[str, int], GroupEmbedding] = {}
        poset = self.diagram.poset
        for d in poset.objects:
            gam = self.groups[d]
            K, _ = as_group(gam)
            if self.reps[d].group is not K:
                raise ValueError(f"representation at {d} does not live on its group")
            G = gam.parent
            for H in self.diagram.families[d]:
                g = self.witnesses[d][H.mask]
                if not H.conjugate(g) <= gam:
                    raise ValueError(f"witness {g} does not move {H.hex} into the group at {d}")
        for x, y in poset.relations:
            if not self.groups[x] <= self.groups[y]:
                raise ValueError(f"group at {x} is not inside the group at {y}")
        self.parent: Group = G

    @property
    def poset(self):
        return self.diagram.poset

    def mu(self, x: str, y: str) -> GroupEmbedding:
        return conjugation_embedding(self.groups[x], 0, self.groups[y])

    def alpha(self, d: str, H: SubgroupSet) -> GroupEmbedding:
        key = (d, H.mask)
        emb = self._alpha.get(key)
        if emb is None:
            emb = self._alpha[key] = conjugation_embedding(H, self.witnesses[d][H.mask], self.groups[d])
        return emb

    def pulled_back(self, d: str, H: SubgroupSet) -> ClassFunction:
        return pullback(self.reps[d], self.alpha(d, H))


# -- compatibility of a family of characters ---------------------------------------


class _Interner:
    def __init__(self):
        self.ids: dict[Cyclotomic, int] = {}

    def __call__(self, v: Cyclotomic) -> int:
        return self.ids.setdefault(v, len(self.ids))


def _element_ids(G: Group, H: SubgroupSet, f: ClassFunction, intern: _Interner) -> np.ndarray:
    out = np.full(G.order, -1, dtype=np.int64)
    vals = [intern(v) for v in f.values]
    out[H.elements] = np.asarray(vals, dtype=np.int64)[f.partition.class_of]
    return out


def check_compatible_family(V: dict[int, ClassFunction], family: SubgroupFamily) -> Verdict:
    """V_K ∘ c_g = V_H whenever g H g^-1 <= K.

    Every such map is a conjugation H -> gHg^-1 followed by an inclusion, so the two
    kinds are checked separately; together they are equivalent to the full condition.
    """
    claim = "V_H agrees with the transported restriction of V_K for every conjugation map"
    G = family.group
    intern = _Interner()
    ids = {H.mask: _element_ids(G, H, V[H.mask], intern) for H in family}
    checked = 0
    for H in family:
        idx = H.elements
        mine = ids[H.mask][idx]
        for g in range(G.order):
            T = H.conjugate(g)
            moved = ids[T.mask][G.conj[g, idx]]
            checked += 1
            bad = np.flatnonzero(moved != mine)
            if len(bad):
                return Verdict.of("compatible_family", False, claim,
                                  {"g": g, "H": H.hex, "K": T.hex, "element": int(idx[bad[0]])})
    for K in family:
        kid = ids[K.mask]
        for H in family:
            if H.order >= K.order:
                break
            if H.mask & K.mask != H.mask:
                continue
            checked += 1
            idx = H.elements
            bad = np.flatnonzero(kid[idx] != ids[H.mask][idx])
            if len(bad):
                return Verdict.of("compatible_family", False, claim,
                                  {"g": 0, "H": H.hex, "K": K.hex, "element": int(idx[bad[0]])})
    return Verdict.of("compatible_family", True, claim, maps_checked=checked)


# -- diagram of representations ----------------------------------------------------


def _first_difference(f: ClassFunction, g: ClassFunction) -> dict | None:
    for rep, a, b in zip(f.partition.representatives, f.values, g.values):
        if a != b:
            return {"class_rep": int(rep), "left": str(a), "right": str(b)}
    return None


def check_diagram_of_reps(bundle: QuadrupleBundle, *, strict: bool = False) -> Verdict:
    """rho_x equals rho_y pulled back along mu_{x,y}, for every relation x < y.

    With ``strict`` a degree mismatch raises DegreeMismatch instead of failing.
    """
    claim = "rho_x is isomorphic to rho_y composed with mu_{x,y} on every edge"
    for x, y in bundle.poset.relations:
        left = bundle.reps[x]
        right = pullback(bundle.reps[y], bundle.mu(x, y))
        if left.degree != right.degree:
            if strict:
                raise DegreeMismatch(f"edge {x}<{y}: {left.degree} vs {right.degree}")
            return Verdict.of("diagram_of_reps", False, claim,
                              {"edge": [x, y], "kind": "degree", "left": str(left.degree),
                               "right": str(right.degree)})
        diff = _first_difference(left, right)
        if diff is not None:
            return Verdict.of("diagram_of_reps", False, claim, {"edge": [x, y], **diff})
    return Verdict.of("diagram_of_reps", True, claim, edges=len(bundle.poset.relations))


# -- assignments ----------------------------------------------------------------------


def _gamma_search(G: Group, gamma: np.ndarray, source: np.ndarray, target: np.ndarray) -> int | None:
    """Least gamma with gamma * source[i] * gamma^-1 = target[i] for all i."""
    hits = np.flatnonzero((G.conj[np.ix_(gamma, source)] == target[None, :]).all(axis=1))
    return int(gamma[hits[0]]) if len(hits) else None


def check_assignment_compatibility(bundle: QuadrupleBundle) -> Verdict:
    """At each node: for every conjugation map c_g: H -> K inside H_d, some gamma in
    Gamma_d has alpha_K ∘ c_g = c_gamma ∘ alpha_H.  On each edge x < y: alpha^y_H
    agrees with mu_{x,y} ∘ alpha^x_H up to an inner automorphism of Gamma_y.

    As for families of characters, maps are split into pure conjugations and
    inclusions; composites then follow by multiplying the gammas.
    """
    claim = "assignments commute with conjugation maps up to inner automorphisms"
    G = bundle.parent
    searched = 0
    for d in bundle.poset.objects:
        fam = bundle.diagram.families[d]
        gamma = bundle.groups[d].elements
        w = bundle.witnesses[d]
        for H in fam:
            gens = np.asarray(subgroup_generators(H), dtype=np.int64)
            if not len(gens):
                continue
            alpha_h = G.conj[w[H.mask], gens]
            for g in transversal(G, centralizer(G, H)):
                g = int(g)
                K = H.conjugate(g)
                target = G.conj[w[K.mask], G.conj[g, gens]]
                searched += 1
                if _gamma_search(G, gamma, alpha_h, target) is None:
                    return Verdict.of("assignment_compatibility", False, claim,
                                      {"node": d, "H": H.hex, "K": K.hex, "g": g})
            for K in fam:
                if K.order <= H.order or H.mask & K.mask != H.mask:
                    continue
                target = G.conj[w[K.mask], gens]
                searched += 1
                if _gamma_search(G, gamma, alpha_h, target) is None:
                    return Verdict.of("assignment_compatibility", False, claim,
                                      {"node": d, "H": H.hex, "K": K.hex, "g": 0})
    for x, y in bundle.poset.relations:
        gamma = bundle.groups[y].elements
        for H in bundle.diagram.families[x]:
            gens = np.asarray(subgroup_generators(H), dtype=np.int64)
            if not len(gens):
                continue
            via_x = G.conj[bundle.witnesses[x][H.mask], gens]
            direct = G.conj[bundle.witnesses[y][H.mask], gens]
            searched += 1
            if _gamma_search(G, gamma, via_x, direct) is None:
                return Verdict.of("assignment_compatibility", False, claim,
                                  {"edge": [x, y], "H": H.hex})
    return Verdict.of("assignment_compatibility", True, claim, searches=searched)


# -- factorization ---------------------------------------------------------------------


def check_factorization(V: dict[int, ClassFunction], bundle: QuadrupleBundle) -> Verdict:
    """V_H equals rho_d pulled back along alpha^d_H for every node d and H in H_d."""
    claim = "V restricted to each subfamily equals rho_d composed with the assignment"
    checked = 0
    for d in bundle.poset.objects:
        for H in bundle.diagram.families[d]:
            mine = V[H.mask]
            theirs = bundle.pulled_back(d, H)
            checked += 1
            if mine.degree != theirs.degree:
                return Verdict.of("factorization", False, claim,
                                  {"node": d, "H": H.hex, "kind": "degree",
                                   "left": str(mine.degree), "right": str(theirs.degree)})
            diff = _first_difference(mine, theirs)
            if diff is not None:
                return Verdict.of("factorization", False, claim, {"node": d, "H": H.hex, **diff})
    return Verdict.of("factorization", True, claim, pairs=checked)

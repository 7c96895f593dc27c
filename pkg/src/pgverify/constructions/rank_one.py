"""Star-shaped diagram for families of rank-one subgroups of prime-power order.

Nodes are 1 and one representative d per conjugacy class of prime-order subgroups;
H_d collects the members whose unique order-p subgroup is conjugate to d.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..characters.classfunc import ClassFunction, induce, perm_character, reduced_perm_character
from ..characters.table import character_table, first_fixed_element
from ..errors import NotCharacter
from ..families.family import SubgroupFamily
from ..families.poset import PosetDiagram, SubfamilyDiagram, check_covering, strongly_connected
from ..families.quadruple import (
    QuadrupleBundle,
    check_assignment_compatibility,
    check_compatible_family,
    check_diagram_of_reps,
    conjugation_embedding,
)
from ..groups.core import Group, SubgroupSet, prime_power
from ..groups.subgroups import all_subgroups, as_group, canonical_conjugate, normalizer, omega1, rank
from ..verdict import Verdict, combine


@dataclass
class RankOneData:
    G: Group
    family: SubgroupFamily
    diagram: SubfamilyDiagram
    quadruple: QuadrupleBundle
    classes: dict[str, SubgroupSet]
    m: dict[str, int]
    n: int
    n_d: dict[str, int]
    all_prime_power_rank_one: bool
    full_regular: bool = False


def rank_one_family(G: Group) -> tuple[SubgroupFamily, bool]:
    """Trivial group plus every rank-one subgroup of prime-power order; the flag says
    whether every prime-power subgroup is rank one."""
    members = []
    every = True
    for H in all_subgroups(G):
        if H.order == 1:
            members.append(H)
            continue
        if prime_power(H.order) is None:
            continue
        if rank(H) == 1:
            members.append(H)
        else:
            every = False
    return SubgroupFamily(G, members, "rank one, prime-power order"), every


def build_rank_one_diagram(G: Group, n: int | None = None, *, full_regular: bool = False) -> RankOneData:
    """Gamma_d = N_G(d) carrying n_d Ind_d^{N_G(d)} W, W the reduced regular character of d
    (the full regular character when ``full_regular``); Gamma_1 = 1 carrying n copies of
    the trivial character."""
    family, every = rank_one_family(G)
    prime_subs = {}
    for H in family:
        if H.order > 1 and prime_power(H.order)[1] == 1:
            R = canonical_conjugate(H)
            prime_subs[R.mask] = R
    reps = [prime_subs[m] for m in sorted(prime_subs, key=lambda m: (prime_subs[m].order, m))]
    names = [f"d{i + 1}" for i in range(len(reps))]
    classes = dict(zip(names, reps))
    poset = PosetDiagram(("1", *names), tuple(("1", d) for d in names))

    omega_class = {}
    for H in family:
        if H.order > 1:
            omega_class[H.mask] = canonical_conjugate(omega1(H)).mask
    fams = {"1": SubgroupFamily(G, [G.trivial], "1")}
    for d, R in classes.items():
        fams[d] = SubgroupFamily(G, [G.trivial] + [H for H in family if omega_class.get(H.mask) == R.mask], d)
    diagram = SubfamilyDiagram(poset, fams, family)

    m: dict[str, int] = {}
    chars: dict[str, ClassFunction] = {}
    for d, R in classes.items():
        p = R.order
        N = normalizer(G, R)
        KR, _ = as_group(R)
        W = perm_character(KR, KR.trivial) if full_regular else reduced_perm_character(KR, KR.trivial)
        KN, _ = as_group(N)
        chars[d] = induce(W, KN, conjugation_embedding(R, 0, N))
        m[d] = N.order * (p - 1) // p if not full_regular else N.order
        if chars[d].degree != m[d]:
            raise ValueError(f"degree of the induced character at {d} is not m_d")
    lcm = math.lcm(*m.values()) if m else 1
    if n is None:
        n = lcm
    elif n <= 0 or n % lcm:
        raise ValueError(f"n = {n} is not a positive multiple of every m_d (lcm {lcm})")
    n_d = {d: n // md for d, md in m.items()}

    groups = {"1": G.trivial, **{d: normalizer(G, R) for d, R in classes.items()}}
    K1, _ = as_group(G.trivial)
    reps = {"1": ClassFunction.constant(K1, n), **{d: chars[d] * n_d[d] for d in classes}}
    witnesses: dict[str, dict[int, int]] = {"1": {1: 0}}
    for d, R in classes.items():
        w = {}
        for H in fams[d]:
            if H.order == 1:
                w[H.mask] = 0
                continue
            O = omega1(H)
            w[H.mask] = next(g for g in range(G.order) if O.conjugate(g) == R)
        witnesses[d] = w
    bundle = QuadrupleBundle(diagram, groups, reps, witnesses)
    return RankOneData(G, family, diagram, bundle, classes, m, n, n_d, every, full_regular)


def check_free_family(data: RankOneData) -> Verdict:
    """V_H = rho_d ∘ alpha^d_H is the same for every node containing H, forms a
    compatible family, and is a fixed-point-free character for every nontrivial H."""
    claim = "every V_H is well defined and fixed point free"
    q = data.quadruple
    V: dict[int, ClassFunction] = {}
    for H in data.family:
        nodes = data.diagram.nodes_of(H)
        pulled = [q.pulled_back(d, H) for d in nodes]
        if any(f != pulled[0] for f in pulled[1:]):
            return Verdict.of("free_family", False, claim, {"H": H.hex, "reason": "depends on the node",
                                                           "nodes": nodes})
        V[H.mask] = pulled[0]
    compat = check_compatible_family(V, data.family)
    if not compat.passed:
        return Verdict.of("free_family", False, claim, {"reason": "not compatible", **compat.witness})
    for H in data.family:
        if H.order == 1:
            continue
        f = V[H.mask]
        try:
            character_table(f.group).multiplicities(f)
        except NotCharacter as exc:
            return Verdict.of("free_family", False, claim, {"H": H.hex, "reason": "not a character",
                                                           "irreducible": exc.index})
        hit = first_fixed_element(f)
        if hit is not None:
            _, emb = as_group(H)
            return Verdict.of("free_family", False, claim,
                              {"H": H.hex, "element": int(emb.map[hit[0]]),
                               "fixed_dimension": str(hit[1])})
    return Verdict.of("free_family", True, claim, members=len(data.family))


def verify_rank_one(data: RankOneData) -> Verdict:
    parts = [
        check_covering(data.diagram, data.family),
        strongly_connected(data.diagram, data.family),
        check_diagram_of_reps(data.quadruple),
        check_assignment_compatibility(data.quadruple),
        check_free_family(data),
    ]
    m_ok = all(data.m[d] * data.n_d[d] == data.n for d in data.m)
    deg_ok = all(rho.degree == data.n for rho in data.quadruple.reps.values())
    parts.append(Verdict.of("degree_bookkeeping", m_ok and deg_ok, "n_d m_d = n and every rho_d has degree n",
                            {"m": data.m, "n": data.n}))
    out = combine("rank_one_star_diagram", parts, "the star diagram of rank-one subgroups factors a free family")
    out.details.update(
        nodes=list(data.diagram.poset.objects),
        classes={d: R.hex for d, R in data.classes.items()},
        normalizer_orders={d: data.quadruple.groups[d].order for d in data.classes},
        m=data.m, n=data.n, n_d=data.n_d,
        regular_variant="full" if data.full_regular else "reduced",
        every_prime_power_subgroup_rank_one=data.all_prime_power_rank_one,
    )
    return out

"""The six-case class function on a rank-three p-group with cyclic center, the
subgroup family it lives on, and the quadruple through which it factors."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from ..characters.classfunc import ClassFunction, induce, inner_product, reduced_perm_character, restrict
from ..characters.table import first_fixed_element, is_character
from ..errors import EvenPrime, HypothesisViolation, NoSuchQ, NotCharacter
from ..families.family import SubgroupFamily, family_trivial_intersection
from ..families.poset import SubfamilyDiagram, almost_strongly_connected, check_covering
from ..families.quadruple import (
    QuadrupleBundle,
    check_assignment_compatibility,
    check_compatible_family,
    check_diagram_of_reps,
    check_factorization,
    conjugation_embedding,
    restriction_family,
)
from ..families.types import (
    TypeClassification,
    build_jackson_subfamilies,
    classify_types,
    typeE_max_elementary,
)
from ..groups.catalog import cyclic, direct_product, metacyclic
from ..groups.core import Group, SubgroupSet, prime_power
from ..groups.iso import is_isomorphic
from ..groups.subgroups import (
    all_subgroups,
    as_group,
    canonical_conjugate,
    center,
    centralizer,
    closure,
    conjugating_elements,
    is_elementary_abelian,
    is_normal,
    is_subconjugate,
    local_subgroup,
    normalizer,
    rank,
)
from ..parallel import parallel_map
from ..verdict import Verdict, combine

Z_READING = "the center of Q in the case list is read as Z(G) ∩ Q = <c>"


def hypotheses(G: Group) -> dict[str, bool]:
    pp = G.prime_power()
    out = {"p_group": pp is not None}
    if pp is None:
        return {**out, "odd_prime": False, "rank_three": False, "cyclic_center": False}
    out["odd_prime"] = pp[0] != 2
    out["rank_three"] = rank(G.whole) == 3
    out["cyclic_center"] = center(G).is_cyclic
    return out


def find_normal_Q(G: Group) -> tuple[SubgroupSet, int, int]:
    """Least-bitset normal subgroup Q = C_p x C_p, a generator c of Z(G) ∩ Q, and the
    least element a of Q outside <c>."""
    pp = G.prime_power()
    if pp is None:
        raise HypothesisViolation("p_group")
    p = pp[0]
    if p == 2:
        raise EvenPrime("the prime must be odd")
    if G.whole.is_cyclic:
        raise NoSuchQ("cyclic groups have no C_p x C_p subgroup")
    cands = [S for S in all_subgroups(G, p * p)
             if S.order == p * p and is_elementary_abelian(S) and is_normal(G, S)]
    if not cands:
        raise NoSuchQ("no normal C_p x C_p")
    Q = min(cands, key=lambda S: S.mask)
    ZQ = Q.intersect(center(G))
    c = int(ZQ.elements[1])
    cgroup = closure(G, [c])
    a = int(next(x for x in Q.elements if x not in cgroup))
    return Q, c, a


def jackson_chi(G: Group, Q: SubgroupSet, centralizer_Q: SubgroupSet, *, strict: bool = True
                ) -> ClassFunction:
    """The class function with values
    p(p-1)|G| at 1; 0 on Z(G)-1; -p|G| on Q-<c>; 0 on C_G(Q)-Q;
    -|G| on order-p elements outside C_G(Q); 0 on the other elements outside C_G(Q).
    """
    if strict:
        for name, ok in hypotheses(G).items():
            if not ok:
                raise HypothesisViolation(name)
    p = G.prime_power()[0]
    n = G.order
    Z = center(G).bool_mask
    inQ = Q.bool_mask
    inC = centralizer_Q.bool_mask
    order = G.elt_order
    vals = np.zeros(n, dtype=np.int64)
    rest = np.ones(n, dtype=bool)
    rest[0] = False
    vals[0] = p * (p - 1) * n
    for mask, value in (
        (Z, 0),
        (inQ, -p * n),
        (inC, 0),
        (order == p, -n),
        (order > p, 0),
    ):
        hit = rest & mask
        vals[hit] = value
        rest &= ~mask
    return ClassFunction.from_element_function(G, lambda x: int(vals[x]))


@dataclass
class JacksonData:
    G: Group
    p: int
    Q: SubgroupSet
    c: int
    a: int
    centralizer_Q: SubgroupSet
    chi: ClassFunction
    family: SubgroupFamily
    types: TypeClassification
    e_reps: list[SubgroupSet]
    e_of_member: dict[int, SubgroupSet]
    c_list: list[SubgroupSet]
    diagram: SubfamilyDiagram
    quadruple: QuadrupleBundle | None = None
    n_a: int = 0
    n_e: dict[str, int] = field(default_factory=dict)
    w_chars: dict[str, ClassFunction] = field(default_factory=dict)
    a_char: ClassFunction | None = None


def build_jackson_data(G: Group) -> JacksonData:
    Q, c, a = find_normal_Q(G)
    p = G.prime_power()[0]
    CQ = centralizer(G, Q)
    chi = jackson_chi(G, Q, CQ)
    family = family_trivial_intersection(G, center(G), "trivial intersection with the center")
    types = classify_types(family, Q, CQ)
    reps, of_member = typeE_max_elementary(family, types)
    diagram = build_jackson_subfamilies(family, types, reps, of_member)
    data = JacksonData(G, p, Q, c, a, CQ, chi, family, types, reps, of_member,
                       [E.intersect(CQ) for E in reps], diagram)
    data.quadruple = build_jackson_quadruple(data)
    return data


def _witness_a(data: JacksonData, H: SubgroupSet) -> int:
    G, Q = data.G, data.Q
    if H.mask & Q.mask == 1:
        # any conjugate works for the character; use a fixed class representative
        return int(conjugating_elements(H, canonical_conjugate(H))[0])
    A = closure(G, [data.a])
    for g in range(G.order):
        if H.conjugate(g).intersect(Q) == A:
            return g
    raise ValueError(f"no conjugate of {H.hex} meets Q in <a>")


def _witness_e(data: JacksonData, H: SubgroupSet, E: SubgroupSet, N: SubgroupSet) -> int:
    G, p = data.G, data.p
    order_p = H.elements[G.elt_order[H.elements] == p]
    for g in range(G.order):
        if N.bool_mask[G.conj[g, H.elements]].all() and E.bool_mask[G.conj[g, order_p]].all():
            return g
    raise ValueError(f"no conjugate of {H.hex} has its order-p elements in {E.hex}")


def build_jackson_quadruple(data: JacksonData) -> QuadrupleBundle:
    """Gamma_a = C_G(Q) with n_a Ind_<a>(reduced regular); Gamma_{e_i} = N_G(E_i) with
    n_{e_i} Ind_{E_i}(W_i), W_i = I_{E_i/C_i} + (p-1) I_{E_i/1}."""
    G, p = data.G, data.p
    target = p * (p - 1) * G.order
    groups: dict[str, SubgroupSet] = {}
    reps: dict[str, ClassFunction] = {}
    witnesses: dict[str, dict[int, int]] = {}

    A = closure(G, [data.a])
    KA, _ = as_group(A)
    data.a_char = reduced_perm_character(KA, KA.trivial)
    KC, _ = as_group(data.centralizer_Q)
    ind_a = induce(data.a_char, KC, conjugation_embedding(A, 0, data.centralizer_Q))
    deg_a = ind_a.degree.coeffs[0]
    if target % deg_a:
        raise ValueError("no integer multiplier for the a-node")
    data.n_a = target // deg_a
    groups["a"] = data.centralizer_Q
    reps["a"] = ind_a * data.n_a
    witnesses["a"] = {H.mask: _witness_a(data, H) for H in data.diagram.families["a"]}

    for i, (E, C) in enumerate(zip(data.e_reps, data.c_list)):
        d = f"e{i + 1}"
        N = normalizer(G, E)
        KE, _ = as_group(E)
        W = reduced_perm_character(KE, local_subgroup(C, E)) + reduced_perm_character(KE, KE.trivial) * (p - 1)
        data.w_chars[d] = W
        KN, _ = as_group(N)
        ind_e = induce(W, KN, conjugation_embedding(E, 0, N))
        deg_e = ind_e.degree.coeffs[0]
        if target % deg_e:
            raise ValueError(f"no integer multiplier for node {d}")
        data.n_e[d] = target // deg_e
        groups[d] = N
        reps[d] = ind_e * data.n_e[d]
        witnesses[d] = {H.mask: _witness_e(data, H, E, N) for H in data.diagram.families[d]}
    return QuadrupleBundle(data.diagram, groups, reps, witnesses)


# -- verification sections ---------------------------------------------------------


def verify_chi_values(data: JacksonData) -> Verdict:
    G, p = data.G, data.p
    chi = data.chi
    cgroup = closure(G, [data.c])
    on_q = [int(x) for x in data.Q.elements if x not in cgroup]
    at_one = chi(0).coeffs[0]
    on_q_vals = sorted({str(chi(x)) for x in on_q})
    ok = at_one == p * (p - 1) * G.order and on_q_vals == [str(-p * G.order)]
    return Verdict.of("chi_case_values", ok, "chi(1) = p(p-1)|G| and chi = -p|G| on Q - <c>",
                      {"chi(1)": at_one, "on_Q_minus_c": on_q_vals},
                      chi_at_identity=at_one, value_on_Q_minus_c=on_q_vals[0] if on_q_vals else None,
                      reading=Z_READING)


_STATE: dict = {}


def _multiplicities_job(i: int):
    H = _STATE["members"][i]
    f = restrict(_STATE["chi"], H)
    try:
        return i, is_character(f), None
    except NotCharacter as exc:
        return i, None, (exc.index, str(exc.value))


def verify_restrictions_are_characters(data: JacksonData, jobs: int = 1) -> Verdict:
    """Every restriction to a family member decomposes with nonnegative integer multiplicities."""
    claim = "the restriction of chi to every H in the family is a character"
    members = data.family.members
    _STATE.update(members=members, chi=data.chi)
    results = parallel_map(_multiplicities_job, range(len(members)), jobs)
    table = {}
    canon = {canonical_conjugate(H).mask for H in members}
    for i, mult, err in results:
        H = members[i]
        if err is not None:
            return Verdict.of("chi_restrictions_are_characters", False, claim,
                              {"H": H.hex, "order": H.order, "irreducible": err[0], "inner_product": err[1]})
        if H.mask in canon:
            table[H.hex] = mult
    return Verdict.of("chi_restrictions_are_characters", True, claim, members=len(members),
                      multiplicities=table)


def rank_two_members(data: JacksonData) -> list[SubgroupSet]:
    p = data.p
    return [H for H in data.family if H.order == p * p and is_elementary_abelian(H)]


def verify_no_fixed_vectors(data: JacksonData) -> Verdict:
    """<chi|_E, 1_E> = 0 for every rank-two elementary abelian E in the family.

    Pointwise freeness (no nonidentity element fixing a vector) is reported alongside.
    """
    claim = "<chi|E, 1_E> = 0 for every rank-two elementary abelian E in the family"
    es = rank_two_members(data)
    pointwise = 0
    example = None
    for E in es:
        f = restrict(data.chi, E)
        triv = ClassFunction.trivial(f.group)
        ip = inner_product(f, triv)
        if not ip.is_zero():
            return Verdict.of("chi_no_fixed_vectors_on_rank2", False, claim,
                              {"E": E.hex, "inner_product": str(ip)})
        hit = first_fixed_element(f)
        if hit is None:
            pointwise += 1
        elif example is None:
            _, emb = as_group(E)
            example = {"E": E.hex, "element": int(emb.map[hit[0]]), "fixed_dimension": str(hit[1])}
    return Verdict.of("chi_no_fixed_vectors_on_rank2", True, claim, subgroups=len(es),
                      pointwise_free=pointwise, pointwise_counterexample=example)


def verify_normal_intersection(data: JacksonData) -> Verdict:
    """Members meeting Q lie in C_G(Q) and have a conjugate meeting Q exactly in <a>."""
    claim = "H ∩ Q ≠ 1 implies H ≤ C_G(Q) and Q ∩ gHg^-1 = <a> for some g"
    G, Q = data.G, data.Q
    A = closure(G, [data.a])
    c = data.c
    b = next(int(x) for x in range(G.order) if x not in data.centralizer_Q)
    ac = G.mul(data.a, c)
    b_power = next((k for k in range(1, data.p) if G.conj[G.inv[G.power(b, k)], data.a] == ac), None)
    powers = [G.power(b, i) for i in range(int(G.elt_order[b]))]
    checked = 0
    for H in data.family:
        if H.mask & Q.mask == 1:
            continue
        checked += 1
        if not H <= data.centralizer_Q:
            return Verdict.of("normal_subgroup_intersection", False, claim,
                              {"H": H.hex, "reason": "not inside C_G(Q)"})
        if not any(H.conjugate(g).intersect(Q) == A for g in powers):
            return Verdict.of("normal_subgroup_intersection", False, claim,
                              {"H": H.hex, "reason": "no power of b moves H ∩ Q onto <a>"})
    ok = b_power is not None
    return Verdict.of("normal_subgroup_intersection", ok, claim,
                      {"b": b, "reason": "no power of b conjugates a to ac"},
                      members_meeting_Q=checked, b=b, b_power=b_power)


@lru_cache(maxsize=None)
def _shape_models(p: int, n: int) -> tuple[tuple[str, Group], ...]:
    out = [("direct", direct_product(cyclic(p ** n), cyclic(p)))]
    if n >= 2:
        out.append(("twisted", metacyclic(p, n)))
    return tuple(out)


def subgroup_shape(H: SubgroupSet, K: SubgroupSet, p: int) -> str | None:
    """cyclic, direct (K x C_p) or twisted (K ⋊ C_p, k -> k^(1+p^(n-1))), or None."""
    if H.is_cyclic:
        return "cyclic"
    n = prime_power(K.order)[1] if K.order > 1 else 0
    if n == 0:
        return None
    HG, _ = as_group(H)
    for name, model in _shape_models(p, n):
        if is_isomorphic(HG, model):
            return name
    return None


def verify_subgroup_shapes(data: JacksonData) -> Verdict:
    """Members outside C_G(Q) avoid Q, meet C_G(Q) in a cyclic K of index p, and are
    cyclic, K x C_p, or K ⋊ C_p with the action k -> k^(1+p^(n-1))."""
    claim = "H ≰ C_G(Q) implies K = H ∩ C_G(Q) cyclic and H cyclic, K x C_p or K ⋊ C_p"
    p = data.p
    shapes = {"cyclic": 0, "direct": 0, "twisted": 0}
    for H in data.family:
        if H <= data.centralizer_Q:
            continue
        K = H.intersect(data.centralizer_Q)
        reason = None
        if H.mask & data.Q.mask != 1:
            reason = "meets Q"
        elif not K.is_cyclic:
            reason = "K not cyclic"
        elif H.order != p * K.order:
            reason = "index of K is not p"
        else:
            shape = subgroup_shape(H, K, p)
            if shape is None:
                reason = "no matching shape"
            else:
                shapes[shape] += 1
        if reason:
            return Verdict.of("noncentralizing_subgroup_shapes", False, claim,
                              {"H": H.hex, "order": H.order, "reason": reason})
    return Verdict.of("noncentralizing_subgroup_shapes", True, claim, shapes=shapes,
                      literal_type_reading_divergent=len(data.types.divergent))


def verify_subfamily_connectivity(data: JacksonData) -> Verdict:
    claim = "the diagram of subfamilies is almost strongly connected"
    diagram = data.diagram
    G = data.G
    parts = [almost_strongly_connected(diagram, data.family)]
    covered = diagram.covered()
    uncovered = [H for H in data.family if H.mask not in covered]
    bad = next((H for H in uncovered if not H.is_cyclic), None)
    parts.append(Verdict.of("uncovered_members_cyclic", bad is None,
                            "members outside every subfamily are cyclic",
                            None if bad is None else {"H": bad.hex},
                            uncovered=len(uncovered),
                            uncovered_are_type_B=all("B" in data.types.of(H) for H in uncovered)))
    nodes = diagram.poset.objects
    overlap_bad = None
    for i, x in enumerate(nodes):
        for y in nodes[i + 1:]:
            for m in diagram.families[x].masks & diagram.families[y].masks:
                H = SubgroupSet(G, m)
                if not H.is_cyclic:
                    overlap_bad = {"nodes": [x, y], "H": H.hex}
                    break
            if overlap_bad:
                break
        if overlap_bad:
            break
    parts.append(Verdict.of("overlaps_cyclic", overlap_bad is None,
                            "members shared by two subfamilies are cyclic", overlap_bad))
    reps = data.e_reps
    conj_bad = next(([i, j] for i in range(len(reps)) for j in range(i + 1, len(reps))
                     if canonical_conjugate(reps[i]) == canonical_conjugate(reps[j])), None)
    parts.append(Verdict.of("representatives_distinct", conj_bad is None,
                            "the E_i are pairwise nonconjugate",
                            None if conj_bad is None else {"pair": conj_bad}, count=len(reps)))
    one_bad = None
    for H in data.types.with_tag(data.family, "E"):
        hits = [i for i, E in enumerate(reps) if is_subconjugate(E, H)]
        if len(hits) != 1:
            one_bad = {"H": H.hex, "matches": hits}
            break
    parts.append(Verdict.of("typeE_unique_representative", one_bad is None,
                            "every type-E member contains a conjugate of exactly one E_i", one_bad))
    norm_bad = None
    for i, E in enumerate(reps):
        N = normalizer(G, E)
        for H in diagram.families[f"e{i + 1}"]:
            if not is_subconjugate(H, N):
                norm_bad = {"node": f"e{i + 1}", "H": H.hex}
                break
    parts.append(Verdict.of("members_inside_normalizers", norm_bad is None,
                            "H in H_{e_i} is subconjugate to N_G(E_i)", norm_bad))
    cov = check_covering(diagram, data.family)
    out = combine("subfamilies_almost_strongly_connected", parts, claim)
    out.details.update(type_counts=data.types.counts(), covering_informational=cov.to_dict(),
                       subfamily_sizes={d: len(diagram.families[d]) for d in nodes})
    return out


def _induction_identities(data: JacksonData) -> Verdict:
    """Case values of the induced characters at the nodes."""
    G, p = data.G, data.p
    q = data.quadruple
    problems = None
    for i, (E, C) in enumerate(zip(data.e_reps, data.c_list)):
        d = f"e{i + 1}"
        N = q.groups[d]
        KN, emb_n = as_group(N)
        W = data.w_chars[d]
        ind_plain = induce(W, KN, conjugation_embedding(E, 0, N))
        index = N.order // E.order
        KE, emb_e = as_group(E)
        for local in range(KE.order):
            x = int(emb_e.map[local])
            w = W(local)
            want_w = 0 if (local == 0 or x in C) else -p
            if local != 0 and w != want_w:
                problems = {"node": d, "element": x, "W": str(w), "expected": want_w}
                break
        if problems:
            break
        for local in range(1, KN.order):
            x = int(emb_n.map[local])
            o = int(G.elt_order[x])
            got = ind_plain(local)
            if o == p and x in E:
                want = index * W(int(np.flatnonzero(emb_e.map == x)[0]))
            elif o > p:
                want = 0
            else:
                continue
            if got != want:
                problems = {"node": d, "element": x, "induced": str(got), "expected": str(want)}
                break
        if problems:
            break
    if problems is None:
        KC, emb_c = as_group(data.centralizer_Q)
        A = closure(G, [data.a])
        rho = q.reps["a"]
        for local in range(KC.order):
            x = int(emb_c.map[local])
            if x == 0:
                want = p * (p - 1) * G.order
            elif x in A:
                want = -p * G.order
            else:
                want = 0
            if rho(local) != want:
                problems = {"node": "a", "element": x, "value": str(rho(local)), "expected": want}
                break
    return Verdict.of("induced_case_values", problems is None,
                      "|N:E| chi_W(g) on order-p g in E_i, 0 for order > p; -p|G| on <a> - 1",
                      problems)


def _full_group_identity(data: JacksonData) -> dict:
    """Whether Res chi equals rho_d on all of Gamma_d (informational only)."""
    out = {}
    for d, gam in data.quadruple.groups.items():
        r = restrict(data.chi, gam)
        rho = data.quadruple.reps[d]
        diff = next((int(rep) for rep, a, b in zip(r.partition.representatives, r.values, rho.values)
                     if a != b), None)
        out[d] = "equal" if diff is None else f"differs at local element {diff}"
    return out


def rigid_type_a_members(data: JacksonData) -> list[SubgroupSet]:
    """Nontrivial H <= C_G(Q) with H ∩ Q = 1 and C_G(H) <= C_G(Q).

    For such H the a-node maps of H x <a> and H x <ac> restrict to H through
    conjugations in different cosets of C_G(Q), so no choice of conjugating
    elements makes the a-node assignment compatible.
    """
    G, Q, CQ = data.G, data.Q, data.centralizer_Q
    return [H for H in data.diagram.families["a"]
            if H.order > 1 and H.mask & Q.mask == 1 and centralizer(G, H) <= CQ]


def verify_quadruple_factorization(data: JacksonData) -> Verdict:
    claim = "V_chi factors through the quadruple"
    G, p = data.G, data.p
    q = data.quadruple
    V = restriction_family(data.chi, data.family)
    parts = [
        check_compatible_family(V, data.family),
        check_factorization(V, q),
        check_assignment_compatibility(q),
        check_diagram_of_reps(q),
        _induction_identities(data),
    ]
    target = p * (p - 1) * G.order
    n_ok = data.n_a == p ** 3 and all(
        data.n_e[d] == p * G.order // q.groups[d].order for d in data.n_e)
    deg_ok = all(rho.degree == target for rho in q.reps.values())
    parts.append(Verdict.of("multipliers", n_ok and deg_ok,
                            "n_a = p^3, n_e = p|G|/|N_G(E_i)|, all degrees p(p-1)|G|",
                            {"n_a": data.n_a, "n_e": data.n_e}, n_a=data.n_a, n_e=data.n_e,
                            degree=target))
    out = combine("quadruple_factorization", parts, claim)
    rigid = rigid_type_a_members(data)
    out.details["a_node_obstruction"] = {"count": len(rigid), "first": rigid[0].hex if rigid else None}
    out.details["full_group_identity_informational"] = _full_group_identity(data)
    out.details["group_orders"] = {d: g.order for d, g in q.groups.items()}
    return out


SECTION_ORDER = (
    "chi_case_values",
    "chi_restrictions_are_characters",
    "chi_no_fixed_vectors_on_rank2",
    "normal_subgroup_intersection",
    "noncentralizing_subgroup_shapes",
    "subfamilies_almost_strongly_connected",
    "quadruple_factorization",
)


def run_jackson(G: Group, jobs: int = 1) -> tuple[dict[str, bool], list[Verdict]]:
    """All sections for one group; inapplicable when a hypothesis fails."""
    hyp = hypotheses(G)
    failed = [k for k, v in hyp.items() if not v]
    if failed:
        reason = "hypothesis not met: " + ", ".join(failed)
        return hyp, [Verdict.inapplicable(name, reason) for name in SECTION_ORDER]
    data = build_jackson_data(G)
    sections = [
        verify_chi_values(data),
        verify_restrictions_are_characters(data, jobs),
        verify_no_fixed_vectors(data),
        verify_normal_intersection(data),
        verify_subgroup_shapes(data),
        verify_subfamily_connectivity(data),
        verify_quadruple_factorization(data),
    ]
    return hyp, sections

import dataclasses

import pytest

from conftest import catalog_group
from frozen import CHI_AT_ONE, CHI_ON_Q, N_A, N_E, NORMALIZER_OF_E, ORDER, P
from perturb import corrupt_chi, scale_rep
from pgverify.characters import ClassFunction, inner_product, is_character, restrict
from pgverify.constructions import (
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
from pgverify.constructions.jackson import subgroup_shape
from pgverify.errors import HypothesisViolation, NoSuchQ
from pgverify.families import (
    check_assignment_compatibility,
    check_compatible_family,
    check_factorization,
    poset_DH,
    rank_two_elementary,
    restriction_family,
)
from pgverify.groups import as_group, center, centralizer, is_normal, is_subconjugate, normalizer, rank


def case_formula(G, Q, CQ, p, x):
    """Element-wise reference for the six cases."""
    n = G.order
    if x == 0:
        return p * (p - 1) * n
    if x in center(G):
        return 0
    if x in Q:
        return -p * n
    if x in CQ:
        return 0
    return -n if G.elt_order[x] == p else 0


@pytest.mark.parametrize("spec, expected", [
    ("extraspecial5:3", dict(p_group=True, odd_prime=True, rank_three=True, cyclic_center=True)),
    ("cyclic:9", dict(p_group=True, odd_prime=True, rank_three=False, cyclic_center=True)),
    ("product:cyclic:3,heisenberg:3", dict(p_group=True, odd_prime=True, rank_three=True, cyclic_center=False)),
    ("semidirect:3;1,1,0;0,1,1;0,0,1", dict(p_group=True, odd_prime=True, rank_three=True, cyclic_center=True)),
])
def test_hypotheses(spec, expected):
    assert hypotheses(catalog_group(spec)) == expected


def test_inapplicable_groups_give_no_failures():
    hyp, sections = run_jackson(catalog_group("cyclic:9"))
    assert not hyp["rank_three"]
    assert {v.status for v in sections} == {"inapplicable"}


def test_normal_Q(jackson):
    G, Q = jackson.G, jackson.Q
    assert Q.order == 9 and is_normal(G, Q) and center(G) <= Q
    assert G.order // centralizer(G, Q).order == P
    with pytest.raises(NoSuchQ):
        find_normal_Q(catalog_group("cyclic:9"))
    with pytest.raises(HypothesisViolation):
        H = catalog_group("heisenberg:3")
        Qh, _, _ = find_normal_Q(H)
        jackson_chi(H, Qh, centralizer(H, Qh))


def test_chi_matches_case_formula(jackson):
    G, chi = jackson.G, jackson.chi
    vals = chi.element_values()
    for x in range(G.order):
        assert vals[x] == case_formula(G, jackson.Q, jackson.centralizer_Q, P, x)
    assert chi(0) == CHI_AT_ONE == 1458
    assert chi(jackson.a) == CHI_ON_Q == -729
    assert chi(jackson.c) == 0
    v = verify_chi_values(jackson)
    assert v.passed and v.details["chi_at_identity"] == 1458


def test_restrictions_are_characters(jackson):
    v = verify_restrictions_are_characters(jackson)
    assert v.passed and v.details["members"] == 481
    T = jackson.G.trivial
    assert is_character(restrict(jackson.chi, T)) == [1458]


def test_no_trivial_constituent_on_rank_two(jackson):
    v = verify_no_fixed_vectors(jackson)
    assert v.passed and v.details["subgroups"] == 360
    E = next(H for H in jackson.family if H.order == 9 and rank(H) == 2)
    f = restrict(jackson.chi, E)
    assert inner_product(f, ClassFunction.trivial(f.group)) == 0


def test_normal_intersection_and_shapes(jackson):
    assert verify_normal_intersection(jackson).passed
    v = verify_subgroup_shapes(jackson)
    assert v.passed
    assert v.details["shapes"] == {"cyclic": 81, "direct": 324, "twisted": 0}
    for H in jackson.family:
        if H.mask & jackson.Q.mask != 1:
            assert "A" in jackson.types.of(H)
        if H.order == 9 and rank(H) == 2 and not H <= jackson.centralizer_Q:
            assert subgroup_shape(H, H.intersect(jackson.centralizer_Q), P) == "direct"


def test_type_structure(jackson):
    fam, types, CQ = jackson.family, jackson.types, jackson.centralizer_Q
    for H in fam:
        assert ("A" in types.of(H)) == (H <= CQ)
        if not H <= CQ and not H.is_cyclic:
            assert len(rank_two_elementary(H)) == 1
    E = types.with_tag(fam, "E")
    for H in E:
        assert sum(is_subconjugate(Ei, H) for Ei in jackson.e_reps) == 1
    a_family = jackson.diagram.families["a"]
    assert all(H in a_family for H in fam if H <= CQ)


def test_subfamily_membership(jackson):
    diagram = jackson.diagram
    for i, Ei in enumerate(jackson.e_reps):
        N = normalizer(jackson.G, Ei)
        assert N.order == NORMALIZER_OF_E
        assert all(is_subconjugate(H, N) for H in diagram.families[f"e{i + 1}"])
    inside_e = {H.mask for H in jackson.types.with_tag(jackson.family, "E")}
    for H in jackson.family:
        nodes = poset_DH(diagram, H).objects
        if H <= jackson.centralizer_Q and not H.is_cyclic and not any(
                H.mask & m == H.mask for m in inside_e):
            assert nodes == ("a",)
        if "C" in jackson.types.of(H):
            assert len(nodes) >= 2
    assert verify_subfamily_connectivity(jackson).passed


def test_quadruple(jackson):
    q = jackson.quadruple
    assert jackson.n_a == N_A == 27
    assert set(jackson.n_e.values()) == {N_E}
    assert all(rho.degree == CHI_AT_ONE for rho in q.reps.values())
    for W in jackson.w_chars.values():
        assert W.degree == (P - 1) + (P - 1) * (P * P - 1)
    V = restriction_family(jackson.chi, jackson.family)
    assert check_compatible_family(V, jackson.family).passed
    assert check_factorization(V, q).passed
    assert check_assignment_compatibility(q).passed
    v = verify_quadruple_factorization(jackson)
    assert v.passed
    assert v.details["group_orders"]["a"] == centralizer(jackson.G, jackson.Q).order


def test_w_characters(jackson):
    for i, (E, C) in enumerate(zip(jackson.e_reps, jackson.c_list)):
        W = jackson.w_chars[f"e{i + 1}"]
        K, emb = as_group(E)
        for local in range(1, K.order):
            x = int(emb.map[local])
            assert W(local) == (0 if x in C else -P)
    a = jackson.a_char
    assert a(0) == P - 1


def test_corrupted_chi_is_caught(jackson):
    bad, x = corrupt_chi(jackson)
    v = verify_restrictions_are_characters(bad)
    assert v.failed and v.witness["order"] == P
    assert verify_chi_values(bad).passed
    assert verify_no_fixed_vectors(bad).passed
    f = verify_quadruple_factorization(bad)
    assert f.failed and f.witness["part"] == "factorization"


def test_scaled_rep_is_caught(jackson):
    bad = dataclasses.replace(jackson, quadruple=scale_rep(jackson.quadruple, "e1"))
    v = verify_quadruple_factorization(bad)
    assert v.failed and v.witness["part"] == "factorization" and v.witness["node"] == "e1"


def test_wreath_product_a_node_obstruction():
    """C3 wr C3 meets every hypothesis, yet its a-node assignment cannot be compatible."""
    import oracles
    from pgverify.constructions.jackson import build_jackson_data, rigid_type_a_members

    data = build_jackson_data(catalog_group("semidirect:3;1,1,0;0,1,1;0,0,1"))
    v = verify_quadruple_factorization(data)
    assert v.failed and v.witness["part"] == "assignment_compatibility" and v.witness["node"] == "a"
    rigid = rigid_type_a_members(data)
    assert len(rigid) == 9 and v.details["a_node_obstruction"]["count"] == 9
    assert rigid_type_a_members(build_jackson_data(catalog_group("extraspecial5:3"))) == []

    mult = oracles.table(data.G)
    inv = oracles.inverses(mult)
    n = len(mult)
    Q = set(int(x) for x in data.Q.elements)
    CQ = [int(x) for x in data.centralizer_Q.elements]
    a, c = data.a, data.c
    A = oracles.generated(mult, [a])

    def conj(g, x):
        return mult[mult[g][x]][inv[g]]

    H = [int(x) for x in rigid[0].elements]
    for gen in (a, mult[a][c]):
        assert oracles.generated(mult, H + [gen]) in {frozenset(x.elements.tolist()) for x in data.family}
    # every admissible conjugator for H x <a> and for H x <ac>
    w1s = [g for g in range(n) if conj(g, a) in A]
    w2s = [g for g in range(n) if conj(g, mult[a][c]) in A]
    assert all(conj(g, a) in Q for g in w1s)
    images1 = {tuple(conj(w, h) for h in H) for w in w1s}
    images2 = {tuple(conj(w, h) for h in H) for w in w2s}
    moved1 = {tuple(conj(g, x) for x in img) for img in images1 for g in CQ}
    assert not moved1 & images2

import cmath
import math
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracles
from conftest import MEDIUM, SMALL, catalog_group
from frozen import DEGREES
from pgverify.characters import (
    ClassFunction,
    character_table,
    dixon_prime,
    first_fixed_element,
    fixed_dimensions,
    fixed_point_free,
    induce,
    inner_product,
    is_character,
    perm_character,
    pullback,
    reduced_perm_character,
    restrict,
)
from pgverify.errors import GroupMismatch, NotCharacter
from pgverify.families import conjugation_embedding
from pgverify.groups import all_subgroups, as_group, conjugacy_classes, cyclic


@pytest.mark.parametrize("spec", list(DEGREES))
def test_table_exact_and_degrees(spec):
    G = catalog_group(spec)
    T = character_table(G)
    assert all(T.check().values())
    assert dict(Counter(T.degrees)) == DEGREES[spec]
    assert sum(d * d for d in T.degrees) == G.order
    assert len(T) == len(conjugacy_classes(G))


@pytest.mark.parametrize("spec", SMALL + MEDIUM)
def test_table_numeric_orthogonality(spec):
    G = catalog_group(spec)
    T = character_table(G)
    sizes = np.array(conjugacy_classes(G).sizes)
    X = np.array([[complex(v) for v in chi.values] for chi in T.irreducibles])
    gram = (X * sizes) @ X.conj().T / G.order
    assert np.allclose(gram, np.eye(len(T)), atol=1e-9)
    cols = X.conj().T @ X
    assert np.allclose(cols, np.diag(G.order / sizes), atol=1e-9)


@pytest.mark.parametrize("spec", SMALL + MEDIUM)
def test_linear_characters_count_abelianization(spec):
    G = catalog_group(spec)
    mult = oracles.table(G)
    inv = oracles.inverses(mult)
    comms = {mult[mult[a][b]][mult[inv[a]][inv[b]]] for a in range(G.order) for b in range(G.order)}
    derived = oracles.generated(mult, sorted(comms))
    linear = sum(1 for d in character_table(G).degrees if d == 1)
    assert linear == G.order // len(derived)


@pytest.mark.parametrize("n", [3, 9, 27])
def test_cyclic_table_matches_formula(n):
    G = cyclic(n)
    assert all(int(G.mult[1, x]) == (x + 1) % n for x in range(n))
    T = character_table(G)
    part = conjugacy_classes(G)
    got = {tuple(np.round([complex(chi(x)) for x in range(n)], 9)) for chi in T.irreducibles}
    want = {tuple(np.round(row, 9)) for row in oracles.cyclic_table(n)}
    assert got == want
    assert len(part) == n


def test_cyclic3_rows():
    T = character_table(cyclic(3))
    rows = [[str(v) for v in chi.values] for chi in T.irreducibles]
    assert rows == [["1", "-1-z3", "z3"], ["1", "z3", "-1-z3"], ["1", "1", "1"]]


def test_heisenberg_irreducibles_orthonormal():
    T = character_table(catalog_group("heisenberg:3"))
    for i, a in enumerate(T.irreducibles):
        for j, b in enumerate(T.irreducibles):
            assert inner_product(a, b) == (1 if i == j else 0)


def test_not_a_character_on_cyclic3():
    G = cyclic(3)
    f = ClassFunction(G, [1, 2, 2])
    T = character_table(G)
    trivial_index = next(i for i, chi in enumerate(T.irreducibles) if chi == ClassFunction.trivial(G))
    assert T.inner_products(f)[trivial_index] == Fraction(5, 3)
    with pytest.raises(NotCharacter):
        T.multiplicities(f)


def test_dixon_prime():
    for order, e in [(3, 3), (27, 3), (27, 27), (243, 3)]:
        q = dixon_prime(order, e)
        assert q % e == 1 and q > 2 * math.isqrt(order)
        assert all(q % k for k in range(2, math.isqrt(q) + 1))


def test_class_function_basics():
    G = catalog_group("heisenberg:3")
    reg = ClassFunction.regular(G)
    assert reg.degree == 27
    T = character_table(G)
    assert T.multiplicities(reg) == T.degrees
    f = ClassFunction.parse(G, reg.serialize())
    assert f == reg and hash(f) == hash(reg)
    assert reg.with_value(1, 5) != reg
    with pytest.raises(ValueError):
        ClassFunction.from_element_function(G, lambda x: x)
    with pytest.raises(GroupMismatch):
        inner_product(reg, ClassFunction.trivial(cyclic(3)))


@pytest.mark.parametrize("spec", ["cyclic:9", "elemab:3,2", "heisenberg:3", "metacyclic:3,2"])
def test_perm_character_counts_fixed_cosets(spec):
    G = catalog_group(spec)
    mult = oracles.table(G)
    for S in all_subgroups(G):
        f = perm_character(G, S)
        H = {int(x) for x in S.elements}
        for g in range(G.order):
            fixed = len(oracles.fixed_cosets(mult, H, oracles.generated(mult, [g])))
            assert f(g) == fixed


def _random_class_function(G, data, lo=-4, hi=4):
    n = len(conjugacy_classes(G))
    return ClassFunction(G, data.draw(st.lists(st.integers(lo, hi), min_size=n, max_size=n)))


groups_small = st.sampled_from(["cyclic:9", "elemab:3,2", "heisenberg:3", "metacyclic:3,2", "elemab:3,3"])


@given(groups_small, st.data())
def test_frobenius_reciprocity(spec, data):
    G = catalog_group(spec)
    subs = all_subgroups(G)
    S = subs[data.draw(st.integers(0, len(subs) - 1))]
    K, emb = as_group(S)
    f = _random_class_function(K, data)
    g = _random_class_function(G, data)
    assert inner_product(induce(f, G, emb), g) == inner_product(f, restrict(g, S))
    assert induce(f, G, emb).degree == f.degree * (G.order // S.order)


@given(groups_small, st.data())
def test_restriction_is_conjugation_invariant(spec, data):
    G = catalog_group(spec)
    subs = all_subgroups(G)
    S = subs[data.draw(st.integers(0, len(subs) - 1))]
    x = data.draw(st.integers(0, G.order - 1))
    T = S.conjugate(x)
    chi = _random_class_function(G, data)
    emb = conjugation_embedding(S, x, T)
    assert pullback(restrict(chi, T), emb) == restrict(chi, S)


@given(groups_small, st.data())
def test_fixed_point_free_iff_no_trivial_on_cyclic_subgroups(spec, data):
    G = catalog_group(spec)
    T = character_table(G)
    mults = data.draw(st.lists(st.integers(0, 2), min_size=len(T), max_size=len(T)).filter(any))
    chi = sum((c * m for c, m in zip(T.irreducibles[1:], mults[1:])), T.irreducibles[0] * mults[0])
    by_cyclic = all(
        inner_product(restrict(chi, C), ClassFunction.trivial(as_group(C)[0])) == 0
        for C in all_subgroups(G) if C.order > 1 and C.is_cyclic
    )
    assert fixed_point_free(chi) == by_cyclic
    assert (first_fixed_element(chi) is None) == by_cyclic


def test_reduced_regular_of_prime_cyclic_is_free():
    C = cyclic(3)
    W = reduced_perm_character(C, C.trivial)
    assert is_character(W) == [1, 1, 0]
    assert fixed_point_free(W)
    assert fixed_dimensions(perm_character(C, C.trivial)) == {0: 3, 1: 1, 2: 1}


def test_table_serialization_stable():
    G = catalog_group("heisenberg:3")
    text = character_table(G).serialize()
    assert text == character_table(catalog_group("heisenberg:3")).serialize()
    assert text.count("conductor 3") == 11

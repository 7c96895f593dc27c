import cmath
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from pgverify.characters import Cyclotomic, cyclotomic_polynomial, totient

CONDUCTORS = [1, 3, 9, 27]


@st.composite
def cyclotomics(draw, m=None):
    m = m or draw(st.sampled_from(CONDUCTORS))
    coeffs = draw(st.lists(st.integers(-20, 20), min_size=m, max_size=m))
    den = draw(st.integers(1, 12))
    return Cyclotomic.from_exponent_counts(m, coeffs) / den


def close(a, b):
    return abs(complex(a) - complex(b)) < 1e-9


def test_totient_and_polynomials():
    assert [totient(m) for m in (1, 3, 9, 27)] == [1, 2, 6, 18]
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(9) == (1, 0, 0, 1, 0, 0, 1)


def test_root_of_unity_relation():
    z = Cyclotomic.root_of_unity(3)
    assert z * z * z == 1
    assert 1 + z + z * z == 0
    assert str(z * z) == "-1-z3"


def test_values_agree_across_conductors():
    z3 = Cyclotomic.root_of_unity(3)
    z9 = Cyclotomic.root_of_unity(9)
    assert z9 * z9 * z9 == z3
    assert hash(Cyclotomic.from_rational(Fraction(5, 3), 9)) == hash(Fraction(5, 3))


@given(cyclotomics(9), cyclotomics(9), cyclotomics(9))
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == 0
    assert close(a * b, complex(a) * complex(b))


@given(cyclotomics())
def test_conjugation_matches_complex(a):
    assert close(a.conjugate(), complex(a).conjugate())
    assert a.conjugate().conjugate() == a
    n = a * a.conjugate()
    assert abs(complex(n).imag) < 1e-9


@given(cyclotomics(27), st.sampled_from([1, 2, 4, 5, 7, 8, 10, 26]))
def test_galois_is_ring_map(a, k):
    b = a * a + 3
    assert b.galois(k) == a.galois(k) * a.galois(k) + 3
    if a.is_rational():
        assert a.galois(k) == a


@given(cyclotomics())
def test_serialize_round_trip(a):
    assert Cyclotomic.parse(a.m, a.serialize()) == a


@given(cyclotomics(3))
def test_lift_and_descend(a):
    up = a.lift(27)
    assert up == a and up.m == 27
    assert up.descend(3) == a


def test_parse_rejects_wrong_length():
    with pytest.raises(ValueError):
        Cyclotomic.parse(9, "1 2")


def test_rationals():
    q = Cyclotomic.from_rational(Fraction(-7, 4), 9)
    assert q.is_rational() and not q.is_rational_integer()
    assert q.to_fraction() == Fraction(-7, 4)
    with pytest.raises(ValueError):
        Cyclotomic.root_of_unity(9).to_fraction()
    assert close(Cyclotomic.root_of_unity(27, 5), cmath.exp(2j * cmath.pi * 5 / 27))

import random

import pytest

from prymsplit import (
    QQ,
    InvalidFieldError,
    UnsupportedFieldError,
    build_extension,
    quadratic_character,
)
from prymsplit.fields import embedding, is_irreducible


def test_prime_field_descriptor():
    field = build_extension(7, 1)
    assert field.describe() == {"kind": "prime-field", "p": 7, "k": 1}
    assert field.modulus is None


def test_extension_modulus_found_by_scan():
    field = build_extension(5, 2)
    # the scan tries x^2, x^2+1, x^2+2, ... and the first two have roots
    assert field.modulus == (2, 0, 1)
    assert all((x * x + 2) % 5 != 0 for x in range(5))


def test_characteristic_two_rejected():
    with pytest.raises(InvalidFieldError):
        build_extension(2, 3)
    with pytest.raises(InvalidFieldError):
        build_extension(2)


def test_composite_rejected():
    with pytest.raises(InvalidFieldError):
        build_extension(15)


def test_supplied_modulus_checked():
    from prymsplit.fields import ExtensionField

    with pytest.raises(InvalidFieldError):
        ExtensionField(5, 2, modulus=[4, 0, 1])  # x^2 + 4 = (x-1)(x+1)
    field = ExtensionField(5, 2, modulus=[2, 0, 1])
    assert field.q == 25


def test_irreducibility_gcd_test():
    assert is_irreducible([2, 0, 1], 5)
    assert not is_irreducible([4, 0, 1], 5)
    assert is_irreducible([1, 2, 0, 1], 3)  # x^3 - x + 1 has no roots mod 3
    assert not is_irreducible([1, 1, 0, 1], 3)  # 1 is a root
    assert not is_irreducible([0, 0, 0, 1], 3)


def test_quadratic_character_values():
    field = build_extension(7)
    assert quadratic_character(field, 0) == 0
    assert quadratic_character(field, 4) == 1
    # squares mod 7 are {1, 2, 4} by enumeration
    squares = {(t * t) % 7 for t in range(1, 7)}
    assert squares == {1, 2, 4}
    assert quadratic_character(field, 3) == -1


def test_quadratic_character_rejects_rationals():
    with pytest.raises(UnsupportedFieldError):
        quadratic_character(QQ, 4)


@pytest.mark.parametrize("p,k", [(3, 1), (7, 1), (5, 2), (3, 3), (7, 3)])
def test_square_count_exhaustive(p, k):
    field = build_extension(p, k)
    assert field.q <= 343
    plus = sum(1 for v in range(1, field.q) if field.chi(v) == 1)
    assert plus == (field.q - 1) // 2


@pytest.mark.parametrize("p,k", [(5, 2), (3, 3), (7, 3)])
def test_inverse_exhaustive_small(p, k):
    field = build_extension(p, k)
    for a in range(1, field.q):
        assert field.mul(a, field.inv(a)) == field.one


def test_inverse_random_large():
    field = build_extension(13, 3)
    rng = random.Random(1)
    for _ in range(2000):
        a = field.random_nonzero(rng)
        assert field.mul(a, field.inv(a)) == field.one


def test_character_multiplicative_many():
    rng = random.Random(2)
    for p, k in ((7, 1), (5, 2), (11, 2), (13, 3)):
        field = build_extension(p, k)
        for _ in range(2600):
            a = field.random_nonzero(rng)
            b = field.random_nonzero(rng)
            assert field.chi(field.mul(a, b)) == field.chi(a) * field.chi(b)


def test_character_matches_euler_criterion():
    rng = random.Random(3)
    for p, k in ((7, 1), (5, 2), (3, 3)):
        field = build_extension(p, k)
        for a in range(field.q):
            assert field.chi(a) == field.euler_character(a)


@pytest.mark.parametrize("p,k", [(5, 1), (5, 2), (3, 3), (13, 2)])
def test_field_axioms_random(p, k):
    field = build_extension(p, k)
    rng = random.Random(4)
    for _ in range(500):
        a, b, c = (field.random_element(rng) for _ in range(3))
        assert field.add(a, field.add(b, c)) == field.add(field.add(a, b), c)
        assert field.mul(a, field.mul(b, c)) == field.mul(field.mul(a, b), c)
        assert field.mul(a, field.add(b, c)) == field.add(field.mul(a, b), field.mul(a, c))
        assert field.add(a, field.neg(a)) == field.zero
        assert field.sub(a, b) == field.add(a, field.neg(b))


def test_rational_field_elements_are_reduced_fractions():
    from fractions import Fraction

    x = QQ.div(QQ.from_int(6), QQ.from_int(-4))
    assert x == Fraction(-3, 2)
    assert x.denominator == 2  # positive denominator, reduced


def test_embedding_is_a_field_homomorphism():
    small = build_extension(3, 2)
    big = build_extension(3, 4)
    table = embedding(small, big)
    rng = random.Random(5)
    for _ in range(400):
        a, b = (small.random_element(rng) for _ in range(2))
        assert table[small.add(a, b)] == big.add(table[a], table[b])
        assert table[small.mul(a, b)] == big.mul(table[a], table[b])
    assert table[small.one] == big.one


def test_embedding_degree_mismatch():
    with pytest.raises(UnsupportedFieldError):
        embedding(build_extension(3, 2), build_extension(3, 3))


def test_build_extension_deterministic_and_cached():
    f1 = build_extension(11, 2)
    f2 = build_extension(11, 2)
    assert f1 is f2
    assert f1.modulus == build_extension(11, 2, 0).modulus

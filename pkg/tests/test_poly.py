import random
from fractions import Fraction

import pytest

from prymsplit import NEG_INF, BinaryForm, DegenerateInputError, QQ, UniPoly, build_extension, poly_gcd
from helpers import random_binary_form, random_unipoly

F7 = build_extension(7)


def test_degree_sentinel():
    zero = UniPoly.zero(QQ)
    assert zero.degree == NEG_INF
    p = UniPoly.from_ints(QQ, [1, 2])
    # deg(pq) = deg p + deg q holds formally for the zero polynomial
    assert (zero * p).degree == zero.degree + p.degree


def test_trailing_zeros_trimmed():
    p = UniPoly.from_ints(QQ, [1, 2, 0, 0])
    assert p.coeffs == (Fraction(1), Fraction(2))
    assert p.degree == 1


def test_arithmetic_and_eval():
    rng = random.Random(0)
    for field in (QQ, F7, build_extension(5, 2)):
        for _ in range(40):
            p = random_unipoly(field, rng, 4)
            q = random_unipoly(field, rng, 3)
            x = field.random_element(rng)
            lhs = (p * q).eval(x)
            rhs = field.mul(p.eval(x), q.eval(x))
            assert lhs == rhs
            assert (p + q).eval(x) == field.add(p.eval(x), q.eval(x))
            assert (p - q).eval(x) == field.sub(p.eval(x), q.eval(x))


def test_divmod_invariant():
    rng = random.Random(1)
    for field in (QQ, F7):
        for _ in range(40):
            p = random_unipoly(field, rng, 6)
            q = random_unipoly(field, rng, 3)
            if q.is_zero():
                continue
            quo, rem = p.divmod(q)
            assert quo * q + rem == p
            assert rem.degree < q.degree or rem.is_zero()


def test_gcd_of_multiples():
    rng = random.Random(2)
    for _ in range(30):
        g = random_unipoly(F7, rng, 2)
        if g.is_zero():
            continue
        a = g * random_unipoly(F7, rng, 2)
        b = g * random_unipoly(F7, rng, 3)
        if a.is_zero() or b.is_zero():
            continue
        d = poly_gcd(a, b)
        assert d.degree >= g.degree
        assert a.divmod(d)[1].is_zero()
        assert b.divmod(d)[1].is_zero()


def test_binary_form_length_checked():
    with pytest.raises(ValueError):
        BinaryForm.from_ints(QQ, 2, [1, 2])


def test_binary_form_mul_matches_eval():
    rng = random.Random(3)
    for field in (QQ, F7):
        for _ in range(30):
            a = random_binary_form(field, rng, 2)
            b = random_binary_form(field, rng, 2)
            x, z = field.random_element(rng), field.random_element(rng)
            assert (a * b).eval(x, z) == field.mul(a.eval(x, z), b.eval(x, z))


def test_dehomogenize_homogenize_round_trip():
    rng = random.Random(4)
    for _ in range(20):
        form = random_binary_form(F7, rng, 4)
        if form.is_zero():
            continue
        back = BinaryForm.homogenize(form.dehomogenize(), 4)
        assert back == form


def test_euler_identity_for_partials():
    # n * F = x * F_x + z * F_z
    rng = random.Random(5)
    for field in (QQ, build_extension(11)):
        for _ in range(20):
            form = random_binary_form(field, rng, 4)
            x, z = field.random_element(rng), field.random_element(rng)
            lhs = field.mul(field.from_int(4), form.eval(x, z))
            rhs = field.add(
                field.mul(x, form.dx().eval(x, z)), field.mul(z, form.dz().eval(x, z))
            )
            assert lhs == rhs


class TestSquarefree:
    def test_double_roots_at_zero_and_infinity(self):
        assert not BinaryForm.from_ints(QQ, 4, [0, 0, 1, 0, 0]).is_squarefree()

    def test_visible_distinct_roots(self):
        # xz(x-z)(x+z) = x^3 z - x z^3
        assert BinaryForm.from_ints(QQ, 4, [0, 1, 0, -1, 0]).is_squarefree()

    def test_double_affine_root(self):
        # (x - z)^2 x z = x^3 z - 2 x^2 z^2 + x z^3
        assert not BinaryForm.from_ints(QQ, 4, [0, 1, -2, 1, 0]).is_squarefree()

    def test_char_five_quartic(self):
        field = build_extension(5)
        form = BinaryForm.from_ints(field, 4, [1, 0, 0, 1, 0])  # x^4 + x z^3
        # oracle: exhaustive multiplicity check over F_5 and F_25
        for ext in (field, build_extension(5, 2)):
            poly = [1 if i in (1, 4) else 0 for i in range(5)]  # x + x^4
            for r in range(ext.q):
                value = ext.zero
                deriv = ext.zero
                for i, c in enumerate(poly):
                    if c:
                        value = ext.add(value, ext.pow(r, i))
                for i, c in enumerate(poly):
                    if c and i >= 1:
                        deriv = ext.add(deriv, ext.mul(ext.from_int(i), ext.pow(r, i - 1)))
                assert not (value == ext.zero and deriv == ext.zero)
        assert form.is_squarefree()

    def test_pth_power_detected_in_char_p(self):
        field = build_extension(5)
        # x^5 + z^5 = (x + z)^5 over F_5
        form = BinaryForm.from_ints(field, 5, [1, 0, 0, 0, 0, 1])
        assert not form.is_squarefree()

    def test_simple_root_at_infinity_ok(self):
        # z * x * (x - z) * (x + z): c_0 = 0 only
        form = BinaryForm.from_ints(QQ, 4, [0, 1, 0, -1, 0])
        assert form.is_squarefree()

    def test_zero_form_rejected(self):
        with pytest.raises(DegenerateInputError):
            BinaryForm.from_ints(QQ, 3, [0, 0, 0, 0]).is_squarefree()

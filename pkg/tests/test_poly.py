import random

from fractions import Fraction

import pytest

from cdgmf.fields import QQ, PrimeField, FieldError, field_from_token, field_to_token
from cdgmf.poly import Poly, poly_divmod, poly_gcd, poly_divides, poly_arith


def P(field, *coeffs):
    return Poly(field, coeffs)


def test_zero_and_trim():
    z = P(QQ, 0, 0, 0)
    assert z.is_zero
    assert z.degree == -1
    p = P(QQ, 1, 0, 2, 0)
    assert p.coeffs == (Fraction(1), Fraction(0), Fraction(2))


def test_gcd_common_factor_by_inspection():
    # gcd(x^2 - 1, x - 1) = x - 1 over Q
    a = P(QQ, -1, 0, 1)
    b = P(QQ, -1, 1)
    assert poly_gcd(a, b) == b.monic()


def test_divmod_x_cubed_by_x():
    q, r = poly_divmod(P(QQ, 0, 0, 0, 1), P(QQ, 0, 1))
    assert q == P(QQ, 0, 0, 1)
    assert r.is_zero


def test_gcd_over_f5():
    # Oracle first: x = -2 is a root of x^2 + 1 over F_5 since (-2)^2 + 1 = 5 = 0.
    f5 = PrimeField(5)
    a = P(f5, 1, 0, 1)
    b = P(f5, 2, 1)
    assert a.evaluate(f5.neg(2)) == 0
    assert poly_gcd(a, b) == b.monic()
    assert b.monic() == b  # x + 2 is already monic


def test_divmod_invariants_random():
    rng = random.Random(7)
    for field in (QQ, PrimeField(5), PrimeField(2)):
        for _ in range(120):
            a = Poly(field, [field.random(rng) for _ in range(rng.randrange(0, 6))])
            b = Poly(field, [field.random(rng) for _ in range(rng.randrange(1, 5))])
            if b.is_zero:
                continue
            q, r = poly_divmod(a, b)
            assert q * b + r == a
            assert r.is_zero or r.degree < b.degree


def test_gcd_properties_random():
    rng = random.Random(21)
    for field in (QQ, PrimeField(7)):
        for _ in range(60):
            a = Poly(field, [field.random(rng) for _ in range(rng.randrange(0, 5))])
            b = Poly(field, [field.random(rng) for _ in range(rng.randrange(0, 5))])
            g = poly_gcd(a, b)
            if a.is_zero and b.is_zero:
                assert g.is_zero
                continue
            assert g.leading() == field.one()
            assert poly_divides(g, a) and poly_divides(g, b)


def test_divide_by_zero_raises():
    with pytest.raises(ZeroDivisionError):
        poly_divmod(P(QQ, 1), Poly.zero(QQ))


def test_poly_arith_dispatch():
    a, b = P(QQ, 0, 1), P(QQ, 1, 1)
    assert poly_arith(a, b, "add") == P(QQ, 1, 2)
    assert poly_arith(a, b, "mul") == P(QQ, 0, 1, 1)
    assert poly_arith(a, b, "divmod") == (P(QQ, 1), P(QQ, -1))
    assert poly_arith(a, b, "gcd") == Poly.one(QQ)
    with pytest.raises(ValueError):
        poly_arith(a, b, "pow")


def test_evaluate_horner():
    p = P(QQ, 2, 0, 1)  # 2 + x^2
    assert p.evaluate(3) == Fraction(11)


def test_field_tokens_roundtrip():
    for tok in ("Q", "Fp:5", "Fp:2", "Fp:101"):
        assert field_to_token(field_from_token(tok)) == tok
    with pytest.raises(FieldError):
        field_from_token("Fp:4")
    with pytest.raises(FieldError):
        field_from_token("R")


def test_prime_field_coercion():
    f5 = PrimeField(5)
    assert f5.coerce(Fraction(1, 2)) == 3  # 1/2 = 3 mod 5
    with pytest.raises(FieldError):
        f5.coerce(Fraction(1, 5))


def test_string_roundtrip():
    p = P(QQ, Fraction(3, 4), -2)
    assert Poly.from_strings(QQ, p.to_strings()) == p
    f7 = PrimeField(7)
    q = P(f7, 3, 0, 6)
    assert Poly.from_strings(f7, q.to_strings()) == q

from fractions import Fraction

import pytest
import sympy
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from qbw.field import DivisionByZero, FieldMismatch, FieldSpec, cyclotomic_polynomial, euler_phi

SPECS = [FieldSpec.rationals(), FieldSpec.prime(7), FieldSpec.prime(101),
         FieldSpec.cyclotomic(3), FieldSpec.cyclotomic(4), FieldSpec.cyclotomic(8)]

small = st.fractions(min_value=-50, max_value=50, max_denominator=12)


def element(field: FieldSpec):
    if field.kind == "rationals":
        return small.map(lambda q: mpq(q.numerator, q.denominator))
    if field.kind == "prime":
        return st.integers(0, field.param - 1)
    return st.lists(small, min_size=field.degree, max_size=field.degree).map(
        lambda cs: tuple(mpq(c.numerator, c.denominator) for c in cs))


@pytest.mark.parametrize("field", SPECS, ids=str)
def test_field_axioms(field):
    @settings(max_examples=150, deadline=None)
    @given(element(field), element(field), element(field))
    def run(a, b, c):
        add, mul = field.add, field.mul
        assert add(a, b) == add(b, a)
        assert mul(a, b) == mul(b, a)
        assert add(add(a, b), c) == add(a, add(b, c))
        assert mul(mul(a, b), c) == mul(a, mul(b, c))
        assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))
        assert add(a, field.neg(a)) == field.zero
        assert mul(a, field.one) == a
        if not field.is_zero(a):
            assert mul(a, field.inv(a)) == field.one

    run()


def test_inverse_of_zero_raises():
    for f in SPECS:
        with pytest.raises(DivisionByZero):
            f.inv(f.zero)


@settings(max_examples=200, deadline=None)
@given(element(FieldSpec.cyclotomic(5)), element(FieldSpec.cyclotomic(5)))
def test_cyclotomic_product_matches_sympy(a, b):
    f = FieldSpec.cyclotomic(5)
    z = sympy.Symbol("z")
    phi = sympy.cyclotomic_poly(5, z)
    pa = sum(sympy.Rational(int(c.numerator), int(c.denominator)) * z**i for i, c in enumerate(a))
    pb = sum(sympy.Rational(int(c.numerator), int(c.denominator)) * z**i for i, c in enumerate(b))
    want = sympy.Poly(sympy.rem(sympy.expand(pa * pb), phi, z), z).all_coeffs()[::-1]
    got = f.mul(a, b)
    want = [sympy.Rational(w) for w in want] + [0] * (f.degree - len(want))
    assert [Fraction(int(c.numerator), int(c.denominator)) for c in got] == [Fraction(str(w)) for w in want]


def test_zeta_has_exact_order():
    for n in (3, 4, 5, 6, 8, 12):
        f = FieldSpec.cyclotomic(n)
        z = f.zeta()
        assert f.pow(z, n) == f.one
        assert all(f.pow(z, k) != f.one for k in range(1, n))


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(6) == [1, -1, 1]
    assert all(euler_phi(n) == len(cyclotomic_polynomial(n)) - 1 for n in range(1, 30))


def test_literals_roundtrip():
    f = FieldSpec.cyclotomic(3)
    a = f.add(f.from_fraction(1, 2), f.mul(f.from_fraction(-3, 4), f.zeta()))
    assert f.parse_literal(f.format(a)) == a
    assert f.format(f.zeta()) == "z (zeta 3)"
    with pytest.raises(FieldMismatch):
        FieldSpec.rationals().parse_literal("z (zeta 3)")
    assert FieldSpec.prime(7).parse_literal("1/2 mod 7") == 4


def test_interning_and_parse():
    assert FieldSpec.parse("Q(zeta3)") is FieldSpec.cyclotomic(3)
    assert FieldSpec.parse("Q") is FieldSpec.rationals()
    assert FieldSpec.prime(7).characteristic == 7
    with pytest.raises(ValueError):
        FieldSpec.prime(8)

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from evolab.errors import CharacteristicTwoError, DivisionByZero, InfiniteFieldError, MixedFieldError, ParseError
from evolab.field import GF, QQ, FieldScalar, FieldSpec, all_nonzero_scalars

rationals = st.fractions(max_denominator=50).filter(lambda x: abs(x.numerator) < 10**6)


def test_prime_field_arithmetic():
    f = GF(5)
    assert f.add(3, 4) == 2
    assert f.neg(1) == 4
    assert f.inv(2) == 3
    assert GF(7).elements() == range(7)


def test_rational_arithmetic():
    assert QQ.add(Fraction(1, 2), Fraction(1, 3)) == Fraction(5, 6)
    assert QQ.inv(Fraction(-3, 4)) == Fraction(-4, 3)


def test_inverse_of_zero():
    with pytest.raises(DivisionByZero):
        GF(7).inv(0)
    with pytest.raises(DivisionByZero):
        QQ.inv(0)


def test_sqrt_examples():
    f5 = GF(5)
    assert f5.sqrt(4) == 2
    assert f5.sqrt(f5.neg(1)) == 2
    assert GF(3).sqrt(GF(3).neg(1)) is None
    assert QQ.sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert QQ.sqrt(2) is None
    assert QQ.sqrt(-1) is None


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13, 17, 101])
def test_sqrt_counts_over_gf(p):
    f = GF(p)
    roots = [f.sqrt(a) for a in f.elements()]
    expected = (p + 1) // 2 if p > 2 else 2
    assert sum(r is not None for r in roots) == expected
    for a, r in zip(f.elements(), roots):
        if r is not None:
            assert f.square(r) == a
            assert r <= f.neg(r) or r == 0


def test_nonzero_scalars():
    assert [s.value for s in all_nonzero_scalars(GF(3))] == [1, 2]
    assert [s.value for s in all_nonzero_scalars(GF(5))] == [1, 2, 3, 4]
    with pytest.raises(InfiniteFieldError):
        list(all_nonzero_scalars(QQ))


def test_field_spec_validation():
    with pytest.raises(ValueError):
        FieldSpec.gf(4)
    assert not GF(2).char_ne_2 and GF(3).char_ne_2 and QQ.char_ne_2
    with pytest.raises(CharacteristicTwoError):
        GF(2).require_char_ne_2()


def test_mixed_fields_rejected():
    with pytest.raises(MixedFieldError):
        FieldScalar(1, GF(3)) + FieldScalar(1, GF(5))


def test_scalar_wrapper():
    a = FieldScalar(3, GF(5))
    assert (a + 4).value == 2
    assert (a * a.inv()).value == 1
    assert (-a).value == 2
    assert FieldScalar(Fraction(2, 4), QQ).value == Fraction(1, 2)


def test_format_and_parse():
    assert QQ.format(Fraction(-3, 6)) == "-1/2"
    assert QQ.format(4) == "4"
    assert QQ.parse("-1/2") == Fraction(-1, 2)
    assert GF(5).parse("-1") == 4
    assert GF(5).parse("1/2") == 3
    assert GF(5).format(9) == "4"
    for bad in ["x", "1/0", "", "1.5"]:
        with pytest.raises(ParseError):
            QQ.parse(bad)
    with pytest.raises(ParseError):
        GF(5).parse("1/5")


@given(rationals, rationals, rationals)
def test_rational_axioms(a, b, c):
    f = QQ
    assert f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
    assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    if a != 0:
        assert f.mul(a, f.inv(a)) == 1
    assert f.parse(f.format(a)) == a


@given(st.sampled_from([2, 3, 5, 7, 13]), st.data())
def test_prime_axioms(p, data):
    f = GF(p)
    a, b, c = (data.draw(st.integers(0, p - 1)) for _ in range(3))
    assert f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
    assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
    assert f.add(a, f.neg(a)) == 0
    if a:
        assert f.mul(a, f.inv(a)) == 1

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hopftwist import (AlgebraElement, DomainError, InputError, TensorElement,
                       Variables, format_element, format_tensor,
                       mono_tuples_up_to, monomials_up_to, parse_element,
                       parse_tensor, tensor_of)

VARS = Variables(unipotent=["X", "Y", "V", "W"])
LVARS = Variables(laurent=["F"], unipotent=["X", "Y"])


def el(text, vars=VARS):
    return parse_element(text, vars)


def test_commutative_expansion():
    assert el("X + Y") * el("X - Y") == el("X^2 - Y^2")


def test_laurent_unit():
    f = parse_element("F", LVARS)
    finv = parse_element("F^-1", LVARS)
    assert f * finv == parse_element("1", LVARS)


def test_tensor_componentwise_product():
    t1 = parse_tensor("X(x)Y", VARS, 2)
    t2 = parse_tensor("V(x)1", VARS, 2)
    assert t1 * t2 == parse_tensor("X V(x)Y", VARS, 2)


def test_negative_exponent_rejected_on_unipotent():
    with pytest.raises(DomainError):
        parse_element("X^-1", VARS)


def test_substitution_kills_variable():
    images = {"X": el("X"), "Y": el("0"), "V": el("V"), "W": el("0")}
    assert el("V + X Y").substitute(images) == el("V")


def test_substitution_quotient_style():
    u4 = Variables(unipotent=["F23", "F34"])
    images = {"F23": parse_element("F34 - 1", u4), "F34": parse_element("F34", u4)}
    got = parse_element("F23 F34", u4).substitute(images)
    assert got == parse_element("F34^2 - F34", u4)


def test_substitution_missing_image():
    with pytest.raises(InputError):
        el("X Y").substitute({"X": el("X")})


def test_laurent_image_must_be_invertible():
    images = {"F": parse_element("X", LVARS), "X": parse_element("X", LVARS),
              "Y": parse_element("Y", LVARS)}
    with pytest.raises(DomainError):
        parse_element("F^-1", LVARS).substitute(images)


def test_canonical_format_ordering():
    assert format_element(el("1/2 Y^2 + X")) == "X + 1/2 Y^2"
    assert format_element(el("0")) == "0"
    assert format_element(el("Y - X")) == "-X + Y"


def test_canonical_format_tensor():
    t = parse_tensor("X(x)Y + Y(x)X", VARS, 2)
    assert format_tensor(t) == "X(x)Y + Y(x)X"


@pytest.mark.parametrize("text", [
    "X + 1/2 Y^2", "-X + Y", "2 X V - 3/4 W", "1", "0", "X^3 Y^2 V",
])
def test_parse_format_round_trip(text):
    e = el(text)
    assert parse_element(format_element(e), VARS) == e
    assert format_element(parse_element(format_element(e), VARS)) == format_element(e)


def test_parse_star_and_whitespace_equivalent():
    assert el("2*X^2*Y") == el("2 X^2 Y")


def test_parse_laurent_round_trip():
    e = parse_element("F^-2 X + 3 F", LVARS)
    assert parse_element(format_element(e), LVARS) == e


def test_parse_rejects_garbage():
    with pytest.raises(InputError):
        el("X + $")
    with pytest.raises(InputError):
        el("Z + X")  # undeclared variable


def test_monomial_enumeration_counts():
    monos = monomials_up_to(VARS, 2)
    # choose(4 + 2, 2) monomials of degree <= 2 in 4 variables
    assert len(monos) == 15
    assert monos[0] == VARS.unit_mono
    pairs = list(mono_tuples_up_to(VARS, 2, 2))
    assert all(VARS.mono_udeg(a) + VARS.mono_udeg(b) <= 2 for a, b in pairs)


def test_monomial_enumeration_laurent_window():
    monos = monomials_up_to(LVARS, 1, laurent_window=1)
    exps = {m[0] for m in monos}
    assert exps == {-1, 0, 1}


small_coeff = st.integers(min_value=-4, max_value=4).map(Fraction)
small_mono = st.tuples(*[st.integers(min_value=0, max_value=2)] * 4)
small_elem = st.dictionaries(small_mono, small_coeff, max_size=4).map(
    lambda d: AlgebraElement(VARS, d))


@given(small_elem, small_elem, small_elem)
@settings(max_examples=60, deadline=None)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@given(small_elem, small_elem)
@settings(max_examples=40, deadline=None)
def test_substitution_is_multiplicative(a, b):
    images = {"X": el("X + Y"), "Y": el("2 Y"), "V": el("V - X"), "W": el("W + X Y")}
    assert (a * b).substitute(images) == a.substitute(images) * b.substitute(images)


@given(small_elem)
@settings(max_examples=40, deadline=None)
def test_format_parse_identity(a):
    assert parse_element(format_element(a), VARS) == a


def test_tensor_of_three():
    t = tensor_of([el("X"), el("Y + V"), el("1")])
    assert t == parse_tensor("X(x)Y(x)1 + X(x)V(x)1", VARS, 3)

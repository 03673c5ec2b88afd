from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mhnumbers.qtfield import (
    ONE,
    ZERO,
    EtaPoleError,
    ParseError,
    PolyQT,
    RatR,
    eta_limit,
    eta_order,
    parse,
    poly_gcd,
    q,
    serialize,
    substitute_eta,
    t,
)


@st.composite
def polys(draw, max_terms=3):
    terms = draw(
        st.dictionaries(
            st.tuples(st.integers(0, 2), st.integers(0, 2)),
            st.integers(-4, 4),
            max_size=max_terms,
        )
    )
    out = ZERO
    for (a, b), c in terms.items():
        out = out + c * q**a * t**b
    return out


@st.composite
def ratqts(draw):
    num = draw(polys())
    den = draw(polys().filter(bool))
    return num / den


# --- arithmetic -----------------------------------------------------------


def test_common_factor_cancels():
    assert (1 - q**2) / (1 - q) == 1 + q
    assert ((1 - q**2) / (1 - q)).is_polynomial()


def test_inverse_pair_multiplies_to_one():
    assert ((1 - t) / (1 - q)) * ((1 - q) / (1 - t)) == ONE


def test_division_by_zero_raises():
    with pytest.raises(ZeroDivisionError):
        q / ZERO
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


def test_den_sign_is_positive():
    f = 1 / (1 - q)  # canonical form flips to -1/(q - 1)
    assert serialize(f) == "(-1)/(q - 1)"
    assert f.den.terms()[(1, 0)] > 0


@settings(max_examples=60, deadline=None)
@given(ratqts(), ratqts(), ratqts())
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + (-a) == ZERO
    if a:
        assert a * a.inverse() == ONE


@settings(max_examples=40, deadline=None)
@given(ratqts(), ratqts())
def test_construction_order_does_not_matter(a, b):
    assert serialize(a + b) == serialize(b + a)
    assert serialize(a * b) == serialize(b * a)
    assert hash(a * b) == hash(b * a)


# --- gcd ------------------------------------------------------------------


def _poly(f):
    assert f.is_polynomial()
    return f.num


def test_gcd_examples():
    g = poly_gcd(_poly(1 - q**2), _poly(1 - q))
    # normalized to a positive leading coefficient, so 1 - q comes out as q - 1
    assert g == _poly(q - 1)
    assert poly_gcd(_poly(1 - q * t), _poly(1 - q)) == _poly(ONE)
    assert poly_gcd(PolyQT(), _poly(3 * (1 - t))) == _poly(t - 1)


def test_gcd_of_zeros():
    assert poly_gcd(PolyQT(), PolyQT()).is_zero()


# --- strings --------------------------------------------------------------


def test_serialize_graded_lex():
    f = (1 + q) * (1 - t) ** 2 / 2
    # total degree first, then q before t
    assert serialize(f) == "(q*t^2 - 2*q*t + t^2 + q - 2*t + 1)/(2)"


def test_serialize_zero_and_polynomial():
    assert serialize(ZERO) == "0"
    assert parse("0") == ZERO
    assert serialize(q * t - 3) == "q*t - 3"


def test_parse_accepts_other_orderings():
    assert parse("(q*t^2 - 2*q*t + q + t^2 - 2*t + 1)/(2)") == (1 + q) * (1 - t) ** 2 / 2


def test_parse_operators():
    assert parse("2*q*t") == 2 * q * t
    assert parse("q/t") == q / t
    assert parse("(1 - t)^3 / (1 - q)") == (1 - t) ** 3 / (1 - q)
    assert parse("-q**2") == -(q**2)
    assert parse("1 − t") == 1 - t


@pytest.mark.parametrize("bad, pos", [("q +", 3), ("(q", 2), ("x + 1", 0), ("q $ t", 2)])
def test_parse_error_reports_position(bad, pos):
    with pytest.raises(ParseError) as info:
        parse(bad)
    assert info.value.pos == pos


@settings(max_examples=100, deadline=None)
@given(ratqts())
def test_round_trip(f):
    s = serialize(f)
    assert parse(s) == f
    assert serialize(parse(s)) == s


def test_evaluate_and_constant():
    f = (1 - t) / (1 - q)
    assert f.evaluate(2, 3) == Fraction(2)
    assert (q / q).is_constant()
    assert ((1 - q) * 3 / (2 - 2 * q)).to_fraction() == Fraction(3, 2)


def test_q_equals_t():
    assert ((1 - q**2) / (1 - t**2)).subs_q_eq_t() == ONE


# --- η path ---------------------------------------------------------------


def test_substitute_eta_examples():
    f = (1 - t) / (1 - q)
    assert substitute_eta(f, 1, 1) == RatR([1])
    assert substitute_eta(f, 2, 1) == RatR([1, 1])
    assert substitute_eta(q * t, 2, 3) == RatR([0, 0, 0, 0, 0, 1])


def test_substitute_eta_rejects_nonpositive():
    with pytest.raises(ValueError):
        substitute_eta(q, 0, 1)


def test_eta_order_examples():
    one_minus_r = [1, -1]
    g = RatR([1, -2, 1], [1, 1])
    assert eta_order(g) == 2
    for A in range(1, 6):
        assert eta_order(RatR([1] + [0] * (A - 1) + [-1])) == 1
    assert eta_order(RatR([1], one_minus_r)) == -1
    with pytest.raises(ValueError):
        eta_order(RatR([]))


def test_eta_limit_examples():
    for A in range(1, 4):
        for B in range(1, 4):
            g = substitute_eta((1 - t**A) / (1 - t**B), 1, 1)
            assert eta_limit(g, 0) == Fraction(A, B)
    j1 = (1 - t) * (1 - q)
    assert eta_limit(substitute_eta(j1, 1, 1), 2) == 1
    assert eta_limit(RatR([1, -3, 3, -1]), 2) == 0
    with pytest.raises(EtaPoleError):
        eta_limit(RatR([1], [1, -1]), 0)


@settings(max_examples=40, deadline=None)
@given(polys().filter(bool), st.integers(0, 3), st.integers(1, 3), st.integers(1, 3))
def test_eta_limit_properties(f, m, A, B):
    g = substitute_eta(f, A, B)
    # a polynomial's plain limit is its value at q = t = 1
    assert eta_limit(g, 0) == f.evaluate(1, 1)
    if g:
        k = eta_order(g)
        shifted = g
        for _ in range(m):
            shifted = shifted * RatR([1, -1])
        assert eta_limit(shifted, k + m) == eta_limit(g, k)

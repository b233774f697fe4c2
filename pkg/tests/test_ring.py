import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from partition_certify.ring import ONE, PI, ZERO, HalfInt, RingElem, binom_general, pochhammer

coeffs = st.fractions(min_value=-50, max_value=50, max_denominator=50)
keys = st.tuples(st.integers(min_value=-4, max_value=4), st.integers(min_value=0, max_value=1))
elems = st.dictionaries(keys, coeffs, max_size=4).map(RingElem)

SQRT6 = RingElem.monomial(1, 0, 1)


@given(elems, elems, elems)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == ZERO
    assert a * ONE == a


@given(elems, elems)
def test_ball_image_is_a_homomorphism(a, b):
    prod = (a * b).to_ball(128)
    direct = a.to_ball(160) * b.to_ball(160)
    assert prod.lower <= direct.upper and direct.lower <= prod.upper


@given(elems)
def test_ball_encloses_mpmath(a):
    mpmath.mp.prec = 300
    value = sum(
        (mpmath.mpf(c.numerator) / c.denominator) * mpmath.pi**p * mpmath.sqrt(6) ** s
        for (p, s), c in a.items()
    )
    ball = a.to_ball(100)
    lo = mpmath.mpf(ball.lower.numerator) / ball.lower.denominator
    hi = mpmath.mpf(ball.upper.numerator) / ball.upper.denominator
    assert lo - mpmath.mpf(2) ** -280 <= value <= hi + mpmath.mpf(2) ** -280


def test_sqrt6_squares_to_six():
    assert SQRT6 * SQRT6 == RingElem.const(6)
    assert RingElem.monomial(1, 0, 3) == SQRT6 * 6


def test_pi_inverse():
    assert PI * RingElem.monomial(1, -1) == ONE
    assert PI.scale_pi(-1) == ONE


def test_json_round_trip():
    x = RingElem({(2, 1): Fraction(-3, 7), (-1, 0): 5})
    assert RingElem.from_json_terms(x.to_json_terms()) == x


def test_canonical_form_rejects_bad_exponent():
    with pytest.raises(ValueError):
        RingElem({(0, 2): 1})


@given(st.integers(min_value=-10, max_value=10), st.integers(min_value=0, max_value=8))
def test_pochhammer_and_binomial_on_integers(x, m):
    rising = math.prod(x + i for i in range(m))
    assert pochhammer(x, m) == rising
    if x >= 0:
        assert binom_general(x, m) == math.comb(x, m)


@given(st.integers(min_value=-15, max_value=15), st.integers(min_value=0, max_value=8))
def test_half_integer_binomial_matches_mpmath(twice, k):
    mpmath.mp.prec = 200
    exact = binom_general(HalfInt(twice), k)
    ref = mpmath.binomial(mpmath.mpf(twice) / 2, k)
    assert abs(mpmath.mpf(exact.numerator) / exact.denominator - ref) < mpmath.mpf(2) ** -150

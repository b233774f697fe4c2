from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from partition_certify.coefficients import (
    _MIN_T,
    aux_coefficient,
    g,
    g_component,
    go1_general,
    inner_sum_S,
    inner_sum_ball_tables,
    omega,
    pp1_identity_sides,
)
from partition_certify.errors import DomainError
from partition_certify.exact import p_pentagonal_table
from partition_certify.ring import RingElem


def r(terms):
    return RingElem(terms)


# printed closed forms; sqrt6 is key (., 1), so 1/sqrt6 = sqrt6/6
PRINTED = {
    0: r({(0, 0): 1}),
    1: r({(1, 1): Fraction(-1, 144), (-1, 1): Fraction(-72, 144)}),
    2: r({(2, 0): Fraction(1, 6912), (0, 0): Fraction(432, 6912)}),
    3: r({
        (3, 1): Fraction(-1, 497664 * 6),
        (1, 1): Fraction(-1296, 497664 * 6),
        (-1, 1): Fraction(-93312, 497664 * 6),
    }),
}


@pytest.mark.parametrize("t", sorted(PRINTED))
def test_printed_values(t):
    assert g(t) == PRINTED[t]
    assert omega(t) == PRINTED[t]


@pytest.mark.parametrize("t", range(0, 61))
def test_double_sum_equals_single_sum(t):
    assert g(t) == omega(t)


def test_expansion_approximates_p():
    # an independent numerical oracle: truncating the series after w terms
    # leaves a relative error of order n^(-w/2)
    mpmath.mp.prec = 200
    table = p_pentagonal_table(2000)
    for n in (500, 2000):
        main = mpmath.exp(mpmath.pi * mpmath.sqrt(mpmath.mpf(2 * n) / 3)) / (4 * n * mpmath.sqrt(3))
        series = mpmath.mpf(0)
        for t in range(10):
            series += _mp(omega(t)) * mpmath.mpf(n) ** (-mpmath.mpf(t) / 2)
        rel = abs(main * series / table[n] - 1)
        assert rel < 100 * mpmath.mpf(n) ** -5


def _mp(x: RingElem):
    return sum(
        (mpmath.mpf(c.numerator) / c.denominator) * mpmath.pi**p * mpmath.sqrt(6) ** s
        for (p, s), c in x.items()
    )


def test_go1_special_value_matches_general_branch():
    assert go1_general(1) == g_component("go1", 1)


@given(st.integers(min_value=0, max_value=40), st.integers(min_value=0, max_value=40))
def test_pp1_identity(k, j):
    lhs, rhs = pp1_identity_sides(k, j)
    assert lhs == rhs


def test_domains():
    with pytest.raises(DomainError):
        g(-1)
    with pytest.raises(DomainError):
        aux_coefficient("e1", -1)
    with pytest.raises(ValueError):
        g_component("bogus", 2)


def test_ball_tables_match_exact_values():
    tables = inner_sum_ball_tables(40, 128)
    for i in (1, 2, 3, 4):
        for t in range(_MIN_T[i], 41):
            ball = tables[i][t]
            assert _overlaps(ball, inner_sum_S(i, t).to_ball(200))
            assert ball.radius < Fraction(1, 2**100)
        for t in range(_MIN_T[i]):
            assert tables[i][t] is None


def _overlaps(a, b):
    return a.lower <= b.upper and b.lower <= a.upper


def test_odd_component_identity():
    # (sqrt 24)^(2t+1) g_{o,2}(t) = -(pi/6) S_4(t); (sqrt24)^(2t+1) = 24^t * 2 sqrt6
    for t in range(0, 12):
        scale = RingElem.monomial(2 * 24**t, 0, 1)
        assert scale * g_component("go2", t) == -(inner_sum_S(4, t) * Fraction(1, 6)).scale_pi(1)


def test_cached_half_binomial_matches_direct_product():
    from partition_certify.coefficients import _half_binom
    from partition_certify.ring import HalfInt, binom_general

    assert all(_half_binom(i, j) == binom_general(HalfInt(i), j) for i in range(25) for j in range(25))

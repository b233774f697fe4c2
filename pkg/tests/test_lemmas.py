from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from partition_certify import lemmas
from partition_certify.balls import Tri
from partition_certify.coefficients import inner_sum_S
from partition_certify.errors import DomainError, HypothesisError

mpmath.mp.prec = 256
unit = st.fractions(min_value=0, max_value=1, max_denominator=30)
nonneg = st.fractions(min_value=0, max_value=5, max_denominator=30)


@given(st.lists(st.tuples(unit, nonneg), min_size=1, max_size=6))
def test_product_inequality_property(pairs):
    xs, ys = zip(*pairs)
    assert lemmas.check_product_inequality(xs, ys)


def test_product_inequality_needs_nonnegative_x():
    # the bare statement would also admit x = -1, where it is false
    xs, ys = [Fraction(1), Fraction(-1)], [0, 0]
    assert 0 * 2 < 1 - sum(xs)
    with pytest.raises(HypothesisError):
        lemmas.check_product_inequality(xs, ys)
    with pytest.raises(HypothesisError):
        lemmas.check_product_inequality([Fraction(1, 2)], [])


def test_product_sweep():
    assert lemmas.product_inequality_sweep(2000, seed=3).passed


@pytest.mark.parametrize("which", ["lem2", "lem3"])
def test_ratio_sweeps(which):
    rep = lemmas.ratio_bounds_sweep(which, 120)
    assert rep.passed and rep.total == sum(t + 1 for t in range(1, 121))


def test_ratio_sweep_matches_pointwise_check():
    for t in (1, 7, 30):
        for u in range(t + 1):
            assert lemmas.check_pochhammer_ratio_bounds("lem2", t, u)
            assert lemmas.check_pochhammer_ratio_bounds("lem3", t, u)
    with pytest.raises(DomainError):
        lemmas.check_pochhammer_ratio_bounds("lem2", 3, 4)


@pytest.mark.parametrize("k", range(4))
def test_weighted_sums_against_mpmath(k):
    a = mpmath.pi / 6
    ref = mpmath.nsum(lambda u: u**k * a ** (2 * u) / mpmath.factorial(2 * u), [0, mpmath.inf])
    ball = lemmas.weighted_cosh_sum(k, 0, 40, 200)
    closed = lemmas.closed_sum_value(k, 200)
    for b in (ball, closed):
        lo = mpmath.mpf(b.lower.numerator) / b.lower.denominator
        hi = mpmath.mpf(b.upper.numerator) / b.upper.denominator
        assert lo - mpmath.mpf(2) ** -180 <= ref <= hi + mpmath.mpf(2) ** -180
    assert lemmas.check_closed_sums().passed


def test_tail_bound():
    for t in (1, 2, 10, 100):
        for k in range(4):
            assert lemmas.check_tail_bound(t, k) is Tri.TRUE
    assert all(lemmas.tail_ratio_holds(n, k) for n in range(1, 200) for k in range(4))
    assert lemmas.tail_bound_sweep(t_max=60, ratio_n_max=60).passed


def test_S_estimates_small_range():
    for i in (1, 2, 3, 4):
        rep = lemmas.s_estimate_sweep(i, t_max=80)
        assert rep.passed, (i, rep.violations, rep.undecided)


def test_S_estimate_table_agrees_with_exact_value():
    for i in (1, 2, 3, 4):
        for t in range(lemmas.S_ESTIMATE_MIN_T[i], 30):
            assert lemmas.check_S_estimate(i, t) is Tri.TRUE


@pytest.mark.parametrize("i,upper", [(4, Fraction(3, 5)), (1, Fraction(13, 100))])
def test_S_estimate_mutation_is_caught(i, upper):
    # the order-4 upper constant is tight to about 0.62 near t = 200
    lo_c, lo_p, _, hi_p = lemmas.S_ESTIMATE_BOUNDS[i]
    rep = lemmas.s_estimate_sweep(i, t_max=200, bounds=(lo_c, lo_p, upper, hi_p))
    assert rep.violations


def test_S_estimate_domain():
    with pytest.raises(DomainError):
        lemmas.check_S_estimate(3, 1)


def test_s_estimate_middle_for_S1_by_mpmath():
    # the normalized quantity of S_1(t), recomputed independently
    t = 12
    s_val = inner_sum_S(1, t).to_ball(200)
    mid = lemmas.s_estimate_middle(1, t, s_val, 200)
    a = mpmath.pi / 6
    d = (-1) ** t * mpmath.binomial(-1.5, t)
    sv = mpmath.mpf(s_val.midpoint.numerator) / s_val.midpoint.denominator
    ref = sv / d - (mpmath.cosh(a) - 1) / d + a * mpmath.sinh(a) / (2 * t)
    assert abs(mpmath.mpf(mid.midpoint.numerator) / mid.midpoint.denominator - ref) < 1e-50


@pytest.mark.parametrize("which", ["errorlem1", "errorlem3", "bprz_b", "bprz_c", "bprz_beta"])
def test_tail_lemmas_hold(which):
    assert lemmas.tail_lemma_sweep(which, count=40).passed


def test_errorlem2_holds_for_s_equal_one():
    for k in (1, 2, 10, 25):
        for n in (1, 3, 50, 2000):
            assert lemmas.check_tail_lemma("errorlem2", {"n": n, "k": k, "s": 1}) is Tri.TRUE


def test_errorlem2_counterexample():
    # k = 1, s = 2: the sum is about 1.5 x while the claimed upper bound is about 0.849 x
    n = 100
    x = mpmath.mpf(1) / (24 * n)
    total = mpmath.nsum(lambda t: (-1) ** t * mpmath.binomial(-1.5, t) / t**2 * x**t, [1, mpmath.inf])
    upper = mpmath.mpf(12) / 5 * x / mpmath.mpf(2) ** 1.5
    assert total > upper
    assert lemmas.check_tail_lemma("errorlem2", {"n": n, "k": 1, "s": 2}) is Tri.FALSE


def test_tail_lemma_hypotheses():
    with pytest.raises(HypothesisError):
        lemmas.check_tail_lemma("bprz_b", {"n": 4, "k": 1, "s": 2})
    with pytest.raises(HypothesisError):
        lemmas.check_errorlem5(30, 1)


def test_majorant():
    assert lemmas.majorant_sweep(t_max=40).passed


def test_errorsum_first_three_components():
    for j in (1, 2, 3):
        for k in (1, 5, 20):
            for n in (10, 116, 1000):
                assert lemmas.check_errorsum(j, k, n) is Tri.TRUE


def test_errorsum_fourth_component_fails():
    # the odd constant uses alpha sinh(alpha) where sinh(alpha)/alpha is needed
    assert lemmas.check_errorsum(4, 1, 1000) is Tri.FALSE
    a = mpmath.pi / 6
    assert abs(-(a) * mpmath.sinh(a) / a + 0.548) < 1e-3


def test_errorlem5():
    assert lemmas.errorlem5_sweep(k_max=10, n_max=40).passed

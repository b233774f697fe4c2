import json
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from partition_certify import bounds
from partition_certify.balls import Tri
from partition_certify.errors import DomainError
from partition_certify.exact import p_pentagonal_table

mpmath.mp.prec = 256
TABLE = p_pentagonal_table(3000)


def mp(q: Fraction):
    return mpmath.mpf(q.numerator) / q.denominator


def inside(ball, value):
    slack = mpmath.mpf(2) ** -200 * (1 + abs(value))
    return mp(ball.lower) - slack <= value <= mp(ball.upper) + slack


def ghat_mp(k):
    lk = mpmath.log(k)
    llk = mpmath.log(lk)
    nu = 2 * mpmath.log(6) + 2 * k * mpmath.log(2) + 2 * k * lk + 2 * k * llk + 5 * k * llk / lk
    return (36 * nu**2 / mpmath.pi**2 + 1) / 24


@pytest.mark.parametrize("k", [2, 3, 4, 8, 50])
def test_ghat_matches_mpmath(k):
    assert inside(bounds.ghat(k, 128), ghat_mp(k))


@given(st.integers(min_value=1, max_value=10**6))
def test_mu_matches_mpmath(n):
    assert inside(bounds.mu(n, 128), mpmath.pi / 6 * mpmath.sqrt(24 * n - 1))


def test_ghat_below_one_at_two():
    assert bounds.ghat_dominates(2) is Tri.FALSE
    assert all(bounds.ghat_dominates(k) is Tri.TRUE for k in range(3, 30))
    with pytest.raises(DomainError):
        bounds.ghat(1)


def test_first_guaranteed_n():
    got = [bounds.first_guaranteed_n(w) for w in range(1, 9)]
    assert got == [2, 2, 40, 116, 229, 383, 581, 827]
    for w in range(3, 9):
        assert bounds.first_guaranteed_n(w) - 1 <= ghat_mp(w) < bounds.first_guaranteed_n(w)


@pytest.mark.parametrize("w", range(1, 9))
def test_final_constants_match_mpmath(w):
    g0, g1 = (23, 24) if w % 2 == 0 else (15, 17)
    base = mpmath.sqrt(-(-w // 2) + 1) / mpmath.sqrt(24) ** w
    lo, hi = bounds.final_LU(w, 128)
    assert inside(lo, -g0 * base) and inside(hi, g1 * base)


def test_sandwich_by_independent_evaluation():
    # recompute the order-3 bracket at n = 500 with mpmath from the printed g(0..2)
    n, w = 500, 3
    g = [
        mpmath.mpf(1),
        -(mpmath.pi**2 + 72) / (24 * mpmath.sqrt(6) * mpmath.pi),
        (mpmath.pi**2 + 432) / 6912,
    ]
    pref = mpmath.exp(mpmath.pi * mpmath.sqrt(mpmath.mpf(2 * n) / 3)) / (4 * n * mpmath.sqrt(3))
    series = sum(g[t] * mpmath.mpf(n) ** (-mpmath.mpf(t) / 2) for t in range(w))
    base = mpmath.sqrt(3) / mpmath.sqrt(24) ** w
    pair = bounds.main_bounds(n, w, 128)
    assert inside(pair.lower, pref * (series - 15 * base * mpmath.mpf(n) ** -1.5))
    assert inside(pair.upper, pref * (series + 17 * base * mpmath.mpf(n) ** -1.5))
    assert pair.verdict(TABLE[n]) == "inside"


@given(st.integers(min_value=116, max_value=3000), st.integers(min_value=1, max_value=8))
def test_sandwich_inside_when_guaranteed(n, w):
    if not bounds.threshold_ok(n, w):
        return
    verdict, _ = bounds.certify_bracket(n, w, TABLE[n])
    assert verdict == "inside"


def test_sweep_parallel_equals_serial():
    ns = range(830, 900)
    serial = bounds.sandwich_sweep([7, 8], ns, TABLE, jobs=1, chunk=20)
    parallel = bounds.sandwich_sweep([7, 8], ns, TABLE, jobs=2, chunk=20)
    assert serial.to_dict() == parallel.to_dict()
    assert serial.passed and serial.total == 140


def test_known_violations_outside_the_guaranteed_range():
    assert bounds.certify_bracket(6, 2, TABLE[6], "bprz")[0] == "violation"
    assert not bounds.bprz_bounds(6, 2).threshold_ok
    # w = 4 fails below its threshold
    assert bounds.certify_bracket(50, 4, TABLE[50])[0] == "violation"
    assert not bounds.threshold_ok(50, 4)


def test_corollary_and_reduction():
    assert bounds.corollary_reduction() == (Tri.TRUE, Tri.TRUE)
    for n in (116, 117, 1000, 3000):
        assert bounds.certify_bracket(n, 4, TABLE[n], "corollary")[0] == "inside"


def test_cjw_inside():
    assert bounds.certify_bracket(1207, 10, TABLE[1207], "cjw")[0] == "inside"


def test_logconcave_from_bounds():
    for n in (2000, 2050, 2100):
        assert bounds.logconcave_from_bounds(n) is Tri.TRUE


def test_asymptotic_ratio():
    r3 = bounds.asymptotic_ratio(1000, TABLE[1000])
    ref = TABLE[1000] / (mpmath.exp(mpmath.pi * mpmath.sqrt(mpmath.mpf(2000) / 3)) / (4000 * mpmath.sqrt(3)))
    assert inside(r3, ref)


def test_bound_pair_json_round_trip():
    pair = bounds.main_bounds(300, 4)
    d = json.loads(json.dumps(pair.to_dict(TABLE[300])))
    assert d["verdict"] == "inside" and d["guaranteed"] and d["schema_version"] == 1
    lo = bounds.ball_from_json(d["lower"])
    assert lo.contains(pair.lower.midpoint)
    assert Fraction(d["lower"]["mid"]) == pair.lower.midpoint


def test_domain_errors():
    with pytest.raises(DomainError):
        bounds.main_bounds(0, 3)
    with pytest.raises(DomainError):
        bounds.bprz_bounds(10, 1)
    with pytest.raises(DomainError):
        bounds.mu(0)

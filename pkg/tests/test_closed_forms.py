import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from partition_certify import closed_forms as cf
from partition_certify.coefficients import _MIN_T
from partition_certify.errors import DomainError, PoleError


def test_gamma_parses_completely():
    assert len(cf.GAMMA) == 42
    with pytest.raises(ValueError):
        cf.parse_polynomial("3 t^2 + x")


def test_residual_degree_bound_symbolically():
    """Each piece of K * residual is a polynomial; the grid is then a proof."""
    t, u, s = sp.symbols("t u s")
    gam = sum(c * t**a * u**b * s**e for (a, b, e), c in cf.GAMMA.items())
    half = sp.Rational(1, 2)

    def ratio(tt, uu, ss):
        return -gam.subs({t: tt, u: uu, s: ss}, simultaneous=True) * ss / (
            (1 + ss + 2 * uu) * (2 + ss + 2 * uu) * (3 + ss + 2 * uu) * (-1 + 2 * ss - 2 * tt + 2 * uu)
        )

    def common(tt, uu, ss):
        m = ss + uu
        return m / (m + 1) * (-half - m) * (tt - m) / (-half - tt + m)

    def rho_s(tt, uu, ss):
        m = ss + uu
        return common(tt, uu, ss) * (m + 1) / (ss + 1) / (m + uu + 1)

    def rho_u(tt, uu, ss):
        m = ss + uu
        return common(tt, uu, ss) * (-(m + 1)) / ((m + uu + 1) * (m + uu + 2))

    a0, a1, a2 = u * (t - u), 2 * (2 + t) * (1 + u), (2 + u) * (2 + t + u)
    pieces = [
        ratio(t, u, s + 1) * rho_s(t, u, s),
        -ratio(t, u, s),
        -a0,
        -a1 * rho_u(t, u, s),
        -a2 * rho_u(t, u, s) * rho_u(t, u + 1, s),
    ]
    K = cf.clearing_factor(t, u, s)
    degrees = []
    total = 0
    for piece in pieces:
        num, den = sp.fraction(sp.cancel(sp.together(piece * K)))
        assert den.free_symbols == set()
        poly = sp.Poly(sp.expand(num), t, u, s)
        degrees.append((poly.degree(t), poly.degree(u), poly.degree(s)))
        total += num / den
    assert tuple(max(d) for d in zip(*degrees)) == cf.RESIDUAL_DEGREES
    assert sp.expand(total) == 0


def test_certificate_grid_is_complete():
    rep = cf.verify_certificate_grid()
    assert rep.passed and rep.total == 15**3
    assert rep.notes["complete_proof"]


def test_certificate_sample():
    rep = cf.verify_certificate_sample(500, seed=42)
    assert rep.passed and rep.total == 500


@pytest.mark.parametrize("delta", [1, -1])
def test_perturbed_certificate_fails(delta):
    bad = cf.perturbed_gamma(delta=delta)
    assert not cf.verify_certificate_grid(size=4, gamma=bad).passed
    assert not cf.verify_certificate_sample(50, seed=1, gamma=bad).passed


@given(st.sampled_from(sorted(cf.GAMMA)))
def test_any_single_mutation_is_caught(monomial):
    bad = cf.perturbed_gamma(monomial)
    assert not cf.verify_certificate_grid(size=3, gamma=bad).passed


def test_ratio_form_matches_pointwise_identity():
    for p in cf.random_cert_points(40, seed=7, t_max=25):
        assert cf.verify_certificate3(p)
        assert cf.certificate_residual(p.t, p.u, p.s) == 0


def test_summand_pole():
    with pytest.raises(PoleError):
        cf.f3_summand(cf.CertPoint(3, 0, 0))


@pytest.mark.parametrize("i", [1, 2, 3, 4])
def test_closed_forms_match_direct_sums(i):
    lo, hi = {1: (1, 0), 2: (0, -1), 3: (1, 0), 4: (0, 0)}[i]
    for t in range(1, 21):
        for u in range(lo, t + hi + 1):
            assert cf.inner_closed_form(i, t, u) == cf.direct_inner_sum(i, t, u)


def test_closed_form_domain():
    with pytest.raises(DomainError):
        cf.inner_closed_form(2, 5, 5)
    with pytest.raises(DomainError):
        cf.inner_closed_form(1, 5, 0)


@pytest.mark.parametrize("i", [1, 2, 3, 4])
def test_weighted_closed_forms_reassemble(i):
    for t in range(max(_MIN_T[i], 1), 16):
        assert cf.closed_forms_reproduce(i, t)


def test_sigma_form_and_initial_values():
    for t in range(1, 25):
        first, second = cf.initial_values3(t)
        assert first == cf.direct_inner_sum(3, t, 1)
        if second is not None:
            assert second == cf.direct_inner_sum(3, t, 2)
        for u in range(1, t + 1):
            assert cf.sigma_form3(t, u) == cf.direct_inner_sum(3, t, u)


def test_recurrence_and_telescoping():
    for t in range(3, 20):
        for u in range(1, t - 1):
            assert cf.verify_recurrence3(t, u)
    lhs, rhs = cf.telescoped_recurrence3(12, 4)
    assert lhs == rhs
    with pytest.raises(DomainError):
        cf.verify_recurrence3(5, 4)

"""Expansion coefficients of p(n) as exact elements of Q[pi, 1/pi, sqrt(6)].

Two constructions are provided: the double-sum assembly ``g(t)`` from the
component series (products of the two factors of the main term), and the
single-sum formula ``omega(t)``.  They agree exactly.

Inner sums are polynomials in ``X = alpha**2 = pi**2 / 36``.  Internally they
are kept as lists of rational coefficients and only turned into ring elements
at the end.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from . import balls
from .balls import RealBall
from .errors import DomainError
from .ring import HalfInt, RingElem, binom_general, pochhammer

Poly = tuple[Fraction, ...]

MINUS_THREE_HALVES = HalfInt(-3)


# polynomial helpers


def _padd(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return tuple(
        (p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)
    )


def _pscale(p: Poly, c: Fraction) -> Poly:
    return tuple(c * x for x in p)


def poly_to_ring(p: Poly) -> RingElem:
    """``sum p[u] X**u`` with ``X = pi**2/36`` as a ring element."""
    return RingElem({(2 * u, 0): c / Fraction(36) ** u for u, c in enumerate(p) if c})


def x_power(u: int) -> RingElem:
    """``alpha**(2u) = (pi**2/36)**u``."""
    return RingElem({(2 * u, 0): Fraction(1, 36**u)})


# inner sums over u


@lru_cache(maxsize=None)
def _inner_odd(s: int) -> Poly:
    """sum_{u=1}^{s} (-1)^u (-s)_u / ((s+u)! (2u-1)!) X^u."""
    coeffs = [Fraction(0)] * (s + 1)
    for u in range(1, s + 1):
        coeffs[u] = Fraction(
            (-1) ** u * pochhammer(-s, u), factorial(s + u) * factorial(2 * u - 1)
        )
    return tuple(coeffs)


@lru_cache(maxsize=None)
def _inner_even(s: int) -> Poly:
    """sum_{u=0}^{s} (-1)^u (-s)_u / ((s+u+1)! (2u)!) X^u."""
    return tuple(
        Fraction((-1) ** u * pochhammer(-s, u), factorial(s + u + 1) * factorial(2 * u))
        for u in range(s + 1)
    )


@lru_cache(maxsize=None)
def half_poch(s: int) -> Fraction:
    """(1/2 - s)_{s+1}."""
    return pochhammer(HalfInt(1 - 2 * s), s + 1)


@lru_cache(maxsize=None)
def binom_m32(m: int) -> Fraction:
    """binom(-3/2, m) with the zero convention for negative m."""
    if m < 0:
        return Fraction(0)
    if m == 0:
        return Fraction(1)
    return binom_m32(m - 1) * (Fraction(-3, 2) - (m - 1)) / m


@lru_cache(maxsize=None)
def _j_odd(s: int) -> Poly:
    return _pscale(_inner_odd(s), half_poch(s) / s)


@lru_cache(maxsize=None)
def _j_even(s: int) -> Poly:
    return _pscale(_inner_even(s), half_poch(s))


@lru_cache(maxsize=None)
def _s1_poly(t: int) -> Poly:
    if t == 0:
        return ()
    return _padd(_s1_poly(t - 1), _pscale(_j_odd(t), Fraction((-1) ** t)))


@lru_cache(maxsize=None)
def _s4_poly(t: int) -> Poly:
    term = _pscale(_j_even(t), Fraction((-1) ** t))
    if t == 0:
        return term
    return _padd(_s4_poly(t - 1), term)


@lru_cache(maxsize=None)
def _s2_poly(t: int) -> Poly:
    out: Poly = ()
    for s in range(t):
        out = _padd(out, _pscale(_j_even(s), binom_m32(t - s - 1)))
    return out


@lru_cache(maxsize=None)
def _s3_poly(t: int) -> Poly:
    out: Poly = ()
    for s in range(1, t + 1):
        out = _padd(out, _pscale(_j_odd(s), binom_m32(t - s)))
    return out


_MIN_T = {1: 0, 2: 1, 3: 2, 4: 0}


def inner_sum_poly(i: int, t: int) -> Poly:
    """S_i(t) as coefficients of powers of X = pi**2/36."""
    if i not in _MIN_T:
        raise ValueError(f"no inner sum S_{i}")
    if t < _MIN_T[i]:
        raise DomainError(f"S_{i}(t) is defined for t >= {_MIN_T[i]}, got {t}")
    return {1: _s1_poly, 2: _s2_poly, 3: _s3_poly, 4: _s4_poly}[i](t)


def inner_sum_S(i: int, t: int) -> RingElem:
    """Exact S_i(t) as a ring element."""
    return poly_to_ring(inner_sum_poly(i, t))


# component series


def _inv24(t: int) -> Fraction:
    return Fraction(1, 24**t)


# -6/(pi sqrt 24) = -(1/2) pi^-1 sqrt6 and -pi/(12 sqrt 6) = -(1/72) pi sqrt6
_O2_FACTOR = RingElem({(-1, 1): Fraction(-1, 2)})
_O1_FACTOR = RingElem({(1, 1): Fraction(-1, 72)})


def aux_coefficient(kind: str, t: int) -> RingElem:
    """The coefficients e1, o1, e2, o2 of the two factor series."""
    if t < 0:
        raise DomainError("t must be non-negative")
    if kind == "e1":
        if t == 0:
            return RingElem.const(1)
        c = Fraction((-1) ** t) * _inv24(t) * half_poch(t) / t
        return poly_to_ring(_pscale(_inner_odd(t), c))
    if kind == "o1":
        c = Fraction((-1) ** t) * half_poch(t) * _inv24(t)
        return _O1_FACTOR * poly_to_ring(_pscale(_inner_even(t), c))
    if kind == "e2":
        return RingElem.const(_inv24(t))
    if kind == "o2":
        return _O2_FACTOR * (binom_m32(t) * (-1) ** t * _inv24(t))
    raise ValueError(f"unknown auxiliary coefficient {kind!r}")


_GO1_AT_1 = RingElem({(-1, 1): Fraction(-432, 13824), (1, 1): Fraction(-1, 13824)})


def g_component(kind: str, t: int) -> RingElem:
    """g_{e,1}, g_{e,2}, g_{o,1}, g_{o,2} at t."""
    if t < 0:
        raise DomainError("t must be non-negative")
    if kind == "ge1":
        return (RingElem.const(1) + inner_sum_S(1, t)) * _inv24(t)
    if kind == "ge2":
        if t == 0:
            return RingElem()
        return inner_sum_S(2, t) * (Fraction((-1) ** (t - 1)) * _inv24(t))
    if kind == "go1":
        if t == 0:
            return _O2_FACTOR
        if t == 1:
            return _GO1_AT_1
        inner = RingElem.const(binom_m32(t)) + inner_sum_S(3, t)
        return _O2_FACTOR * inner * (Fraction((-1) ** t) * _inv24(t))
    if kind == "go2":
        return _O1_FACTOR * inner_sum_S(4, t) * _inv24(t)
    raise ValueError(f"unknown component {kind!r}")


def go1_general(t: int) -> RingElem:
    """The t >= 2 branch of g_{o,1} evaluated at any t >= 1 (S_3 taken literally)."""
    s3 = poly_to_ring(_s3_poly(t))
    inner = RingElem.const(binom_m32(t)) + s3
    return _O2_FACTOR * inner * (Fraction((-1) ** t) * _inv24(t))


@lru_cache(maxsize=None)
def g(t: int) -> RingElem:
    """Coefficient of n**(-t/2) in the expansion, by the double-sum assembly."""
    if t < 0:
        raise DomainError("t must be non-negative")
    half, odd = divmod(t, 2)
    if odd:
        return g_component("go1", half) + g_component("go2", half)
    return g_component("ge1", half) + g_component("ge2", half)


@lru_cache(maxsize=None)
def omega(t: int) -> RingElem:
    """Coefficient of n**(-t/2) by the single-sum formula."""
    if t < 0:
        raise DomainError("t must be non-negative")
    total = RingElem()
    for k in range((t + 1) // 2 + 1):
        c = binom_general(t + 1, k) * (t + 1 - k) / factorial(t + 1 - 2 * k)
        # (pi/6)^(t-2k)
        total = total + RingElem({(t - 2 * k, 0): c * Fraction(6) ** (2 * k - t)})
    # (-4 sqrt6)^(-t) = (-1)^t 4^-t 6^-ceil(t/2) sqrt6^(t mod 2)
    prefactor = RingElem.monomial(
        Fraction((-1) ** t, 4**t * 6 ** ((t + 1) // 2)), 0, t % 2
    )
    return prefactor * total


@lru_cache(maxsize=None)
def _half_binom(i: int, j: int) -> Fraction:
    """C(i/2, j), built from C(i/2, j-1)."""
    if j == 0:
        return Fraction(1)
    return _half_binom(i, j - 1) * (Fraction(i, 2) - (j - 1)) / j


def pp1_identity_sides(k: int, j: int) -> tuple[Fraction, Fraction]:
    """Both sides of sum_i (-1)^i C(k,i) C(i/2,j) = (-1)^j 2^(k-2j) (k/j) C(2j-k-1, j-k)."""
    if k < 0 or j < 0:
        raise DomainError("k and j must be non-negative")
    lhs = sum(
        ((-1) ** i * comb(k, i) * _half_binom(i, j) for i in range(k + 1)),
        Fraction(0),
    )
    if j == 0 and k == 0:
        rhs = Fraction(1)
    elif j == 0:
        # the formula has k/j; the left side is then sum (-1)^i C(k,i) = 0
        rhs = Fraction(0)
    else:
        rhs = (
            Fraction((-1) ** j)
            * Fraction(2) ** (k - 2 * j)
            * Fraction(k, j)
            * binom_general(2 * j - k - 1, j - k)
        )
    return lhs, rhs


def ring_to_ball(x: RingElem, precision_bits: int = balls.DEFAULT_PREC) -> RealBall:
    return x.to_ball(precision_bits)


# ball-valued tables for long sweeps


def alpha_ball(prec: int) -> RealBall:
    return balls._pi(prec + 8) / 6


def inner_sum_ball_tables(t_max: int, prec: int) -> dict[int, list[RealBall | None]]:
    """Enclosures of S_1..S_4(t) for 0 <= t <= t_max.

    Uses term-ratio recurrences rather than the literal Pochhammer products, so
    it doubles as an independent cross-check of the exact construction.
    Entries outside a sum's domain are None.
    """
    wp = prec + 2 * max(t_max, 1).bit_length() + 16
    x = alpha_ball(wp)
    x = x * x
    # A(s) = (1/2 - s)_{s+1} / (s+1)!
    a_exact = Fraction(1, 2)
    j_odd: list[RealBall] = [RealBall(0, 0, 0, wp)]
    j_even: list[RealBall] = []
    for s in range(t_max + 1):
        if s > 0:
            a_exact = a_exact * (Fraction(-1, 2) - (s - 1)) / (s + 1)
        a_ball = RealBall.from_fraction(a_exact, wp)
        # odd inner: tau_1 = X, tau_{u+1} = tau_u X (s-u) / ((s+u+1)(2u)(2u+1))
        if s > 0:
            tau = x
            acc = tau
            for u in range(1, s):
                tau = tau * x * RealBall.from_fraction(
                    Fraction(s - u, (s + u + 1) * (2 * u) * (2 * u + 1)), wp
                )
                acc = acc + tau
            j_odd.append(a_ball * acc)
        # even inner: sigma_0 = 1, sigma_{u+1} = sigma_u X (s-u) / ((s+u+2)(2u+1)(2u+2))
        sigma = RealBall(1, 0, 0, wp)
        acc = sigma
        for u in range(0, s):
            sigma = sigma * x * RealBall.from_fraction(
                Fraction(s - u, (s + u + 2) * (2 * u + 1) * (2 * u + 2)), wp
            )
            acc = acc + sigma
        j_even.append(a_ball * acc)
    cb = [RealBall.from_fraction(binom_m32(m), wp) for m in range(t_max + 1)]
    s1: list[RealBall | None] = []
    s4: list[RealBall | None] = []
    run1 = RealBall(0, 0, 0, wp)
    run4 = RealBall(0, 0, 0, wp)
    for t in range(t_max + 1):
        if t > 0:
            run1 = run1 + (j_odd[t] if t % 2 == 0 else -j_odd[t])
        run4 = run4 + (j_even[t] if t % 2 == 0 else -j_even[t])
        s1.append(run1.with_prec(prec))
        s4.append(run4.with_prec(prec))
    s2: list[RealBall | None] = [None]
    s3: list[RealBall | None] = [None, None]
    for t in range(1, t_max + 1):
        acc = RealBall(0, 0, 0, wp)
        for s in range(t):
            acc = acc + cb[t - s - 1] * j_even[s]
        s2.append(acc.with_prec(prec))
    for t in range(2, t_max + 1):
        acc = RealBall(0, 0, 0, wp)
        for s in range(1, t + 1):
            acc = acc + cb[t - s] * j_odd[s]
        s3.append(acc.with_prec(prec))
    return {1: s1, 2: s2[: t_max + 1], 3: s3[: t_max + 1], 4: s4}

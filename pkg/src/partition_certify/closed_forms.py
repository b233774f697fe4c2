"""Exact checks of the inner-sum closed forms and the telescoping certificate.

The inner sum of ``S_3`` over ``s`` satisfies an order-two recurrence in ``u``
whose proof is the rational certificate ``g = R * f`` below.  Dividing the
summand recurrence by ``f(t,u,s)`` leaves an identity between rational
functions of ``(t,u,s)``; multiplying by

    K = (s+2u+1)(s+2u+2)(s+2u+3)(s+2u+4)(2s-2t+2u-1)(2s-2t+2u+1)

turns it into a polynomial identity of degree at most (3, 8, 7) in (t, u, s).
Checking it on a tensor grid with 15 points per variable where K does not
vanish is therefore a complete proof.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Mapping

from .coefficients import binom_m32, half_poch, inner_sum_poly, Poly
from .errors import DomainError, PoleError
from .report import VerificationReport
from .ring import pochhammer

GAMMA_TEXT = """
-6 s -6 s^2 +16 s^3 +8 s^4 +6 t -6 s t -46 s^2 t -20 s^3 t +12 t^2 +30 s t^2 +12 s^2 t^2
-12 u -22 s u +66 s^2 u +64 s^3 u +8 s^4 u -7 t u -138 s t u -126 s^2 t u -16 s^3 t u
+52 t^2 u +57 s t^2 u +8 s^2 t^2 u -27 u^2 +88 s u^2 +172 s^2 u^2 +44 s^3 u^2 -108 t u^2
-235 s t u^2 -68 s^2 t u^2 +57 t^2 u^2 +24 s t^2 u^2 +32 u^3 +192 s u^3 +92 s^2 u^3
-140 t u^3 -98 s t u^3 +18 t^2 u^3 +75 u^4 +86 s u^4 -48 t u^4 +30 u^5
"""

# degree of K * residual in (t, u, s); see tests for the symbolic recomputation
RESIDUAL_DEGREES = (3, 8, 7)

Monomial = tuple[int, int, int]  # exponents of (t, u, s)

_TERM = re.compile(r"([+-])\s*(\d+)((?:\s*[stu](?:\^\d+)?)*)")
_VAR = re.compile(r"([stu])(?:\^(\d+))?")


def parse_polynomial(text: str) -> dict[Monomial, int]:
    """Parse ``+c s^a t^b u^c`` terms into a map from (t, u, s) exponents."""
    poly: dict[Monomial, int] = {}
    consumed = 0
    for m in _TERM.finditer(text):
        consumed += len(m.group(0).replace(" ", "").replace("\n", ""))
        coeff = int(m.group(2)) * (1 if m.group(1) == "+" else -1)
        exps = {"t": 0, "u": 0, "s": 0}
        for var, power in _VAR.findall(m.group(3)):
            exps[var] += int(power or 1)
        key = (exps["t"], exps["u"], exps["s"])
        poly[key] = poly.get(key, 0) + coeff
    if consumed != len(re.sub(r"\s", "", text)):
        raise ValueError("unparsed text in polynomial")
    return poly


GAMMA: dict[Monomial, int] = parse_polynomial(GAMMA_TEXT)


def eval_poly(poly: Mapping[Monomial, int], t, u, s) -> Fraction:
    return sum(
        (Fraction(c) * Fraction(t) ** a * Fraction(u) ** b * Fraction(s) ** e for (a, b, e), c in poly.items()),
        Fraction(0),
    )


def rec_coefficients(t: int, u: int) -> tuple[int, int, int]:
    """(a0, a1, a2) of the recurrence in u."""
    return u * (t - u), 2 * (2 + t) * (1 + u), (2 + u) * (2 + t + u)


@dataclass(frozen=True, order=True)
class CertPoint:
    t: int
    u: int
    s: int

    @property
    def in_simplex(self) -> bool:
        return 0 <= self.u <= self.t and 0 <= self.s <= self.t - self.u


def f3_summand(p: CertPoint) -> Fraction:
    """(1/(s+u)) (1/2-s-u)_{s+u+1} C(-3/2, t-s-u) (-s-u)_u / (s+2u)!"""
    t, u, s = p.t, p.u, p.s
    m = s + u
    if m == 0:
        raise PoleError("f3 summand has a pole at s+u = 0")
    if m < 0 or s + 2 * u < 0 or u < 0:
        raise DomainError(f"summand undefined at {p}")
    return half_poch(m) * binom_m32(t - m) * pochhammer(-m, u) / (m * factorial(s + 2 * u))


def _cert_denominator_factors(t: int, u: int, s: int) -> dict[str, int]:
    return {
        "s+u": s + u,
        "1+s+2u": 1 + s + 2 * u,
        "2+s+2u": 2 + s + 2 * u,
        "3+s+2u": 3 + s + 2 * u,
        "-1+2s-2t+2u": -1 + 2 * s - 2 * t + 2 * u,
    }


def cert3_g(p: CertPoint, gamma: Mapping[Monomial, int] = GAMMA) -> Fraction:
    """The telescoping certificate g(t,u,s) evaluated exactly."""
    t, u, s = p.t, p.u, p.s
    factors = _cert_denominator_factors(t, u, s)
    zero = [name for name, v in factors.items() if v == 0]
    if zero:
        raise PoleError(f"certificate pole at {p}: factor {', '.join(zero)} vanishes")
    m = s + u
    den = Fraction(factorial(s + 2 * u))
    for v in factors.values():
        den *= v
    num = -eval_poly(gamma, t, u, s) * s * binom_m32(t - m) * pochhammer(-m, u) * half_poch(m)
    return num / den


def verify_certificate3(p: CertPoint, gamma: Mapping[Monomial, int] = GAMMA) -> bool:
    """g(t,u,s+1) - g(t,u,s) == a0 f(t,u,s) + a1 f(t,u+1,s) + a2 f(t,u+2,s)."""
    t, u, s = p.t, p.u, p.s
    a0, a1, a2 = rec_coefficients(t, u)
    lhs = cert3_g(CertPoint(t, u, s + 1), gamma) - cert3_g(p, gamma)
    rhs = (
        a0 * f3_summand(p)
        + a1 * f3_summand(CertPoint(t, u + 1, s))
        + a2 * f3_summand(CertPoint(t, u + 2, s))
    )
    return lhs == rhs


# rational-function form of the summand recurrence


def _ratio_s(t, u, s) -> Fraction:
    """f(t,u,s+1) / f(t,u,s) as a rational function (m = s+u)."""
    m = s + u
    return (
        Fraction(m) / (m + 1)
        * (Fraction(-1, 2) - m)
        * Fraction(t - m) / (Fraction(-1, 2) - t + m)
        * Fraction(m + 1, m - u + 1)
        / (m + u + 1)
    )


def _ratio_u(t, u, s) -> Fraction:
    """f(t,u+1,s) / f(t,u,s)."""
    m = s + u
    return (
        Fraction(m) / (m + 1)
        * (Fraction(-1, 2) - m)
        * Fraction(t - m) / (Fraction(-1, 2) - t + m)
        * Fraction(-(m + 1))
        / ((m + u + 1) * (m + u + 2))
    )


def _cert_ratio(t, u, s, gamma) -> Fraction:
    """g(t,u,s) / f(t,u,s) = -gamma s / ((1+s+2u)(2+s+2u)(3+s+2u)(-1+2s-2t+2u))."""
    den = (1 + s + 2 * u) * (2 + s + 2 * u) * (3 + s + 2 * u) * (-1 + 2 * s - 2 * t + 2 * u)
    return -eval_poly(gamma, t, u, s) * s / den


def certificate_residual(t: int, u: int, s: int, gamma: Mapping[Monomial, int] = GAMMA) -> Fraction:
    """Summand recurrence divided by f(t,u,s); zero for a valid certificate."""
    a0, a1, a2 = rec_coefficients(t, u)
    rs = _ratio_s(t, u, s)
    ru1 = _ratio_u(t, u, s)
    ru2 = ru1 * _ratio_u(t, u + 1, s)
    lhs = _cert_ratio(t, u, s + 1, gamma) * rs - _cert_ratio(t, u, s, gamma)
    return lhs - (a0 + a1 * ru1 + a2 * ru2)


def clearing_factor(t: int, u: int, s: int) -> int:
    return (
        (s + 2 * u + 1) * (s + 2 * u + 2) * (s + 2 * u + 3) * (s + 2 * u + 4)
        * (2 * s - 2 * t + 2 * u - 1) * (2 * s - 2 * t + 2 * u + 1)
    )


GRID_ORIGIN = (20, 1, 0)


def verify_certificate_grid(
    size: int = 15, gamma: Mapping[Monomial, int] = GAMMA, origin: tuple[int, int, int] = GRID_ORIGIN
) -> VerificationReport:
    """Residual of the certificate on a size**3 tensor grid away from all poles."""
    t0, u0, s0 = origin
    rep = VerificationReport("certificate-grid", f"t in {t0}..{t0 + size - 1}, u in {u0}..{u0 + size - 1}, s in {s0}..{s0 + size - 1}")
    for t in range(t0, t0 + size):
        for u in range(u0, u0 + size):
            for s in range(s0, s0 + size):
                if clearing_factor(t, u, s) == 0 or s + u + 1 == 0 or s + 1 == 0:
                    raise PoleError(f"grid point {(t, u, s)} hits a pole; move the origin")
                rep.record((t, u, s), certificate_residual(t, u, s, gamma) == 0)
    complete = size > max(RESIDUAL_DEGREES)
    rep.notes["complete_proof"] = complete
    return rep


def random_cert_points(count: int, seed: int, t_max: int = 60) -> list[CertPoint]:
    """Pseudo-random in-simplex points with u >= 1."""
    rng = random.Random(seed)
    pts = []
    while len(pts) < count:
        t = rng.randint(1, t_max)
        u = rng.randint(1, t)
        s = rng.randint(0, t - u)
        pts.append(CertPoint(t, u, s))
    return pts


def verify_certificate_sample(
    count: int = 500, seed: int = 42, gamma: Mapping[Monomial, int] = GAMMA
) -> VerificationReport:
    rep = VerificationReport("certificate-sample", f"{count} random in-simplex points", seed=seed)
    for p in random_cert_points(count, seed):
        rep.record((p.t, p.u, p.s), verify_certificate3(p, gamma))
    return rep


def perturbed_gamma(monomial: Monomial | None = None, delta: int = 1) -> dict[Monomial, int]:
    """gamma with one coefficient shifted by delta (mutation testing)."""
    g = dict(GAMMA)
    key = monomial if monomial is not None else min(g)
    g[key] = g.get(key, 0) + delta
    return g


# direct inner sums


def direct_inner_sum(i: int, t: int, u: int) -> Fraction:
    """S_i(t, u) by direct summation over s."""
    total = Fraction(0)
    if i == 1:
        for s in range(t - u + 1):
            m = s + u
            total += Fraction((-1) ** m, m) * half_poch(m) * pochhammer(-m, u) / factorial(s + 2 * u)
    elif i == 2:
        for s in range(t - u):
            m = s + u
            total += half_poch(m) * binom_m32(t - m - 1) * pochhammer(-m, u) / factorial(s + 2 * u + 1)
    elif i == 3:
        for s in range(t - u + 1):
            total += f3_summand(CertPoint(t, u, s))
    elif i == 4:
        for s in range(t - u + 1):
            m = s + u
            total += (-1) ** m * half_poch(m) * pochhammer(-m, u) / factorial(s + 2 * u + 1)
    else:
        raise ValueError(f"no inner sum S_{i}")
    return total


def _check_inner_range(i: int, t: int, u: int) -> None:
    lo, hi = {1: (1, t), 2: (0, t - 1), 3: (1, t), 4: (0, t)}[i]
    if t < 1 or not lo <= u <= hi:
        raise DomainError(f"S_{i}(t,u) closed form needs t >= 1 and {lo} <= u <= {hi}; got t={t}, u={u}")


def pochhammer_ratio(t: int, u: int) -> Fraction:
    """(-1)^u (-t)_u / (t)_u as an exact product."""
    out = Fraction(1)
    for i in range(u):
        out *= Fraction(t - i, t + i)
    return out


def harmonic_like(t: int, u: int) -> Fraction:
    """sum_{i=1}^u (-1)^i (-t)_i / ((t+i) (t)_i)."""
    total = Fraction(0)
    ratio = Fraction(1)
    for i in range(1, u + 1):
        ratio *= Fraction(t - i + 1, t + i - 1)
        total += ratio / (t + i)
    return total


def _tail_bracket(t: int, u: int) -> Fraction:
    """1/(1+2t) + (2t/(1+2t)) * sum_{i<=u} ..."""
    return Fraction(1, 1 + 2 * t) + Fraction(2 * t, 1 + 2 * t) * harmonic_like(t, u)


def inner_closed_form_parts(i: int, t: int, u: int) -> tuple[Fraction, Fraction]:
    """The two A_{i,1}, A_{i,2} pieces (A_1 is returned as (A_1, 0))."""
    _check_inner_range(i, t, u)
    c = binom_m32(t)
    r = pochhammer_ratio(t, u)
    inv = Fraction((-1) ** t) / c
    br = _tail_bracket(t, u)
    if i == 1:
        a1 = t * r / ((1 + 2 * t) * (t + u)) - (-inv + br)
        return a1, Fraction(0)
    if i == 2:
        return 2 * t * (t - u) * r / ((1 + 2 * t) * (1 + 2 * u) * (t + u)), -inv + br
    if i == 3:
        return t * (1 + 2 * t - 2 * u) * r / (2 * (1 + 2 * t) * u * (t + u)), -inv + br
    return t * r / (2 * (1 + 2 * t) * (t + u) * (t + u + 1)), (inv - br) / (1 + 2 * u)


def inner_closed_form(i: int, t: int, u: int) -> Fraction:
    """S_i(t, u) from its closed form."""
    a, b = inner_closed_form_parts(i, t, u)
    c = binom_m32(t)
    if i == 1:
        return (-1) ** t * c * Fraction((-1) ** u, 2 * u) * a
    if i == 2:
        return c * (-1) ** (u + 1) * (a + b)
    if i == 3:
        return c * (-1) ** u * (a + b)
    return c * (-1) ** (u + t) * (a + b)


def sigma_form3(t: int, u: int) -> Fraction:
    """S_3(t, u) in the shifted-Pochhammer form with (2+t)_u."""
    if t < 1 or not 1 <= u <= t:
        raise DomainError("needs 1 <= u <= t")
    c = binom_m32(t)
    lead = Fraction(2 + t - u, u * (2 + t + u)) * pochhammer(-t, u) / pochhammer(2 + t, u)
    inner = Fraction(0)
    for i in range(1, u + 1):
        inner += (-1) ** i * pochhammer(-t, i) / ((2 + i + t) * pochhammer(2 + t, i))
    bracket = Fraction(1, 1 + t) + Fraction(2, 2 + t) + 2 * inner
    return -((-1) ** (t + u)) + c / 2 * (lead + (-1) ** u * bracket)


def initial_values3(t: int) -> tuple[Fraction, Fraction | None]:
    """Printed S_3(t,1) and S_3(t,2); the second is None for t < 2."""
    if t < 1:
        raise DomainError("t must be at least 1")
    c = binom_m32(t)
    first = (-1) ** t - Fraction(t + 2, 2 * (1 + t)) * c
    if t < 2:
        return first, None
    second = -((-1) ** t) + Fraction(8 + 7 * t + t * t, 4 * (1 + t) * (2 + t)) * c
    return first, second


def verify_recurrence3(t: int, u: int, values: Mapping[int, Fraction] | None = None) -> bool:
    """(t-u) u S[u] + 2(2+t)(1+u) S[u+1] + (2+u)(2+t+u) S[u+2] == 0."""
    if t < 2 or not 1 <= u <= t - 2:
        raise DomainError("needs t >= 2 and 1 <= u <= t-2")

    def val(k: int) -> Fraction:
        if values is not None and k in values:
            return values[k]
        return direct_inner_sum(3, t, k)

    a0, a1, a2 = rec_coefficients(t, u)
    return a0 * val(u) + a1 * val(u + 1) + a2 * val(u + 2) == 0


def telescoped_recurrence3(t: int, u: int) -> tuple[Fraction, Fraction]:
    """Sum the summand recurrence over 0 <= s <= t-u: (sum of g-differences, sum of right sides)."""
    a0, a1, a2 = rec_coefficients(t, u)
    lhs = Fraction(0)
    rhs = Fraction(0)
    for s in range(t - u + 1):
        p = CertPoint(t, u, s)
        lhs += cert3_g(CertPoint(t, u, s + 1)) - cert3_g(p)
        rhs += a0 * f3_summand(p) + a1 * f3_summand(CertPoint(t, u + 1, s)) + a2 * f3_summand(CertPoint(t, u + 2, s))
    return lhs, rhs


_WEIGHT_RANGE = {1: (1, 0), 2: (0, -1), 3: (1, 0), 4: (0, 0)}


def weighted_closed_form_poly(i: int, t: int) -> Poly:
    """sum_u (-1)^u X^u / (2u-1)! or /(2u)! times the closed form, as a polynomial in X."""
    lo, hi_off = _WEIGHT_RANGE[i]
    hi = t + hi_off
    coeffs = [Fraction(0)] * (hi + 1 if hi >= 0 else 0)
    for u in range(lo, hi + 1):
        w = factorial(2 * u - 1) if i in (1, 3) else factorial(2 * u)
        coeffs[u] = Fraction((-1) ** u, w) * inner_closed_form(i, t, u)
    return tuple(coeffs)


def closed_forms_reproduce(i: int, t: int) -> bool:
    """The weighted closed forms reassemble the direct double sum S_i(t)."""
    direct = list(inner_sum_poly(i, t))
    assembled = list(weighted_closed_form_poly(i, t))
    n = max(len(direct), len(assembled))
    direct += [Fraction(0)] * (n - len(direct))
    assembled += [Fraction(0)] * (n - len(assembled))
    return direct == assembled

"""Range-certified checks of the auxiliary inequalities.

Rational statements are checked exactly.  Statements involving pi, cosh or
sinh are checked with RealBall arithmetic; infinite tails are always enclosed
by an explicit majorant, never by "summing until it looks converged".
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Sequence

from . import balls
from .balls import RealBall, Tri, certify_cmp
from .bounds import alpha, bound_constant, lhat2_uhat2, mu, n0, prefactor
from .closed_forms import harmonic_like, pochhammer_ratio
from .coefficients import binom_m32, g_component, inner_sum_ball_tables, inner_sum_S
from .errors import DomainError, HypothesisError
from .report import VerificationReport
from .ring import binom_general, ring_to_ball

Q = Fraction


def _both(lo: Tri, hi: Tri) -> Tri:
    """Combine two certified comparisons into one verdict."""
    if lo is Tri.FALSE or hi is Tri.FALSE:
        return Tri.FALSE
    if lo is Tri.TRUE and hi is Tri.TRUE:
        return Tri.TRUE
    return Tri.UNDECIDED


def _verdict(tri: Tri) -> bool | None:
    return {Tri.TRUE: True, Tri.FALSE: False}.get(tri)


def _exact_between(lo: Fraction, x: Fraction, hi: Fraction, strict_hi: bool = True) -> Tri:
    ok = lo < x and (x < hi if strict_hi else x <= hi)
    return Tri.TRUE if ok else Tri.FALSE


def _ball(x, prec: int) -> RealBall:
    return RealBall.coerce(x, prec)


def _sqrt(x, prec: int) -> RealBall:
    return balls.sqrt(RealBall.coerce(x, prec), prec)


# product inequality


def check_product_inequality(xs: Sequence, ys: Sequence) -> bool:
    """prod(1 - x_j) / prod(1 + y_j) >= 1 - sum x_j - sum y_j, exactly.

    The proof needs 0 <= x_j <= 1; with a negative x_j the claim fails,
    e.g. xs = [1, -1], ys = [0, 0].
    """
    xs = [Q(x) for x in xs]
    ys = [Q(y) for y in ys]
    if len(xs) != len(ys):
        raise HypothesisError("xs and ys must have the same length")
    if any(not 0 <= x <= 1 for x in xs):
        raise HypothesisError("every x_j must lie in [0, 1]")
    if any(y < 0 for y in ys):
        raise HypothesisError("every y_j must be non-negative")
    num = Q(1)
    den = Q(1)
    for x, y in zip(xs, ys):
        num *= 1 - x
        den *= 1 + y
    return num / den >= 1 - sum(xs) - sum(ys)


def product_inequality_sweep(count: int = 10_000, seed: int = 42, max_len: int = 6) -> VerificationReport:
    rng = random.Random(seed)
    rep = VerificationReport("product-inequality", f"{count} random tuples of length 1..{max_len}", seed=seed)
    for i in range(count):
        m = rng.randint(1, max_len)
        xs = [Q(rng.randint(0, 20), 20) for _ in range(m)]
        ys = [Q(rng.randint(0, 40), 20) for _ in range(m)]
        rep.record(i, check_product_inequality(xs, ys))
    return rep


# Pochhammer ratio bounds


def _ratio_bounds_hold(which: str, t: int, u: int, r: Fraction, h: Fraction) -> bool:
    if which == "lem2":
        mid = t * r / ((1 + 2 * t) * (t + u))
        return Q(1, 2 * t) >= mid >= Q(1, 2 * t) * (1 - (u * u + Q(1, 2)) / t)
    if which == "lem3":
        mid = Q(1, 1 + 2 * t) + Q(2 * t, 1 + 2 * t) * h
        top = Q(2 * u + 1, 2 * t)
        return top >= mid >= top - Q(4 * u**3 + 6 * u**2 + 8 * u + 3, 12 * t * t)
    raise ValueError(f"unknown ratio lemma {which!r}")


def check_pochhammer_ratio_bounds(which: str, t: int, u: int) -> bool:
    """Exact check of the two-sided bounds on the Pochhammer ratio expressions."""
    if t < 1 or not 0 <= u <= t:
        raise DomainError("needs t >= 1 and 0 <= u <= t")
    return _ratio_bounds_hold(which, t, u, pochhammer_ratio(t, u), harmonic_like(t, u))


def ratio_bounds_sweep(which: str, t_max: int = 300) -> VerificationReport:
    """All 1 <= t <= t_max and 0 <= u <= t, with R and H built incrementally in u."""
    rep = VerificationReport(f"ratio-{which}", f"1 <= t <= {t_max}, 0 <= u <= t")
    for t in range(1, t_max + 1):
        r = Q(1)  # (-1)^u (-t)_u / (t)_u
        h = Q(0)
        for u in range(t + 1):
            if u:
                r *= Q(t - u + 1, t + u - 1)
                h += r / (t + u)
            rep.record((t, u), _ratio_bounds_hold(which, t, u, r, h))
    return rep


# weighted cosh sums


def _weighted_terms(k: int, u_from: int, count: int, prec: int) -> list[RealBall]:
    """u^k alpha^(2u) / (2u)! for u_from <= u < u_from + count."""
    a2 = alpha(prec) * alpha(prec)
    term = balls.pow_int(a2, u_from, prec) / RealBall.exact(_fact(2 * u_from), prec)
    out = []
    for u in range(u_from, u_from + count):
        out.append(term * (u**k))
        term = term * a2 / ((2 * u + 1) * (2 * u + 2))
    return out


@lru_cache(maxsize=None)
def _fact(m: int) -> int:
    out = 1
    for i in range(2, m + 1):
        out *= i
    return out


def _geometric_tail(k: int, u_next: int, first: RealBall, prec: int) -> RealBall:
    """Enclosure [0, first / (1 - rho)] of sum_{u >= u_next} given its first term.

    rho bounds every later term ratio ((u+1)/u)^k alpha^2 / ((2u+1)(2u+2)),
    using alpha^2 < 800/729.
    """
    u = max(u_next, 1)
    rho = Q(u + 1, u) ** k * Q(800, 729) / ((2 * u + 1) * (2 * u + 2))
    if rho >= 1:
        raise ValueError("tail start too early for a geometric majorant")
    hi = first.upper / (1 - rho)
    return RealBall.from_interval(0, hi, prec)


def weighted_cosh_sum(k: int, start: int, terms: int, prec: int) -> RealBall:
    """Enclosure of sum_{u >= start} u^k alpha^(2u) / (2u)!."""
    ts = _weighted_terms(k, start, terms + 1, prec)
    total = RealBall(0, 0, 0, prec)
    for x in ts[:-1]:
        total = total + x
    return total + _geometric_tail(k, start + terms, ts[-1], prec)


def closed_sum_value(k: int, prec: int) -> RealBall:
    """cosh, alpha sinh / 2, and the two higher weighted closed forms."""
    a = alpha(prec)
    c = balls.cosh(a, prec)
    s = balls.sinh(a, prec)
    if k == 0:
        return c
    if k == 1:
        return a * s / 2
    if k == 2:
        return a * a * c / 4 + a * s / 4
    if k == 3:
        return 3 * a * a * c / 8 + a * (a * a + 1) * s / 8
    raise ValueError("k must be in 0..3")


def check_closed_sums(precision_bits: int = 128, terms: int = 40) -> VerificationReport:
    """Partial sums plus certified tails agree with the closed forms to within 2^-(prec-28)."""
    rep = VerificationReport("closed-sums", f"k in 0..3, {terms} terms", notes={"precision_bits": precision_bits})
    wp = precision_bits + 16
    tol = Q(1, 2 ** (precision_bits - 28))
    for k in range(4):
        series = weighted_cosh_sum(k, 0, terms, wp)
        closed = closed_sum_value(k, wp)
        diff = series - closed
        overlap = diff.lower <= 0 <= diff.upper
        tight = diff.upper - diff.lower < tol
        rep.record(k, overlap and tight, wp)
        rep.notes[f"width_{k}"] = float(diff.upper - diff.lower)
    return rep


# tail bound for the weighted cosh sums


def tail_constant(k: int, prec: int) -> RealBall:
    """C_k = alpha^4 2^k / 18."""
    a = alpha(prec)
    return balls.pow_int(a, 4, prec) * (2**k) / 18


def check_tail_bound(t: int, k: int, precision_bits: int = 128, terms: int = 30) -> Tri:
    """Certify sum_{u > t} u^k alpha^(2u)/(2u)! <= C_k / t^2."""
    if t < 1 or not 0 <= k <= 3:
        raise DomainError("needs t >= 1 and 0 <= k <= 3")
    wp = precision_bits + 16
    tail = weighted_cosh_sum(k, t + 1, terms, wp)
    bound = tail_constant(k, wp) / (t * t)
    # a certified tail < bound also certifies <=
    return certify_cmp(tail, bound)


def tail_ratio_holds(n: int, k: int, alpha2: Fraction = Q(800, 729)) -> bool:
    """f(n+1)/f(n) <= 1 with alpha^2 replaced by a rational upper bound."""
    num = alpha2 * (n + 2) ** (k + 2) * (2 * n + 1)
    den = (2 * n + 4) * (2 * n + 3) ** 2 * (n + 1) ** k * n * n
    return num <= den


def tail_f_value(n: int, k: int, alpha2: Fraction) -> Fraction:
    """f(n) = n^2 (n+1)^(k+2) alpha^(2n+2) / ((2n+1) (2n+2)!) for rational alpha^2."""
    return Q(n * n * (n + 1) ** (k + 2)) * alpha2 ** (n + 1) / ((2 * n + 1) * _fact(2 * n + 2))


def tail_bound_sweep(t_max: int = 500, precision_bits: int = 128, ratio_n_max: int = 500) -> VerificationReport:
    rep = VerificationReport("tail-bound", f"1 <= t <= {t_max}, 0 <= k <= 3; ratio for n <= {ratio_n_max}")
    for k in range(4):
        for t in range(1, t_max + 1):
            rep.record(("tail", t, k), _verdict(check_tail_bound(t, k, precision_bits)), precision_bits)
        for n in range(1, ratio_n_max + 1):
            rep.record(("ratio", n, k), tail_ratio_holds(n, k))
        # f(1) = C_k holds identically in alpha; check it at the rational bound
        a2 = Q(800, 729)
        rep.record(("f1", k), tail_f_value(1, k, a2) == a2 * a2 * 2**k / 18)
    return rep


# estimates for the inner sums


# (lower numerator, lower power of t, upper numerator, upper power of t)
S_ESTIMATE_BOUNDS: dict[int, tuple[Fraction, int, Fraction, int]] = {
    1: (Q(-1, 8), 2, Q(13, 25), 2),
    2: (Q(-11, 10), 1, Q(1), 1),
    3: (Q(-71, 100), 1, Q(12, 25), 1),
    4: (Q(-1, 3), 2, Q(13, 20), 2),
}

S_ESTIMATE_MIN_T = {1: 1, 2: 1, 3: 2, 4: 1}


def s_estimate_middle(i: int, t: int, s_value: RealBall, prec: int) -> RealBall:
    """The normalized quantity that each estimate traps between two rational bounds."""
    a = alpha(prec)
    c = balls.cosh(a, prec)
    sh = balls.sinh(a, prec)
    cb = binom_m32(t)
    d = (-1) ** t * cb  # positive
    if i == 1:
        return s_value / d - (c - 1) / d + a * sh / (2 * t)
    if i == 2:
        return s_value / cb - (-1) ** t * c / cb + sh / a
    if i == 3:
        return s_value / cb + (-1) ** t * a * sh / cb + 1 - c
    if i == 4:
        return s_value / d - sh / (a * d) + c / (2 * t)
    raise ValueError(f"no estimate for S_{i}")


def check_S_estimate(
    i: int,
    t: int,
    precision_bits: int = 128,
    s_value: RealBall | None = None,
    bounds: tuple[Fraction, int, Fraction, int] | None = None,
) -> Tri:
    """Certify the two-sided estimate for S_i(t).

    ``s_value`` may supply an enclosure of S_i(t); by default the exact ring
    value is converted at the working precision.
    """
    if i not in S_ESTIMATE_BOUNDS:
        raise ValueError(f"no estimate for S_{i}")
    if t < S_ESTIMATE_MIN_T[i]:
        raise DomainError(f"estimate for S_{i} needs t >= {S_ESTIMATE_MIN_T[i]}")
    wp = precision_bits + 16
    if s_value is None:
        s_value = ring_to_ball(inner_sum_S(i, t), wp)
    lo_c, lo_p, hi_c, hi_p = bounds or S_ESTIMATE_BOUNDS[i]
    mid = s_estimate_middle(i, t, s_value, wp)
    return _both(certify_cmp(lo_c / Q(t) ** lo_p, mid), certify_cmp(mid, hi_c / Q(t) ** hi_p))


@lru_cache(maxsize=4)
def _ball_tables(t_max: int, prec: int) -> dict:
    return inner_sum_ball_tables(t_max, prec)


def s_estimate_sweep(
    i: int,
    t_min: int | None = None,
    t_max: int = 1000,
    start_bits: int = 128,
    max_bits: int = 512,
    bounds: tuple[Fraction, int, Fraction, int] | None = None,
) -> VerificationReport:
    """Sweep one estimate using ball tables for S_i(t); undecided points are retried at doubled precision."""
    t_min = S_ESTIMATE_MIN_T[i] if t_min is None else t_min
    rep = VerificationReport(f"s-estimate-{i}", f"{t_min} <= t <= {t_max}")
    pending = list(range(t_min, t_max + 1))
    prec = start_bits
    while True:
        table = _ball_tables(t_max, prec + 16)[i]
        retry = []
        for t in pending:
            res = check_S_estimate(i, t, prec, table[t], bounds)
            if res is Tri.UNDECIDED and prec < max_bits:
                retry.append(t)
            else:
                rep.record(t, _verdict(res), prec)
        if not retry:
            break
        pending = retry
        prec = min(2 * prec, max_bits)
    rep.violations.sort()
    rep.undecided.sort()
    return rep


# tail lemmas for binomial series


TAIL_LEMMAS = ("errorlem1", "errorlem2", "errorlem3", "bprz_b", "bprz_c", "bprz_beta")


def _d(t: int) -> Fraction:
    """(-1)^t C(-3/2, t), which is positive and at most t + 1."""
    return (-1) ** t * binom_m32(t)


def _linear_geometric_tail(start: int, x: Fraction) -> Fraction:
    """sum_{t >= start} (t + 1) x^t for 0 <= x < 1."""
    return x**start * ((start + 1) - start * x) / (1 - x) ** 2


def _binomial_tail(a: Fraction, x: Fraction, k: int, wp: int) -> RealBall:
    """sum_{t >= k} C(a, t) (-x)^t = (1 - x)^a minus the first k terms."""
    partial = sum((binom_general(a, t) * (-x) ** t for t in range(k)), Q(0))
    base = 1 - x
    if a.denominator == 1:
        head = base ** int(a)
        return RealBall.from_fraction(head - partial, wp)
    # half-integer exponent: (1 - x)^a = (1 - x)^floor(a) * sqrt(1 - x)
    fl = a - Q(1, 2)
    head = _sqrt(base, wp) * RealBall.from_fraction(base ** int(fl), wp)
    return head - partial


def check_tail_lemma(which: str, params: dict, precision_bits: int = 128) -> Tri:
    """Certify one tail inequality at the given parameters.

    errorlem1: n, k.  errorlem2: n, k, s.  errorlem3: n, k.
    bprz_b: n, k, s.  bprz_c: m, n, s.  bprz_beta: m, n, s.
    """
    p = dict(params)
    if which == "errorlem1":
        n, k = p["n"], p["k"]
        if n < 1 or k < 1:
            raise HypothesisError("needs n, k >= 1")
        x = Q(1, 24 * n)
        total = x**k / (1 - x)
        return _exact_between(x**k, total, Q(24, 23) * x**k, strict_hi=False)
    if which == "errorlem2":
        n, k, s = p["n"], p["k"], p["s"]
        if min(n, k, s) < 1:
            raise HypothesisError("needs n, k, s >= 1")
        x = Q(1, 24 * n)
        wp = precision_bits + 16
        terms = p.get("terms", 40)
        partial = sum((_d(t) / Q(t) ** s * x**t for t in range(k, k + terms)), Q(0))
        # d(t)/t^s <= t + 1
        total = RealBall.from_interval(partial, partial + _linear_geometric_tail(k + terms, x), wp)
        root = _sqrt(k + 1, wp)
        scale = balls.pow_int(root, 2 * s - 1, wp)  # (k+1)^(s - 1/2)
        lo = x**k / scale
        hi = Q(12, 5) * x**k / scale
        return _both(certify_cmp(lo, total), certify_cmp(total, hi))
    if which == "errorlem3":
        n, k = p["n"], p["k"]
        if n < 1 or k < 0:
            raise HypothesisError("needs n >= 1 and k >= 0")
        x = Q(1, 24 * n)
        wp = precision_bits + 16 + k * (24 * n).bit_length()
        total = _binomial_tail(Q(-3, 2), x, k, wp)
        hi = 4 * _sqrt(2, wp) * _sqrt(k + 1, wp) * x**k
        return _both(certify_cmp(Q(0), total), certify_cmp(total, hi))
    if which == "bprz_b":
        n, k, s = p["n"], p["k"], p["s"]
        if min(n, k, s) < 1 or n <= 2 * s:
            raise HypothesisError("needs n, k, s >= 1 and n > 2s")
        x = Q(1, n)
        wp = precision_bits + 16 + k * n.bit_length()
        total = _binomial_tail(Q(-(2 * s - 1), 2), x, k, wp)
        b = 4 * _sqrt(s, wp) / _sqrt(s + k - 1, wp) * comb(s + k - 1, s - 1) * x**k
        return _both(certify_cmp(Q(0), total), certify_cmp(total, b))
    if which == "bprz_c":
        m, n, s = p["m"], p["n"], p["s"]
        if min(m, n, s) < 1 or n <= 2 * s:
            raise HypothesisError("needs m, n, s >= 1 and n > 2s")
        x = Q(s, n)
        wp = precision_bits + 16 + m * n.bit_length()
        total = _binomial_tail(Q(1, 2), x, m, wp)
        c = Q(2, m) * x**m
        return _both(certify_cmp(-c / _sqrt(m, wp), total), certify_cmp(total, Q(0)))
    if which == "bprz_beta":
        m, n, s = p["m"], p["n"], p["s"]
        if m < 1 or min(n, s) < 1 or n <= 2 * s:
            raise HypothesisError("needs m, n, s >= 1 and n > 2s")
        x = Q(1, n)
        partial = sum((binom_general(-s, t) * (-x) ** t for t in range(m)), Q(0))
        total = (1 - x) ** (-s) - partial
        beta = 2 * x**m * comb(s + m - 1, s - 1)
        return _exact_between(Q(0), total, beta)
    raise ValueError(f"unknown tail lemma {which!r}")


def tail_lemma_grid(which: str, count: int = 100, seed: int = 42) -> list[dict]:
    """A deterministic parameter grid respecting each lemma's hypotheses."""
    rng = random.Random(f"{which}:{seed}")
    pts: list[dict] = []
    while len(pts) < count:
        if which in ("errorlem1", "errorlem3"):
            pts.append({"n": rng.randint(1, 2000), "k": rng.randint(0 if which == "errorlem3" else 1, 25)})
        elif which == "errorlem2":
            pts.append({"n": rng.randint(1, 2000), "k": rng.randint(1, 25), "s": rng.randint(1, 4)})
        else:
            s = rng.randint(1, 12)
            n = rng.randint(2 * s + 1, 2 * s + 500)
            key = "k" if which == "bprz_b" else "m"
            pts.append({key: rng.randint(1, 25), "n": n, "s": s})
    return pts


def tail_lemma_sweep(which: str, count: int = 100, seed: int = 42, precision_bits: int = 128) -> VerificationReport:
    rep = VerificationReport(f"tail-{which}", f"{count} grid points", seed=seed)
    for p in tail_lemma_grid(which, count, seed):
        rep.record(sorted(p.items()), _verdict(check_tail_lemma(which, p, precision_bits)), precision_bits)
    return rep


# tails of the component series


_COMPONENTS = {1: "ge1", 2: "ge2", 3: "go1", 4: "go2"}
MAJORANT_CONSTANT = 8


@lru_cache(maxsize=4096)
def component_ball(j: int, t: int, prec: int) -> RealBall:
    return ring_to_ball(g_component(_COMPONENTS[j], t), prec)


def component_majorant_holds(j: int, t: int, prec: int = 128) -> Tri:
    """Certify |g_x(t)| < 8 (t + 1) / 24^t for one component."""
    return certify_cmp(abs(component_ball(j, t, prec)), Q(MAJORANT_CONSTANT * (t + 1), 24**t))


def check_errorsum(j: int, k: int, n: int, precision_bits: int = 128, terms: int = 40) -> Tri:
    """Certify L_j(k) / n^k < sum_{t >= k} g_x(t) n^-t < U_j(k) / n^k (half powers for odd j).

    The sum is the exact partial sum over ``terms`` coefficients plus the
    majorant 8 (t+1) / (24 n)^t for every later term.
    """
    if j not in _COMPONENTS:
        raise ValueError("j must be in 1..4")
    if k < 1 or n < 1:
        raise DomainError("needs k, n >= 1")
    wp = precision_bits + 16
    inv_n = RealBall.from_fraction(Q(1, n), wp)
    total = RealBall(0, 0, 0, wp)
    power = balls.pow_int(inv_n, k, wp)
    for t in range(k, k + terms):
        total = total + component_ball(j, t, wp) * power
        power = power * inv_n
    maj = MAJORANT_CONSTANT * _linear_geometric_tail(k + terms, Q(1, 24 * n))
    total = total.widen(maj)
    scale = balls.pow_int(inv_n, k, wp)
    if j >= 3:
        half = 1 / _sqrt(n, wp)
        total = total * half
        scale = scale * half
    lo = bound_constant(f"L{j}", k, wp) * scale
    hi = bound_constant(f"U{j}", k, wp) * scale
    return _both(certify_cmp(lo, total), certify_cmp(total, hi))


def errorsum_sweep(k_max: int = 20, ns: Sequence[int] = (10, 116, 1000), precision_bits: int = 128) -> VerificationReport:
    rep = VerificationReport("errorsum", f"j in 1..4, 1 <= k <= {k_max}, n in {list(ns)}")
    for j in range(1, 5):
        for k in range(1, k_max + 1):
            for n in ns:
                rep.record((j, k, n), _verdict(check_errorsum(j, k, n, precision_bits)), precision_bits)
    return rep


def majorant_sweep(t_max: int = 100, precision_bits: int = 128) -> VerificationReport:
    """Spot check of the coefficient majorant used for the component tails."""
    rep = VerificationReport("component-majorant", f"j in 1..4, 0 <= t <= {t_max}")
    for j in range(1, 5):
        for t in range(t_max + 1):
            rep.record((j, t), _verdict(component_majorant_holds(j, t, precision_bits + 16)), precision_bits)
    return rep


# the mu-power sandwich


def check_errorlem5(k: int, n: int, precision_bits: int = 128) -> Tri:
    """Certify pref * Lhat2 / sqrt(n)^k < sqrt(12) e^mu / ((24n-1) mu^k) < pref * Uhat2 / sqrt(n)^k."""
    if k < 1 or n < 1:
        raise DomainError("needs k, n >= 1")
    if n <= n0(k):
        raise HypothesisError(f"needs n > n0(k) = {n0(k)}")
    wp = precision_bits + 16
    m = mu(n, wp)
    mid = _sqrt(12, wp) * balls.exp(m, wp) / (24 * n - 1) / balls.pow_int(m, k, wp)
    base = prefactor(n, wp) / balls.pow_int(_sqrt(n, wp), k, wp)
    lo, hi = lhat2_uhat2(k, n, wp)
    return _both(certify_cmp(base * lo, mid), certify_cmp(mid, base * hi))


def errorlem5_sweep(k_max: int = 50, n_max: int = 100, precision_bits: int = 128) -> VerificationReport:
    rep = VerificationReport("errorlem5", f"1 <= k <= {k_max}, n0(k) < n <= {n_max}")
    for k in range(1, k_max + 1):
        for n in range(1, n_max + 1):
            if n <= n0(k):
                continue
            rep.record((k, n), _verdict(check_errorlem5(k, n, precision_bits)), precision_bits)
    return rep

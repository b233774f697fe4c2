"""Explicit bound constants and certified two-sided bounds for p(n).

Every quantity is returned as a RealBall.  A bracket is *certified* when the
ball for the lower bound lies strictly below the exact integer p(n) and the
ball for the upper bound strictly above it; anything else is reported as
undecided (precision exhausted) or violation (separated on the wrong side).
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from . import balls
from .balls import RealBall, Tri, certify_cmp
from .coefficients import g as g_coeff
from .errors import DomainError
from .report import VerificationReport
from .ring import ring_to_ball

SWEEP_MAX_PREC = 512
CJW_START = 1207
COROLLARY_START = 116
LOGCONCAVE_START = 26
COROLLARY_ERR = (Fraction(-1, 14), Fraction(1, 13))


def default_prec(n: int, w: int) -> int:
    """Starting precision: 64 bits plus 4 per order plus the bit length of n."""
    return 64 + 4 * w + max(n, 1).bit_length()


# elementary constants


@lru_cache(maxsize=64)
def alpha(prec: int) -> RealBall:
    return balls._pi(prec + 8) / 6


@lru_cache(maxsize=64)
def _cosh_sinh_alpha(prec: int) -> tuple[RealBall, RealBall]:
    a = alpha(prec + 8)
    return balls.cosh(a, prec + 8), balls.sinh(a, prec + 8)


def _sqrt(x, prec: int) -> RealBall:
    return balls.sqrt(RealBall.coerce(x, prec), prec)


def mu(n: int, precision_bits: int = balls.DEFAULT_PREC) -> RealBall:
    """(pi/6) sqrt(24n - 1)."""
    if n < 1:
        raise DomainError("mu(n) needs n >= 1")
    wp = precision_bits + 8
    return (alpha(wp) * _sqrt(24 * n - 1, wp)).with_prec(precision_bits)


def nu_and_ghat(k: int, precision_bits: int = balls.DEFAULT_PREC) -> tuple[RealBall, RealBall]:
    """nu(k) and the threshold ghat(k) = ((36/pi^2) nu(k)^2 + 1) / 24."""
    if k < 2:
        raise DomainError("ghat(k) needs k >= 2 (log log k)")
    wp = precision_bits + 16
    lk = balls.log(RealBall.exact(k, wp), wp)
    llk = balls.log(lk, wp)
    nu = (
        2 * balls.log(RealBall.exact(6, wp), wp)
        + 2 * k * balls.log(RealBall.exact(2, wp), wp)
        + 2 * k * lk
        + 2 * k * llk
        + 5 * k * llk / lk
    )
    pi = balls._pi(wp)
    ghat = (36 * nu * nu / (pi * pi) + 1) / 24
    return nu.with_prec(precision_bits), ghat.with_prec(precision_bits)


def ghat(k: int, precision_bits: int = balls.DEFAULT_PREC) -> RealBall:
    return nu_and_ghat(k, precision_bits)[1]


def n0(k: int) -> Fraction:
    """(k + 2) / 24."""
    return Fraction(k + 2, 24)


@dataclass(frozen=True)
class Threshold:
    kind: str  # g_hat, n0, cjw, corollary, logconcave
    value: RealBall | Fraction | int

    def exceeded_by(self, n: int) -> Tri:
        """Certified n > value."""
        return certify_cmp(self.value if isinstance(self.value, RealBall) else Fraction(self.value), Fraction(n))


def threshold(kind: str, k: int | None = None, precision_bits: int = 128) -> Threshold:
    if kind == "g_hat":
        return Threshold(kind, ghat(k, precision_bits))
    if kind == "n0":
        return Threshold(kind, n0(k))
    fixed = {"cjw": CJW_START - 1, "corollary": COROLLARY_START - 1, "logconcave": LOGCONCAVE_START - 1}
    if kind not in fixed:
        raise ValueError(f"unknown threshold {kind!r}")
    # "for all n >= N" is n > N - 1 on the integers
    return Threshold(kind, fixed[kind])


@lru_cache(maxsize=4096)
def _ghat_exceeded(n: int, w: int) -> bool:
    """Certified n > ghat(w); undecided at the cap counts as not exceeded."""
    dec = balls.adaptive_decide(lambda p: ghat(w, p), Fraction(n), 64, min(balls.precision_cap(), 1024))
    return dec.result is Tri.TRUE


def threshold_ok(n: int, w: int) -> bool:
    """Whether the sandwich of order w is guaranteed at n.

    The proof needs n > max(1, n0(w), ghat(w)).  ghat(1) is undefined, and
    ghat(2) < 1, so the first two conditions are checked explicitly.
    """
    if n <= 1 or n <= n0(w):
        return False
    return w < 2 or _ghat_exceeded(n, w)


def first_guaranteed_n(w: int) -> int:
    """Smallest integer n at which the order-w sandwich is guaranteed."""
    n = 2 if w < 2 else max(2, int(ghat(w, 256).lower))
    while not threshold_ok(n, w):
        n += 1
    return n


def ghat_dominates(k: int, precision_bits: int = 128) -> Tri:
    """Certified ghat(k) > max(n0(k), 1)."""
    return certify_cmp(max(n0(k), Fraction(1)), ghat(k, precision_bits))


# the error-term constants


def bound_constant(which: str, k: int, precision_bits: int = balls.DEFAULT_PREC) -> RealBall:
    """L1..L4, U1..U4 including their powers of 1/sqrt(24)."""
    if k < 1:
        raise DomainError("bound constants need k >= 1")
    wp = precision_bits + 16
    a = alpha(wp)
    c, sh = _cosh_sinh_alpha(wp)
    r = _sqrt(k + 1, wp)  # sqrt(k+1)
    r3 = r * (k + 1)  # (k+1)^(3/2)
    q = Fraction
    if which == "L1":
        core = c - 6 * a * sh / (5 * r) - q(3, 10) / r3
    elif which == "U1":
        core = 24 * c / 23 - a * sh / (2 * r) + q(5, 4) / r3
    elif which == "L2":
        core = -24 * c / 23 - q(12, 5) / r
    elif which == "U2":
        core = -c + 4 * _sqrt(2, wp) * sh / a * r + q(66, 25) / r
    elif which == "L3":
        core = q(19, 10) * a * sh - q(109, 10) * c * r - q(23, 10) / r
    elif which == "U3":
        core = 2 * a * sh + q(33, 10) / r
    elif which == "L4":
        core = q(1, 4) * c / r - q(11, 20) * a * sh - q(41, 50) / r3
    elif which == "U4":
        core = q(63, 100) * c / r - q(13, 25) * a * sh + q(21, 50) / r3
    else:
        raise ValueError(f"unknown bound constant {which!r}")
    scale = RealBall.from_fraction(q(1, 24**k), wp)
    if which[1] in "34":
        scale = scale / _sqrt(24, wp)
    return (core * scale).with_prec(precision_bits)


def lhat2_uhat2(k: int, n: int, precision_bits: int = balls.DEFAULT_PREC) -> tuple[RealBall, RealBall]:
    """alpha^-k 24^(-k/2) times (1 - 1/(4 sqrt n)) and (1 + k/(3n))."""
    if k < 1 or n < 1:
        raise DomainError("k and n must be at least 1")
    wp = precision_bits + 16
    base = 1 / (balls.pow_int(alpha(wp), k, wp) * balls.pow_int(_sqrt(24, wp), k, wp))
    lo = base * (1 - 1 / (4 * _sqrt(n, wp)))
    hi = base * (1 + Fraction(k, 3 * n))
    return lo.with_prec(precision_bits), hi.with_prec(precision_bits)


def gamma_pair(w: int) -> tuple[int, int]:
    return (23, 24) if w % 2 == 0 else (15, 17)


def final_LU(w: int, precision_bits: int = balls.DEFAULT_PREC) -> tuple[RealBall, RealBall]:
    """L(w) = -gamma0 sqrt(ceil(w/2)+1) / sqrt(24)^w and U(w) likewise with gamma1."""
    if w < 1:
        raise DomainError("w must be at least 1")
    wp = precision_bits + 16
    g0, g1 = gamma_pair(w)
    root = _sqrt(-(-w // 2) + 1, wp)
    den = balls.pow_int(_sqrt(24, wp), w, wp)
    base = root / den
    return (-g0 * base).with_prec(precision_bits), (g1 * base).with_prec(precision_bits)


# the sandwich


@dataclass(frozen=True)
class BoundPair:
    n: int
    order_w: int
    lower: RealBall
    upper: RealBall
    threshold_ok: bool
    precision_bits: int
    kind: str = "main"

    def verdict(self, p_exact: int) -> str:
        """inside, violation, or undecided relative to the exact value."""
        lo = certify_cmp(self.lower, Fraction(p_exact))
        hi = certify_cmp(Fraction(p_exact), self.upper)
        if lo is Tri.FALSE or hi is Tri.FALSE:
            return "violation"
        if lo is Tri.TRUE and hi is Tri.TRUE:
            return "inside"
        return "undecided"

    def to_dict(self, p_exact: int | None = None) -> dict:
        d = {
            "schema_version": 1,
            "kind": self.kind,
            "n": self.n,
            "w": self.order_w,
            "lower": ball_json(self.lower),
            "upper": ball_json(self.upper),
            "guaranteed": self.threshold_ok,
            "precision_bits": self.precision_bits,
        }
        if p_exact is not None:
            d["p_exact"] = str(p_exact)
            d["verdict"] = self.verdict(p_exact)
        return d


def ball_json(b: RealBall) -> dict:
    """Exact dyadic midpoint and radius as strings."""
    return {"mid": str(b.midpoint), "rad": str(b.radius)}


def ball_from_json(d: dict, prec: int = balls.DEFAULT_PREC) -> RealBall:
    return RealBall.from_fraction(Fraction(d["mid"]), prec).widen(Fraction(d["rad"]))


def prefactor(n: int, precision_bits: int) -> RealBall:
    """e^{pi sqrt(2n/3)} / (4 n sqrt 3)."""
    wp = precision_bits + 16
    pi = balls._pi(wp)
    arg = pi * _sqrt(Fraction(2 * n, 3), wp)
    return (balls.exp(arg, wp) / (4 * n * _sqrt(3, wp))).with_prec(precision_bits)


@lru_cache(maxsize=256)
def coefficient_ball(t: int, precision_bits: int) -> RealBall:
    return ring_to_ball(g_coeff(t), precision_bits)


def _partial_series(n: int, w: int, wp: int) -> tuple[RealBall, RealBall]:
    """(sum_{t<w} g(t) n^{-t/2}, n^{-w/2})."""
    inv_root = 1 / _sqrt(n, wp)
    total = RealBall(0, 0, 0, wp)
    power = RealBall(1, 0, 0, wp)
    for t in range(w):
        total = total + coefficient_ball(t, wp) * power
        power = power * inv_root
    return total, power


def _sandwich(n: int, w: int, lo_c: RealBall, hi_c: RealBall, wp: int, pref: RealBall | None) -> tuple[RealBall, RealBall]:
    series, tail_power = _partial_series(n, w, wp)
    pref = prefactor(n, wp) if pref is None else pref
    return pref * (series + lo_c * tail_power), pref * (series + hi_c * tail_power)


def main_bounds(n: int, w: int, precision_bits: int | None = None, pref: RealBall | None = None) -> BoundPair:
    """Prefactor times (sum_{t<w} g(t)/sqrt(n)^t + L(w) or U(w) over sqrt(n)^w)."""
    if n < 1 or w < 1:
        raise DomainError("n and w must be at least 1")
    prec = precision_bits or default_prec(n, w)
    wp = prec + 16
    lo_c, hi_c = final_LU(w, wp)
    lo, hi = _sandwich(n, w, lo_c, hi_c, wp, pref)
    return BoundPair(n, w, lo.with_prec(prec), hi.with_prec(prec), threshold_ok(n, w), prec)


def corollary4_bounds(n: int, precision_bits: int | None = None, pref: RealBall | None = None) -> BoundPair:
    """The order-4 sandwich with the rational error terms -1/14 and +1/13."""
    if n < 1:
        raise DomainError("n must be at least 1")
    prec = precision_bits or default_prec(n, 4)
    wp = prec + 16
    lo_c, hi_c = (RealBall.from_fraction(c, wp) for c in COROLLARY_ERR)
    lo, hi = _sandwich(n, 4, lo_c, hi_c, wp, pref)
    return BoundPair(n, 4, lo.with_prec(prec), hi.with_prec(prec), n >= COROLLARY_START, prec, "corollary")


def _bprz_pair(n: int, k: int, prec: int) -> tuple[RealBall, RealBall]:
    wp = prec + 16
    m = mu(n, wp)
    base = _sqrt(12, wp) * balls.exp(m, wp) / (24 * n - 1)
    core = 1 - 1 / m
    err = 1 / balls.pow_int(m, k, wp)
    return (base * (core - err)).with_prec(prec), (base * (core + err)).with_prec(prec)


def bprz_bounds(n: int, k: int, precision_bits: int | None = None) -> BoundPair:
    """sqrt(12) e^mu / (24n - 1) (1 - 1/mu -+ 1/mu^k); guaranteed for n > ghat(k), (n,k) != (6,2)."""
    if k < 2:
        raise DomainError("k must be at least 2")
    if n < 1:
        raise DomainError("n must be at least 1")
    prec = precision_bits or default_prec(n, k)
    lo, hi = _bprz_pair(n, k, prec)
    ok = threshold_ok(n, k) and (n, k) != (6, 2)
    return BoundPair(n, k, lo, hi, ok, prec, "bprz")


def cjw_bounds(n: int, precision_bits: int | None = None) -> BoundPair:
    """The k = 10 form of the same bound, guaranteed for n >= 1207."""
    if n < 1:
        raise DomainError("n must be at least 1")
    prec = precision_bits or default_prec(n, 10)
    lo, hi = _bprz_pair(n, 10, prec)
    return BoundPair(n, 10, lo, hi, n >= CJW_START, prec, "cjw")


_BUILDERS = {
    "main": lambda n, w, p, pref: main_bounds(n, w, p, pref),
    "corollary": lambda n, w, p, pref: corollary4_bounds(n, p, pref),
    "bprz": lambda n, w, p, pref: bprz_bounds(n, w, p),
    "cjw": lambda n, w, p, pref: cjw_bounds(n, p),
}


def certify_bracket(
    n: int, w: int, p_exact: int, kind: str = "main", max_bits: int = SWEEP_MAX_PREC
) -> tuple[str, BoundPair]:
    """Evaluate the bound with precision doubling until the verdict is decided."""
    prec = min(default_prec(n, w), max_bits)
    while True:
        pair = _BUILDERS[kind](n, w, prec, None)
        v = pair.verdict(p_exact)
        if v != "undecided" or prec >= max_bits:
            return v, pair
        prec = min(2 * prec, max_bits)


def _sweep_chunk(args) -> list[tuple[int, int, str, int]]:
    ws, items, kind, max_bits = args
    out = []
    for n, p in items:
        prec = min(max(default_prec(n, w) for w in ws), max_bits)
        # the prefactor is shared across orders at the common starting precision
        pref = prefactor(n, prec + 16) if kind in ("main", "corollary") else None
        for w in ws:
            pair = _BUILDERS[kind](n, w, prec, pref)
            v = pair.verdict(p)
            used = prec
            if v == "undecided":
                v, pair = certify_bracket(n, w, p, kind, max_bits)
                used = pair.precision_bits
            out.append((n, w, v, used))
    return out


def sandwich_sweep(
    ws: Sequence[int],
    ns: Iterable[int],
    table,
    kind: str = "main",
    jobs: int = 1,
    max_bits: int = SWEEP_MAX_PREC,
    chunk: int = 250,
) -> VerificationReport:
    """Certify lower < p(n) < upper over a grid; points are (n, w)."""
    ns = sorted(set(ns))
    ws = sorted(set(ws))
    rep = VerificationReport(
        f"{kind}-sandwich",
        f"w in {ws}, n in {ns[0]}..{ns[-1]}" if ns else f"w in {ws}, no n",
    )
    tasks = [
        (ws, [(n, table[n]) for n in ns[i : i + chunk]], kind, max_bits) for i in range(0, len(ns), chunk)
    ]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_sweep_chunk, tasks))
    else:
        results = [_sweep_chunk(t) for t in tasks]
    rows = sorted(r for part in results for r in part)
    for n, w, v, used in rows:
        rep.record((n, w), {"inside": True, "violation": False}.get(v), used)
    return rep


def guaranteed_range(w: int, n_max: int) -> range:
    return range(first_guaranteed_n(w), n_max + 1)


def default_jobs() -> int:
    return max(1, min(8, os.cpu_count() or 1))


# consequences


def logconcave_from_bounds(n: int, precision_bits: int | None = None) -> Tri:
    """Certify p(n)^2 > p(n-1) p(n+1) from the order-4 brackets alone."""
    prec = precision_bits or default_prec(n, 4) + 32
    lo = corollary4_bounds(n, prec).lower
    left = corollary4_bounds(n - 1, prec).upper
    right = corollary4_bounds(n + 1, prec).upper
    if balls.certified_sign(lo) <= 0:
        return Tri.UNDECIDED
    return certify_cmp(left * right, lo * lo)


def asymptotic_ratio(n: int, p_exact: int, precision_bits: int = 128) -> RealBall:
    """p(n) divided by the leading term e^{pi sqrt(2n/3)} / (4 n sqrt 3)."""
    return RealBall.exact(p_exact, precision_bits) / prefactor(n, precision_bits)


def corollary_reduction(precision_bits: int = 128) -> tuple[Tri, Tri]:
    """Certified L(4) > -1/14 and U(4) < 1/13."""
    lo, hi = final_LU(4, precision_bits)
    return certify_cmp(Fraction(-1, 14), lo), certify_cmp(hi, Fraction(1, 13))

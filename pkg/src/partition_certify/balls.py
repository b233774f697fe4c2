"""Midpoint-radius real balls with dyadic midpoints.

A :class:`RealBall` stores an integer mantissa ``man``, an integer radius
``rad`` and a shared binary exponent ``exp``; it encloses the interval
``[(man - rad) * 2**exp, (man + rad) * 2**exp]``.  Every operation returns a
ball that contains the exact image of every point of its inputs, so a chain of
operations yields a rigorous enclosure of the exact expression.

Transcendental functions are evaluated with argument reduction and truncated
Taylor series whose remainders are added to the radius explicitly.  pi comes
from Machin's formula in fixed-point integer arithmetic with a counted
truncation error.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Callable, NamedTuple, Union

from .errors import DomainStraddle, PrecisionOverflow

DEFAULT_PREC = 64
DEFAULT_MAX_PREC = 4096
MAX_PREC_ENV = "PARTITION_CERTIFY_MAX_PREC"

Exact = Union[int, Fraction]
Number = Union["RealBall", int, Fraction]


def precision_cap() -> int:
    """Largest precision a caller may request (env override allowed)."""
    raw = os.environ.get(MAX_PREC_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_MAX_PREC
    return int(raw)


def require_prec(prec: int) -> int:
    if prec < 2:
        raise ValueError(f"precision must be at least 2 bits, got {prec}")
    cap = precision_cap()
    if prec > cap:
        raise PrecisionOverflow(f"requested {prec} bits exceeds cap of {cap} bits")
    return prec


def _dyadic(m: int, e: int) -> Fraction:
    if e >= 0:
        return Fraction(m << e)
    return Fraction(m, 1 << -e)


def _ceil_shift(x: int, d: int) -> int:
    """ceil(x / 2**d) for x >= 0, d >= 0."""
    return -((-x) >> d)


@dataclass(frozen=True, slots=True)
class RealBall:
    man: int
    rad: int
    exp: int
    prec: int

    # construction

    @staticmethod
    def exact(value: int, prec: int = DEFAULT_PREC) -> "RealBall":
        return RealBall(int(value), 0, 0, prec)

    @staticmethod
    def from_fraction(q: Exact, prec: int = DEFAULT_PREC) -> "RealBall":
        q = Fraction(q)
        num, den = q.numerator, q.denominator
        if den & (den - 1) == 0:
            return RealBall(num, 0, -(den.bit_length() - 1), prec)
        k = max(0, prec + 4 + den.bit_length() - abs(num).bit_length())
        return _make((num << k) // den, 1, -k, prec)

    @staticmethod
    def from_interval(lo: Exact, hi: Exact, prec: int = DEFAULT_PREC) -> "RealBall":
        lo, hi = Fraction(lo), Fraction(hi)
        if lo > hi:
            raise ValueError("empty interval")
        mid = RealBall.from_fraction((lo + hi) / 2, prec)
        return mid.widen((hi - lo) / 2)

    @staticmethod
    def coerce(x: Number, prec: int = DEFAULT_PREC) -> "RealBall":
        if isinstance(x, RealBall):
            return x
        if isinstance(x, int):
            return RealBall.exact(x, prec)
        if isinstance(x, Fraction):
            return RealBall.from_fraction(x, prec)
        raise TypeError(f"cannot convert {type(x).__name__} to RealBall")

    # views

    @property
    def midpoint(self) -> Fraction:
        return _dyadic(self.man, self.exp)

    @property
    def radius(self) -> Fraction:
        return _dyadic(self.rad, self.exp)

    @property
    def precision_bits(self) -> int:
        return self.prec

    @property
    def lower(self) -> Fraction:
        return _dyadic(self.man - self.rad, self.exp)

    @property
    def upper(self) -> Fraction:
        return _dyadic(self.man + self.rad, self.exp)

    def is_exact(self) -> bool:
        return self.rad == 0

    def contains(self, x: Union[Exact, "RealBall"]) -> bool:
        if isinstance(x, RealBall):
            return self.lower <= x.lower and x.upper <= self.upper
        x = Fraction(x)
        return self.lower <= x <= self.upper

    def widen(self, amount: Exact) -> "RealBall":
        """Return the ball with radius increased by at least ``amount``."""
        amount = Fraction(amount)
        if amount < 0:
            raise ValueError("negative widening")
        if amount == 0:
            return self
        scaled = amount * _dyadic(1, -self.exp)
        extra = -((-scaled.numerator) // scaled.denominator)
        return _make(self.man, self.rad + extra, self.exp, self.prec)

    def with_prec(self, prec: int) -> "RealBall":
        return _make(self.man, self.rad, self.exp, prec)

    def __float__(self) -> float:
        return float(self.midpoint)

    def rel_accuracy_bits(self) -> int:
        """Rough count of correct leading bits; large for exact balls."""
        if self.rad == 0:
            return 1 << 30
        return abs(self.man).bit_length() - self.rad.bit_length()

    def __repr__(self) -> str:
        return f"RealBall({float(self.midpoint)!r} +/- {float(self.radius):.3g}, prec={self.prec})"

    # arithmetic

    def __neg__(self) -> "RealBall":
        return RealBall(-self.man, self.rad, self.exp, self.prec)

    def __pos__(self) -> "RealBall":
        return self

    def __abs__(self) -> "RealBall":
        if self.man - self.rad >= 0:
            return self
        if self.man + self.rad <= 0:
            return -self
        hi = max(abs(self.man - self.rad), abs(self.man + self.rad))
        return _make(hi, hi, self.exp - 1, self.prec)

    def __add__(self, other: Number) -> "RealBall":
        other = _coerce_like(other, self)
        if other is NotImplemented:
            return NotImplemented
        return _add(self, other)

    __radd__ = __add__

    def __sub__(self, other: Number) -> "RealBall":
        other = _coerce_like(other, self)
        if other is NotImplemented:
            return NotImplemented
        return _add(self, -other)

    def __rsub__(self, other: Number) -> "RealBall":
        other = _coerce_like(other, self)
        if other is NotImplemented:
            return NotImplemented
        return _add(other, -self)

    def __mul__(self, other: Number) -> "RealBall":
        other = _coerce_like(other, self)
        if other is NotImplemented:
            return NotImplemented
        return _mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other: Number) -> "RealBall":
        other = _coerce_like(other, self)
        if other is NotImplemented:
            return NotImplemented
        return _div(self, other)

    def __rtruediv__(self, other: Number) -> "RealBall":
        other = _coerce_like(other, self)
        if other is NotImplemented:
            return NotImplemented
        return _div(other, self)

    def __pow__(self, n: int) -> "RealBall":
        if not isinstance(n, int):
            return NotImplemented
        return pow_int(self, n)


def _coerce_like(x: Number, like: RealBall):
    if isinstance(x, RealBall):
        return x
    if isinstance(x, (int, Fraction)):
        return RealBall.coerce(x, like.prec)
    return NotImplemented


def _make(man: int, rad: int, exp: int, prec: int) -> RealBall:
    """Round the mantissa to ``prec`` bits, folding the error into the radius."""
    bits = max(abs(man).bit_length(), rad.bit_length())
    d = bits - prec
    if d > 0:
        man_r = man >> d
        rad = _ceil_shift(rad, d)
        if man_r << d != man:
            rad += 1
        man = man_r
        exp += d
    return RealBall(man, rad, exp, prec)


ZERO = RealBall(0, 0, 0, DEFAULT_PREC)
ONE = RealBall(1, 0, 0, DEFAULT_PREC)


def _top(b: RealBall) -> int:
    """Exponent t with |x| < 2**t for every x in the ball."""
    return b.exp + (abs(b.man) + b.rad).bit_length()


def _add(a: RealBall, b: RealBall) -> RealBall:
    prec = max(a.prec, b.prec)
    if a.exp < b.exp:
        a, b = b, a
    # a has the larger exponent; b may be negligible next to it
    if a.man != 0 and b.exp < a.exp:
        up = max(0, prec + 4 - abs(a.man).bit_length())
        a_exp = a.exp - up
        if _top(b) <= a_exp:
            return _make(a.man << up, (a.rad << up) + 1, a_exp, prec)
    shift = a.exp - b.exp
    man = (a.man << shift) + b.man
    rad = (a.rad << shift) + b.rad
    return _make(man, rad, b.exp, prec)


def _mul(a: RealBall, b: RealBall) -> RealBall:
    prec = max(a.prec, b.prec)
    man = a.man * b.man
    rad = abs(a.man) * b.rad + abs(b.man) * a.rad + a.rad * b.rad
    return _make(man, rad, a.exp + b.exp, prec)


def _recip(b: RealBall, prec: int) -> RealBall:
    m, r = b.man, b.rad
    if abs(m) <= r:
        raise DomainStraddle("division by a ball containing zero")
    am = abs(m)
    k = prec + 4 + am.bit_length()
    q, rem = divmod(1 << k, am)
    if r == 0 and rem == 0:
        err = 0
    else:
        # |1/y - 1/m| <= r / (|m| (|m| - r)) for y in the ball
        num = r << k
        den = am * (am - r)
        err = -((-num) // den) + 1
    if m < 0:
        q = -q
    return _make(q, err, -k - b.exp, prec)


def _div(a: RealBall, b: RealBall) -> RealBall:
    prec = max(a.prec, b.prec)
    return _mul(a, _recip(b, prec + 4)).with_prec(prec)


def recip(b: RealBall) -> RealBall:
    return _recip(b, b.prec)


def sqrt(x: Number, prec: int | None = None) -> RealBall:
    x = RealBall.coerce(x, prec or DEFAULT_PREC)
    prec = prec or x.prec
    m, r, e = x.man, x.rad, x.exp
    lo, hi = m - r, m + r
    if lo < 0:
        raise DomainStraddle("sqrt of a ball containing negative numbers")
    if hi == 0:
        return RealBall(0, 0, 0, prec)
    j = max(0, 2 * prec + 8 - hi.bit_length())
    if (e - j) % 2:
        j += 1
    half = (e - j) // 2
    hi_n, lo_n = hi << j, lo << j
    s_hi = isqrt(hi_n)
    if s_hi * s_hi < hi_n:
        s_hi += 1
    s_lo = isqrt(lo_n)
    return _make(s_lo + s_hi, s_hi - s_lo, half - 1, prec)


def _div_small(x: RealBall, k: int, wp: int) -> RealBall:
    """x / k for a positive integer k."""
    shift = k.bit_length() + 4 + max(0, wp - abs(x.man).bit_length())
    q, rem = divmod(x.man << shift, k)
    rad = -((-(x.rad << shift)) // k)
    if rem:
        rad += 1
    return _make(q, rad, x.exp - shift, wp)


def _exp_small(y: RealBall, wp: int) -> RealBall:
    """exp(y) for |y| <= 2**-8 by a Taylor series with remainder."""
    # remainder after n terms is at most 2 |y|^n / n! <= 2**(1 - 8n)
    n = (wp + 12) // 8 + 1
    p = RealBall(1, 0, 0, wp)
    for k in range(n - 1, 0, -1):
        p = _add(RealBall(1, 0, 0, wp), _div_small(_mul(y, p), k, wp))
    return _add(p, RealBall(0, 1, 1 - 8 * n, wp))


def exp(x: Number, prec: int | None = None) -> RealBall:
    x = RealBall.coerce(x, prec or DEFAULT_PREC)
    prec = prec or x.prec
    if x.man == 0 and x.rad == 0:
        return RealBall(1, 0, 0, prec)
    s = max(0, _top(x) + 8)
    wp = prec + s + 24
    y = RealBall(x.man, x.rad, x.exp - s, wp)
    p = _exp_small(y, wp)
    for _ in range(s):
        p = _mul(p, p)
    return p.with_prec(prec)


def _atanh_series(z: RealBall, wp: int) -> RealBall:
    """atanh(z) for 0 <= z <= 1/3."""
    n = wp // 3 + 4
    z2 = _mul(z, z)
    power = z
    total = RealBall(0, 0, 0, wp)
    for j in range(n):
        total = _add(total, _div_small(power, 2 * j + 1, wp))
        power = _mul(power, z2)
    # tail <= z^(2n+1) / ((2n+1)(1 - z^2)) <= 2**-wp for z <= 1/3
    return _add(total, RealBall(0, 1, -wp, wp))


@lru_cache(maxsize=None)
def _log2(wp: int) -> RealBall:
    third = RealBall.from_fraction(Fraction(1, 3), wp + 8)
    return (_atanh_series(third, wp + 8) * 2).with_prec(wp)


def _log_dyadic(man: int, exp_: int, wp: int) -> RealBall:
    b = man.bit_length()
    half = 1 << (b - 1)
    e = exp_ + b - 1
    # man / 2^(b-1) lies in [1, 2); log of it is 2 atanh((f-1)/(f+1))
    z = RealBall.from_fraction(Fraction(man - half, man + half), wp + 8)
    val = _atanh_series(z, wp + 8) * 2
    if e:
        val = val + _log2(wp + 8) * e
    return val.with_prec(wp)


def log(x: Number, prec: int | None = None) -> RealBall:
    x = RealBall.coerce(x, prec or DEFAULT_PREC)
    prec = prec or x.prec
    if x.man - x.rad <= 0:
        raise DomainStraddle("log of a ball containing non-positive numbers")
    wp = prec + 16
    val = _log_dyadic(x.man, x.exp, wp)
    if x.rad:
        # |log y - log m| <= r / (m - r)
        val = val.widen(Fraction(x.rad, x.man - x.rad))
    return val.with_prec(prec)


def cosh(x: Number, prec: int | None = None) -> RealBall:
    x = RealBall.coerce(x, prec or DEFAULT_PREC)
    prec = prec or x.prec
    wp = prec + 12
    e = exp(x.with_prec(wp), wp)
    return ((e + _recip(e, wp)) / 2).with_prec(prec)


def sinh(x: Number, prec: int | None = None) -> RealBall:
    x = RealBall.coerce(x, prec or DEFAULT_PREC)
    prec = prec or x.prec
    wp = prec + 12 + max(0, -_top(x))
    e = exp(x.with_prec(wp), wp)
    return ((e - _recip(e, wp)) / 2).with_prec(prec)


def pow_int(x: Number, n: int, prec: int | None = None) -> RealBall:
    x = RealBall.coerce(x, prec or DEFAULT_PREC)
    prec = prec or x.prec
    if n < 0:
        return _recip(pow_int(x, -n, prec + 4), prec)
    result = RealBall(1, 0, 0, prec)
    base = x.with_prec(prec + n.bit_length() + 4)
    while n:
        if n & 1:
            result = _mul(result, base)
        n >>= 1
        if n:
            base = _mul(base, base)
    return result.with_prec(prec)


def _atan_inv_fixed(x: int, w: int) -> tuple[int, int]:
    """floor-ish atan(1/x) * 2**w with an explicit error bound in units."""
    power = (1 << w) // x
    total = power
    x2 = x * x
    k = 1
    sign = -1
    while power:
        power //= x2
        total += sign * (power // (2 * k + 1))
        sign = -sign
        k += 1
    # each term is off by less than 2 units; the alternating tail by less than 1
    return total, 2 * k + 1


@lru_cache(maxsize=None)
def _pi_fixed(w: int) -> tuple[int, int]:
    a, ea = _atan_inv_fixed(5, w)
    b, eb = _atan_inv_fixed(239, w)
    return 16 * a - 4 * b, 16 * ea + 4 * eb


def ball_pi(precision_bits: int = DEFAULT_PREC) -> RealBall:
    """An enclosure of pi with relative radius at most 2**(2 - precision_bits)."""
    require_prec(precision_bits)
    return _pi(precision_bits)


@lru_cache(maxsize=None)
def _pi(prec: int) -> RealBall:
    w = prec + 32
    p, err = _pi_fixed(w)
    return _make(p, err, -w, prec)


# comparisons


class Tri(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    UNDECIDED = "undecided"

    def __bool__(self) -> bool:
        raise TypeError("Tri has no truth value; compare against Tri.TRUE")


def _bounds(x: Number) -> tuple[Fraction, Fraction]:
    if isinstance(x, RealBall):
        return x.lower, x.upper
    q = Fraction(x)
    return q, q


def certify_cmp(a: Number, b: Number) -> Tri:
    """Certified ``a < b``: TRUE iff sup(a) < inf(b), FALSE iff inf(a) > sup(b)."""
    if isinstance(a, RealBall) and isinstance(b, RealBall):
        if _dy_lt(a.man + a.rad, a.exp, b.man - b.rad, b.exp):
            return Tri.TRUE
        if _dy_lt(b.man + b.rad, b.exp, a.man - a.rad, a.exp):
            return Tri.FALSE
        return Tri.UNDECIDED
    a_lo, a_hi = _bounds(a)
    b_lo, b_hi = _bounds(b)
    if a_hi < b_lo:
        return Tri.TRUE
    if a_lo > b_hi:
        return Tri.FALSE
    return Tri.UNDECIDED


certify_lt = certify_cmp


def _dy_lt(m1: int, e1: int, m2: int, e2: int) -> bool:
    e = min(e1, e2)
    return (m1 << (e1 - e)) < (m2 << (e2 - e))


def certified_sign(x: RealBall) -> int:
    """+1 or -1 when the sign is certified, 0 otherwise."""
    if x.man - x.rad > 0:
        return 1
    if x.man + x.rad < 0:
        return -1
    return 0


class Decision(NamedTuple):
    result: Tri
    precision_bits: int


Deferred = Union[Callable[[int], Number], Number]


def _evaluate(expr: Deferred, prec: int) -> Number:
    return expr(prec) if callable(expr) else expr


def adaptive_decide(
    lhs: Deferred,
    rhs: Deferred,
    start_bits: int = DEFAULT_PREC,
    max_bits: int | None = None,
) -> Decision:
    """Decide ``lhs < rhs``, doubling precision until decided or at ``max_bits``.

    ``lhs`` and ``rhs`` are callables taking a precision in bits (or plain
    numbers).  Reaching ``max_bits`` undecided is not an error.
    """
    if max_bits is None:
        max_bits = precision_cap()
    if start_bits > max_bits:
        raise ValueError("start_bits exceeds max_bits")
    require_prec(start_bits)
    require_prec(max_bits)
    prec = start_bits
    while True:
        res = certify_cmp(_evaluate(lhs, prec), _evaluate(rhs, prec))
        if res is not Tri.UNDECIDED or prec >= max_bits:
            return Decision(res, prec)
        prec = min(2 * prec, max_bits)


_OPS: dict[str, Callable] = {
    "add": lambda a, b: a + b,
    "sub": lambda a, b: a - b,
    "mul": lambda a, b: a * b,
    "div": lambda a, b: a / b,
}

_UNARY: dict[str, Callable] = {
    "sqrt": sqrt,
    "exp": exp,
    "log": log,
    "cosh": cosh,
    "sinh": sinh,
}


def ball_arith(op: str, *args, precision_bits: int = DEFAULT_PREC) -> RealBall:
    """Uniform entry point: ``ball_arith("exp", x, precision_bits=128)``."""
    require_prec(precision_bits)
    if op in _OPS:
        a, b = (RealBall.coerce(v, precision_bits).with_prec(precision_bits) for v in args)
        return _OPS[op](a, b).with_prec(precision_bits)
    if op in _UNARY:
        (x,) = args
        return _UNARY[op](RealBall.coerce(x, precision_bits), precision_bits)
    if op == "pow_int":
        x, n = args
        return pow_int(RealBall.coerce(x, precision_bits), int(n), precision_bits)
    raise ValueError(f"unknown ball operation {op!r}")


def to_decimal(x: RealBall, digits: int = 20) -> str:
    """Midpoint as a decimal string with ``digits`` significant digits."""
    mid = x.midpoint
    if mid == 0:
        return "0"
    sign = "-" if mid < 0 else ""
    mid = abs(mid)
    e10 = len(str(mid.numerator)) - len(str(mid.denominator))
    scaled = mid * Fraction(10) ** (digits - e10)
    n = round(scaled)
    if n >= 10**digits:
        e10 += 1
        n = round(mid * Fraction(10) ** (digits - e10))
    s = str(n).rjust(digits, "0")
    return f"{sign}{s[0]}.{s[1:]}e{e10 - 1:+d}"

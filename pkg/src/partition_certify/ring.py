"""Exact arithmetic in the ring Q[pi, 1/pi, sqrt(6)].

An element is a finite sum of ``c * pi**a * sqrt(6)**b`` with rational ``c``,
integer ``a`` and ``b`` in {0, 1}.  Products fold ``sqrt(6)**2`` into the
rational factor 6, so the stored form is canonical and equality is equality
of the term maps.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping, Union

from . import balls
from .balls import RealBall

Rational = Union[int, Fraction]


@dataclass(frozen=True, order=True)
class HalfInt:
    """The number ``twice_value / 2``."""

    twice_value: int

    @classmethod
    def of(cls, x: Rational) -> "HalfInt":
        q = Fraction(x) * 2
        if q.denominator != 1:
            raise ValueError(f"{x} is not a half-integer")
        return cls(q.numerator)

    def to_fraction(self) -> Fraction:
        return Fraction(self.twice_value, 2)


Scalar = Union[int, Fraction, HalfInt]


def _q(x: Scalar) -> Fraction:
    if isinstance(x, HalfInt):
        return x.to_fraction()
    return Fraction(x)


def pochhammer(x: Scalar, m: int) -> Fraction:
    """Rising factorial ``x (x+1) ... (x+m-1)``; the empty product is 1."""
    if m < 0:
        raise ValueError("Pochhammer length must be non-negative")
    x = _q(x)
    out = Fraction(1)
    for i in range(m):
        out *= x + i
    return out


def binom_general(x: Scalar, k: int) -> Fraction:
    """``x (x-1) ... (x-k+1) / k!``, with 1 at k = 0 and 0 for negative k."""
    if k < 0:
        return Fraction(0)
    x = _q(x)
    out = Fraction(1)
    for i in range(k):
        out = out * (x - i) / (i + 1)
    return out


Key = tuple[int, int]


class RingElem:
    """Immutable element of Q[pi, 1/pi, sqrt(6)]."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Key, Rational] | None = None):
        clean: dict[Key, Fraction] = {}
        for (a, b), c in (terms or {}).items():
            if b not in (0, 1):
                raise ValueError("sqrt(6) exponent must be 0 or 1 in canonical form")
            c = Fraction(c)
            if c:
                clean[(int(a), b)] = clean.get((int(a), b), Fraction(0)) + c
                if not clean[(int(a), b)]:
                    del clean[(int(a), b)]
        self._terms = clean
        self._hash = None

    @classmethod
    def const(cls, c: Rational) -> "RingElem":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, c: Rational, pi_exp: int = 0, sqrt6: int = 0) -> "RingElem":
        c = Fraction(c)
        sqrt6_pairs, sqrt6 = divmod(sqrt6, 2)
        return cls({(pi_exp, sqrt6): c * Fraction(6) ** sqrt6_pairs})

    @classmethod
    def _raw(cls, terms: dict[Key, Fraction]) -> "RingElem":
        obj = cls.__new__(cls)
        obj._terms = {k: v for k, v in terms.items() if v}
        obj._hash = None
        return obj

    @property
    def terms(self) -> dict[Key, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterable[tuple[Key, Fraction]]:
        return sorted(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = RingElem.const(other)
        if not isinstance(other, RingElem):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __add__(self, other) -> "RingElem":
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, Fraction(0)) + v
        return RingElem._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "RingElem":
        return RingElem._raw({k: -v for k, v in self._terms.items()})

    def __sub__(self, other) -> "RingElem":
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "RingElem":
        return (-self) + other

    def __mul__(self, other) -> "RingElem":
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return RingElem._raw({k: v * c for k, v in self._terms.items()})
        if not isinstance(other, RingElem):
            return NotImplemented
        out: dict[Key, Fraction] = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                c = c1 * c2
                b = b1 + b2
                if b == 2:
                    c *= 6
                    b = 0
                key = (a1 + a2, b)
                out[key] = out.get(key, Fraction(0)) + c
        return RingElem._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "RingElem":
        if n < 0:
            raise ValueError("only non-negative powers are supported")
        return reduce(lambda x, y: x * y, [self] * n, ONE)

    def scale_pi(self, shift: int) -> "RingElem":
        """Multiply by ``pi**shift``."""
        return RingElem._raw({(a + shift, b): v for (a, b), v in self._terms.items()})

    def to_ball(self, precision_bits: int = balls.DEFAULT_PREC) -> RealBall:
        return ring_to_ball(self, precision_bits)

    def __repr__(self) -> str:
        if not self._terms:
            return "RingElem(0)"
        parts = []
        for (a, b), c in self.items():
            s = str(c)
            if a:
                s += f"*pi^{a}"
            if b:
                s += "*sqrt6"
            parts.append(s)
        return "RingElem(" + " + ".join(parts) + ")"

    def to_json_terms(self) -> list[dict]:
        return [
            {"pi_exp": a, "sqrt6": b, "num": str(c.numerator), "den": str(c.denominator)}
            for (a, b), c in self.items()
        ]

    @classmethod
    def from_json_terms(cls, terms: list[dict]) -> "RingElem":
        return cls({(t["pi_exp"], t["sqrt6"]): Fraction(int(t["num"]), int(t["den"])) for t in terms})


def _lift(x):
    if isinstance(x, RingElem):
        return x
    if isinstance(x, (int, Fraction)):
        return RingElem.const(x)
    return NotImplemented


ZERO = RingElem()
ONE = RingElem.const(1)
PI = RingElem.monomial(1, 1)
SQRT6 = RingElem.monomial(1, 0, 1)


def ring_to_ball(x: RingElem, precision_bits: int = balls.DEFAULT_PREC) -> RealBall:
    """Sound enclosure of ``sum c * pi**a * sqrt(6)**b``."""
    if x.is_zero():
        return RealBall(0, 0, 0, precision_bits)
    exps = [a for a, _ in x.terms]
    span = max(abs(a) for a in exps)
    wp = precision_bits + 2 * span.bit_length() + 16 + 2 * len(x.terms).bit_length()
    pi = balls._pi(wp)
    root6 = balls.sqrt(RealBall.exact(6, wp), wp)
    total = RealBall(0, 0, 0, wp)
    pi_pow = {0: RealBall(1, 0, 0, wp)}
    for (a, b), c in x.items():
        if a not in pi_pow:
            pi_pow[a] = balls.pow_int(pi, a, wp)
        term = pi_pow[a] * RealBall.from_fraction(c, wp)
        if b:
            term = term * root6
        total = total + term
    return total.with_prec(precision_bits)

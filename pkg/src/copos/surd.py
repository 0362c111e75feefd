"""Exact numbers of the form p + q*sqrt(r) with rational p, q, r.

Every comparison in the closed-form criteria reduces to the sign of such a
number (with r = a*e for the quartic test), so this is the substrate of the
exact decision mode.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Union

Number = Union[int, Fraction]


def as_fraction(x) -> Fraction:
    """Convert ints, floats, Fractions and numeric strings to an exact Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not numbers here")
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, float):
        if x != x or x in (float("inf"), float("-inf")):
            raise ValueError(f"non-finite value {x!r}")
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def sign(x) -> int:
    return (x > 0) - (x < 0)


def surd_sign(p: Number, q: Number, r: Number) -> int:
    """Exact sign of p + q*sqrt(r) for rational p, q and r >= 0."""
    if r < 0:
        raise ValueError("negative radicand")
    sp = sign(p)
    sq = sign(q) if r != 0 else 0
    if sq == 0:
        return sp
    if sp == 0 or sp == sq:
        return sq
    lhs = p * p
    rhs = q * q * r
    if lhs > rhs:
        return sp
    if lhs < rhs:
        return sq
    return 0


class QuadSurd:
    """Element p + q*sqrt(r) of Q(sqrt(r)); r is fixed, nonnegative, rational."""

    __slots__ = ("p", "q", "r")

    def __init__(self, p, q=0, r=0):
        self.p = as_fraction(p)
        self.q = as_fraction(q)
        self.r = as_fraction(r)
        if self.r < 0:
            raise ValueError("negative radicand")

    def _coerce(self, other) -> "QuadSurd":
        if isinstance(other, QuadSurd):
            if other.r != self.r and other.q != 0 and self.q != 0:
                raise ValueError("mixing different radicands")
            r = self.r if self.q != 0 else other.r
            return QuadSurd(other.p, other.q, r)
        return QuadSurd(other, 0, self.r)

    def __add__(self, other):
        o = self._coerce(other)
        return QuadSurd(self.p + o.p, self.q + o.q, o.r if self.q == 0 else self.r)

    __radd__ = __add__

    def __neg__(self):
        return QuadSurd(-self.p, -self.q, self.r)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        r = self.r if self.q != 0 else o.r
        return QuadSurd(self.p * o.p + self.q * o.q * r, self.p * o.q + self.q * o.p, r)

    __rmul__ = __mul__

    def sign(self) -> int:
        return surd_sign(self.p, self.q, self.r)

    def __float__(self) -> float:
        return float(self.p) + float(self.q) * float(self.r) ** 0.5

    def _cmp(self, other) -> int:
        return (self - other).sign()

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        if not isinstance(other, (QuadSurd, int, Fraction)):
            return NotImplemented
        return self._cmp(other) == 0

    def __hash__(self):
        return hash((self.p, self.q, self.r))

    def __repr__(self):
        return f"QuadSurd({self.p} + {self.q}*sqrt({self.r}))"

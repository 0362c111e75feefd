"""Exact univariate polynomials, Sturm sequences and real-root isolation.

Coefficients are stored degree-ascending as Fractions.  The heavy lifting
(remainder sequences, gcds, sign evaluation) runs on primitive integer
polynomials, which keeps coefficient growth down and avoids Fraction
overhead in the inner loops.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence, Union

from .surd import QuadSurd, as_fraction, sign

INF = math.inf

Endpoint = Union[int, Fraction, float, QuadSurd]


@dataclass(frozen=True)
class Polynomial:
    """Polynomial with exact rational coefficients, lowest degree first."""

    coefficients: tuple[Fraction, ...]

    def __init__(self, coefficients: Iterable):
        coeffs = [as_fraction(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @classmethod
    def from_descending(cls, coefficients: Iterable) -> "Polynomial":
        return cls(list(coefficients)[::-1])

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coefficients) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def leading(self) -> Fraction:
        return self.coefficients[-1] if self.coefficients else Fraction(0)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __add__(self, other: "Polynomial") -> "Polynomial":
        n = max(len(self.coefficients), len(other.coefficients))
        a = self.coefficients + (Fraction(0),) * (n - len(self.coefficients))
        b = other.coefficients + (Fraction(0),) * (n - len(other.coefficients))
        return Polynomial(x + y for x, y in zip(a, b))

    def __neg__(self) -> "Polynomial":
        return Polynomial(-c for c in self.coefficients)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            k = as_fraction(other)
            return Polynomial(c * k for c in self.coefficients)
        if self.is_zero or other.is_zero:
            return Polynomial([])
        out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, x in enumerate(self.coefficients):
            for j, y in enumerate(other.coefficients):
                out[i + j] += x * y
        return Polynomial(out)

    __rmul__ = __mul__

    def derivative(self) -> "Polynomial":
        return Polynomial(i * c for i, c in enumerate(self.coefficients) if i)

    def __repr__(self) -> str:
        if self.is_zero:
            return "Polynomial(0)"
        terms = [f"{c}*t^{i}" for i, c in enumerate(self.coefficients) if c]
        return "Polynomial(" + " + ".join(terms) + ")"


# ---------------------------------------------------------------------------
# integer polynomial kernels (lists of ints, ascending)


def _trim(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _to_int(p: Polynomial) -> list[int]:
    """Positive multiple of p with integer coefficients."""
    if p.is_zero:
        return []
    den = reduce(math.lcm, (c.denominator for c in p.coefficients), 1)
    return _primitive([int(c * den) for c in p.coefficients])


def _primitive(p: list[int]) -> list[int]:
    """Divide by the (positive) content; the sign is preserved."""
    g = reduce(math.gcd, p, 0)
    if g <= 1:
        return list(p)
    return [c // g for c in p]


def _deriv(p: list[int]) -> list[int]:
    return [i * c for i, c in enumerate(p)][1:]


def _prem(f: list[int], g: list[int]) -> list[int]:
    """Remainder of f by g scaled by a positive integer."""
    if g[-1] < 0:
        g = [-c for c in g]
    f = list(f)
    dg = len(g) - 1
    lc = g[-1]
    while len(f) - 1 >= dg and f:
        k = len(f) - 1 - dg
        lf = f[-1]
        f = [lc * c for c in f]
        for i, c in enumerate(g):
            f[i + k] -= lf * c
        _trim(f)
    return f


def _pquo(f: list[int], g: list[int]) -> list[int]:
    """Exact quotient f/g (g divides f over Q) scaled to a primitive positive multiple."""
    if g[-1] < 0:
        g = [-c for c in g]
    f = [Fraction(c) for c in f]
    dg = len(g) - 1
    q = [Fraction(0)] * (len(f) - dg)
    while f and len(f) - 1 >= dg:
        k = len(f) - 1 - dg
        t = f[-1] / g[-1]
        q[k] = t
        for i, c in enumerate(g):
            f[i + k] -= t * c
        while f and f[-1] == 0:
            f.pop()
    return _to_int(Polynomial(q))


def _gcd(a: list[int], b: list[int]) -> list[int]:
    a, b = _primitive(a), _primitive(b)
    while b:
        a, b = b, _primitive(_prem(a, b))
    if a and a[-1] < 0:
        a = [-c for c in a]
    return a


def _sign_at_rational(p: list[int], x: Fraction) -> int:
    """sign(p(x)) from the homogenized integer form den^deg * p(num/den)."""
    n, d = x.numerator, x.denominator
    acc = 0
    dpow = 1
    for c in reversed(p):
        acc = acc * n + c * dpow
        dpow *= d
    return sign(acc)


def _is_inf(x, direction: int) -> bool:
    return isinstance(x, float) and x == direction * INF


def _sign_at(p: list[int], x) -> int:
    if not p:
        return 0
    if isinstance(x, QuadSurd):
        acc = QuadSurd(0, 0, x.r)
        for c in reversed(p):
            acc = acc * x + c
        return acc.sign()
    if _is_inf(x, 1):
        return sign(p[-1])
    if _is_inf(x, -1):
        return sign(p[-1]) * (-1) ** (len(p) - 1)
    return _sign_at_rational(p, as_fraction(x))


def _side_sign(p: list[int], x, side: int) -> int:
    """Sign of p just right (side=+1) or left (side=-1) of x."""
    if _is_inf(x, 1) or _is_inf(x, -1):
        return _sign_at(p, x)
    k = 0
    q = p
    while q:
        s = _sign_at(q, x)
        if s:
            return s * (side**k)
        q = _deriv(q)
        k += 1
    return 0


# ---------------------------------------------------------------------------
# Sturm machinery


def sturm_sequence(p: Polynomial) -> list[Polynomial]:
    """Sturm chain p, p', -rem(...), ... with primitive integer members."""
    return [Polynomial(s) for s in _sturm(_to_int(p))]


def _sturm(p: list[int]) -> list[list[int]]:
    if not p:
        return []
    seq = [p]
    d = _primitive(_deriv(p))
    while d:
        seq.append(d)
        r = _prem(seq[-2], seq[-1])
        d = _primitive([-c for c in r])
    return seq


def _variations(signs: Sequence[int]) -> int:
    s = [x for x in signs if x]
    return sum(1 for u, v in zip(s, s[1:]) if u != v)


def _count_distinct(p: list[int], lo, hi) -> int:
    """Number of distinct real roots of p in the open interval (lo, hi)."""
    if len(p) <= 1:
        return 0
    seq = _sturm(p)
    v_lo = _variations([_side_sign(s, lo, +1) for s in seq])
    v_hi = _variations([_side_sign(s, hi, -1) for s in seq])
    return v_lo - v_hi


def count_roots(p: Polynomial, lo: Endpoint = -INF, hi: Endpoint = INF) -> int:
    """Distinct real roots of p in the open interval (lo, hi)."""
    _check_interval(lo, hi)
    if p.is_zero:
        raise ValueError("zero polynomial has infinitely many roots")
    return _count_distinct(_to_int(p), lo, hi)


def _multiplicity_tower(p: list[int]) -> list[list[int]]:
    """G_1 = p, G_{k+1} = gcd(G_k, G_k'); G_k vanishes exactly at roots of multiplicity >= k."""
    tower = [p]
    while len(tower[-1]) > 1:
        g = tower[-1]
        tower.append(_gcd(g, _deriv(g)))
    return tower[:-1]


def count_odd_multiplicity_roots(p: Polynomial, lo: Endpoint, hi: Endpoint) -> int:
    """Distinct roots of odd multiplicity in (lo, hi)."""
    _check_interval(lo, hi)
    if p.is_zero:
        return 0
    tower = _multiplicity_tower(_to_int(p))
    counts = [_count_distinct(g, lo, hi) for g in tower]
    return sum(c if k % 2 == 0 else -c for k, c in enumerate(counts))


def _check_interval(lo, hi) -> None:
    if not _lt(lo, hi):
        raise ValueError(f"empty interval ({lo}, {hi})")


def _lt(x, y) -> bool:
    if _is_inf(y, 1):
        return not _is_inf(x, 1)
    if _is_inf(x, -1):
        return not _is_inf(y, -1)
    if _is_inf(x, 1) or _is_inf(y, -1):
        return False
    if isinstance(x, QuadSurd):
        return x < y
    if isinstance(y, QuadSurd):
        return y > x
    return as_fraction(x) < as_fraction(y)


def _approx(x) -> float:
    return float(x)


def rational_inside(lo: Endpoint, hi: Endpoint) -> Fraction:
    """Some rational strictly inside (lo, hi)."""
    _check_interval(lo, hi)
    if _is_inf(lo, -1) and _is_inf(hi, 1):
        return Fraction(0)
    if _is_inf(lo, -1):
        return _floor_fraction(hi) - 1
    if _is_inf(hi, 1):
        return _floor_fraction(lo) + 1
    if not isinstance(lo, QuadSurd) and not isinstance(hi, QuadSurd):
        return (as_fraction(lo) + as_fraction(hi)) / 2
    # bisect rational brackets around the surd endpoints
    a, b = _rational_bracket(lo), _rational_bracket(hi)
    while True:
        mid = (a[1] + b[0]) / 2
        if _lt(lo, mid) and _lt(mid, hi):
            return mid
        a, b = _refine_bracket(lo, a), _refine_bracket(hi, b)


def _floor_fraction(x) -> Fraction:
    if isinstance(x, QuadSurd):
        lo, _ = _rational_bracket(x)
        return Fraction(math.floor(lo))
    return Fraction(math.floor(as_fraction(x)))


def _rational_bracket(x) -> tuple[Fraction, Fraction]:
    """Rationals lo <= x <= hi."""
    if not isinstance(x, QuadSurd):
        f = as_fraction(x)
        return f, f
    v = Fraction(_approx(x))
    w = Fraction(1, 2**20) * (1 + abs(v))
    lo, hi = v - w, v + w
    while not (lo <= x):
        lo -= w
        w *= 2
    while not (x <= hi):
        hi += w
        w *= 2
    return lo, hi


def _refine_bracket(x, br: tuple[Fraction, Fraction]) -> tuple[Fraction, Fraction]:
    if not isinstance(x, QuadSurd):
        return br
    lo, hi = br
    mid = (lo + hi) / 2
    return (mid, hi) if mid <= x else (lo, mid)


def sturm_nonneg_on_interval(p: Polynomial, lo: Endpoint = 0, hi: Endpoint = INF) -> bool:
    """Exact test of p(t) >= 0 for every t in the open interval (lo, hi).

    Endpoints may be rational, +-inf, or quadratic surds.  p is nonnegative
    on the interval iff it has no root of odd multiplicity there and is
    positive at one interior non-root point.
    """
    _check_interval(lo, hi)
    if p.is_zero:
        return True
    if count_odd_multiplicity_roots(p, lo, hi):
        return False
    ip = _to_int(p)
    x = rational_inside(lo, hi)
    while _sign_at(ip, x) == 0:
        x = rational_inside(lo, x) if _lt(lo, x) else rational_inside(x, hi)
    return _sign_at(ip, x) > 0


# ---------------------------------------------------------------------------
# root isolation


def cauchy_bound(p: Polynomial) -> Fraction:
    """Every real root has absolute value below this bound."""
    c = p.coefficients
    return 1 + max((abs(x / c[-1]) for x in c[:-1]), default=Fraction(0))


def _squarefree(p: list[int]) -> list[int]:
    g = _gcd(p, _deriv(p))
    return _pquo(p, g) if len(g) > 1 else p


def isolate_roots(p: Polynomial, lo, hi) -> list[tuple[Fraction, Fraction]]:
    """Isolating data for the distinct roots of p in the open interval (lo, hi).

    Items are sorted and pairwise separated, and none touches lo or hi.
    (r, r) is an exact rational root; otherwise (a, b) holds exactly one
    root in its interior and neither a nor b is a root.
    """
    lo, hi = as_fraction(lo), as_fraction(hi)
    if p.is_zero:
        raise ValueError("zero polynomial")
    sqf = _squarefree(_to_int(p))
    items: list[tuple[Fraction, Fraction]] = []
    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        n = _count_distinct(sqf, a, b)
        if n == 0:
            continue
        if n == 1 and a != lo and b != hi and _sign_at(sqf, a) and _sign_at(sqf, b):
            items.append((a, b))
            continue
        m = (a + b) / 2
        if _sign_at(sqf, m) == 0:
            items.append((m, m))
        stack.append((a, m))
        stack.append((m, b))
    items.sort()
    # shrink touching neighbours until there is room between them
    changed = True
    while changed:
        changed = False
        for i in range(len(items) - 1):
            (a, b), (c, d) = items[i], items[i + 1]
            if b >= c:
                items[i] = _shrink(sqf, a, b) if a < b else items[i]
                items[i + 1] = _shrink(sqf, c, d) if c < d else items[i + 1]
                changed = True
    return items


def _shrink(sqf: list[int], a: Fraction, b: Fraction) -> tuple[Fraction, Fraction]:
    m = (a + b) / 2
    if _sign_at(sqf, m) == 0:
        return (m, m)
    if _count_distinct(sqf, a, m):
        return (a, m)
    return (m, b)


def root_free_gaps(p: Polynomial, lo, hi) -> list[tuple[Fraction, Fraction]]:
    """Rational open intervals (x, y), x < y, inside (lo, hi) that contain no root of p.

    Consecutive gaps are separated only by isolating data of a single root,
    so every root-free component of (lo, hi) contains exactly one gap.
    """
    lo, hi = as_fraction(lo), as_fraction(hi)
    items = isolate_roots(p, lo, hi)
    edges = [lo] + [x for item in items for x in item] + [hi]
    return [(edges[i], edges[i + 1]) for i in range(0, len(edges), 2)]

"""Nonnegativity of quadratics and quartics on the positive half-line.

The closed-form quartic test works on the five coefficients directly.  All
of its comparisons can be rewritten as signs of p + q*sqrt(a*e) with p, q
polynomial in the coefficients (divide b*sqrt(e) + d*sqrt(a) by sqrt(a),
square both sides of the radical bounds), which is what makes an exact mode
over the rationals possible.  The Sturm-based oracle in
``quartic_nonneg_pos_exact`` is the ground truth the closed form is checked
against.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .poly import INF, Polynomial, cauchy_bound, root_free_gaps, sturm_nonneg_on_interval
from .signs import (
    Tolerance,
    all3,
    any3,
    engine,
    ge0,
    gt0,
    le0,
)
from .surd import as_fraction


class PreconditionError(ValueError):
    """An operation was called outside the domain its criterion covers."""


@dataclass(frozen=True)
class QuadraticCoeffs:
    a: float
    b: float
    c: float


@dataclass(frozen=True)
class QuarticCoeffs:
    """f(t) = a t^4 + b t^3 + c t^2 + d t + e."""

    a: float
    b: float
    c: float
    d: float
    e: float

    def __iter__(self):
        return iter((self.a, self.b, self.c, self.d, self.e))

    def as_fractions(self) -> "QuarticCoeffs":
        return QuarticCoeffs(*(as_fraction(x) for x in self))

    def reversed(self) -> "QuarticCoeffs":
        """Coefficients of t^4 f(1/t)."""
        return QuarticCoeffs(self.e, self.d, self.c, self.b, self.a)

    def scaled(self, s) -> "QuarticCoeffs":
        return QuarticCoeffs(*(s * x for x in self))

    def polynomial(self) -> Polynomial:
        return Polynomial([self.e, self.d, self.c, self.b, self.a])

    def __call__(self, t):
        return (((self.a * t + self.b) * t + self.c) * t + self.d) * t + self.e


def quadratic_nonneg_pos(q: QuadraticCoeffs, strict: bool = False) -> bool:
    """f(t) = a t^2 + b t + c > 0 (strict) or >= 0 for every t >= 0; needs a > 0."""
    if not q.a > 0:
        raise PreconditionError(f"leading coefficient must be positive, got a={q.a}")
    if q.b >= 0:
        return q.c > 0 if strict else q.c >= 0
    disc = 4 * q.a * q.c - q.b * q.b
    return disc > 0 if strict else disc >= 0


def quartic_discriminant(q: QuarticCoeffs):
    """4(12ae - 3bd + c^2)^3 - (72ace + 9bcd - 2c^3 - 27ad^2 - 27b^2 e)^2."""
    a, b, c, d, e = q
    return 4 * (12 * a * e - 3 * b * d + c * c) ** 3 - (
        72 * a * c * e + 9 * b * c * d - 2 * c**3 - 27 * a * d * d - 27 * b * b * e
    ) ** 2


def _discriminant_magnitude(a, b, c, d, e):
    A = 12 * abs(a * e) + 3 * abs(b * d) + c * c
    B = 72 * abs(a * c * e) + 9 * abs(b * c * d) + 2 * abs(c) ** 3 + 27 * abs(a) * d * d + 27 * b * b * abs(e)
    return 4 * A**3 + B * B


@dataclass(frozen=True)
class QuarticDecision:
    """Outcome of the closed-form test.

    ``nonneg`` is None when an undecided comparison inside the tolerance band
    determines the outcome; ``case`` names the first branch that fired.
    """

    nonneg: Optional[bool]
    case: Optional[str]
    delta: object
    mode: str
    branches: dict = field(default_factory=dict)

    @property
    def boundary(self) -> bool:
        return self.nonneg is None


def _quartic_branches(a, b, c, d, e, sg, delta_sign) -> dict:
    """Evaluate the three branches; every value is True, False or None."""
    r = a * e
    # b sqrt(e) + d sqrt(a) has the sign of d a + b sqrt(ae)
    lin_sum = sg.surd(d * a, b, r, abs(d * a), abs(b))
    c_plus = sg.surd(c, 2, r, abs(c), 2)  # c + 2 sqrt(ae), also the sign of the radicand ace + 2ae sqrt(ae)
    p = b * b * e + d * d * a - 16 * a * c * e
    pmag = abs(b * b * e) + abs(d * d * a) + 16 * abs(a * c * e)
    qmag = 2 * abs(b * d) + 32 * abs(a * e)

    case1 = all3([le0(delta_sign), gt0(lin_sum)])
    case2 = all3([ge0(sg.raw(b)), ge0(sg.raw(d)), ge0(c_plus)])
    # |b sqrt(e) - d sqrt(a)| <= 4 sqrt(ace + 2ae sqrt(ae)), squared
    spread = le0(sg.surd(p, -2 * b * d - 32 * a * e, r, pmag, qmag))
    sub_i = all3([ge0(c_plus), ge0(sg.surd(-c, 6, r, abs(c), 6))])
    # b sqrt(e) + d sqrt(a) >= -4 sqrt(ace - 2ae sqrt(ae)): trivially true when the
    # left side is nonnegative, otherwise compare squares
    tail = any3([ge0(lin_sum), le0(sg.surd(p, 2 * b * d + 32 * a * e, r, pmag, qmag))])
    sub_ii = all3([gt0(sg.surd(c, -6, r, abs(c), 6)), tail])
    head = all3([ge0(delta_sign), ge0(c_plus), spread])
    return {
        "1": case1,
        "2": case2,
        "3i": all3([head, sub_i]),
        "3ii": all3([head, sub_ii]),
    }


def _decide(branches: dict) -> tuple[Optional[bool], Optional[str]]:
    for name, v in branches.items():
        if v is True:
            return True, name
    return any3(branches.values()), None


def quartic_nonneg_pos(
    q: QuarticCoeffs,
    tol: Optional[Tolerance] = None,
    mode: str = "float",
    *,
    delta_sign: Optional[int] = None,
) -> QuarticDecision:
    """Closed-form test of f(t) >= 0 for all t > 0, for a > 0 and e > 0.

    ``mode="exact"`` converts the coefficients to Fractions and decides every
    comparison exactly.  ``delta_sign`` lets a caller that knows the sign of
    the discriminant through another identity supply it directly.
    """
    sg = engine(mode, tol)
    a, b, c, d, e = (sg.convert(x) for x in q)
    if not (a > 0 and e > 0):
        raise PreconditionError(f"need a > 0 and e > 0, got a={a}, e={e}")
    delta = quartic_discriminant(QuarticCoeffs(a, b, c, d, e))
    if delta_sign is None:
        delta_sign = sg.scalar(delta, _discriminant_magnitude(a, b, c, d, e))
    branches = _quartic_branches(a, b, c, d, e, sg, delta_sign)
    nonneg, case = _decide(branches)
    return QuarticDecision(nonneg, case, delta, mode, branches)


def quartic_nonneg_pos_exact(q: QuarticCoeffs) -> bool:
    """Exact truth of f(t) >= 0 on t > 0 by Sturm sequences; any coefficients allowed."""
    return sturm_nonneg_on_interval(q.as_fractions().polynomial(), 0, INF)


def negative_intervals(p: Polynomial, lo=0) -> list[tuple[Fraction, Fraction]]:
    """Root-free rational intervals inside (lo, inf) on which p < 0.

    p < 0 on every returned open interval (x, y), and each component of
    {t > lo : p(t) < 0} contains one of them.
    """
    if p.is_zero:
        return []
    lo = as_fraction(lo)
    hi = max(cauchy_bound(p), lo) + 1
    return [(x, y) for x, y in root_free_gaps(p, lo, hi) if p((x + y) / 2) < 0]

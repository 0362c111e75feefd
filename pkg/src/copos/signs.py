"""Three-valued sign tests shared by every closed-form criterion.

A comparison evaluates to True, False, or None (inside the floating-point
indeterminate band).  Conjunctions and disjunctions follow Kleene logic, so
a criterion is only reported as indeterminate when the undecided
comparisons actually matter for the outcome.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Optional

from .surd import as_fraction, sign, surd_sign

Tri = Optional[bool]

MODES = ("float", "exact")


@dataclass(frozen=True)
class Tolerance:
    """Half-width of the indeterminate band, relative to each expression's magnitude."""

    eps_decision: float = 1e-10

    def __post_init__(self):
        if not self.eps_decision >= 0:
            raise ValueError("eps_decision must be >= 0")


class ExactSigns:
    """Signs computed exactly over the rationals (inputs converted to Fraction)."""

    exact = True

    def convert(self, x) -> Fraction:
        return as_fraction(x)

    def scalar(self, v, mag=None) -> int:
        return sign(v)

    def raw(self, v) -> int:
        return sign(v)

    def surd(self, p, q, r, pmag=None, qmag=None) -> int:
        """Sign of p + q*sqrt(r)."""
        return surd_sign(p, q, r)


class FloatSigns:
    """Signs of float expressions; |value| <= eps*magnitude is indeterminate."""

    exact = False

    def __init__(self, tol: Tolerance):
        self.eps = tol.eps_decision

    def convert(self, x) -> float:
        v = float(x)
        if not math.isfinite(v):
            raise ValueError(f"non-finite value {x!r}")
        return v

    def scalar(self, v, mag=None) -> Optional[int]:
        mag = abs(v) if mag is None else mag
        return self._band(v, mag)

    def raw(self, v) -> int:
        """Sign of an input value; inputs carry no rounding error, so no band."""
        return sign(v)

    def surd(self, p, q, r, pmag=None, qmag=None) -> Optional[int]:
        root = math.sqrt(r)
        v = p + q * root
        mag = (abs(p) if pmag is None else pmag) + (abs(q) if qmag is None else qmag) * root
        return self._band(v, mag)

    def _band(self, v, mag) -> Optional[int]:
        if mag == 0 or v == 0 and self.eps == 0:
            return 0
        if abs(v) <= self.eps * mag:
            return 0 if self.eps == 0 else None
        return sign(v)


def engine(mode: str, tol: Optional[Tolerance] = None):
    if mode == "exact":
        return ExactSigns()
    if mode == "float":
        return FloatSigns(tol or Tolerance())
    raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")


# comparisons against zero on a sign in {-1, 0, 1, None}


def gt0(s: Optional[int]) -> Tri:
    return None if s is None else s > 0


def ge0(s: Optional[int]) -> Tri:
    return None if s is None else s >= 0


def lt0(s: Optional[int]) -> Tri:
    return None if s is None else s < 0


def le0(s: Optional[int]) -> Tri:
    return None if s is None else s <= 0


def eq0(s: Optional[int]) -> Tri:
    return None if s is None else s == 0


def all3(values: Iterable[Tri]) -> Tri:
    unknown = False
    for v in values:
        if v is False:
            return False
        if v is None:
            unknown = True
    return None if unknown else True


def any3(values: Iterable[Tri]) -> Tri:
    unknown = False
    for v in values:
        if v is True:
            return True
        if v is None:
            unknown = True
    return None if unknown else False


class Decision(str, Enum):
    COPOSITIVE = "copositive"
    NOT_COPOSITIVE = "not_copositive"
    BOUNDARY = "boundary"

    @classmethod
    def from_tri(cls, value: Tri) -> "Decision":
        if value is None:
            return cls.BOUNDARY
        return cls.COPOSITIVE if value else cls.NOT_COPOSITIVE

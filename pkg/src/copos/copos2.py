"""Copositivity of 4th-order 2-dimensional symmetric tensors.

With t = x2/x1 the form A x^4 equals x1^4 f(t) for the quartic with
(a, b, c, d, e) = (a2222, 4 a1222, 6 a1122, 4 a1112, a1111), so the
necessary-and-sufficient test is the positive-half-line quartic criterion
applied to those coefficients, with the discriminant sign taken from the
invariants (Delta = 6912 (I^3 - 27 J^2)).

The older sufficient-only copositivity test for this class is not a
separate code path: its hypotheses are the "3" branch of the criterion.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Optional

from scipy.optimize import minimize_scalar

from .polyclass import (
    PreconditionError,
    QuarticCoeffs,
    negative_intervals,
    quartic_nonneg_pos,
    quartic_nonneg_pos_exact,
)
from .signs import Decision, Tolerance, all3, any3, engine, eq0, ge0, gt0, le0
from .tensor import SymTensor4, eval_quartic_form

log = logging.getLogger(__name__)

DISC_FACTOR = 4 * 12**3  # 6912


@dataclass(frozen=True)
class InvariantsIJ:
    I: object
    J: object

    @property
    def disc(self):
        return self.I**3 - 27 * self.J**2


@dataclass(frozen=True)
class Copos2Verdict:
    decision: Decision
    case_label: str  # "1", "2", "3i", "3ii", "diag_fail" or "none"
    invariants: InvariantsIJ
    quartic: QuarticCoeffs
    route: str  # "closed_form", "diagonal" or "exact_oracle"
    witness: Optional[tuple[float, float]] = None
    witness_value: Optional[float] = None
    branches: Optional[dict] = None


def _entries(T: SymTensor4, convert=lambda v: v):
    if T.dim != 2:
        raise ValueError(f"expected a 2-dimensional tensor, got dim={T.dim}")
    return tuple(convert(T[idx]) for idx in ((1, 1, 1, 1), (1, 1, 1, 2), (1, 1, 2, 2), (1, 2, 2, 2), (2, 2, 2, 2)))


def mapped_quartic(T: SymTensor4) -> QuarticCoeffs:
    """f(t) = A (1, t)^4."""
    a1111, a1112, a1122, a1222, a2222 = _entries(T)
    return QuarticCoeffs(a2222, 4 * a1222, 6 * a1122, 4 * a1112, a1111)


def _ij(a1111, a1112, a1122, a1222, a2222) -> InvariantsIJ:
    I = a1111 * a2222 - 4 * a1112 * a1222 + 3 * a1122**2
    J = (
        a1111 * a1122 * a2222
        + 2 * a1112 * a1122 * a1222
        - a1122**3
        - a2222 * a1112**2
        - a1111 * a1222**2
    )
    return InvariantsIJ(I, J)


def invariants_ij(T: SymTensor4) -> InvariantsIJ:
    return _ij(*_entries(T))


def _disc_magnitude(a1111, a1112, a1122, a1222, a2222):
    i_mag = abs(a1111 * a2222) + 4 * abs(a1112 * a1222) + 3 * a1122**2
    j_mag = (
        abs(a1111 * a1122 * a2222)
        + 2 * abs(a1112 * a1122 * a1222)
        + abs(a1122) ** 3
        + abs(a2222) * a1112**2
        + abs(a1111) * a1222**2
    )
    return i_mag**3 + 27 * j_mag**2


def tensor2_copositive(T: SymTensor4, tol: Optional[Tolerance] = None, mode: str = "float") -> Copos2Verdict:
    """Decide copositivity of a dim-2 order-4 symmetric tensor."""
    sg = engine(mode, tol)
    vals = _entries(T, sg.convert)
    a1111, a1112, a1122, a1222, a2222 = vals
    inv = _ij(*vals)
    q = QuarticCoeffs(a2222, 4 * a1222, 6 * a1122, 4 * a1112, a1111)

    for axis, diag in ((0, a1111), (1, a2222)):
        if diag < 0:
            x = (1.0, 0.0) if axis == 0 else (0.0, 1.0)
            return Copos2Verdict(
                Decision.NOT_COPOSITIVE, "diag_fail", inv, q, "diagonal", x, float(diag)
            )
    if a1111 == 0 or a2222 == 0:
        # closed form needs a strictly positive diagonal; decide exactly instead
        ok = quartic_nonneg_pos_exact(q)
        verdict = Copos2Verdict(Decision.from_tri(ok), "none", inv, q, "exact_oracle")
    else:
        disc_sign = sg.scalar(inv.disc, _disc_magnitude(*vals))
        res = quartic_nonneg_pos(q, tol, mode, delta_sign=disc_sign)
        verdict = Copos2Verdict(
            Decision.from_tri(res.nonneg), res.case or "none", inv, q, "closed_form", branches=res.branches
        )
    if verdict.decision is Decision.NOT_COPOSITIVE:
        w = binary_form_witness(q)
        if w is not None:
            x, _ = w
            value = float(eval_quartic_form(T.map(float), x))
            if value < 0:
                verdict = replace(verdict, witness=x, witness_value=value)
    return verdict


def binary_form_witness(q: QuarticCoeffs) -> Optional[tuple[tuple[float, float], Fraction]]:
    """Unit x >= 0 with F(x) < 0 for F(x1, x2) = x1^4 f(x2/x1), or None if F is copositive.

    Sign changes are located exactly on the rational quartic; inside each
    negative interval the normalized value f(t)/(1+t^2)^2 is then minimized
    numerically, keeping the best exactly-confirmed point.
    Returns the vector and the exact value of f at the chosen t.
    """
    q = q.as_fractions()
    if q.e < 0:
        return (1.0, 0.0), q.e
    if q.a < 0:
        return (0.0, 1.0), q.a
    f = q.polynomial()
    qf = QuarticCoeffs(*(float(c) for c in q))
    best = None
    for lo, hi in negative_intervals(f, 0):
        mid = (lo + hi) / 2
        candidates = [mid]
        flo, fhi = float(lo), float(hi)
        if fhi > flo:
            res = minimize_scalar(
                lambda t: qf(t) / (1 + t * t) ** 2,
                bounds=(flo, fhi),
                method="bounded",
                options={"xatol": 1e-12},
            )
            if flo < res.x < fhi:
                t = Fraction(float(res.x))
                candidates += [t, t.limit_denominator(10**6)]
        for t in candidates:
            val = q(t)
            if val < 0 and t > 0:
                score = val / (1 + t * t) ** 2
                if best is None or score < best[0]:
                    best = (score, t, val)
    if best is None:
        return None
    _, t, val = best
    n = math.hypot(1.0, float(t))
    return (1.0 / n, float(t) / n), val


def _strict_branches(vals, sg) -> dict:
    a1111, a1112, a1122, a1222, a2222 = vals
    r = a1111 * a2222
    inv = _ij(*vals)
    disc = sg.scalar(inv.disc, _disc_magnitude(*vals))
    # a1222 sqrt(a1111) -+ a1112 sqrt(a2222), scaled by sqrt(a1111) > 0
    balanced = eq0(sg.surd(a1222 * a1111, -a1112, r, abs(a1222 * a1111), abs(a1112)))
    below = gt0(sg.surd(-a1122, 1, r, abs(a1122), 1))  # a1122 < sqrt(a1111 a2222)
    printed = eq0(sg.surd(a1222**2 - 6 * a1122 * a2222, 2 * a2222, r, a1222**2 + 6 * abs(a1122 * a2222), 2 * a2222))
    derived = eq0(
        sg.surd(4 * a1222**2 - 6 * a1122 * a2222, 2 * a2222, r, 4 * a1222**2 + 6 * abs(a1122 * a2222), 2 * a2222)
    )
    p = a1222**2 * a1111 + a1112**2 * a2222 - 6 * a1111 * a1122 * a2222
    pmag = a1222**2 * a1111 + a1112**2 * a2222 + 6 * abs(a1111 * a1122 * a2222)
    qmag = 2 * abs(a1222 * a1112) + 2 * r
    radicand = ge0(sg.surd(3 * a1122, 1, r, 3 * abs(a1122), 1))
    spread = le0(sg.surd(p, -2 * a1222 * a1112 - 2 * r, r, pmag, qmag))
    sub_i = all3([radicand, ge0(sg.surd(-3 * a1122, 3, r, 3 * abs(a1122), 3))])
    sub_ii = all3([gt0(sg.surd(a1122, -1, r, abs(a1122), 1)), le0(sg.surd(p, 2 * a1222 * a1112 + 2 * r, r, pmag, qmag))])
    return {
        "1": all3([eq0(disc), balanced, printed, below]),
        "1_derived": all3([eq0(disc), balanced, derived, below]),
        "2": all3([gt0(disc), radicand, spread, any3([sub_i, sub_ii])]),
    }


def tensor2_strictly_copositive_sufficient(
    T: SymTensor4, tol: Optional[Tolerance] = None, mode: str = "float"
) -> bool:
    """Sufficient test for strict copositivity; False means "not shown", not "not strict".

    Condition (1) is evaluated as printed.  The reading obtained by pushing
    the tensor-to-quartic substitution through the underlying quartic
    criterion has 4 a1222^2 in place of a1222^2; instances where the two
    readings differ are logged.
    """
    sg = engine(mode, tol)
    vals = _entries(T, sg.convert)
    if not (vals[0] > 0 and vals[4] > 0):
        log.debug("strict sufficient test needs a1111 > 0 and a2222 > 0; got %s, %s", vals[0], vals[4])
        return False
    br = strict_sufficient_branches(T, tol, mode)
    if br["1"] is not None and br["1_derived"] is not None and br["1"] != br["1_derived"]:
        log.warning("strict-copositivity condition (1): printed=%s, substitution-derived=%s for %r", br["1"], br["1_derived"], T)
    return any3([br["1"], br["2"]]) is True


def strict_sufficient_branches(T: SymTensor4, tol: Optional[Tolerance] = None, mode: str = "float") -> dict:
    """Three-valued branch values of the strict sufficient test (including the derived reading of (1))."""
    sg = engine(mode, tol)
    vals = _entries(T, sg.convert)
    if not (vals[0] > 0 and vals[4] > 0):
        raise PreconditionError("need a1111 > 0 and a2222 > 0")
    return _strict_branches(vals, sg)

"""Vacuum stability of the Z3 scalar dark matter potential as tensor copositivity.

In the real-reduced variables the potential is

    V(h1, h2, s) = lambdaS s^4 + M(h1, h2) s^2 + Vt(h1, h2)
    M  = lambdaS1 h1^2 + lambdaS2 h2^2 - |lambdaS12| rho h1 h2
    Vt = lambda1 h1^4 + lambda2 h2^4 + (lambda3 + lambda4 rho^2) h1^2 h2^2

and stability means V >= 0 on the nonnegative orthant.  Two deciders live
here: the closed-form test (``vacuum_copositive_thm36``) and an exact,
complete one built on the pointwise dichotomy in t = s^2
(``vacuum_copositive_complete``).  The closed-form test never fires when M
changes sign on the orthant, so the two can disagree in one direction; both
verdicts are always reported and disagreements are logged.
"""

from __future__ import annotations

import json
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields, replace
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from scipy.optimize import minimize_scalar

from .copos2 import binary_form_witness
from .poly import INF, Polynomial, cauchy_bound, rational_inside, root_free_gaps, sturm_nonneg_on_interval
from .polyclass import PreconditionError, QuarticCoeffs, quartic_discriminant, quartic_nonneg_pos, quartic_nonneg_pos_exact
from .signs import Decision, Tolerance, Tri, all3, any3, engine, gt0, lt0
from .surd import QuadSurd, as_fraction, sign
from .tensor import Matrix2, SymTensor4, matrix2_copositive, matrix2_copositive3, parse_number

log = logging.getLogger(__name__)


class CouplingsError(ValueError):
    pass


JSON_KEYS = {
    "lambda1": "lambda1",
    "lambda2": "lambda2",
    "lambda3": "lambda3",
    "lambda4": "lambda4",
    "lambdaS": "lambda_s",
    "lambdaS1": "lambda_s1",
    "lambdaS2": "lambda_s2",
    "absLambdaS12": "abs_lambda_s12",
    "rho": "rho",
}


@dataclass(frozen=True)
class Couplings:
    """Quartic couplings of the potential; lambdaS12 enters only through its modulus."""

    lambda1: object = 0
    lambda2: object = 0
    lambda3: object = 0
    lambda4: object = 0
    lambda_s: object = 0
    lambda_s1: object = 0
    lambda_s2: object = 0
    abs_lambda_s12: object = 0
    rho: object = 0

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if isinstance(v, bool) or not isinstance(v, (int, float, Fraction)):
                raise CouplingsError(f"{f.name} must be a real number, got {v!r}")
            if isinstance(v, float) and not math.isfinite(v):
                raise CouplingsError(f"{f.name} is not finite")
        if self.abs_lambda_s12 < 0:
            raise CouplingsError("absLambdaS12 must be >= 0")
        if not 0 <= self.rho <= 1:
            raise CouplingsError("rho must lie in [0, 1]")

    @property
    def mixing(self):
        """|lambdaS12| * rho, the coefficient of -s^2 h1 h2."""
        return self.abs_lambda_s12 * self.rho

    def values(self) -> tuple:
        return tuple(getattr(self, f.name) for f in fields(self))

    def convert(self, fn) -> "Couplings":
        return Couplings(*(fn(v) for v in self.values()))

    def exact(self) -> "Couplings":
        return self.convert(as_fraction)

    def scale(self) -> float:
        return max(abs(float(v)) for v in self.values())

    def with_rho(self, rho) -> "Couplings":
        return replace(self, rho=rho)

    @classmethod
    def from_json(cls, doc) -> "Couplings":
        if isinstance(doc, (str, bytes)):
            doc = json.loads(doc)
        if not isinstance(doc, dict):
            raise CouplingsError("couplings document must be a JSON object")
        unknown = set(doc) - set(JSON_KEYS)
        if unknown:
            raise CouplingsError(f"unknown keys: {sorted(unknown)}")
        kw = {}
        for key, attr in JSON_KEYS.items():
            if key in doc:
                try:
                    kw[attr] = parse_number(doc[key])
                except ValueError as exc:
                    raise CouplingsError(f"{key}: {exc}") from exc
        return cls(**kw)

    def to_json(self) -> dict:
        from .tensor import number_to_json

        return {key: number_to_json(getattr(self, attr)) for key, attr in JSON_KEYS.items()}


def _div(x, n: int):
    return x / n if isinstance(x, float) else Fraction(x) / n


def build_vacuum_tensor(c: Couplings) -> SymTensor4:
    """Order-4, dimension-3 tensor whose form at (h1, h2, s) is the potential."""
    return SymTensor4(
        3,
        {
            (1, 1, 1, 1): c.lambda1,
            (2, 2, 2, 2): c.lambda2,
            (3, 3, 3, 3): c.lambda_s,
            (1, 1, 2, 2): _div(c.lambda3 + c.lambda4 * c.rho**2, 6),
            (1, 1, 3, 3): _div(c.lambda_s1, 6),
            (2, 2, 3, 3): _div(c.lambda_s2, 6),
            (1, 2, 3, 3): -_div(c.mixing, 12),
        },
    )


def eval_m(c: Couplings, h1, h2):
    return c.lambda_s1 * h1 * h1 + c.lambda_s2 * h2 * h2 - c.mixing * h1 * h2


def eval_vtilde(c: Couplings, h1, h2):
    return c.lambda1 * h1**4 + c.lambda2 * h2**4 + (c.lambda3 + c.lambda4 * c.rho**2) * h1 * h1 * h2 * h2


def eval_potential(c: Couplings, h1, h2, s):
    return c.lambda_s * s**4 + eval_m(c, h1, h2) * s * s + eval_vtilde(c, h1, h2)


def min_over_s(c: Couplings, h1, h2):
    """min over s >= 0 of V(h1, h2, s); a quadratic in t = s^2 minimized over t >= 0."""
    if not c.lambda_s > 0:
        raise PreconditionError("lambdaS must be positive for a finite minimum over s")
    m = eval_m(c, h1, h2)
    vt = eval_vtilde(c, h1, h2)
    if m >= 0:
        return vt
    return vt - m * m / (4 * c.lambda_s)


def m_matrix(c: Couplings) -> Matrix2:
    return Matrix2(c.lambda_s1, -_div(c.mixing, 2), c.lambda_s2)


def vtilde_matrix(c: Couplings) -> Matrix2:
    """Vt as a quadratic form in (h1^2, h2^2)."""
    return Matrix2(c.lambda1, _div(c.lambda3 + c.lambda4 * c.rho**2, 2), c.lambda2)


def m_copositive(c: Couplings, strict: bool = False) -> bool:
    return matrix2_copositive(m_matrix(c), strict)


def m_negative_definite_on_cone(c: Couplings) -> bool:
    """M < 0 on the nonnegative quadrant minus the origin."""
    return c.lambda_s1 < 0 and c.lambda_s2 < 0


@dataclass(frozen=True)
class DerivedQuartic:
    """4 lambdaS Vt - M^2 = l40 h1^4 + l31 h1^3 h2 + l22 h1^2 h2^2 + l13 h1 h2^3 + l04 h2^4."""

    l40: object
    l31: object
    l22: object
    l13: object
    l04: object
    # magnitudes of the terms l40 and l04 were computed from (float band only)
    mags: Optional[tuple] = field(default=None, compare=False, repr=False)

    def quartic(self) -> QuarticCoeffs:
        """Coefficients in t = h2/h1, highest degree first."""
        return QuarticCoeffs(self.l04, self.l13, self.l22, self.l31, self.l40)

    @property
    def delta_prime(self):
        return quartic_discriminant(self.quartic())

    def __call__(self, h1, h2):
        return (
            self.l40 * h1**4
            + self.l31 * h1**3 * h2
            + self.l22 * h1 * h1 * h2 * h2
            + self.l13 * h1 * h2**3
            + self.l04 * h2**4
        )


def derived_quartic(c: Couplings) -> DerivedQuartic:
    ls, k = c.lambda_s, c.mixing
    l40 = 4 * ls * c.lambda1 - c.lambda_s1**2
    l04 = 4 * ls * c.lambda2 - c.lambda_s2**2
    l13 = 2 * c.lambda_s2 * k
    l31 = 2 * c.lambda_s1 * k
    l22 = 4 * ls * c.lambda3 + 4 * ls * c.lambda4 * c.rho**2 - k**2 - 2 * c.lambda_s1 * c.lambda_s2
    mags = (4 * abs(ls * c.lambda1) + c.lambda_s1**2, 4 * abs(ls * c.lambda2) + c.lambda_s2**2)
    return DerivedQuartic(l40, l31, l22, l13, l04, mags)


@dataclass(frozen=True)
class DerivedCheck:
    holds: Tri
    case: Optional[str]
    degenerate: bool = False
    exact_nonneg: Optional[bool] = None  # exact verdict when the closed form is inapplicable


def prop35_check(d: DerivedQuartic, tol: Optional[Tolerance] = None, mode: str = "float") -> DerivedCheck:
    """Closed-form test of 4 lambdaS Vt - M^2 >= 0 on the quadrant.

    Requires l40 > 0 and l04 > 0; otherwise the result is False and the
    exact verdict of the underlying polynomial is attached.
    """
    sg = engine(mode, tol)
    l40, l04 = sg.convert(d.l40), sg.convert(d.l04)
    if d.mags is not None and not sg.exact:
        pos = all3([gt0(sg.scalar(l40, d.mags[0])), gt0(sg.scalar(l04, d.mags[1]))])
    else:
        pos = l40 > 0 and l04 > 0
    if pos is False or not (l40 > 0 and l04 > 0):
        return DerivedCheck(False, None, True, quartic_nonneg_pos_exact(d.quartic()))
    res = quartic_nonneg_pos(d.quartic(), tol, mode)
    return DerivedCheck(all3([pos, res.nonneg]), res.case if pos else None)


@dataclass(frozen=True)
class CompleteResult:
    decision: Decision
    route: str
    witness: Optional[tuple[float, float, float]] = None
    witness_value: Optional[float] = None


@dataclass(frozen=True)
class VacuumVerdict:
    decision: Decision
    thm36_case: str  # case1, case2_1, case2_2, case2_3i, case2_3ii or none
    complete_decision: Optional[Decision]
    agreement: Optional[bool]
    witness: Optional[tuple[float, float, float]] = None
    witness_value: Optional[float] = None
    conditions: dict = field(default_factory=dict)
    derived: Optional[DerivedQuartic] = None
    complete_route: Optional[str] = None


def _unit(v: Sequence[float]) -> tuple[float, ...]:
    n = math.sqrt(sum(x * x for x in v))
    return tuple(x / n for x in v)


def _certified(c: Couplings, x) -> Optional[float]:
    value = float(eval_potential(c.convert(float), *x))
    return value if value < 0 else None


def _m_positive_roots(c: Couplings) -> list:
    """Roots of M(1, t) = lambdaS2 t^2 - k t + lambdaS1 in (0, inf), exact and sorted."""
    a, b, k0 = c.lambda_s2, -c.mixing, c.lambda_s1
    roots: list = []
    if a != 0:
        disc = b * b - 4 * a * k0
        if disc == 0:
            roots = [-b / (2 * a)]
        elif disc > 0:
            roots = [QuadSurd(-b / (2 * a), 1 / (2 * a), disc), QuadSurd(-b / (2 * a), -1 / (2 * a), disc)]
    elif b != 0:
        roots = [-k0 / b]
    roots = [r for r in roots if r > 0]
    roots.sort(key=float)
    if len(roots) == 2 and not roots[0] < roots[1]:
        roots.reverse()
    return roots


def _region_witness(c: Couplings, mq: Polynomial, Q: Polynomial):
    """Point (1, t, s*) with M(1, t) < 0 and the s-minimum of V negative."""
    prod = mq * Q
    hi = cauchy_bound(prod) + 1
    ls = float(c.lambda_s)
    cf = c.convert(float)

    def score(t):
        m = float(eval_m(cf, 1.0, t))
        s2 = max(-m / (2 * ls), 0.0)
        return float(eval_potential(cf, 1.0, t, math.sqrt(s2))) / (1 + t * t + s2) ** 2

    best = None
    for lo, up in root_free_gaps(prod, 0, hi):
        mid = (lo + up) / 2
        if not (mq(mid) < 0 and Q(mid) < 0):
            continue
        cands = [mid]
        res = minimize_scalar(score, bounds=(float(lo), float(up)), method="bounded", options={"xatol": 1e-12})
        t = Fraction(float(res.x))
        cands += [t, t.limit_denominator(10**6)]
        for t in cands:
            if t > 0 and mq(t) < 0 and Q(t) < 0:
                sc = score(float(t))
                if best is None or sc < best[0]:
                    best = (sc, t)
    if best is None:
        return None
    t = float(best[1])
    s = math.sqrt(-float(mq(best[1])) / (2 * ls))
    return _unit((1.0, t, s))


def vacuum_copositive_complete(c: Couplings) -> CompleteResult:
    """Exact decision of V >= 0 on the orthant, by Sturm sequences.

    For lambdaS > 0: Vt must be copositive (s = 0), and 4 lambdaS Vt - M^2
    must be nonnegative wherever M < 0 (there the s-minimum is interior).
    lambdaS = 0 needs M and Vt copositive; lambdaS < 0 fails on the s axis.
    """
    ce = c.exact()
    if ce.lambda_s < 0:
        return CompleteResult(Decision.NOT_COPOSITIVE, "lambdaS_negative", (0.0, 0.0, 1.0), float(c.lambda_s))

    if not matrix2_copositive(vtilde_matrix(ce)):
        vt = QuarticCoeffs(ce.lambda2, 0, ce.lambda3 + ce.lambda4 * ce.rho**2, 0, ce.lambda1)
        w = binary_form_witness(vt)
        x = (w[0][0], w[0][1], 0.0) if w else None
        value = _certified(c, x) if x else None
        return CompleteResult(Decision.NOT_COPOSITIVE, "vtilde", x if value is not None else None, value)

    mq = Polynomial([ce.lambda_s1, -ce.mixing, ce.lambda_s2])
    if ce.lambda_s == 0:
        if matrix2_copositive(m_matrix(ce)):
            return CompleteResult(Decision.COPOSITIVE, "lambdaS_zero")
        x = _lambda_s_zero_witness(ce, mq)
        value = _certified(c, x) if x else None
        return CompleteResult(Decision.NOT_COPOSITIVE, "lambdaS_zero", x if value is not None else None, value)

    d = derived_quartic(ce)
    Q = Polynomial([d.l40, d.l31, d.l22, d.l13, d.l04])
    if mq.is_zero:
        return CompleteResult(Decision.COPOSITIVE, "complete")
    cuts = [Fraction(0)] + _m_positive_roots(ce) + [INF]
    for lo, hi in zip(cuts, cuts[1:]):
        if mq(rational_inside(lo, hi)) >= 0:
            continue
        if not sturm_nonneg_on_interval(Q, lo, hi):
            x = _region_witness(ce, mq, Q)
            value = _certified(c, x) if x else None
            return CompleteResult(Decision.NOT_COPOSITIVE, "region", x if value is not None else None, value)
    return CompleteResult(Decision.COPOSITIVE, "complete")


def _lambda_s_zero_witness(ce: Couplings, mq: Polynomial):
    if ce.lambda_s1 < 0:
        h = (Fraction(1), Fraction(0))
    elif ce.lambda_s2 < 0:
        h = (Fraction(0), Fraction(1))
    else:
        for lo, hi in root_free_gaps(mq, 0, cauchy_bound(mq) + 1):
            t = (lo + hi) / 2
            if mq(t) < 0:
                h = (Fraction(1), t)
                break
        else:
            return None
    m = eval_m(ce, *h)
    vt = eval_vtilde(ce, *h)
    s2 = 2 * max(vt, 0) / (-m) + 1
    return _unit((float(h[0]), float(h[1]), math.sqrt(float(s2))))


def vacuum_copositive_thm36(
    c: Couplings,
    tol: Optional[Tolerance] = None,
    mode: str = "float",
    complete: bool = True,
) -> VacuumVerdict:
    """Closed-form verdict, with the complete checker's verdict alongside.

    copositive iff lambdaS > 0 and either
      (1) M and Vt are copositive (2x2 matrix tests), or
      (2) lambdaS1 < 0, lambdaS2 < 0 and the derived quartic passes prop35_check.
    """
    sg = engine(mode, tol)
    cv = c.convert(sg.convert)
    ls_pos = gt0(sg.raw(cv.lambda_s))
    m_ok = matrix2_copositive3(m_matrix(cv), sg)
    vt_ok = matrix2_copositive3(vtilde_matrix(cv), sg)
    case1 = all3([m_ok, vt_ok])
    both_neg = all3([lt0(sg.raw(cv.lambda_s1)), lt0(sg.raw(cv.lambda_s2))])
    d = derived_quartic(cv)
    dq = None
    case2: Tri = False
    if both_neg and ls_pos is not False:
        dq = prop35_check(d, tol, mode)
        case2 = all3([both_neg, dq.holds])
    decision = Decision.from_tri(all3([ls_pos, any3([case1, case2])]))

    if decision is not Decision.COPOSITIVE:
        label = "none"
    elif case1 is True:
        label = "case1"
    else:
        label = "case2_" + dq.case
    conditions = {
        "lambdaS_positive": ls_pos,
        "m_copositive": m_ok,
        "vtilde_copositive": vt_ok,
        "m_negative_on_cone": both_neg,
        "derived_nonneg": None if dq is None else dq.holds,
        "derived_case": None if dq is None else dq.case,
        "derived_degenerate": None if dq is None else dq.degenerate,
        "derived_exact_nonneg": None if dq is None else dq.exact_nonneg,
        "delta_prime": d.delta_prime,
    }
    verdict = VacuumVerdict(decision, label, None, None, conditions=conditions, derived=d)
    if not complete:
        return verdict
    comp = vacuum_copositive_complete(c)
    agree = decision == comp.decision
    verdict = replace(
        verdict,
        complete_decision=comp.decision,
        agreement=agree,
        complete_route=comp.route,
    )
    if decision is Decision.NOT_COPOSITIVE and comp.witness is not None:
        verdict = replace(verdict, witness=comp.witness, witness_value=comp.witness_value)
    if not agree:
        log.info(
            "closed form %s vs complete %s for %s",
            decision.value,
            comp.decision.value,
            json.dumps(c.to_json()),
        )
    return verdict


@dataclass(frozen=True)
class SweepResult:
    rhos: tuple
    verdicts: tuple
    decision: Decision
    complete_decision: Optional[Decision]


def _conjunction(decisions: Iterable[Optional[Decision]]) -> Optional[Decision]:
    ds = list(decisions)
    if any(d is None for d in ds):
        return None
    if any(d is Decision.NOT_COPOSITIVE for d in ds):
        return Decision.NOT_COPOSITIVE
    if any(d is Decision.BOUNDARY for d in ds):
        return Decision.BOUNDARY
    return Decision.COPOSITIVE


def rho_grid(n: int = 101) -> list[Fraction]:
    if n < 1:
        raise ValueError("grid needs at least one point")
    if n == 1:
        return [Fraction(0)]
    return [Fraction(i, n - 1) for i in range(n)]


def sweep_rho(
    c: Couplings,
    grid: Sequence | int = 101,
    tol: Optional[Tolerance] = None,
    mode: str = "float",
    workers: int = 1,
) -> SweepResult:
    """Run the check at every rho of the grid; stability for all rho is the conjunction.

    Results are collected in grid order whatever the worker count.
    """
    rhos = rho_grid(grid) if isinstance(grid, int) else [as_fraction(r) for r in grid]
    conv = float if mode == "float" else (lambda r: r)
    jobs = [c.with_rho(conv(r)) for r in rhos]

    def run(ci):
        return vacuum_copositive_thm36(ci, tol, mode)

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            verdicts = list(pool.map(run, jobs))
    else:
        verdicts = [run(ci) for ci in jobs]
    return SweepResult(
        tuple(conv(r) for r in rhos),
        tuple(verdicts),
        _conjunction(v.decision for v in verdicts),
        _conjunction(v.complete_decision for v in verdicts),
    )


def audit_necessity_gap(
    couplings: Iterable[Couplings], tol: Optional[Tolerance] = None, mode: str = "exact"
) -> tuple[int, list[dict]]:
    """Check every instance; return (count, disagreement records)."""
    n = 0
    records = []
    for c in couplings:
        n += 1
        v = vacuum_copositive_thm36(c, tol, mode)
        if not v.agreement:
            records.append(
                {
                    "couplings": c.to_json(),
                    "closed_form": v.decision.value,
                    "complete": v.complete_decision.value,
                    "complete_route": v.complete_route,
                }
            )
    return n, records

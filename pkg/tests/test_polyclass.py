import random
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from copos import QuadraticCoeffs, QuarticCoeffs, Tolerance, quadratic_nonneg_pos, quartic_nonneg_pos, quartic_nonneg_pos_exact
from copos.polyclass import PreconditionError, negative_intervals
from generators import random_quartic

coef = st.fractions(min_value=-10, max_value=10, max_denominator=20)
pos = st.fractions(min_value=F(1, 10), max_value=10, max_denominator=20)
quartics = st.builds(QuarticCoeffs, pos, coef, coef, coef, pos)


@settings(max_examples=300)
@given(quartics)
def test_exact_closed_form_matches_sturm(q):
    assert quartic_nonneg_pos(q, mode="exact").nonneg == quartic_nonneg_pos_exact(q)


@given(quartics, st.fractions(min_value=F(1, 50), max_value=50, max_denominator=50))
def test_scaling_invariance(q, s):
    base = quartic_nonneg_pos(q, mode="exact")
    scaled = quartic_nonneg_pos(q.scaled(s), mode="exact")
    assert scaled.nonneg == base.nonneg
    assert scaled.delta == s**6 * base.delta


@given(quartics)
def test_reversal_invariance(q):
    assert quartic_nonneg_pos(q, mode="exact").nonneg == quartic_nonneg_pos(q.reversed(), mode="exact").nonneg


@settings(max_examples=200)
@given(quartics)
def test_float_mode_only_errs_inside_band(q):
    exact = quartic_nonneg_pos(q, mode="exact").nonneg
    flt = quartic_nonneg_pos(q, mode="float").nonneg
    assert flt is None or flt == exact


def test_sampling_soundness():
    rng = random.Random(7)
    t = np.logspace(-6, 6, 10_000)
    checked = 0
    for _ in range(500):
        q = random_quartic(rng)
        if quartic_nonneg_pos(q, mode="float").nonneg:
            qf = QuarticCoeffs(*(float(c) for c in q))
            scale = max(abs(c) for c in qf)
            # relative to the largest term at each t, so huge t does not swamp the check
            terms = np.abs(qf.a * t**4) + np.abs(qf.b * t**3) + np.abs(qf.c * t**2) + np.abs(qf.d * t) + abs(qf.e)
            assert np.all(qf(t) >= -1e-10 * np.maximum(scale, terms))
            checked += 1
    assert checked > 50


def test_boundary_only_on_exact_zero_comparisons():
    # Float mode with eps = 0 on exactly representable inputs never flags boundary
    # unless a comparison is exactly zero.
    res = quartic_nonneg_pos(QuarticCoeffs(1, 0, -2, 0, 1), Tolerance(0.0), mode="float")
    assert res.nonneg is True
    res = quartic_nonneg_pos(QuarticCoeffs(1, 0, -2, 0, 1), mode="float")
    assert res.nonneg is None and res.boundary


def test_preconditions():
    with pytest.raises(PreconditionError):
        quartic_nonneg_pos(QuarticCoeffs(0, 1, 0, 0, 1))
    with pytest.raises(PreconditionError):
        quartic_nonneg_pos(QuarticCoeffs(1, 1, 0, 0, -1))
    with pytest.raises(ValueError):
        Tolerance(-1)


def test_strict_quadratic():
    assert quadratic_nonneg_pos(QuadraticCoeffs(1, -2, 1), strict=True) is False
    assert quadratic_nonneg_pos(QuadraticCoeffs(1, -1, 1), strict=True) is True
    assert quadratic_nonneg_pos(QuadraticCoeffs(1, 1, 0), strict=True) is False


def test_negative_case_one_radical_boundary():
    # b sqrt(e) + d sqrt(a) = 0 with Delta <= 0: case (1) misses, the others decide
    q = QuarticCoeffs(1, 1, 0, -1, 1)
    assert quartic_nonneg_pos(q, mode="exact").nonneg == quartic_nonneg_pos_exact(q)


def test_negative_intervals():
    p = QuarticCoeffs(1, 0, -5, 0, 4).polynomial()
    ivs = negative_intervals(p)
    assert len(ivs) == 1
    a, b = ivs[0]
    assert 1 <= a < b <= 2 and p((a + b) / 2) < 0

import json
import logging
import math
import random
from fractions import Fraction as F

import pytest

from copos import (
    Couplings,
    CouplingsError,
    Decision,
    DerivedQuartic,
    OracleConfig,
    build_vacuum_tensor,
    derived_quartic,
    eval_m,
    eval_quartic_form,
    eval_vtilde,
    min_over_s,
    prop35_check,
    sample_min,
    sweep_rho,
    vacuum_copositive_complete,
    vacuum_copositive_thm36,
)
from copos.polyclass import quartic_nonneg_pos
from copos.vacuum import audit_necessity_gap, eval_potential
from generators import random_couplings
from golden import dense_min_over_s


def rel_close(a, b, scale, tol=1e-12):
    return abs(a - b) <= tol * scale


def test_tensor_matches_potential():
    rng = random.Random(21)
    for _ in range(10_000):
        c = random_couplings(rng).convert(float)
        x = [rng.random() for _ in range(3)]
        v = eval_quartic_form(build_vacuum_tensor(c), x)
        scale = (1 + c.scale()) * 8
        assert rel_close(v, eval_potential(c, *x), scale)


def test_expansion_identity():
    rng = random.Random(22)
    for _ in range(10_000):
        c = random_couplings(rng).convert(float)
        h = (rng.random(), rng.random())
        d = derived_quartic(c)
        lhs = 4 * c.lambda_s * eval_vtilde(c, *h) - eval_m(c, *h) ** 2
        assert rel_close(lhs, d(*h), 10 * (1 + c.scale()) ** 2)


def test_expansion_identity_exact():
    rng = random.Random(23)
    for _ in range(300):
        c = random_couplings(rng)
        h = (F(rng.randint(0, 50), 7), F(rng.randint(0, 50), 11))
        assert 4 * c.lambda_s * eval_vtilde(c, *h) - eval_m(c, *h) ** 2 == derived_quartic(c)(*h)


def test_min_over_s_matches_dense_search():
    rng = random.Random(24)
    for _ in range(1000):
        c = random_couplings(rng).convert(float)
        h = (rng.random(), rng.random())
        value = min_over_s(c, *h)
        assert abs(value - dense_min_over_s(c, *h)) <= 1e-6 * (1 + abs(value))


def test_delta_prime_is_recomputed():
    d = DerivedQuartic(3, 1, -2, 5, 7)
    from copos import QuarticCoeffs, quartic_discriminant

    assert d.delta_prime == quartic_discriminant(QuarticCoeffs(7, 5, -2, 1, 3))


def test_derived_check_reversed_mapping_agrees():
    rng = random.Random(25)
    for _ in range(500):
        d = derived_quartic(random_couplings(rng))
        if d.l40 > 0 and d.l04 > 0:
            a = prop35_check(d, mode="exact").holds
            b = quartic_nonneg_pos(d.quartic().reversed(), mode="exact").nonneg
            assert a == b


def test_closed_form_soundness_and_witnesses():
    rng = random.Random(26)
    cfg = OracleConfig(samples=20_000, seed=3)
    counts = {}
    for _ in range(300):
        c = random_couplings(rng)
        v = vacuum_copositive_thm36(c, mode="exact")
        counts[v.decision] = counts.get(v.decision, 0) + 1
        assert v.decision is not Decision.BOUNDARY
        if v.decision is Decision.COPOSITIVE:
            assert v.complete_decision is Decision.COPOSITIVE
            rep = sample_min(build_vacuum_tensor(c), cfg)
            assert rep.min_value >= -1e-9 * (1 + c.scale())
        if v.complete_decision is Decision.NOT_COPOSITIVE:
            comp = vacuum_copositive_complete(c)
            assert comp.witness is not None
            x = comp.witness
            assert min(x) >= 0 and abs(math.sqrt(sum(t * t for t in x)) - 1) < 1e-12
            assert eval_potential(c.convert(float), *x) < 0
        if v.witness is not None:
            assert v.decision is Decision.NOT_COPOSITIVE
            assert eval_potential(c.convert(float), *v.witness) < 0
    assert counts.get(Decision.COPOSITIVE, 0) > 30 and counts.get(Decision.NOT_COPOSITIVE, 0) > 30


def test_float_matches_exact_outside_band():
    rng = random.Random(27)
    for _ in range(500):
        c = random_couplings(rng)
        f = vacuum_copositive_thm36(c.convert(float), mode="float", complete=False).decision
        e = vacuum_copositive_thm36(c, mode="exact", complete=False).decision
        assert f is Decision.BOUNDARY or f is e


def test_rho_zero_ignores_rho_couplings():
    rng = random.Random(28)
    for _ in range(200):
        c = random_couplings(rng).with_rho(0)
        base = vacuum_copositive_thm36(c, mode="exact")
        other = Couplings(
            c.lambda1, c.lambda2, c.lambda3, rng.randint(-10, 10), c.lambda_s, c.lambda_s1, c.lambda_s2, rng.randint(0, 10), 0
        )
        alt = vacuum_copositive_thm36(other, mode="exact")
        assert (alt.decision, alt.complete_decision, alt.thm36_case) == (base.decision, base.complete_decision, base.thm36_case)


def test_gap_direction():
    rng = random.Random(29)
    n, records = audit_necessity_gap((random_couplings(rng) for _ in range(300)))
    assert n == 300 and records
    for r in records:
        assert (r["closed_form"], r["complete"]) == ("not_copositive", "copositive")


def test_disagreement_is_logged(caplog):
    c = Couplings(lambda1=1, lambda2=1, lambda_s=1, lambda_s1=1, lambda_s2=-1, abs_lambda_s12=1, rho=F(1, 2))
    with caplog.at_level(logging.INFO, logger="copos.vacuum"):
        v = vacuum_copositive_thm36(c, mode="exact")
    assert v.decision is Decision.NOT_COPOSITIVE and v.complete_decision is Decision.COPOSITIVE
    assert v.agreement is False and "complete" in caplog.text


def test_lambda_s_edge_paths():
    neg = vacuum_copositive_complete(Couplings(lambda1=1, lambda_s=-1))
    assert neg.decision is Decision.NOT_COPOSITIVE and neg.witness == (0.0, 0.0, 1.0)
    ok = vacuum_copositive_complete(Couplings(lambda1=1, lambda2=1, lambda_s=0, lambda_s1=1, lambda_s2=1))
    assert ok.decision is Decision.COPOSITIVE and ok.route == "lambdaS_zero"
    c = Couplings(lambda1=1, lambda2=1, lambda_s=0, lambda_s1=1, lambda_s2=1, abs_lambda_s12=5, rho=1)
    bad = vacuum_copositive_complete(c)
    assert bad.decision is Decision.NOT_COPOSITIVE and eval_potential(c, *bad.witness) < 0
    v = vacuum_copositive_thm36(Couplings(lambda1=1, lambda2=1, lambda_s=0))
    assert v.decision is Decision.NOT_COPOSITIVE and v.complete_decision is Decision.COPOSITIVE


def test_sweep_is_order_independent():
    c = Couplings(lambda1=1, lambda2=1, lambda_s=1, lambda3=-1, lambda4=-3, lambda_s1=-1, lambda_s2=F(1, 2), abs_lambda_s12=2)
    a = sweep_rho(c, 21, mode="exact", workers=1)
    b = sweep_rho(c, 21, mode="exact", workers=4)
    assert a.rhos == b.rhos and a.decision is b.decision
    assert [v.decision for v in a.verdicts] == [v.decision for v in b.verdicts]
    assert a.decision is Decision.NOT_COPOSITIVE


def test_sweep_default_grid():
    res = sweep_rho(Couplings(lambda1=1, lambda2=1, lambda_s=1))
    assert len(res.rhos) == 101 and res.rhos[0] == 0 and res.rhos[-1] == 1
    assert res.decision is Decision.COPOSITIVE


@pytest.mark.parametrize(
    "doc",
    [
        {"absLambdaS12": -1},
        {"rho": 1.5},
        {"rho": -0.1},
        {"lambda1": "abc"},
        {"lambdaX": 1},
        [1, 2],
    ],
)
def test_couplings_validation(doc):
    with pytest.raises(CouplingsError):
        Couplings.from_json(doc)


def test_couplings_json_round_trip():
    c = Couplings(lambda1=F(1, 3), lambda2=2, lambda3=-4.5, rho=F(1, 2), abs_lambda_s12=3)
    assert Couplings.from_json(json.dumps(c.to_json())) == c

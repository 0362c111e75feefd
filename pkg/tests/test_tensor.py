import itertools
import json
import math
import random
from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from copos import Matrix2, SymTensor4, TensorFormatError, contract3, eval_quartic_form, matrix2_copositive
from copos.tensor import multiplicity, sorted_indices
from golden import brute_force


def random_tensor(rng, dim):
    return SymTensor4(dim, {idx: rng.uniform(-10, 10) for idx in sorted_indices(dim)})


def test_entry_counts():
    assert len(sorted_indices(2)) == 5
    assert len(sorted_indices(3)) == 15
    assert sorted({multiplicity(i) for i in sorted_indices(4)}) == [1, 4, 6, 12, 24]


def test_permutation_symmetry():
    rng = random.Random(3)
    for dim in (2, 3, 4):
        T = random_tensor(rng, dim)
        for idx in sorted_indices(dim):
            for perm in itertools.permutations(idx):
                assert T[perm] == T[idx]


def test_euler_identity_and_brute_force():
    rng = random.Random(4)
    for _ in range(1000):
        dim = rng.choice((1, 2, 3))
        T = random_tensor(rng, dim)
        x = [rng.uniform(-2, 2) for _ in range(dim)]
        val = eval_quartic_form(T, x)
        scale = sum(abs(T[i]) * multiplicity(i) for i in sorted_indices(dim)) * max(map(abs, x)) ** 4
        assert abs(sum(a * b for a, b in zip(x, contract3(T, x))) - val) <= 1e-12 * scale
        assert abs(brute_force(T, x) - val) <= 1e-12 * scale


def test_dimension_mismatch():
    T = SymTensor4(2, {(1, 1, 1, 1): 1})
    with pytest.raises(ValueError):
        eval_quartic_form(T, (1, 2, 3))
    with pytest.raises(ValueError):
        contract3(T, (1,))


def test_json_round_trip_and_normalization():
    doc = {"dim": 3, "entries": [{"idx": [3, 1, 2, 3], "val": "-1/12"}, {"idx": [1, 1, 1, 1], "val": 2.5}]}
    T = SymTensor4.from_json(json.dumps(doc))
    assert T[(1, 2, 3, 3)] == F(-1, 12)
    assert SymTensor4.from_json(T.to_json()) == T


@pytest.mark.parametrize(
    "doc",
    [
        {"dim": 2, "entries": [{"idx": [1, 2, 1, 1], "val": 1}, {"idx": [1, 1, 1, 2], "val": 2}]},
        {"dim": 2, "entries": [{"idx": [1, 1, 1, 3], "val": 1}]},
        {"dim": 2, "entries": [{"idx": [1, 1, 1], "val": 1}]},
        {"dim": 0, "entries": []},
        {"dim": 2, "entries": [{"idx": [1, 1, 1, 1], "val": "x"}]},
        {"dim": 2, "entries": [{"idx": [1, 1, 1, 1], "val": True}]},
        {"entries": []},
    ],
)
def test_bad_documents(doc):
    with pytest.raises(TensorFormatError):
        SymTensor4.from_json(doc)


finite = st.floats(min_value=-10, max_value=10, allow_nan=False)


@given(finite, finite, finite)
def test_matrix2_never_falsely_copositive(a11, a12, a22):
    theta = np.linspace(0, np.pi / 2, 1000)
    x, y = np.cos(theta), np.sin(theta)
    q = a11 * x * x + 2 * a12 * x * y + a22 * y * y
    exact = matrix2_copositive(Matrix2(a11, a12, a22))
    tol = 1e-10 * (abs(a11) + abs(a12) + abs(a22))
    if exact:
        assert q.min() >= -tol
    else:
        # a miss by the grid is only possible right at the boundary
        d = 1e-6 * (1 + abs(a11) + abs(a12) + abs(a22))
        near = a11 >= -d and a22 >= -d and a12 + math.sqrt(max(a11, 0) * max(a22, 0)) >= -d
        assert q.min() < 0 or near


def test_matrix2_strict():
    assert matrix2_copositive(Matrix2(1, -1, 1), strict=True) is False
    assert matrix2_copositive(Matrix2(1, 0, 1), strict=True) is True
    assert matrix2_copositive(Matrix2(0, 1, 0), strict=True) is False


def test_matrix2_float_indeterminate():
    with pytest.raises(ValueError):
        matrix2_copositive(Matrix2(1, -1, 1), mode="float")

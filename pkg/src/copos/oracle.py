"""Sampling oracle: minimize a quartic form over the nonnegative unit sphere.

A form is copositive iff it is nonnegative on the unit sphere restricted to
the orthant, so a negative sample is a certificate of non-copositivity.  A
nonnegative minimum proves nothing.

Random points come in fixed-size chunks, each drawn from its own Philox
stream keyed by (seed, chunk index), so results do not depend on how the
chunks are scheduled.
"""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

from .surd import as_fraction
from .tensor import SymTensor4, eval_quartic_form, multiplicity, sorted_indices

SEED_MASK = (1 << 64) - 1
N_STARTS = 16


@dataclass(frozen=True)
class OracleConfig:
    samples: Optional[int] = None  # None: 10**6 for dim >= 3, 10**5 for dim <= 2
    seed: int = 0
    refine_steps: int = 200
    norm: str = "euclidean"
    chunk_size: int = 1 << 16
    workers: int = 1
    # |min_value| <= boundary_band * (1 + scale) is reported as near_boundary
    boundary_band: float = 1e-9

    def __post_init__(self):
        if self.samples is not None and self.samples < 1:
            raise ValueError("samples must be >= 1")
        if self.refine_steps < 0:
            raise ValueError("refine_steps must be >= 0")
        if self.norm != "euclidean":
            raise ValueError("only the euclidean norm is supported")
        if self.chunk_size < 1:
            raise ValueError("chunk_size must be >= 1")

    def samples_for(self, dim: int) -> int:
        if self.samples is not None:
            return self.samples
        return 10**6 if dim >= 3 else 10**5


@dataclass(frozen=True)
class OracleReport:
    min_value: float
    argmin: tuple[float, ...]
    samples_used: int
    verdict_hint: str  # violation, near_boundary or no_violation_found


@lru_cache(maxsize=None)
def _exponents(dim: int) -> np.ndarray:
    """Exponent vector of each monomial, in sorted_indices order."""
    E = np.zeros((len(sorted_indices(dim)), dim), dtype=np.int64)
    for m, idx in enumerate(sorted_indices(dim)):
        for i in idx:
            E[m, i - 1] += 1
    return E


def _weights(T: SymTensor4) -> np.ndarray:
    return np.array([multiplicity(idx) * float(v) for idx, v in T.items()])


def _monomials(X: np.ndarray) -> np.ndarray:
    dim = X.shape[1]
    cols = [np.prod(X[:, list(i - 1 for i in idx)], axis=1) for idx in sorted_indices(dim)]
    return np.stack(cols, axis=1)


def _fixed_points(dim: int) -> np.ndarray:
    """Axis vectors and normalized 2- and 3-subset midpoints."""
    pts = []
    for k in (1, 2, 3):
        for sub in itertools.combinations(range(dim), k):
            x = np.zeros(dim)
            x[list(sub)] = 1 / math.sqrt(k)
            pts.append(x)
    return np.array(pts)


def _chunk(dim: int, seed: int, index: int, size: int) -> np.ndarray:
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence([seed & SEED_MASK, index])))
    X = np.abs(rng.standard_normal((size, dim)))
    n = np.linalg.norm(X, axis=1, keepdims=True)
    n[n == 0] = 1.0
    return X / n


@lru_cache(maxsize=4)
def _design(dim: int, samples: int, seed: int, chunk_size: int, workers: int) -> tuple[np.ndarray, np.ndarray]:
    sizes = [min(chunk_size, samples - s) for s in range(0, samples, chunk_size)]

    def build(i):
        return _chunk(dim, seed, i, sizes[i])

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(build, range(len(sizes))))
    else:
        parts = [build(i) for i in range(len(sizes))]
    X = np.concatenate([_fixed_points(dim)] + parts)
    return X, np.asfortranarray(_monomials(X))


def _order(values: np.ndarray, X: np.ndarray) -> np.ndarray:
    """Indices sorted by (value, lexicographic x)."""
    keys = [X[:, j] for j in range(X.shape[1] - 1, -1, -1)] + [values]
    return np.lexsort(keys)


def _refine(w: np.ndarray, dim: int, X: np.ndarray, steps: int) -> tuple[np.ndarray, np.ndarray]:
    """Projected gradient descent on the sphere, all starts at once.

    Each start keeps its own step, halved on every rejected move.
    """
    E = _exponents(dim)
    # exponents of each partial derivative, clipped at 0 where the factor E[:, i] vanishes anyway
    dE = np.stack([E - np.eye(dim, dtype=np.int64)[i] for i in range(dim)]).clip(min=0)
    dW = (w[:, None] * E).T  # (dim, monomials)

    def f(Y):
        return np.prod(Y[:, None, :] ** E[None], axis=2) @ w

    def grad(Y):
        P = np.prod(Y[:, None, None, :] ** dE[None], axis=3)  # (starts, dim, monomials)
        return np.einsum("sim,im->si", P, dW)

    vals = f(X)
    step = np.full(len(X), 0.1)
    for _ in range(steps):
        Y = np.maximum(X - step[:, None] * grad(X), 0.0)
        n = np.linalg.norm(Y, axis=1)
        ok = n > 0
        Y[ok] /= n[ok, None]
        new = np.where(ok, f(Y), np.inf)
        better = new < vals
        X = np.where(better[:, None], Y, X)
        vals = np.where(better, new, vals)
        step = np.where(better, step, step / 2)
        if np.all(step < 1e-18):
            break
    return X, vals


def sample_min(T: SymTensor4, cfg: Optional[OracleConfig] = None) -> OracleReport:
    """Smallest value of the form found on the nonnegative unit sphere."""
    cfg = cfg or OracleConfig()
    dim = T.dim
    samples = cfg.samples_for(dim)
    w = _weights(T)
    X, Phi = _design(dim, samples, cfg.seed, cfg.chunk_size, cfg.workers)
    nz = np.flatnonzero(w)
    values = np.zeros(len(X))
    for j in nz:
        values += w[j] * Phi[:, j]

    k = min(N_STARTS, len(values))
    top = np.argpartition(values, k - 1)[:k] if k < len(values) else np.arange(len(values))
    top = top[_order(values[top], X[top])]
    starts = X[top]
    refined, rvals = _refine(w, dim, starts.copy(), cfg.refine_steps)
    pool = np.concatenate([starts, refined])
    pvals = np.concatenate([values[top], rvals])
    best = pool[_order(pvals, pool)[0]]

    best = best / np.linalg.norm(best)
    argmin = tuple(float(v) for v in best)
    min_value = float(eval_quartic_form(T.map(float), argmin))
    band = cfg.boundary_band * (1 + T.scale())
    if min_value < -band and certify_violation(T, argmin):
        hint = "violation"
    elif abs(min_value) <= band or min_value < 0:
        hint = "near_boundary"
    else:
        hint = "no_violation_found"
    return OracleReport(min_value, argmin, len(X), hint)


def certify_violation(T: SymTensor4, x: Sequence) -> bool:
    """x >= 0, x != 0 and the form is negative at x/|x|, decided exactly.

    The form is homogeneous, so the sign at x/|x| equals the sign at x,
    which is computed over the rationals.
    """
    if len(x) != T.dim:
        return False
    try:
        xs = [as_fraction(v) for v in x]
    except (ValueError, TypeError, OverflowError):
        return False
    if any(v < 0 for v in xs) or all(v == 0 for v in xs):
        return False
    return eval_quartic_form(T.map(as_fraction), xs) < Fraction(0)

"""Packed symmetric 4th-order tensors and the 2x2 copositive-matrix test."""

from __future__ import annotations

import itertools
import json
import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Optional, Sequence

from .signs import Tri, all3, engine, ge0, gt0
from .surd import as_fraction

Index = tuple[int, int, int, int]


class TensorFormatError(ValueError):
    """Malformed tensor document or index."""


@lru_cache(maxsize=None)
def sorted_indices(dim: int) -> tuple[Index, ...]:
    """All i <= j <= k <= l with entries in 1..dim."""
    return tuple(itertools.combinations_with_replacement(range(1, dim + 1), 4))


@lru_cache(maxsize=None)
def multiplicity(idx: tuple[int, ...]) -> int:
    """Number of distinct orderings of the index multiset (1, 4, 6, 12 or 24 for order 4)."""
    n = math.factorial(len(idx))
    for c in Counter(idx).values():
        n //= math.factorial(c)
    return n


class SymTensor4:
    """Order-4 symmetric tensor stored by its sorted index tuples (1-based).

    Missing entries are zero.  Lookup accepts any permutation of an index.
    """

    __slots__ = ("dim", "_entries")

    def __init__(self, dim: int, entries: Optional[Mapping[Sequence[int], object]] = None):
        if not isinstance(dim, int) or dim < 1:
            raise TensorFormatError(f"dim must be a positive integer, got {dim!r}")
        self.dim = dim
        self._entries: dict[Index, object] = {}
        for idx, val in (entries or {}).items():
            key = self._normalize(idx)
            if key in self._entries:
                raise TensorFormatError(f"duplicate entry for index {key}")
            self._entries[key] = val

    def _normalize(self, idx: Sequence[int]) -> Index:
        if len(idx) != 4:
            raise TensorFormatError(f"index must have 4 components, got {idx!r}")
        for i in idx:
            if not isinstance(i, int) or isinstance(i, bool) or not 1 <= i <= self.dim:
                raise TensorFormatError(f"index component {i!r} out of range 1..{self.dim}")
        return tuple(sorted(idx))  # type: ignore[return-value]

    def __getitem__(self, idx: Sequence[int]):
        return self._entries.get(self._normalize(idx), 0)

    def items(self) -> Iterable[tuple[Index, object]]:
        """(sorted index, value) over every independent entry, zeros included."""
        for idx in sorted_indices(self.dim):
            yield idx, self._entries.get(idx, 0)

    def nonzero(self) -> dict[Index, object]:
        return {k: v for k, v in self._entries.items() if v != 0}

    def map(self, fn) -> "SymTensor4":
        return SymTensor4(self.dim, {k: fn(v) for k, v in self._entries.items()})

    def scale(self) -> float:
        """Largest absolute entry (0 for the zero tensor)."""
        return max((abs(float(v)) for v in self._entries.values()), default=0.0)

    def __eq__(self, other):
        if not isinstance(other, SymTensor4):
            return NotImplemented
        return self.dim == other.dim and self.nonzero() == other.nonzero()

    def __repr__(self):
        body = ", ".join(f"{''.join(map(str, k))}: {v}" for k, v in sorted(self.nonzero().items()))
        return f"SymTensor4(dim={self.dim}, {{{body}}})"

    # JSON document: {"dim": n, "entries": [{"idx": [i, j, k, l], "val": v}, ...]}

    @classmethod
    def from_json(cls, doc) -> "SymTensor4":
        if isinstance(doc, (str, bytes)):
            doc = json.loads(doc)
        if not isinstance(doc, dict) or "dim" not in doc or "entries" not in doc:
            raise TensorFormatError('tensor document needs "dim" and "entries"')
        entries = {}
        t = cls(doc["dim"])
        for item in doc["entries"]:
            if not isinstance(item, dict) or "idx" not in item or "val" not in item:
                raise TensorFormatError(f"bad entry {item!r}")
            key = t._normalize(tuple(item["idx"]))
            if key in entries:
                raise TensorFormatError(f"duplicate entry for index {key}")
            entries[key] = parse_number(item["val"])
        return cls(doc["dim"], entries)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "entries": [{"idx": list(k), "val": number_to_json(v)} for k, v in sorted(self.nonzero().items())],
        }


def parse_number(v):
    """JSON numbers stay floats/ints; strings such as "-5/6" become exact Fractions."""
    if isinstance(v, bool) or v is None:
        raise TensorFormatError(f"not a number: {v!r}")
    if isinstance(v, str):
        try:
            return as_fraction(v)
        except (ValueError, ZeroDivisionError) as exc:
            raise TensorFormatError(f"not a number: {v!r}") from exc
    if isinstance(v, (int, float)):
        if isinstance(v, float) and not math.isfinite(v):
            raise TensorFormatError(f"non-finite value {v!r}")
        return v
    raise TensorFormatError(f"not a number: {v!r}")


def number_to_json(v):
    if isinstance(v, int) or isinstance(v, float):
        return v
    if v.denominator == 1:
        return int(v.numerator)
    return f"{v.numerator}/{v.denominator}"


def _check_dim(T: SymTensor4, x: Sequence) -> None:
    if len(x) != T.dim:
        raise ValueError(f"vector of length {len(x)} does not match tensor dimension {T.dim}")


def eval_quartic_form(T: SymTensor4, x: Sequence):
    """A x^4 = sum over all n^4 index tuples, via sorted tuples and their multiplicities."""
    _check_dim(T, x)
    total = 0
    for idx, val in T.nonzero().items():
        i, j, k, l = idx
        total += multiplicity(idx) * val * x[i - 1] * x[j - 1] * x[k - 1] * x[l - 1]
    return total


def contract3(T: SymTensor4, x: Sequence) -> list:
    """(A x^3)_i = sum_{j,k,l} a_ijkl x_j x_k x_l."""
    _check_dim(T, x)
    out = [0] * T.dim
    for idx, val in T.nonzero().items():
        for i in set(idx):
            rest = list(idx)
            rest.remove(i)
            j, k, l = rest
            out[i - 1] += multiplicity(tuple(rest)) * val * x[j - 1] * x[k - 1] * x[l - 1]
    return out


@dataclass(frozen=True)
class Matrix2:
    """Symmetric 2x2 matrix [[a11, a12], [a12, a22]]."""

    a11: float
    a12: float
    a22: float


def matrix2_copositive3(M: Matrix2, sg, strict: bool = False) -> Tri:
    """Three-valued copositivity test; conjuncts are checked in order.

    a12 + sqrt(a11 a22) is only formed once both diagonal conditions hold,
    so its radicand is never negative.
    """
    cmp = gt0 if strict else ge0
    a11, a12, a22 = sg.convert(M.a11), sg.convert(M.a12), sg.convert(M.a22)
    diag = all3([cmp(sg.raw(a11)), cmp(sg.raw(a22))])
    if diag is False:
        return False
    off = cmp(sg.surd(a12, 1, a11 * a22, abs(a12), 1))
    return all3([diag, off])


def matrix2_copositive(M: Matrix2, strict: bool = False, mode: str = "exact") -> bool:
    """Copositivity (strict: strict copositivity) of a symmetric 2x2 matrix.

    Decided exactly on the rational values of the entries by default.
    """
    out = matrix2_copositive3(M, engine(mode), strict)
    if out is None:
        raise ValueError("indeterminate in float mode; use mode='exact'")
    return out

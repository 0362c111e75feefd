"""JSON report schema shared by every CLI command."""

from __future__ import annotations

from fractions import Fraction
from typing import Literal, Optional, Union

from pydantic import BaseModel, ConfigDict

DecisionName = Literal["copositive", "not_copositive", "boundary"]
Scalar = Union[bool, int, float, str, None]


class OracleModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    min_value: float
    argmin: list[float]
    samples_used: int
    verdict_hint: Literal["violation", "near_boundary", "no_violation_found"]
    seed: int


class Report(BaseModel):
    model_config = ConfigDict(extra="forbid")

    command: Literal["check-quartic", "check-tensor2", "check-vacuum", "sweep-rho", "oracle"]
    mode: Literal["float", "exact", "both"]
    decision: DecisionName
    case: Optional[str] = None
    route: Optional[str] = None
    float_decision: Optional[DecisionName] = None
    exact_decision: Optional[DecisionName] = None
    mismatch: Optional[bool] = None
    complete_decision: Optional[DecisionName] = None
    agreement: Optional[bool] = None
    witness: Optional[list[float]] = None
    witness_value: Optional[float] = None
    quantities: dict[str, Union[Scalar, dict[str, Scalar], list[Scalar]]] = {}
    rho: Optional[Scalar] = None
    points: Optional[list["Report"]] = None
    oracle: Optional[OracleModel] = None


def scalar(v) -> Scalar:
    """JSON-safe value: exact rationals become "p/q" strings (or ints)."""
    if v is None or isinstance(v, (bool, str)):
        return v
    if isinstance(v, int):
        return v
    if isinstance(v, Fraction):
        return int(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if hasattr(v, "value"):
        return v.value
    return float(v)


def scalars(d: dict) -> dict:
    return {k: scalar(v) for k, v in d.items()}

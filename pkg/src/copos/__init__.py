"""Copositivity tests for 4th-order symmetric tensors and the Z3 dark matter vacuum."""

from .copos2 import (
    Copos2Verdict,
    InvariantsIJ,
    invariants_ij,
    mapped_quartic,
    tensor2_copositive,
    tensor2_strictly_copositive_sufficient,
)
from .oracle import OracleConfig, OracleReport, certify_violation, sample_min
from .poly import Polynomial, count_roots, sturm_nonneg_on_interval, sturm_sequence
from .polyclass import (
    PreconditionError,
    QuadraticCoeffs,
    QuarticCoeffs,
    QuarticDecision,
    quadratic_nonneg_pos,
    quartic_discriminant,
    quartic_nonneg_pos,
    quartic_nonneg_pos_exact,
)
from .signs import Decision, Tolerance
from .tensor import Matrix2, SymTensor4, TensorFormatError, contract3, eval_quartic_form, matrix2_copositive
from .vacuum import (
    Couplings,
    CouplingsError,
    DerivedQuartic,
    VacuumVerdict,
    build_vacuum_tensor,
    derived_quartic,
    eval_m,
    eval_vtilde,
    m_copositive,
    m_negative_definite_on_cone,
    min_over_s,
    prop35_check,
    sweep_rho,
    vacuum_copositive_complete,
    vacuum_copositive_thm36,
)

__all__ = [name for name in dir() if not name.startswith("_")]

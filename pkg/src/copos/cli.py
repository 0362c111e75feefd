"""Command-line front end.

Exit status: 0 copositive, 1 not copositive, 2 boundary/indeterminate, 64 bad input.
"""

from __future__ import annotations

import json
import os
import sys
from typing import Optional

import click

from .copos2 import tensor2_copositive, tensor2_strictly_copositive_sufficient
from .oracle import OracleConfig, sample_min
from .polyclass import PreconditionError, QuarticCoeffs, quartic_nonneg_pos, quartic_nonneg_pos_exact
from .report import OracleModel, Report, scalar, scalars
from .signs import Decision, Tolerance
from .tensor import SymTensor4, TensorFormatError, parse_number
from .vacuum import Couplings, CouplingsError, build_vacuum_tensor, sweep_rho, vacuum_copositive_thm36

EXIT_CODES = {Decision.COPOSITIVE: 0, Decision.NOT_COPOSITIVE: 1, Decision.BOUNDARY: 2}
EXIT_INPUT = 64
ORACLE_EXIT = {"no_violation_found": 0, "violation": 1, "near_boundary": 2}


class InputError(click.ClickException):
    exit_code = EXIT_INPUT


def _load(input_path: Optional[str], inline: Optional[str]):
    if (input_path is None) == (inline is None):
        raise InputError("give exactly one of --input or --inline")
    try:
        if inline is not None:
            return json.loads(inline)
        with open(input_path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {input_path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}") from exc


def _quartic(doc) -> QuarticCoeffs:
    if not isinstance(doc, dict) or set(doc) != set("abcde"):
        raise InputError('quartic document needs exactly the keys "a", "b", "c", "d", "e"')
    try:
        return QuarticCoeffs(*(parse_number(doc[k]) for k in "abcde"))
    except TensorFormatError as exc:
        raise InputError(str(exc)) from exc


def _tensor(doc, dim: Optional[int] = None) -> SymTensor4:
    try:
        T = SymTensor4.from_json(doc)
    except (TensorFormatError, TypeError) as exc:
        raise InputError(str(exc)) from exc
    if dim is not None and T.dim != dim:
        raise InputError(f"expected a dim-{dim} tensor, got dim={T.dim}")
    return T


def _couplings(doc) -> Couplings:
    try:
        return Couplings.from_json(doc)
    except CouplingsError as exc:
        raise InputError(str(exc)) from exc


def _modes(mode: str) -> list[str]:
    return ["float", "exact"] if mode == "both" else [mode]


def _combine(report: dict, decisions: dict) -> dict:
    """Fill decision fields; with both modes the exact decision is final."""
    if "exact" in decisions:
        report["decision"] = decisions["exact"].value
        report["exact_decision"] = decisions["exact"].value
    if "float" in decisions:
        report["float_decision"] = decisions["float"].value
        report.setdefault("decision", decisions["float"].value)
    if len(decisions) == 2:
        report["mismatch"] = decisions["float"] != decisions["exact"]
    return report


def _oracle_model(T: SymTensor4, cfg: OracleConfig) -> OracleModel:
    r = sample_min(T, cfg)
    return OracleModel(
        min_value=r.min_value, argmin=list(r.argmin), samples_used=r.samples_used, verdict_hint=r.verdict_hint, seed=cfg.seed
    )


def _emit(report: Report, fmt: str) -> None:
    if fmt == "json":
        click.echo(report.model_dump_json())
        return
    for key, val in report.model_dump(exclude_none=True).items():
        if key == "points":
            for p in val:
                click.echo(f"rho={p['rho']}: {p['decision']} ({p.get('case')})")
        elif isinstance(val, dict):
            click.echo(f"{key}:")
            for k, v in val.items():
                click.echo(f"  {k}: {v}")
        else:
            click.echo(f"{key}: {val}")


def _seed(seed: int) -> int:
    env = os.environ.get("COPOS_SEED")
    if env is None or env == "":
        return seed
    try:
        return int(env)
    except ValueError as exc:
        raise InputError(f"COPOS_SEED must be an integer, got {env!r}") from exc


def _common(fn):
    opts = [
        click.option("--input", "input_path", type=click.Path(dir_okay=False), help="JSON input file."),
        click.option("--inline", help="JSON input given on the command line."),
        click.option("--mode", type=click.Choice(["float", "exact", "both"]), default="float", show_default=True),
        click.option("--eps", type=float, default=1e-10, show_default=True, help="Relative half-width of the boundary band."),
        click.option("--samples", type=click.IntRange(min=1), default=None, help="Oracle sample count."),
        click.option("--seed", type=int, default=0, show_default=True, help="Oracle seed (COPOS_SEED overrides)."),
        click.option("--format", "fmt", type=click.Choice(["json", "text"]), default="json", show_default=True),
    ]
    for opt in reversed(opts):
        fn = opt(fn)
    return fn


def _setup(eps, samples, seed):
    if not eps >= 0:
        raise InputError("--eps must be >= 0")
    return Tolerance(eps), OracleConfig(samples=samples, seed=_seed(seed))


@click.group()
def cli():
    """Copositivity checks for quartics, 2-d tensors and the Z3 vacuum potential."""


@cli.command("check-quartic")
@_common
@click.option("--oracle", "with_oracle", is_flag=True, help="Attach a sampling-oracle report.")
def check_quartic(input_path, inline, mode, eps, samples, seed, fmt, with_oracle):
    """Is a t^4 + b t^3 + c t^2 + d t + e >= 0 for all t > 0?"""
    tol, cfg = _setup(eps, samples, seed)
    q = _quartic(_load(input_path, inline))
    sturm = quartic_nonneg_pos_exact(q)
    report = {"command": "check-quartic", "mode": mode}
    quantities = {"exact_oracle_nonneg": sturm}
    decisions = {}
    if q.a > 0 and q.e > 0:
        report["route"] = "closed_form"
        for m in _modes(mode):
            res = quartic_nonneg_pos(q, tol, m)
            decisions[m] = Decision.from_tri(res.nonneg)
            if m == "exact" or len(decisions) == 1:
                report["case"] = res.case
                quantities["delta"] = scalar(res.delta)
                quantities["branches"] = scalars(res.branches)
    else:
        # the closed form needs a > 0 and e > 0; the Sturm count decides the rest
        report["route"] = "exact_oracle"
        for m in _modes(mode):
            decisions[m] = Decision.from_tri(sturm)
    report["quantities"] = quantities
    if with_oracle:
        a, b, c, d, e = q
        T = SymTensor4(2, {(1, 1, 1, 1): e, (1, 1, 1, 2): d / 4, (1, 1, 2, 2): c / 6, (1, 2, 2, 2): b / 4, (2, 2, 2, 2): a})
        report["oracle"] = _oracle_model(T, cfg)
    out = Report(**_combine(report, decisions))
    _emit(out, fmt)
    return EXIT_CODES[Decision(out.decision)]


@cli.command("check-tensor2")
@_common
@click.option("--oracle", "with_oracle", is_flag=True, help="Attach a sampling-oracle report.")
def check_tensor2(input_path, inline, mode, eps, samples, seed, fmt, with_oracle):
    """Copositivity of a 2-dimensional order-4 symmetric tensor."""
    tol, cfg = _setup(eps, samples, seed)
    T = _tensor(_load(input_path, inline), dim=2)
    report = {"command": "check-tensor2", "mode": mode}
    decisions = {}
    for m in _modes(mode):
        v = tensor2_copositive(T, tol, m)
        decisions[m] = v.decision
        if m == "exact" or len(decisions) == 1:
            inv = v.invariants
            report.update(case=v.case_label, route=v.route, witness=v.witness, witness_value=v.witness_value)
            report["quantities"] = {
                "I": scalar(inv.I),
                "J": scalar(inv.J),
                "disc": scalar(inv.disc),
                "Delta": scalar(6912 * inv.disc),
                "quartic": {k: scalar(x) for k, x in zip("abcde", v.quartic)},
                "branches": scalars(v.branches or {}),
                "strictly_copositive_sufficient": tensor2_strictly_copositive_sufficient(T, tol, m),
            }
    if with_oracle:
        report["oracle"] = _oracle_model(T, cfg)
    out = Report(**_combine(report, decisions))
    _emit(out, fmt)
    return EXIT_CODES[Decision(out.decision)]


def _vacuum_fields(v) -> dict:
    d = v.derived
    q = scalars(v.conditions)
    q["derived_quartic"] = {k: scalar(getattr(d, k)) for k in ("l40", "l31", "l22", "l13", "l04")}
    return {
        "case": v.thm36_case,
        "route": v.complete_route,
        "complete_decision": v.complete_decision.value,
        "agreement": v.agreement,
        "witness": v.witness,
        "witness_value": v.witness_value,
        "quantities": q,
    }


def _vacuum_report(c: Couplings, mode: str, tol: Tolerance) -> dict:
    report = {"command": "check-vacuum", "mode": mode}
    decisions = {}
    for m in _modes(mode):
        v = vacuum_copositive_thm36(c, tol, m)
        decisions[m] = v.decision
        if m == "exact" or len(decisions) == 1:
            report.update(_vacuum_fields(v))
    return _combine(report, decisions)


@cli.command("check-vacuum")
@_common
@click.option("--oracle", "with_oracle", is_flag=True, help="Attach a sampling-oracle report.")
def check_vacuum(input_path, inline, mode, eps, samples, seed, fmt, with_oracle):
    """Vacuum stability (copositivity of the potential's tensor) at a fixed rho."""
    tol, cfg = _setup(eps, samples, seed)
    c = _couplings(_load(input_path, inline))
    report = _vacuum_report(c, mode, tol)
    if with_oracle:
        report["oracle"] = _oracle_model(build_vacuum_tensor(c), cfg)
    out = Report(**report)
    _emit(out, fmt)
    return EXIT_CODES[Decision(out.decision)]


@cli.command("sweep-rho")
@_common
@click.option("--rho-grid", type=click.IntRange(min=1), default=101, show_default=True, help="Uniform grid size on [0, 1].")
@click.option("--workers", type=click.IntRange(min=1), default=1, show_default=True)
def sweep(input_path, inline, mode, eps, samples, seed, fmt, rho_grid, workers):
    """Vacuum stability for every rho of a grid; the verdict is the conjunction."""
    tol, _ = _setup(eps, samples, seed)
    c = _couplings(_load(input_path, inline))
    points = []
    decisions = {}
    for m in _modes(mode):
        res = sweep_rho(c, rho_grid, tol, m, workers)
        decisions[m] = res.decision
        if m == "exact" or len(decisions) == 1:
            complete = res.complete_decision
            points = []
            for rho, v in zip(res.rhos, res.verdicts):
                p = {"command": "sweep-rho", "mode": m, "rho": scalar(rho), "decision": v.decision.value}
                p.update(_vacuum_fields(v))
                points.append(Report(**p))
    report = {
        "command": "sweep-rho",
        "mode": mode,
        "complete_decision": complete.value,
        "points": points,
        "quantities": {"grid_points": rho_grid},
    }
    out = Report(**_combine(report, decisions))
    _emit(out, fmt)
    return EXIT_CODES[Decision(out.decision)]


@cli.command("oracle")
@_common
def oracle(input_path, inline, mode, eps, samples, seed, fmt):
    """Sampling oracle on a tensor document or a couplings document.

    Exit 0 means no violation was found, which is not a proof of copositivity.
    """
    _, cfg = _setup(eps, samples, seed)
    doc = _load(input_path, inline)
    T = _tensor(doc) if isinstance(doc, dict) and "dim" in doc else build_vacuum_tensor(_couplings(doc))
    model = _oracle_model(T, cfg)
    decision = {"violation": "not_copositive", "near_boundary": "boundary", "no_violation_found": "copositive"}
    out = Report(
        command="oracle",
        mode=mode,
        decision=decision[model.verdict_hint],
        witness=model.argmin if model.verdict_hint == "violation" else None,
        witness_value=model.min_value if model.verdict_hint == "violation" else None,
        oracle=model,
    )
    _emit(out, fmt)
    return ORACLE_EXIT[model.verdict_hint]


def main(argv=None) -> int:
    try:
        code = cli.main(args=argv, prog_name="copos", standalone_mode=False)
    except click.ClickException as exc:
        exc.show()
        return EXIT_INPUT
    except (PreconditionError, TensorFormatError, CouplingsError, ValueError) as exc:
        click.echo(f"Error: {exc}", err=True)
        return EXIT_INPUT
    except click.exceptions.Abort:
        return EXIT_INPUT
    return code if isinstance(code, int) else 0


def entry() -> None:
    sys.exit(main())

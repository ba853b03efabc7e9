"""Command line for deformqm."""
from __future__ import annotations

import argparse
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
import json
import logging
import math
import sys
from typing import Any, NoReturn

import numpy as np

from . import __version__
from .config import (
    CMD_CANONICALIZE,
    CMD_SPECTRUM,
    CMD_VERIFY,
    CMD_WAVEFUNCTION,
    CONF_A,
    CONF_ALPHA,
    CONF_B,
    CONF_BETA,
    CONF_DIM,
    CONF_DOMAIN,
    CONF_EPS0,
    CONF_FAMILY,
    CONF_FIELD,
    CONF_G,
    CONF_GRID_POINTS,
    CONF_KAPPA,
    CONF_KAPPA_IM,
    CONF_KAPPA_RE,
    CONF_LEVELS,
    CONF_MEAN_P,
    CONF_MEAN_X,
    CONF_N,
    CONF_R,
    CONF_RICCATI,
    CONF_S,
    CONF_SAMPLES,
    CONF_SYSTEM,
    RunConfig,
    load_config,
    merge_params,
    validate_params,
)
from .const import (
    COLUMNS_CANONICALIZE,
    COLUMNS_SPECTRUM,
    COLUMNS_SPECTRUM_FIELD,
    COLUMNS_VERIFY,
    COLUMNS_WAVEFUNCTION,
    EXIT_OK,
    FORMAT_CSV,
    FORMAT_JSON,
    MORSE_GRID,
    PT_HYP_GRID,
    SCHEMA_VERSION,
    SPECTRUM_SYSTEMS,
    SYSTEM_GENERIC,
    SYSTEM_MORSE,
    SYSTEM_MORSE_FIRST_ORDER,
    SYSTEM_OSC_FIELD,
    SYSTEM_PT_HYP,
    SYSTEM_PT_TRIG,
    VERIFY_SYSTEMS,
    WAVEFUNCTION_SYSTEMS,
)
from .exact_spectra import (
    SpectrumReport,
    morse_params,
    morse_spectrum,
    morse_wavefunction,
    pt_hyp_groundstate,
    pt_hyp_params,
    pt_hyp_spectrum,
    pt_trig_spectrum,
    shape_invariant_ground,
)
from .exceptions import (
    DeformQMError,
    DomainViolation,
    InvalidParameters,
    LevelOutOfRange,
    NoBoundStates,
    VerificationFailed,
)
from .fdeform import DeformedFunctionFamily, custom_family, get_family
from .numerics import (
    Comparison,
    EigenResult,
    GridSpec,
    ToleranceProfile,
    assemble_hamiltonian,
    cap_grid,
    default_grid,
    eigensolve,
    spectrum_compare,
)
from .output import render, sidecar_path, write_text
from .quad_algebra import ExpectationContext, QuadraticAlgebraParams, canonicalize
from .si_oscillator import (
    OscFieldInput,
    build_qfock,
    energy_spectrum,
    qfock_spectrum,
    si_ladder,
)

_LOGGER = logging.getLogger(__name__)

Row = dict[str, Any]


@dataclass
class CommandResult:
    """Rows, column order and metadata produced by one command."""

    rows: list[Row]
    columns: tuple[str, ...]
    meta: dict[str, Any] = field(default_factory=dict)
    passed: bool = True


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that reports usage errors as validation failures."""

    def error(self, message: str) -> NoReturn:
        raise InvalidParameters(message, field="argv")


# ──────────────────────────────────────────────────────────────────────
# Parser
# ──────────────────────────────────────────────────────────────────────


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format", dest="output_format", choices=(FORMAT_CSV, FORMAT_JSON), default=FORMAT_CSV
    )
    parser.add_argument("--output", "--out", dest="output", default=None)
    parser.add_argument("--config", default=None)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--validate-only", action="store_true")
    parser.add_argument("-v", "--verbose", action="store_true")


def _system_params(parser: argparse.ArgumentParser, systems: Sequence[str]) -> None:
    parser.add_argument("--system", choices=systems)
    parser.add_argument("--alpha")
    parser.add_argument("--beta")
    parser.add_argument("--kappa")
    parser.add_argument("--field")
    parser.add_argument("--A", dest="A")
    parser.add_argument("--B", dest="B")


def build_parser() -> argparse.ArgumentParser:
    """Return the argument parser with one subcommand per table."""
    parser = _Parser(prog="deformqm", description=__doc__)
    parser.add_argument("--version", action="version", version=f"deformqm {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    canon = sub.add_parser(CMD_CANONICALIZE, help="canonical form and minimal uncertainties")
    _common(canon)
    canon.add_argument("--alpha")
    canon.add_argument("--beta")
    canon.add_argument("--kappa-re", dest=CONF_KAPPA_RE)
    canon.add_argument("--kappa-im", dest=CONF_KAPPA_IM)
    canon.add_argument("--mean-x", dest=CONF_MEAN_X)
    canon.add_argument("--mean-p", dest=CONF_MEAN_P)

    spec = sub.add_parser(CMD_SPECTRUM, help="closed-form energy levels")
    _common(spec)
    _system_params(spec, SPECTRUM_SYSTEMS)
    spec.add_argument("--levels")

    verify = sub.add_parser(CMD_VERIFY, help="closed forms against grid eigenvalues")
    _common(verify)
    _system_params(verify, VERIFY_SYSTEMS)
    verify.add_argument("--levels")
    verify.add_argument("--grid-points", dest=CONF_GRID_POINTS)
    verify.add_argument("--domain")
    verify.add_argument("--dim")
    verify.add_argument("--family", dest=CONF_FAMILY)
    verify.add_argument("--riccati", dest=CONF_RICCATI)
    verify.add_argument("--g", dest=CONF_G)
    verify.add_argument("--s", dest=CONF_S)
    verify.add_argument("--r", dest=CONF_R)
    verify.add_argument("--eps0", dest=CONF_EPS0)

    wave = sub.add_parser(CMD_WAVEFUNCTION, help="sampled closed-form wavefunction")
    _common(wave)
    _system_params(wave, WAVEFUNCTION_SYSTEMS)
    wave.add_argument("--n")
    wave.add_argument("--samples")
    wave.add_argument("--domain")
    return parser


_COMMAND_KEYS: dict[str, tuple[str, ...]] = {
    CMD_CANONICALIZE: (
        CONF_ALPHA, CONF_BETA, CONF_KAPPA_RE, CONF_KAPPA_IM, CONF_MEAN_X, CONF_MEAN_P,
    ),
    CMD_SPECTRUM: (
        CONF_SYSTEM, CONF_ALPHA, CONF_BETA, CONF_KAPPA, CONF_FIELD, CONF_A, CONF_B,
        CONF_LEVELS,
    ),
    CMD_VERIFY: (
        CONF_SYSTEM, CONF_ALPHA, CONF_BETA, CONF_KAPPA, CONF_FIELD, CONF_A, CONF_B,
        CONF_LEVELS, CONF_GRID_POINTS, CONF_DOMAIN, CONF_DIM,
        CONF_FAMILY, CONF_RICCATI, CONF_G, CONF_S, CONF_R, CONF_EPS0,
    ),
    CMD_WAVEFUNCTION: (
        CONF_SYSTEM, CONF_A, CONF_B, CONF_BETA, CONF_N, CONF_SAMPLES, CONF_DOMAIN,
    ),
}


def run_config_from_args(args: argparse.Namespace) -> RunConfig:
    """Merge config file and flags, then validate them."""
    section: dict[str, Any] = {}
    if args.config:
        section = load_config(args.config).get(args.command, {})
    overrides = {key: getattr(args, key, None) for key in _COMMAND_KEYS[args.command]}
    params = validate_params(args.command, merge_params(section, overrides))
    return RunConfig(
        command=args.command,
        params=params,
        output_format=args.output_format,
        output=args.output,
        seed=args.seed,
    )


# ──────────────────────────────────────────────────────────────────────
# Commands
# ──────────────────────────────────────────────────────────────────────


def _row(**values: Any) -> Row:
    return {"schema_version": SCHEMA_VERSION, **values}


def run_canonicalize(run: RunConfig) -> CommandResult:
    """Canonical form of one quadratic relation."""
    p = run.params
    params = QuadraticAlgebraParams(
        alpha=p[CONF_ALPHA],
        beta=p[CONF_BETA],
        kappa_re=p[CONF_KAPPA_RE],
        kappa_im=p[CONF_KAPPA_IM],
    )
    ctx = ExpectationContext(mean_x=p[CONF_MEAN_X], mean_p=p[CONF_MEAN_P])
    form = canonicalize(params, ctx)
    unc = form.uncertainties
    row = _row(
        alpha=params.alpha,
        beta=params.beta,
        kappa_re=params.kappa_re,
        kappa_im=params.kappa_im,
        alpha_t=form.normalized.alpha,
        beta_t=form.normalized.beta,
        kappa_t=form.normalized.kappa_re,
        operator_scale=form.normalized.operator_scale,
        phi=form.rotation.phi,
        alpha_p=form.rotation.alpha_p,
        beta_p=form.rotation.beta_p,
        kappa_p=form.rotation.kappa_p,
        delta=form.rotation.delta,
        sigma=form.rotation.sigma,
        admissible=form.admissibility.admissible,
        violations=form.admissibility.diagnostics,
        gamma_exp=form.gamma_exp,
        dx0=unc.dx0 if unc else None,
        dp0=unc.dp0 if unc else None,
        dx_min=unc.dx_min if unc else None,
        dp_min=unc.dp_min if unc else None,
    )
    return CommandResult(rows=[row], columns=COLUMNS_CANONICALIZE)


def _osc_input(p: dict[str, Any]) -> OscFieldInput:
    return OscFieldInput.from_algebra(
        p[CONF_ALPHA], p[CONF_BETA], p[CONF_KAPPA], p[CONF_FIELD]
    )


def _report_rows(report: SpectrumReport, levels: int) -> list[Row]:
    return [
        _row(
            system=report.system,
            n=lvl.n,
            e_exact=lvl.e_exact,
            e_first_order=lvl.e_first_order,
            delta_n=lvl.delta_n,
            validity_flag=lvl.validity_flag,
        )
        for lvl in report.levels[:levels]
    ]


def _family(p: dict[str, Any]) -> DeformedFunctionFamily:
    base = p[CONF_FAMILY]
    if CONF_RICCATI not in p:
        return get_family(base)
    a, b, c = p[CONF_RICCATI]
    return custom_family(f"{base}-custom", base, a, b, c)


def analytic_report(system: str, p: dict[str, Any], levels: int) -> SpectrumReport:
    """Closed-form spectrum of a grid-checkable system."""
    if system == SYSTEM_GENERIC:
        if levels > 1:
            raise LevelOutOfRange(
                "generic families have a closed form only at n = 0", field=CONF_LEVELS
            )
        return shape_invariant_ground(
            _family(p), p[CONF_G], p[CONF_S], p.get(CONF_R, 0.0), p[CONF_EPS0], p[CONF_BETA]
        )
    if system == SYSTEM_PT_HYP:
        return pt_hyp_spectrum(p[CONF_A], p[CONF_BETA])
    if system == SYSTEM_PT_TRIG:
        return pt_trig_spectrum(p[CONF_A], p[CONF_BETA], levels)
    if system in (SYSTEM_MORSE, SYSTEM_MORSE_FIRST_ORDER):
        _, report = morse_spectrum(p[CONF_A], p[CONF_B], p[CONF_BETA])
        return report
    raise InvalidParameters(f"no closed form for {system!r}", field=CONF_SYSTEM)


def run_spectrum(run: RunConfig) -> CommandResult:
    """Closed-form energy table."""
    p = run.params
    system, levels = p[CONF_SYSTEM], p[CONF_LEVELS]
    if system == SYSTEM_OSC_FIELD:
        inp = _osc_input(p)
        ladder = si_ladder(inp, levels - 1)
        rows = []
        for n in range(levels):
            lvl = energy_spectrum(ladder, n)
            rows.append(
                _row(
                    system=system,
                    n=n,
                    e_exact=lvl.energy,
                    e_field_off=lvl.field_off,
                    de1=lvl.dE1,
                    de2=lvl.dE2,
                    epsilon=float(ladder.eps[n]),
                )
            )
        meta = {"q": ladder.q, "t": ladder.t, "phi": inp.phi}
        return CommandResult(rows=rows, columns=COLUMNS_SPECTRUM_FIELD, meta=meta)

    report = analytic_report(system, p, levels)
    meta = {"n_max": report.n_max, "beta_validity_bound": report.beta_validity_bound}
    return CommandResult(
        rows=_report_rows(report, levels), columns=COLUMNS_SPECTRUM, meta=meta
    )


def _verify_grid(system: str, p: dict[str, Any]) -> GridSpec:
    base = default_grid(system, p.get(CONF_FAMILY))
    lo, hi = p.get(CONF_DOMAIN, (base.x_lo, base.x_hi))
    grid = GridSpec(lo, hi, p.get(CONF_GRID_POINTS, base.n_points))
    bounds = (-math.inf, math.inf)
    if system == SYSTEM_PT_TRIG:
        bounds = (-math.pi / 2, math.pi / 2)
    elif system == SYSTEM_GENERIC:
        bounds = get_family(p[CONF_FAMILY]).domain
    if not (bounds[0] < lo and hi < bounds[1]):
        raise DomainViolation(
            f"domain [{lo}, {hi}] leaves ({bounds[0]:.6g}, {bounds[1]:.6g})",
            field=CONF_DOMAIN,
        )
    return grid


def _grid_params(system: str, p: dict[str, Any]) -> dict[str, Any]:
    if system == SYSTEM_GENERIC:
        return {
            "family": _family(p),
            "beta": p[CONF_BETA],
            "g": p[CONF_G],
            "s": p[CONF_S],
            "r": p.get(CONF_R, 0.0),
            "eps0": p[CONF_EPS0],
        }
    params = {CONF_A: p[CONF_A], CONF_BETA: p[CONF_BETA]}
    if CONF_B in p:
        params[CONF_B] = p[CONF_B]
    return params


def _qfock_comparison(p: dict[str, Any], levels: int) -> tuple[list[float], EigenResult]:
    ladder = si_ladder(_osc_input(p), levels - 1)
    analytic = [energy_spectrum(ladder, n).energy for n in range(levels)]
    mats = build_qfock(ladder, p[CONF_DIM])
    values, vectors = qfock_spectrum(mats, ladder, levels)
    ham = mats.B_plus[0] @ mats.B_minus[0] + ladder.eps[0] * np.eye(mats.dim)
    resid = np.linalg.norm(ham @ vectors - vectors * values, axis=0)
    numeric = EigenResult(
        eigenvalues=values,
        eigenvectors=vectors,
        residuals=resid,
        matrix_norm=float(np.abs(ham).sum(axis=0).max()),
    )
    return analytic, numeric


def run_verify(run: RunConfig) -> CommandResult:
    """Closed-form energies against an independent numerical oracle."""
    p = run.params
    system, levels = p[CONF_SYSTEM], p[CONF_LEVELS]
    profile = ToleranceProfile.for_system(system)
    meta: dict[str, Any] = {"system": system}

    if system == SYSTEM_OSC_FIELD:
        analytic, numeric = _qfock_comparison(p, levels)
        rows = spectrum_compare(analytic, numeric, profile, 0.0, 0.0)
        meta["dim"] = p[CONF_DIM]
    else:
        report = analytic_report(system, p, levels)
        analytic = report.energies()[:levels]
        params = _grid_params(system, p)
        grid = cap_grid(system, params, _verify_grid(system, p))
        op = assemble_hamiltonian(system, params, grid)
        numeric = eigensolve(op, len(analytic))
        rows = spectrum_compare(analytic, numeric, profile, grid.h, p[CONF_BETA])
        meta.update(domain=[grid.x_lo, grid.x_hi], grid_points=grid.n_points)
        if system == SYSTEM_GENERIC:
            meta["family"] = params["family"].name

    _LOGGER.info("verify %s: %s levels compared", system, len(rows))
    return CommandResult(
        rows=[_comparison_row(system, row) for row in rows],
        columns=COLUMNS_VERIFY,
        meta=meta,
        passed=all(row.passed for row in rows),
    )


def _comparison_row(system: str, cmp: Comparison) -> Row:
    return _row(
        system=system,
        n=cmp.n,
        e_analytic=cmp.e_analytic,
        e_numeric=cmp.e_numeric,
        abs_err=cmp.abs_err,
        rel_err=cmp.rel_err,
        budget=cmp.budget,
        residual=cmp.residual,
        passed=cmp.passed,
    )


def run_wavefunction(run: RunConfig) -> CommandResult:
    """Sampled closed-form wavefunction."""
    p = run.params
    system, n = p[CONF_SYSTEM], p[CONF_N]
    meta: dict[str, Any] = {"schema_version": SCHEMA_VERSION, "system": system, "n": n}

    if system == SYSTEM_MORSE:
        params = morse_params(p[CONF_A], p[CONF_B], p[CONF_BETA])
        if not params.exists:
            raise NoBoundStates(f"no bound states for beta = {params.beta}", field="beta")
        if n > params.n_max:
            raise LevelOutOfRange(f"level {n} outside 0..{params.n_max}", field=CONF_N)
        lo, hi = p.get(CONF_DOMAIN, MORSE_GRID[:2])
        x = np.linspace(lo, hi, p[CONF_SAMPLES])
        wave = morse_wavefunction(params, n, x)
        psi = wave.psi
        meta.update(
            A=params.A,
            B=params.B,
            beta=params.beta,
            energy=-0.5 * params.r_level(n) ** 2,
            nu=wave.nu,
            rho=wave.rho,
            m=wave.m,
            log_scale=wave.log_scale,
        )
    else:
        if n != 0:
            raise LevelOutOfRange(
                "the hyperbolic well has a closed-form state only at n = 0", field=CONF_N
            )
        A, beta = p[CONF_A], p[CONF_BETA]
        lo, hi = p.get(CONF_DOMAIN, PT_HYP_GRID[:2])
        x = np.linspace(lo, hi, p[CONF_SAMPLES])
        psi = pt_hyp_groundstate(A, beta, x)
        meta.update(A=A, beta=beta, energy=pt_hyp_params(A, beta).eps0)

    rows = [
        _row(x=float(xv), re_psi=float(v), abs2=float(v) ** 2) for xv, v in zip(x, psi)
    ]
    meta["domain"] = [float(lo), float(hi)]
    meta["samples"] = len(rows)
    return CommandResult(rows=rows, columns=COLUMNS_WAVEFUNCTION, meta=meta)


COMMANDS: dict[str, Callable[[RunConfig], CommandResult]] = {
    CMD_CANONICALIZE: run_canonicalize,
    CMD_SPECTRUM: run_spectrum,
    CMD_VERIFY: run_verify,
    CMD_WAVEFUNCTION: run_wavefunction,
}


# ──────────────────────────────────────────────────────────────────────
# Entry point
# ──────────────────────────────────────────────────────────────────────


def emit(run: RunConfig, result: CommandResult) -> None:
    """Write the result table, plus a metadata sidecar for CSV wavefunction files."""
    text = render(result.rows, result.columns, run.output_format, result.meta)
    write_text(text, run.output)
    if (
        run.command == CMD_WAVEFUNCTION
        and run.output_format == FORMAT_CSV
        and run.output is not None
    ):
        write_text(json.dumps(result.meta, indent=2) + "\n", sidecar_path(run.output))


def _report_error(err: DeformQMError) -> int:
    sys.stderr.write(json.dumps(err.as_dict()) + "\n")
    return err.exit_code


def main(argv: Sequence[str] | None = None) -> int:
    """Run one command and return its exit code."""
    try:
        args = build_parser().parse_args(argv)
    except DeformQMError as err:
        return _report_error(err)

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    logging.captureWarnings(True)

    try:
        run = run_config_from_args(args)
        if args.validate_only:
            sys.stdout.write(run.to_json() + "\n")
            return EXIT_OK
        _LOGGER.info("Running %s", run.command)
        result = COMMANDS[run.command](run)
        emit(run, result)
        if not result.passed:
            failed = [row["n"] for row in result.rows if not row["passed"]]
            raise VerificationFailed(f"levels {failed} exceed their budget", field="n")
    except DeformQMError as err:
        return _report_error(err)
    return EXIT_OK

"""Grid Hamiltonians, a banded eigensolver and comparison against closed forms."""
from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass
import logging
import math
from typing import Any

import numpy as np
from scipy import linalg

from .const import (
    EIGEN_RESIDUAL_TOL,
    FAMILY_MORSE_EXP,
    FAMILY_PT_TAN,
    FAMILY_PT_TANH,
    MORSE_GRID,
    MORSE_WALL_FACTOR,
    PT_HYP_GRID,
    PT_TRIG_GRID,
    SYSTEM_GENERIC,
    SYSTEM_MORSE,
    SYSTEM_MORSE_EXACT,
    SYSTEM_MORSE_FIRST_ORDER,
    SYSTEM_PT_HYP,
    SYSTEM_PT_TRIG,
    TOLERANCE_PROFILES,
)
from .exact_spectra import potential_from_f
from .exceptions import (
    ConvergenceFailure,
    IndefiniteKinetic,
    InvalidParameters,
)
from .grid import (
    GridOperator,
    GridSpec,
    conservative_kinetic,
    diag,
    quartic_term,
)
from .special import bessel_j, gamma_real

__all__ = [
    "Comparison",
    "EigenResult",
    "GridSpec",
    "HamiltonianTerms",
    "ToleranceProfile",
    "assemble_hamiltonian",
    "bessel_j",
    "cap_grid",
    "default_grid",
    "eigensolve",
    "gamma_real",
    "grid_residual",
    "hamiltonian_terms",
    "spectrum_compare",
]

_LOGGER = logging.getLogger(__name__)

Profile = Callable[[np.ndarray], np.ndarray]

# families that share a closed-form system's default grid
_FAMILY_SYSTEMS = {
    FAMILY_MORSE_EXP: SYSTEM_MORSE_FIRST_ORDER,
    FAMILY_PT_TAN: SYSTEM_PT_TRIG,
    FAMILY_PT_TANH: SYSTEM_PT_HYP,
}


@dataclass(frozen=True)
class HamiltonianTerms:
    """H = (1/2) p c(x) p + p² w(x) p² + V(x)."""

    kinetic: Profile
    quartic: Profile
    potential: Profile
    # truncated at first order in beta
    first_order: bool = True

    def symbol_floor(self, x: np.ndarray) -> np.ndarray:
        """Return the minimum over k of c k²/2 + w k⁴ + V at each point."""
        c = self.kinetic(x)
        w = self.quartic(x)
        v = self.potential(x)
        floor = v.copy()
        dip = c < 0.0
        with np.errstate(divide="ignore"):
            drop = np.where(w > 0.0, c * c / (16.0 * w), np.inf)
        floor[dip] = v[dip] - drop[dip]
        return floor


@dataclass(frozen=True)
class EigenResult:
    """Lowest eigenpairs of a grid Hamiltonian."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    residuals: np.ndarray
    matrix_norm: float


@dataclass(frozen=True)
class ToleranceProfile:
    """Error budget h_coeff h² + beta_coeff beta² + floor."""

    h_coeff: float
    beta_coeff: float
    floor: float = 0.0

    @classmethod
    def for_system(cls, system: str) -> ToleranceProfile:
        """Return the default profile of a system."""
        h_coeff, beta_coeff, floor = TOLERANCE_PROFILES[system]
        return cls(h_coeff=h_coeff, beta_coeff=beta_coeff, floor=floor)

    def budget(self, h: float, beta: float) -> float:
        """Return the allowed absolute error."""
        return self.h_coeff * h * h + self.beta_coeff * beta * beta + self.floor


@dataclass(frozen=True)
class Comparison:
    """One level of a closed-form versus grid comparison."""

    n: int
    e_analytic: float
    e_numeric: float
    abs_err: float
    rel_err: float
    budget: float
    residual: float
    passed: bool


# ──────────────────────────────────────────────────────────────────────
# Hamiltonians
# ──────────────────────────────────────────────────────────────────────


def _require(params: dict[str, Any], *keys: str) -> list[Any]:
    missing = [k for k in keys if k not in params]
    if missing:
        raise InvalidParameters(f"missing parameters {missing}", field=missing[0])
    return [params[k] for k in keys]


def hamiltonian_terms(system: str, params: dict[str, Any]) -> HamiltonianTerms:
    """Return the coefficient profiles of a system's Hamiltonian."""
    if system == SYSTEM_PT_HYP:
        A, beta = _require(params, "A", "beta")
        return HamiltonianTerms(
            kinetic=lambda x: 1.0 - (beta / 3.0) * (1.0 + 2.0 * np.cosh(x) ** 2),
            quartic=lambda x: (beta / 3.0) * np.cosh(x) ** 2,
            potential=lambda x: -0.5 * A * (A + 1.0) / np.cosh(x) ** 2,
        )
    if system == SYSTEM_PT_TRIG:
        A, beta = _require(params, "A", "beta")
        return HamiltonianTerms(
            kinetic=lambda x: 1.0 + (beta / 3.0) * (1.0 + 2.0 * np.cos(x) ** 2),
            quartic=lambda x: (beta / 3.0) * np.cos(x) ** 2,
            potential=lambda x: 0.5 * A * (A - 1.0) / np.cos(x) ** 2,
        )
    if system in (SYSTEM_MORSE, SYSTEM_MORSE_EXACT):
        A, B, beta = _require(params, "A", "B", "beta")
        return HamiltonianTerms(
            kinetic=lambda x: 1.0 + beta * B * (2.0 * A + 1.0 - 2.0 * B * np.exp(-x)),
            quartic=lambda x: np.full_like(x, 0.5 * beta * beta * B * B, dtype=float),
            potential=lambda x: 0.5 * B * B * np.exp(-2.0 * x)
            - 0.5 * B * (2.0 * A + 1.0 - beta * B) * np.exp(-x),
            first_order=False,
        )
    if system == SYSTEM_MORSE_FIRST_ORDER:
        A, B, beta = _require(params, "A", "B", "beta")
        return HamiltonianTerms(
            kinetic=lambda x: 1.0 - (beta / 6.0) * np.exp(x),
            quartic=lambda x: (beta / 3.0) * np.exp(x),
            potential=lambda x: 0.5 * B * B * np.exp(-2.0 * x)
            - 0.5 * B * (2.0 * A + 1.0) * np.exp(-x),
        )
    if system == SYSTEM_GENERIC:
        fam, beta, g, s, r, eps0 = _require(
            params, "family", "beta", "g", "s", "r", "eps0"
        )
        return HamiltonianTerms(
            kinetic=lambda x: 1.0
            + (beta / 6.0) * (2.0 * fam.a - fam.discriminant / fam.f_prime(x)),
            quartic=lambda x: beta / (3.0 * fam.f_prime(x)),
            potential=lambda x: potential_from_f(fam, g, s, r, eps0, x),
        )
    raise InvalidParameters(f"unknown system {system!r}", field="system")


def default_grid(system: str, family: str | None = None) -> GridSpec:
    """Return the default grid of a system, or of a family for the generic system."""
    if system == SYSTEM_GENERIC and family is not None:
        system = _FAMILY_SYSTEMS.get(family, SYSTEM_PT_HYP)
    if system in (SYSTEM_MORSE, SYSTEM_MORSE_EXACT, SYSTEM_MORSE_FIRST_ORDER):
        return GridSpec(*MORSE_GRID)
    if system == SYSTEM_PT_TRIG:
        return GridSpec(*PT_TRIG_GRID)
    return GridSpec(*PT_HYP_GRID)


def _indefinite_mask(terms: HamiltonianTerms, x: np.ndarray) -> np.ndarray:
    floor = terms.symbol_floor(x)
    return floor < np.min(terms.potential(x))


def _cap_mask(terms: HamiltonianTerms, x: np.ndarray) -> np.ndarray:
    if terms.first_order:
        return terms.kinetic(x) <= 0.0
    return _indefinite_mask(terms, x)


def cap_grid(system: str, params: dict[str, Any], grid: GridSpec) -> GridSpec:
    """Shrink the grid to the stretch around the potential minimum where H is bounded below.

    First-order forms are cut where the p² coefficient changes sign; past that
    point the truncated Hamiltonian no longer approximates the deformed one even
    while its symbol stays above min V. The exact Morse form keeps the floor test.
    """
    terms = hamiltonian_terms(system, params)
    x = grid.points
    bad = _cap_mask(terms, x)
    if not bad.any():
        return grid
    anchor = int(np.argmin(terms.potential(x)))
    if bad[anchor]:
        raise IndefiniteKinetic(
            f"kinetic term is indefinite at the potential minimum x={x[anchor]:.6g}",
            field="beta",
        )
    lo = anchor
    while lo > 0 and not bad[lo - 1]:
        lo -= 1
    hi = anchor
    while hi < grid.n_points - 1 and not bad[hi + 1]:
        hi += 1
    capped = grid.restricted(float(x[lo]), float(x[hi]))
    _LOGGER.warning(
        "Capped %s grid [%s, %s] to [%s, %s]",
        system,
        grid.x_lo,
        grid.x_hi,
        capped.x_lo,
        capped.x_hi,
    )
    return capped


def assemble_hamiltonian(
    system: str, params: dict[str, Any], grid: GridSpec
) -> GridOperator:
    """Return the symmetric five-diagonal grid Hamiltonian of a system."""
    terms = hamiltonian_terms(system, params)
    x = grid.points
    bad = _indefinite_mask(terms, x)
    if bad.any():
        where = x[bad]
        raise IndefiniteKinetic(
            f"{system}: kinetic symbol dips below the potential floor on "
            f"[{where.min():.6g}, {where.max():.6g}]",
            field="domain",
        )
    if system in (SYSTEM_MORSE, SYSTEM_MORSE_EXACT):
        _check_morse_wall(params, grid)

    kinetic = conservative_kinetic(grid, terms.kinetic(grid.midpoints))
    matrix = 0.5 * kinetic + quartic_term(grid, terms.quartic(x)) + diag(terms.potential(x))
    matrix = (0.5 * (matrix + matrix.T)).tocsr()
    _LOGGER.debug("Assembled %s on %s (nnz=%s)", system, grid, matrix.nnz)
    return GridOperator(
        grid=grid,
        matrix=matrix,
        bandwidth=2,
        meta={"system": system, **{k: v for k, v in params.items() if k != "family"}},
    )


def _check_morse_wall(params: dict[str, Any], grid: GridSpec) -> None:
    A, B = params["A"], params["B"]
    wall = 0.5 * B * B * math.exp(-2.0 * grid.x_lo)
    if wall < MORSE_WALL_FACTOR * 0.5 * A * A:
        _LOGGER.warning(
            "Morse wall %.3g at x_lo=%s is low against |E0| ~ %.3g",
            wall,
            grid.x_lo,
            0.5 * A * A,
        )


# ──────────────────────────────────────────────────────────────────────
# Eigensolver
# ──────────────────────────────────────────────────────────────────────


def eigensolve(op: GridOperator, k: int) -> EigenResult:
    """Return the k lowest eigenpairs of a real symmetric banded operator."""
    n = op.grid.n_points
    if not 1 <= k <= n:
        raise InvalidParameters(f"k = {k} outside 1..{n}", field="levels")
    if not op.is_real_symmetric:
        raise InvalidParameters("eigensolve needs a real symmetric operator", field="op")
    bands = op.upper_banded()
    try:
        values, vectors = linalg.eig_banded(
            bands, lower=False, select="i", select_range=(0, k - 1)
        )
    except (linalg.LinAlgError, ValueError) as err:
        raise ConvergenceFailure(f"banded eigensolver failed: {err}") from err

    # largest component positive
    peaks = np.argmax(np.abs(vectors), axis=0)
    signs = np.sign(vectors[peaks, np.arange(vectors.shape[1])])
    vectors = vectors * np.where(signs == 0.0, 1.0, signs)

    norm = float(abs(op.matrix).sum(axis=0).max())
    resid = np.linalg.norm(op.matrix @ vectors - vectors * values, axis=0)
    if np.any(resid > EIGEN_RESIDUAL_TOL * norm):
        raise ConvergenceFailure(
            f"eigen residual {resid.max():.3g} exceeds {EIGEN_RESIDUAL_TOL} * {norm:.3g}"
        )
    return EigenResult(
        eigenvalues=values, eigenvectors=vectors, residuals=resid, matrix_norm=norm
    )


def grid_residual(
    op: GridOperator, psi: np.ndarray, energy: float, trim: int = 0
) -> float:
    """Return ||H psi - E psi|| / ||psi|| over the interior points."""
    defect = op.apply(psi) - energy * psi
    n = op.grid.n_points
    inner = slice(trim, n - trim)
    return float(np.linalg.norm(defect[inner]) / np.linalg.norm(psi[inner]))


def spectrum_compare(
    analytic: Sequence[float],
    numeric: EigenResult,
    profile: ToleranceProfile,
    h: float,
    beta: float,
) -> list[Comparison]:
    """Compare closed-form energies level by level with grid eigenvalues."""
    budget = profile.budget(h, beta)
    rows: list[Comparison] = []
    for n, (exact, approx) in enumerate(zip(analytic, numeric.eigenvalues)):
        err = abs(float(approx) - exact)
        rows.append(
            Comparison(
                n=n,
                e_analytic=float(exact),
                e_numeric=float(approx),
                abs_err=err,
                rel_err=err / abs(exact) if exact != 0.0 else math.inf,
                budget=budget,
                residual=float(numeric.residuals[n]),
                passed=err <= budget,
            )
        )
    return rows

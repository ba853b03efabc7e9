"""Grid representations of the function-deformed relation [f(X), P] = i[f'(X) + bP²].

Each family f satisfies the Riccati equation f' = a f² + b f + c. To first order in
the deformation the position is x and the momentum

    P = p + (beta/2){lam(x), p} + (beta/2){mu(x), p³},  mu = 1/(3f'),
    lam = a + (b² - 4ac) mu.

The Morse-type exponential also has a representation exact in beta, where f(X) is a
differential operator and P = p.
"""
from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, field, replace
import logging
import math

import numpy as np

from .const import (
    BOUNDARY_THRESHOLD,
    BOUNDARY_WINDOW,
    DEFAULT_TRIM,
    DEFAULT_WINDOW,
    FAMILY_KEMPF,
    FAMILY_MORSE_EXP,
    FAMILY_PT_TAN,
    FAMILY_PT_TANH,
    TAN_WINDOW,
)
from .exceptions import (
    DomainViolation,
    InsufficientBoundaryData,
    InvalidParameters,
)
from .grid import (
    GridOperator,
    GridSpec,
    d1,
    d3,
    diag,
    half_anticommutator,
    p_squared,
)

_LOGGER = logging.getLogger(__name__)

ArrayFn = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class DeformedFunctionFamily:
    """A deforming function with closed-form derivatives and Riccati coefficients."""

    name: str
    f: ArrayFn
    f_prime: ArrayFn
    f_second: ArrayFn
    f_third: ArrayFn
    a: float
    b: float
    c: float
    domain: tuple[float, float] = (-math.inf, math.inf)
    window: tuple[float, float] = DEFAULT_WINDOW

    @property
    def discriminant(self) -> float:
        """Return b² - 4ac."""
        return self.b**2 - 4.0 * self.a * self.c

    def check_domain(self, x: np.ndarray | float) -> np.ndarray:
        """Return x as an array, raising DomainViolation outside the open domain."""
        arr = np.asarray(x, dtype=float)
        lo, hi = self.domain
        if not np.all((arr > lo) & (arr < hi)):
            raise DomainViolation(
                f"points outside the domain ({lo}, {hi}) of {self.name}", field="x"
            )
        return arr


def _sech2(x: np.ndarray) -> np.ndarray:
    return 1.0 / np.cosh(x) ** 2


def _sec2(x: np.ndarray) -> np.ndarray:
    return 1.0 / np.cos(x) ** 2


FAMILIES: dict[str, DeformedFunctionFamily] = {
    FAMILY_KEMPF: DeformedFunctionFamily(
        name=FAMILY_KEMPF,
        f=lambda x: np.asarray(x, dtype=float),
        f_prime=lambda x: np.ones_like(x, dtype=float),
        f_second=lambda x: np.zeros_like(x, dtype=float),
        f_third=lambda x: np.zeros_like(x, dtype=float),
        a=0.0,
        b=0.0,
        c=1.0,
    ),
    FAMILY_MORSE_EXP: DeformedFunctionFamily(
        name=FAMILY_MORSE_EXP,
        f=lambda x: -np.exp(-x),
        f_prime=lambda x: np.exp(-x),
        f_second=lambda x: -np.exp(-x),
        f_third=lambda x: np.exp(-x),
        a=0.0,
        b=-1.0,
        c=0.0,
    ),
    FAMILY_PT_TANH: DeformedFunctionFamily(
        name=FAMILY_PT_TANH,
        f=np.tanh,
        f_prime=_sech2,
        f_second=lambda x: -2.0 * _sech2(x) * np.tanh(x),
        f_third=lambda x: 4.0 * _sech2(x) * np.tanh(x) ** 2 - 2.0 * _sech2(x) ** 2,
        a=-1.0,
        b=0.0,
        c=1.0,
    ),
    FAMILY_PT_TAN: DeformedFunctionFamily(
        name=FAMILY_PT_TAN,
        f=np.tan,
        f_prime=_sec2,
        f_second=lambda x: 2.0 * _sec2(x) * np.tan(x),
        f_third=lambda x: 2.0 * _sec2(x) ** 2 + 4.0 * _sec2(x) * np.tan(x) ** 2,
        a=1.0,
        b=0.0,
        c=1.0,
        domain=(-math.pi / 2, math.pi / 2),
        window=TAN_WINDOW,
    ),
}


def get_family(name: str) -> DeformedFunctionFamily:
    """Look up a built-in family."""
    try:
        return FAMILIES[name]
    except KeyError:
        raise InvalidParameters(f"unknown family {name!r}", field="family") from None


def custom_family(
    name: str, base: str, a: float, b: float, c: float
) -> DeformedFunctionFamily:
    """Return a built-in closed form carrying user-supplied Riccati coefficients."""
    return replace(get_family(base), name=name, a=a, b=b, c=c)


@dataclass(frozen=True)
class RepresentationCoefficients:
    """mu, lam and the derivatives of mu for a family."""

    family: DeformedFunctionFamily
    beta: float

    def mu(self, x: np.ndarray) -> np.ndarray:
        """Return 1 / (3 f')."""
        return 1.0 / (3.0 * self.family.f_prime(x))

    def lam(self, x: np.ndarray) -> np.ndarray:
        """Return a + (b² - 4ac) mu."""
        return self.family.a + self.family.discriminant * self.mu(x)

    def mu_prime(self, x: np.ndarray) -> np.ndarray:
        """Return mu'."""
        fp = self.family.f_prime(x)
        return -self.family.f_second(x) / (3.0 * fp**2)

    def mu_second(self, x: np.ndarray) -> np.ndarray:
        """Return mu''."""
        fam = self.family
        fp = fam.f_prime(x)
        return -fam.f_third(x) / (3.0 * fp**2) + 2.0 * fam.f_second(x) ** 2 / (
            3.0 * fp**3
        )


def representation_coefficients(
    fam: DeformedFunctionFamily, beta: float
) -> RepresentationCoefficients:
    """Return the first-order representation coefficients of a family."""
    return RepresentationCoefficients(family=fam, beta=beta)


def lambda_general(fam: DeformedFunctionFamily, x: np.ndarray) -> np.ndarray:
    """Return lam from derivatives of f alone, without the Riccati coefficients."""
    fp = fam.f_prime(x)
    return (-fam.f_third(x) / fp + 3.0 * fam.f_second(x) ** 2 / fp**2) / (6.0 * fp)


def riccati_residual(
    fam: DeformedFunctionFamily,
    samples: int = 2001,
    window: tuple[float, float] | None = None,
) -> float:
    """Return max |f' - (a f² + b f + c)| over the interior of a window."""
    lo, hi = window or fam.window
    x = np.linspace(lo, hi, samples)[1:-1]
    f = fam.f(x)
    return float(np.max(np.abs(fam.f_prime(x) - (fam.a * f**2 + fam.b * f + fam.c))))


# ──────────────────────────────────────────────────────────────────────
# Momentum representations
# ──────────────────────────────────────────────────────────────────────


def first_order_momentum(
    fam: DeformedFunctionFamily, beta: float, grid: GridSpec
) -> GridOperator:
    """Return P = p + (beta/2)({lam, p} + {mu, p³}) as -i times a real antisymmetric matrix."""
    x = fam.check_domain(grid.points)
    coef = representation_coefficients(fam, beta)
    matrix = (
        d1(grid)
        + beta * half_anticommutator(coef.lam(x), d1(grid))
        - beta * half_anticommutator(coef.mu(x), d3(grid))
    ).tocsr()
    return GridOperator(
        grid=grid,
        matrix=matrix,
        factor=-1j,
        bandwidth=2,
        meta={"family": fam.name, "beta": beta, "representation": "first-order"},
    )


def closed_form_momentum(
    fam: DeformedFunctionFamily, beta: float, grid: GridSpec
) -> GridOperator:
    """Return the worked first-order momentum of a built-in family."""
    x = fam.check_domain(grid.points)
    D1, D3 = d1(grid), d3(grid)
    if fam.name == FAMILY_KEMPF:
        matrix = D1 - (beta / 3.0) * D3
    elif fam.name == FAMILY_MORSE_EXP:
        ex = np.exp(x)
        matrix = (
            D1
            + (beta / 3.0) * half_anticommutator(ex, D1)
            - (beta / 3.0) * half_anticommutator(ex, D3)
        )
    elif fam.name == FAMILY_PT_TANH:
        ch2 = np.cosh(x) ** 2
        matrix = (
            (1.0 - beta) * D1
            + (4.0 * beta / 3.0) * half_anticommutator(ch2, D1)
            - (beta / 3.0) * half_anticommutator(ch2, D3)
        )
    elif fam.name == FAMILY_PT_TAN:
        c2 = np.cos(x) ** 2
        matrix = (
            (1.0 + beta) * D1
            - (4.0 * beta / 3.0) * half_anticommutator(c2, D1)
            - (beta / 3.0) * half_anticommutator(c2, D3)
        )
    else:
        raise InvalidParameters(f"no worked form for {fam.name!r}", field="family")
    return GridOperator(
        grid=grid,
        matrix=matrix.tocsr(),
        factor=-1j,
        bandwidth=2,
        meta={"family": fam.name, "beta": beta, "representation": "closed-form"},
    )


def exact_morse_rep(
    beta: float, B_param: float, grid: GridSpec
) -> tuple[GridOperator, GridOperator]:
    """Return f(X) = -exp(-x) + beta p² and P = p, exact in beta."""
    x = grid.points
    lap = p_squared(grid)
    fx = GridOperator(
        grid=grid,
        matrix=(diag(-np.exp(-x)) + beta * lap).tocsr(),
        bandwidth=1,
        meta={"family": FAMILY_MORSE_EXP, "beta": beta, "B": B_param},
    )
    mom = GridOperator(
        grid=grid,
        matrix=d1(grid),
        factor=-1j,
        bandwidth=1,
        meta={"representation": "exact-morse", "beta": beta},
        squared=lap,
    )
    return fx, mom


def first_order_commutator(
    fam: DeformedFunctionFamily, beta: float, grid: GridSpec
) -> GridOperator:
    """Return 1 + beta(lam(x) + (3/2){mu(x), p²}), the first-order value of -i[X, P]."""
    x = fam.check_domain(grid.points)
    coef = representation_coefficients(fam, beta)
    matrix = (
        diag(1.0 + beta * coef.lam(x))
        + 3.0 * beta * half_anticommutator(coef.mu(x), p_squared(grid))
    ).tocsr()
    return GridOperator(grid=grid, matrix=matrix, bandwidth=1, meta={"beta": beta})


def gaussian_probe(
    grid: GridSpec, center: float | None = None, width: float = 1.0
) -> np.ndarray:
    """Smooth test vector for operator identities."""
    mid = grid.center if center is None else center
    return np.exp(-0.5 * ((grid.points - mid) / width) ** 2)


def _commutator_defect(
    fam: DeformedFunctionFamily,
    beta: float,
    mom: GridOperator,
    fx: GridOperator,
    probe: np.ndarray,
) -> np.ndarray:
    f_probe = fx.apply(probe)
    comm = fx.apply(mom.apply(probe)) - mom.apply(f_probe)
    # f'(X) through the Riccati equation, so operator-valued f(X) is handled too
    f_prime = fam.a * fx.apply(f_probe) + fam.b * f_probe + fam.c * probe
    return comm - 1j * (f_prime + beta * mom.apply_squared(probe))


def commutator_residual(
    fam: DeformedFunctionFamily,
    beta: float,
    mom: GridOperator,
    grid: GridSpec,
    trim: int = DEFAULT_TRIM,
    fx: GridOperator | None = None,
    probe: np.ndarray | None = None,
    probe_width: float = 1.0,
    exclude_undeformed: bool = False,
) -> float:
    """Return the interior max of |([f(X), P] - i(f'(X) + beta P²)) probe|.

    With ``exclude_undeformed`` the defect of the undeformed pair (f(x), p) on the
    same grid is subtracted, which leaves the representation error alone.
    """
    if fx is None:
        fx = GridOperator(grid=grid, matrix=diag(fam.f(fam.check_domain(grid.points))))
    if probe is None:
        probe = gaussian_probe(grid, width=probe_width)
    defect = _commutator_defect(fam, beta, mom, fx, probe)
    if exclude_undeformed:
        base_fx = GridOperator(grid=grid, matrix=diag(fam.f(grid.points)))
        base_p = GridOperator(grid=grid, matrix=d1(grid), factor=-1j, bandwidth=1)
        defect = defect - _commutator_defect(fam, 0.0, base_p, base_fx, probe)
    interior = defect[trim : grid.n_points - trim]
    return float(np.max(np.abs(interior)))


# ──────────────────────────────────────────────────────────────────────
# Uncertainty and Hermiticity
# ──────────────────────────────────────────────────────────────────────


def minimal_uncertainty_profile(
    fam: DeformedFunctionFamily, beta: float, mean_x: float
) -> float:
    """Return the position uncertainty floor sqrt(beta / f'(<X>))."""
    x = fam.check_domain(mean_x)
    fp = float(fam.f_prime(x))
    if not fp > 0.0:
        raise DomainViolation(f"f'({mean_x!r}) = {fp!r} is not positive", field="mean_x")
    return math.sqrt(beta / fp)


def approximate_commutator_coefficient(
    fam: DeformedFunctionFamily, beta: float, mean_x: float
) -> float:
    """Return beta / f'(<X>), the effective Kempf parameter near <X>."""
    return minimal_uncertainty_profile(fam, beta, mean_x) ** 2


@dataclass
class SampledState:
    """A wavefunction and its first two derivatives on sample points."""

    x: np.ndarray
    psi: np.ndarray
    dpsi: np.ndarray
    d2psi: np.ndarray


@dataclass
class HermiticityReport:
    """Boundary conditions for P to be Hermitian on a state."""

    passed: bool
    c1: np.ndarray
    c2: np.ndarray
    failures: list[str] = field(default_factory=list)


def _boundary_ok(values: np.ndarray, window: int, threshold: float) -> list[str]:
    mag = np.abs(values)
    problems: list[str] = []
    # Moving outward, magnitudes must not grow and must be below the threshold.
    for side, tail in (("left", mag[:window][::-1]), ("right", mag[-window:])):
        if np.any(tail > threshold):
            problems.append(f"{side} above threshold")
        if np.any(np.diff(tail) > 0.0):
            problems.append(f"{side} not decreasing")
    return problems


def hermiticity_conditions(
    fam: DeformedFunctionFamily,
    state: SampledState,
    window: int = BOUNDARY_WINDOW,
    threshold: float = BOUNDARY_THRESHOLD,
) -> HermiticityReport:
    """Check that lam|psi|² and the mu-weighted boundary form vanish at both ends."""
    x = fam.check_domain(state.x)
    if x.size < 2 * window:
        raise InsufficientBoundaryData(
            f"{x.size} samples cannot supply {window} per boundary", field="samples"
        )
    coef = representation_coefficients(fam, 0.0)
    psi, dpsi, d2psi = state.psi, state.dpsi, state.d2psi
    dens = np.abs(psi) ** 2
    c1 = coef.lam(x) * dens
    c2 = (
        2.0 * coef.mu_second(x) * dens
        + coef.mu_prime(x) * 2.0 * np.real(np.conj(psi) * dpsi)
        + 2.0 * coef.mu(x) * (2.0 * np.real(np.conj(psi) * d2psi) - np.abs(dpsi) ** 2)
    )
    failures = [f"C1 {p}" for p in _boundary_ok(c1, window, threshold)]
    failures += [f"C2 {p}" for p in _boundary_ok(c2, window, threshold)]
    if failures:
        _LOGGER.debug("Hermiticity fails for %s: %s", fam.name, failures)
    return HermiticityReport(passed=not failures, c1=c1, c2=c2, failures=failures)

"""Closed-form spectra and wavefunctions of the deformed Pöschl-Teller and Morse wells."""
from __future__ import annotations

from dataclasses import dataclass, field
import logging
import math
from typing import Any
import warnings

import numpy as np
from numpy.polynomial import Polynomial
from scipy import integrate, special

from .const import (
    SYSTEM_GENERIC,
    SYSTEM_MORSE,
    SYSTEM_PT_HYP,
    SYSTEM_PT_TRIG,
    VALIDITY_FLAG_LIMIT,
    VALIDITY_FRACTION,
)
from .exceptions import (
    DomainViolation,
    InvalidParameters,
    LevelOutOfRange,
    NoBoundStates,
    NotNormalizable,
    ValidityWarning,
)
from .fdeform import DeformedFunctionFamily, SampledState
from .grid import GridOperator, GridSpec, d1, d2, diag
from .special import gamma_real, log_bessel_j

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class LevelRecord:
    """One bound level, exact and to first order in beta."""

    n: int
    e_exact: float | None
    e_first_order: float | None
    delta_n: float | None
    validity_flag: bool


@dataclass
class SpectrumReport:
    """Bound levels of one system."""

    system: str
    levels: list[LevelRecord]
    n_max: int | None
    beta_validity_bound: float | None = None
    meta: dict[str, Any] = field(default_factory=dict)

    def energies(self) -> list[float]:
        """Return the exact energies, falling back to first order."""
        return [
            lvl.e_exact if lvl.e_exact is not None else lvl.e_first_order
            for lvl in self.levels
        ]


def _check_beta(beta: float) -> None:
    if not (math.isfinite(beta) and beta >= 0.0):
        raise InvalidParameters(f"beta = {beta!r} must be >= 0", field="beta")


def potential_from_f(
    fam: DeformedFunctionFamily,
    g: float,
    s: float,
    r: float,
    eps0: float,
    x: np.ndarray,
) -> np.ndarray:
    """Return the shape-invariant potential attached to a family."""
    f = fam.f(fam.check_domain(x))
    return (
        0.5
        * (
            s * (s - fam.a * g) * f**2
            + s * (2.0 * r - fam.b * g) * f
            + r * r
            - fam.c * g * s
        )
        + eps0
    )


def bb_relation(
    fam: DeformedFunctionFamily,
    g: float,
    s: float,
    r: float,
    beta: float,
    x: np.ndarray,
    sign: int = 1,
) -> tuple[float, np.ndarray]:
    """Return the P² weight and the multiplicative part of B^(sign) B^(-sign).

    B± B∓ = (1/2){g(g ∓ beta s)P² + (s f + r)² ∓ g s f'}.
    """
    xs = fam.check_domain(x)
    weight = 0.5 * g * (g - sign * beta * s)
    mult = 0.5 * ((s * fam.f(xs) + r) ** 2 - sign * g * s * fam.f_prime(xs))
    return weight, mult


def shape_invariant_ground(
    fam: DeformedFunctionFamily,
    g: float,
    s: float,
    r: float,
    eps0: float,
    beta: float,
) -> SpectrumReport:
    """Return the one closed-form level of B+ B- + eps0: the state B- annihilates."""
    _check_beta(beta)
    if not g > 0.0:
        raise InvalidParameters(f"g = {g!r} must be positive", field="g")
    return SpectrumReport(
        system=SYSTEM_GENERIC,
        levels=[
            LevelRecord(
                n=0, e_exact=eps0, e_first_order=None, delta_n=None, validity_flag=True
            )
        ],
        n_max=None,
        meta={"family": fam.name, "beta": beta, "g": g, "s": s, "r": r, "eps0": eps0},
    )


# ──────────────────────────────────────────────────────────────────────
# Pöschl-Teller
# ──────────────────────────────────────────────────────────────────────


@dataclass(frozen=True)
class PTHypParams:
    """Factorization constants of the deformed hyperbolic Pöschl-Teller well."""

    A: float
    beta: float
    k: float
    Delta: float
    s: float
    g: float
    eps0: float
    u_abs: float
    phi_angle: float
    phi_phase: float

    @property
    def n_max(self) -> int:
        """Return the highest bound level."""
        return math.ceil(self.A) - 1


def pt_hyp_params(A: float, beta: float) -> PTHypParams:
    """Return g, s and the angles that drive the exact hyperbolic spectrum."""
    _check_beta(beta)
    if not A > 1.0:
        raise LevelOutOfRange(f"A = {A!r} must exceed 1", field="A")
    aa = A * (A + 1.0)
    lin = 1.0 + beta * aa
    delta = math.sqrt(lin**2 + 4.0 * aa)
    k = (lin + delta) / (2.0 * aa)
    s = math.sqrt(aa / (1.0 + k))
    g = k * s
    u_abs = math.sqrt(lin)
    return PTHypParams(
        A=A,
        beta=beta,
        k=k,
        Delta=delta,
        s=s,
        g=g,
        eps0=-0.5 * s * s,
        u_abs=u_abs,
        phi_angle=math.atan2(math.sqrt(beta) * s, g),
        phi_phase=-2.0 * math.atan(math.sqrt(beta)),
    )


def pt_hyp_delta(A: float, n: int) -> float:
    """Return delta_n of the first-order hyperbolic energies."""
    num = A * A + n * ((n + 1) * A - (n * n + 2) / 3.0) * (2.0 * A + 1.0)
    return num / ((2.0 * A + 1.0) * (A - n))


def pt_trig_delta(A: float, n: int) -> float:
    """Return delta_n of the first-order trigonometric energies."""
    num = A * A + n * ((n + 1) * A + (n * n + 2) / 3.0) * (2.0 * A - 1.0)
    return num / ((2.0 * A - 1.0) * (A + n))


def pt_hyp_validity_bound(A: float) -> float:
    """Return the beta scale below which first order holds for every level."""
    if float(A).is_integer():
        return 3.0 * (2 * A + 1) / (4 * A**4 + 2 * A**3 - 7 * A**2 + A + 3)
    return 1.0 / pt_hyp_delta(A, math.ceil(A) - 1)


def _warn_validity(system: str, A: float, beta: float, bound: float) -> None:
    if beta > VALIDITY_FRACTION * bound:
        warnings.warn(
            f"{system}: beta = {beta} exceeds {VALIDITY_FRACTION:.0%} of the "
            f"validity bound {bound:.6g} for A = {A}",
            ValidityWarning,
            stacklevel=3,
        )


def pt_hyp_energy(A: float, beta: float, n: int) -> LevelRecord:
    """Return the exact and first-order energy of level n."""
    params = pt_hyp_params(A, beta)
    if not 0 <= n <= params.n_max:
        raise LevelOutOfRange(
            f"level {n} outside 0..{params.n_max} for A = {A}", field="n"
        )
    if beta > 0.0:
        angle = params.phi_angle + 0.5 * n * params.phi_phase
        exact = -(params.u_abs**2 / (2.0 * beta)) * math.sin(angle) ** 2
    else:
        exact = -0.5 * (A - n) ** 2
    delta = pt_hyp_delta(A, n)
    return LevelRecord(
        n=n,
        e_exact=exact,
        e_first_order=-0.5 * (A - n) ** 2 * (1.0 - beta * delta),
        delta_n=delta,
        validity_flag=beta * delta < VALIDITY_FLAG_LIMIT,
    )


def pt_hyp_spectrum(A: float, beta: float) -> SpectrumReport:
    """Return every bound level of the hyperbolic well."""
    params = pt_hyp_params(A, beta)
    bound = pt_hyp_validity_bound(A)
    _warn_validity(SYSTEM_PT_HYP, A, beta, bound)
    return SpectrumReport(
        system=SYSTEM_PT_HYP,
        levels=[pt_hyp_energy(A, beta, n) for n in range(params.n_max + 1)],
        n_max=params.n_max,
        beta_validity_bound=bound,
        meta={"A": A, "beta": beta, "k": params.k, "s": params.s, "g": params.g},
    )


def pt_trig_energy(A: float, beta: float, n: int) -> LevelRecord:
    """Return the first-order energy of level n of the trigonometric well."""
    _check_beta(beta)
    if not A > 1.0:
        raise LevelOutOfRange(f"A = {A!r} must exceed 1", field="A")
    if n < 0:
        raise LevelOutOfRange(f"level {n} must be >= 0", field="n")
    delta = pt_trig_delta(A, n)
    return LevelRecord(
        n=n,
        e_exact=None,
        e_first_order=0.5 * (A + n) ** 2 * (1.0 + beta * delta),
        delta_n=delta,
        validity_flag=beta * delta < VALIDITY_FLAG_LIMIT,
    )


def pt_trig_spectrum(A: float, beta: float, levels: int) -> SpectrumReport:
    """Return the lowest levels of the trigonometric well."""
    records = [pt_trig_energy(A, beta, n) for n in range(levels)]
    bound = 1.0 / records[-1].delta_n if records else None
    if bound is not None:
        _warn_validity(SYSTEM_PT_TRIG, A, beta, bound)
    return SpectrumReport(
        system=SYSTEM_PT_TRIG,
        levels=records,
        n_max=None,
        beta_validity_bound=bound,
        meta={"A": A, "beta": beta},
    )


def pt_first_order_slope(A: float, n: int) -> float:
    """Return dE_n/dbeta at beta = 0 for the hyperbolic well."""
    return 0.5 * (A - n) ** 2 * pt_hyp_delta(A, n)


# ── ground-state correction ─────────────────────────────────────────


def _norm0(A: float) -> float:
    return math.sqrt(float(gamma_real(A + 0.5) / (gamma_real(0.5) * gamma_real(A))))


def _sech_power_integral(m: float) -> float:
    """Return the integral of sech^(2m) over the real line."""
    return float(gamma_real(0.5) * gamma_real(m) / gamma_real(m + 0.5))


def _sech_log_cosh_integral(A: float) -> float:
    def integrand(x: float) -> float:
        # log cosh x = x + log1p(exp(-2x)) - log 2 for x >= 0
        log_cosh = x + math.log1p(math.exp(-2.0 * x)) - math.log(2.0)
        return math.exp(-2.0 * A * log_cosh) * log_cosh

    value, _ = integrate.quad(integrand, 0.0, math.inf, limit=200)
    return 2.0 * value


@dataclass(frozen=True)
class PTGroundStateCorrection:
    """Constants of the first-order ground-state correction."""

    A: float
    C: float
    D: float
    integer_closed_form: bool

    def terms(self, x: np.ndarray) -> np.ndarray:
        """Return the correction without the N_0 prefactor."""
        A = self.A
        sech = 1.0 / np.cosh(x)
        return (
            -(A * (A - 1.0) * (A - 2.0) / 6.0) * sech ** (A - 2.0)
            + self.C * sech**A * np.log(np.cosh(x))
            + self.D * sech**A
        )


def pt_groundstate_correction(A: float) -> PTGroundStateCorrection:
    """Return C and D; D makes the correction orthogonal to the undeformed state."""
    if not A > 1.0:
        raise DomainViolation(f"A = {A!r} must exceed 1", field="A")
    C = A * (A + 1.0) * (2.0 * A * A + 2.0 * A - 1.0) / (3.0 * (2.0 * A + 1.0))
    if float(A).is_integer():
        alt = math.fsum((-1.0) ** j / j for j in range(1, int(2 * A)))
        D = A * (A - 2.0) * (2.0 * A - 1.0) / 12.0 + C * (math.log(2.0) + alt)
        return PTGroundStateCorrection(A=A, C=C, D=D, integer_closed_form=True)
    cubic = A * (A - 1.0) * (A - 2.0) / 6.0
    D = (
        cubic * _sech_power_integral(A - 1.0) - C * _sech_log_cosh_integral(A)
    ) / _sech_power_integral(A)
    return PTGroundStateCorrection(A=A, C=C, D=D, integer_closed_form=False)


def pt_normalization_constant(A: float) -> float:
    """Return N_0 = sqrt(Gamma(A + 1/2) / (Gamma(1/2) Gamma(A)))."""
    return _norm0(A)


def pt_hyp_groundstate(A: float, beta: float, x: np.ndarray) -> np.ndarray:
    """Return psi_0 = N_0 sech^A x + beta * correction, to first order."""
    _check_beta(beta)
    corr = pt_groundstate_correction(A)
    x = np.asarray(x, dtype=float)
    n0 = _norm0(A)
    return n0 * (np.cosh(x) ** (-A) + beta * corr.terms(x))


def pt_groundstate_state(A: float, x: np.ndarray) -> SampledState:
    """Return sech^A x and its first two derivatives."""
    x = np.asarray(x, dtype=float)
    sech = 1.0 / np.cosh(x)
    tanh = np.tanh(x)
    psi = sech**A
    return SampledState(
        x=x,
        psi=psi,
        dpsi=-A * tanh * psi,
        d2psi=(A * A * tanh**2 - A * sech**2) * psi,
    )


def pt_hyp_excited_correction(A: float, beta: float, x: np.ndarray) -> np.ndarray:
    """Return the first-excited-state correction, up to normalization.

    It is B+_0(A) applied to the A - 1 ground-state correction plus the first-order
    part of B+ applied to the undeformed A - 1 ground state.
    """
    _check_beta(beta)
    a = A - 1.0
    if not a > 1.0:
        raise DomainViolation(f"A = {A!r} must exceed 2", field="A")
    corr = pt_groundstate_correction(a)
    x = np.asarray(x, dtype=float)
    sech = 1.0 / np.cosh(x)
    tanh = np.tanh(x)
    logc = np.log(np.cosh(x))
    low = sech ** (a - 2.0)
    top = sech**a
    cubic = a * (a - 1.0) * (a - 2.0)

    lowered = (
        -(cubic / 6.0) * (2.0 * A - 3.0) * low
        + corr.C * top * ((a + A) * logc - 1.0)
        + corr.D * (a + A) * top
    )
    kappa = A * A / (2.0 * (2.0 * A + 1.0))
    shifted = -(cubic / 3.0) * low + (
        a * (A - 2.0) / 2.0 + a * (a * a + 2.0) / 3.0 - kappa
    ) * top
    return _norm0(a) / math.sqrt(2.0) * tanh * (lowered + shifted)


# ──────────────────────────────────────────────────────────────────────
# Morse
# ──────────────────────────────────────────────────────────────────────


@dataclass(frozen=True)
class MorseParams:
    """Ladder constants of the deformed Morse well."""

    A: float
    B: float
    beta: float
    s: float
    g: float
    r: float
    Delta: float
    ladder_g: tuple[float, ...]
    ladder_r: tuple[float, ...]
    n_max: int
    exists: bool

    @property
    def bracket(self) -> tuple[float, float]:
        """Return the interval [lo, hi) that contains n_max."""
        bb = self.beta * self.B
        if bb == 0.0:
            return (self.A - 1.0, self.A)
        root = math.sqrt(1.0 + bb * (2.0 * self.A + 1.0))
        return (
            (-1.5 * bb - self.Delta + root) / bb,
            (-0.5 * bb - self.Delta + root) / bb,
        )

    @property
    def existence_bound(self) -> float:
        """Return the beta below which the ground state exists."""
        return 4.0 * self.A * (self.A + 1.0) / ((2.0 * self.A + 1.0) * self.B)

    def g_level(self, i: int) -> float:
        """Return g_i."""
        return self.g + i * self.beta * self.B

    def r_level(self, i: int) -> float:
        """Return r_i."""
        return self.r - i * self.g - 0.5 * i * i * self.beta * self.B


def morse_params(A: float, B: float, beta: float) -> MorseParams:
    """Return the Morse ladder; exists is False when no level is bound."""
    _check_beta(beta)
    if not (A > 0.0 and B > 0.0):
        raise InvalidParameters("A and B must be positive", field="A")
    bb = beta * B
    delta = math.sqrt(1.0 + 0.25 * bb * bb)
    g = 0.5 * bb + delta
    r = A + 0.5 - 0.5 * g
    gs: list[float] = []
    rs: list[float] = []
    i = 0
    while True:
        r_i = r - i * g - 0.5 * i * i * bb
        if not r_i > 0.0:
            break
        gs.append(g + i * bb)
        rs.append(r_i)
        i += 1
    return MorseParams(
        A=A,
        B=B,
        beta=beta,
        s=B,
        g=g,
        r=r,
        Delta=delta,
        ladder_g=tuple(gs),
        ladder_r=tuple(rs),
        n_max=len(rs) - 1,
        exists=bool(rs),
    )


def morse_first_order_slope(A: float, B: float, n: int) -> float:
    """Return dE_n/dbeta at beta = 0."""
    return 0.25 * (A - n) * (2 * n * n + 2 * n + 1) * B


def morse_spectrum(A: float, B: float, beta: float) -> tuple[MorseParams, SpectrumReport]:
    """Return every bound level of the Morse well."""
    params = morse_params(A, B, beta)
    if not params.exists:
        raise NoBoundStates(
            f"r = {params.r!r} <= 0: beta = {beta} exceeds "
            f"{params.existence_bound:.6g}",
            field="beta",
        )
    levels: list[LevelRecord] = []
    for n, r_n in enumerate(params.ladder_r):
        delta = (2 * n * n + 2 * n + 1) * B / (2.0 * (A - n)) if A != n else math.inf
        levels.append(
            LevelRecord(
                n=n,
                e_exact=-0.5 * r_n * r_n,
                e_first_order=-0.5 * (A - n) ** 2 + beta * morse_first_order_slope(A, B, n),
                delta_n=delta,
                validity_flag=beta * delta < VALIDITY_FLAG_LIMIT,
            )
        )
    report = SpectrumReport(
        system=SYSTEM_MORSE,
        levels=levels,
        n_max=params.n_max,
        beta_validity_bound=params.existence_bound,
        meta={"A": A, "B": B, "beta": beta, "g": params.g, "r": params.r},
    )
    return params, report


def morse_ladder_operator(
    params: MorseParams, grid: GridSpec, sign: int = -1, level: int = 0
) -> GridOperator:
    """Return B± = (1/sqrt 2)(-beta B d² ∓ g d - B exp(-x) + r) at a ladder level."""
    g = params.g_level(level)
    r = params.r_level(level)
    bb = params.beta * params.B
    matrix = (
        -bb * d2(grid)
        - sign * g * d1(grid)
        + diag(-params.B * np.exp(-grid.points) + r)
    ) / math.sqrt(2.0)
    return GridOperator(
        grid=grid,
        matrix=matrix.tocsr(),
        bandwidth=1,
        meta={"sign": sign, "level": level},
    )


# ── wavefunctions ───────────────────────────────────────────────────


@dataclass
class MorseWavefunction:
    """Normalized Morse bound state and the data that define it."""

    n: int
    x: np.ndarray
    psi: np.ndarray
    nu: float | None
    rho: float
    m: float | None
    coefficients: np.ndarray
    log_scale: float = 0.0


def morse_coefficients(params: MorseParams, n: int) -> tuple[np.ndarray, float, float, float]:
    """Return c_j, nu_n, rho_n and m_n for level n.

    B+(g_i, r_i) is applied for i = n-1, ..., 0 to the zero mode of B-(g_n, r_n). States
    are kept as p(theta) phi_0 with theta = y d/dy; y is eliminated through
    y phi_0 = (-beta B theta² - g_n theta + r_n) phi_0 and y p(theta) = p(theta - 1) y.
    """
    bb = params.beta * params.B
    if bb == 0.0:
        raise InvalidParameters("the Bessel form needs beta > 0", field="beta")
    g_n, r_n = params.g_level(n), params.r_level(n)
    if not r_n > 0.0:
        raise NotNormalizable(f"r_{n} = {r_n!r} <= 0", field="n")

    theta = Polynomial([0.0, 1.0])
    shift = Polynomial([-1.0, 1.0])
    zero_mode = -bb * theta**2 - g_n * theta + r_n
    poly = Polynomial([1.0])
    for i in range(n - 1, -1, -1):
        raising = -bb * theta**2 + params.g_level(i) * theta + params.r_level(i)
        poly = (raising * poly - poly(shift) * zero_mode).trim()

    m_n = g_n / bb
    # nu - m in a form free of cancellation
    gap = 4.0 * r_n / (math.sqrt(g_n * g_n + 4.0 * bb * r_n) + g_n)
    nu_n = m_n + gap
    rho = 0.5 * gap

    # theta T_k = (k + rho) T_k - T_{k+1} / 2 on T_k = z^(k - m) J_(nu + k)
    coef = poly.coef
    vec = np.zeros(n + 1)
    for a_k in coef[::-1]:
        nxt = (np.arange(n + 1) + rho) * vec
        nxt[1:] -= 0.5 * vec[:-1]
        vec = nxt
        vec[0] += a_k
    vec *= (-1.0) ** n / vec[n]
    return vec, nu_n, rho, m_n


def _log_terms(
    z: float, coefficients: np.ndarray, nu: float, m: float
) -> list[tuple[float, int]]:
    out = []
    lz = math.log(z)
    for j, c_j in enumerate(coefficients):
        if c_j == 0.0:
            continue
        log_j, sign_j = log_bessel_j(nu + j, z)
        out.append(
            (math.log(abs(c_j)) + (j - m) * lz + log_j, sign_j * (1 if c_j > 0 else -1))
        )
    return out


def _chi(z: float, coefficients: np.ndarray, nu: float, m: float, shift: float) -> float:
    return math.fsum(
        sign * math.exp(log_t - shift)
        for log_t, sign in _log_terms(z, coefficients, nu, m)
        if sign
    )


def _undeformed_morse_wavefunction(
    params: MorseParams, n: int, x: np.ndarray
) -> MorseWavefunction:
    """Return xi^s exp(-xi/2) L_n^(2s)(xi) with xi = 2B exp(-x) and s = A - n."""
    s = params.A - n
    if not s > 0.0:
        raise NotNormalizable(f"s = {s!r} <= 0", field="n")
    alpha = 2.0 * s
    # int |psi|² dx = Gamma(n + 2s + 1) / (n! 2s)
    log_norm = 0.5 * (
        special.gammaln(n + alpha + 1.0) - special.gammaln(n + 1.0) - math.log(alpha)
    )
    log_2b = math.log(2.0 * params.B)

    def unsigned(xv: np.ndarray) -> np.ndarray:
        log_xi = log_2b - xv
        xi = np.exp(log_xi)
        return np.exp(s * log_xi - 0.5 * xi - log_norm) * special.eval_genlaguerre(
            n, alpha, xi
        )

    x_lo = log_2b - math.log(4.0 * n + 2.0 * alpha + 60.0)
    scan = unsigned(np.linspace(x_lo, x_lo + 40.0 / s + 20.0, 4001))
    peak = scan[int(np.argmax(np.abs(scan)))]
    sign = 1.0 if peak >= 0.0 else -1.0

    xs = np.asarray(x, dtype=float)
    return MorseWavefunction(
        n=n,
        x=xs,
        psi=sign * unsigned(xs),
        nu=None,
        rho=s,
        m=None,
        coefficients=np.zeros(0),
    )


def morse_wavefunction(params: MorseParams, n: int, x: np.ndarray) -> MorseWavefunction:
    """Return the normalized level-n wavefunction sampled at x."""
    if params.beta == 0.0:
        return _undeformed_morse_wavefunction(params, n, x)
    coefficients, nu, rho, m = morse_coefficients(params, n)
    beta = params.beta
    to_z = 2.0 / math.sqrt(beta)

    def z_of(xv: float) -> float:
        return to_z * math.exp(-0.5 * xv)

    # the decay rates are m/2 + 1/4 to the left and rho to the right
    x_left = -2.0 * math.log(0.5e4 / to_z)
    scan = np.linspace(x_left, x_left + 40.0 + 80.0 / rho, 4001)
    log_peak = np.array(
        [max(t for t, _ in _log_terms(z_of(xv), coefficients, nu, m)) for xv in scan]
    )
    shift = float(np.max(log_peak))
    x_peak = float(scan[int(np.argmax(log_peak))])
    lo = max(x_left, x_peak - 40.0 / (0.5 * m + 0.25) - 6.0)
    hi = x_peak + 40.0 / rho + 2.0

    def scaled(xv: float) -> float:
        if xv < x_left:
            return 0.0
        return _chi(z_of(xv), coefficients, nu, m, shift)

    norm_left, _ = integrate.quad(lambda v: scaled(v) ** 2, lo, x_peak, limit=200)
    norm_right, _ = integrate.quad(lambda v: scaled(v) ** 2, x_peak, hi, limit=200)
    norm = math.sqrt(norm_left + norm_right)
    sign = 1.0 if scaled(x_peak) >= 0.0 else -1.0
    if not norm > 0.0:
        raise NotNormalizable(f"level {n} has zero norm", field="n")
    _LOGGER.debug(
        "Morse level %s: nu=%s rho=%s peak=%s norm=%s", n, nu, rho, x_peak, norm
    )

    xs = np.asarray(x, dtype=float)
    psi = np.array([scaled(float(xv)) for xv in xs]) * (sign / norm)
    return MorseWavefunction(
        n=n,
        x=xs,
        psi=psi,
        nu=nu,
        rho=rho,
        m=m,
        coefficients=coefficients,
        log_scale=shift + math.log(norm),
    )

"""Shape-invariant oscillator in a uniform field under the rotated algebra.

H = (P'² + X'²)/2 - E(X' cos phi + P' sin phi) with [X', P'] = i(1 + a'X'² + b'P'²).
The Hamiltonian is factorized as B+ B- + eps0 and the shape-invariance ladder
produces the spectrum level by level. Truncated q-Fock matrices give an independent
check of every identity.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
import logging
import math

import numpy as np
from scipy import linalg

from .const import (
    DEFAULT_QFOCK_DIM,
    LOG_FLOAT_MAX,
    QFOCK_BLOCK_MARGIN,
)
from .exceptions import (
    FactorizationDomain,
    InvalidParameters,
    LevelOutOfRange,
    OverflowRisk,
    UnsupportedDegree,
)
from .quad_algebra import rotate_to_canonical

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class OscFieldInput:
    """Rotated deformation parameters, rotation angle and field strength."""

    alpha_p: float
    beta_p: float
    phi: float = 0.0
    field_E: float = 0.0

    def __post_init__(self) -> None:
        if not (self.alpha_p > 0.0 and self.beta_p > 0.0):
            raise InvalidParameters(
                f"alpha' = {self.alpha_p!r} and beta' = {self.beta_p!r} must be positive",
                field="alpha_p" if not self.alpha_p > 0.0 else "beta_p",
            )
        if not self.alpha_p * self.beta_p < 1.0:
            raise InvalidParameters("alpha' * beta' must be below 1", field="alpha_p")

    @classmethod
    def from_algebra(
        cls, alpha: float, beta: float, kappa: float, field_E: float = 0.0
    ) -> OscFieldInput:
        """Create the input by rotating an (alpha, beta, kappa) relation."""
        rot = rotate_to_canonical(alpha, beta, kappa)
        return cls(alpha_p=rot.alpha_p, beta_p=rot.beta_p, phi=rot.phi, field_E=field_E)

    @property
    def root(self) -> float:
        """Return sqrt(alpha' beta')."""
        return math.sqrt(self.alpha_p * self.beta_p)

    @property
    def q(self) -> float:
        """Return the deformation parameter of the q-boson algebra."""
        return (1.0 + self.root) / (1.0 - self.root)

    @property
    def gamma_ratio(self) -> float:
        """Return sqrt(beta' / alpha')."""
        return math.sqrt(self.beta_p / self.alpha_p)


@dataclass(frozen=True)
class Factorization:
    """Parameters of H = B+ B- + eps0."""

    g: float
    s: float
    k: float
    r: float
    nu: float
    eps0: float


@dataclass(frozen=True)
class FactorizationLadder:
    """Shape-invariance ladder g_i, s_i, r_i, nu_i, eps_i for i = 0..n_levels."""

    source: OscFieldInput
    g: np.ndarray
    s: np.ndarray
    r: np.ndarray
    nu: np.ndarray
    eps: np.ndarray
    q: float
    t: float
    gamma_ratio: float
    k: float
    u: float
    K: float
    z: np.ndarray
    w: np.ndarray

    @property
    def n_levels(self) -> int:
        """Return the highest level index available."""
        return len(self.eps) - 1

    def t_level(self, i: int) -> float:
        """Return the squeeze parameter t q^-i of the i-th ladder operator."""
        return self.t * self.q ** (-i)


@dataclass(frozen=True)
class SpectrumLevel:
    """Energy of one level and its decomposition."""

    n: int
    energy: float
    field_off: float
    dE1: float
    dE2: float


@dataclass(frozen=True)
class QFockMatrices:
    """Truncated q-boson and ladder-operator matrices."""

    dim: int
    q: float
    b: np.ndarray
    b_dag: np.ndarray
    B_minus: list[np.ndarray]
    B_plus: list[np.ndarray]


@dataclass(frozen=True)
class PolynomialInput:
    """Arguments of the Bargmann polynomials."""

    xi: complex
    q: float
    t: float
    z: float
    w: float


# ──────────────────────────────────────────────────────────────────────
# Factorization and ladder
# ──────────────────────────────────────────────────────────────────────


def factorize(inp: OscFieldInput) -> Factorization:
    """Factorize the oscillator in a field.

    k is the positive root of k² - (b' - a')k - 1 = 0, which makes
    s² - sg a' = 1 and g² - sg b' = 1 hold exactly.
    """
    half_diff = 0.5 * (inp.beta_p - inp.alpha_p)
    k = half_diff + math.sqrt(1.0 + half_diff**2)
    if inp.alpha_p * k >= 1.0:
        raise FactorizationDomain(
            f"alpha' k = {inp.alpha_p * k!r} must be below 1", field="alpha_p"
        )
    s = 1.0 / math.sqrt(1.0 - inp.alpha_p * k)
    g = s * k
    r = -inp.field_E * math.cos(inp.phi) / s
    nu = -inp.field_E * math.sin(inp.phi) / g
    eps0 = 0.5 * (g * s - r * r - nu * nu)
    return Factorization(g=g, s=s, k=k, r=r, nu=nu, eps0=eps0)


def factorization_residual(inp: OscFieldInput, fac: Factorization) -> float:
    """Return how far g, s are from satisfying the factorization conditions."""
    return max(
        abs(fac.s**2 - fac.s * fac.g * inp.alpha_p - 1.0),
        abs(fac.g**2 - fac.s * fac.g * inp.beta_p - 1.0),
    )


def si_ladder(inp: OscFieldInput, n_levels: int) -> FactorizationLadder:
    """Run the shape-invariance ladder up to level n_levels."""
    if n_levels < 0:
        raise LevelOutOfRange(f"n_levels = {n_levels} must be >= 0", field="levels")
    fac = factorize(inp)
    q = inp.q
    gamma = inp.gamma_ratio
    u = fac.g + gamma * fac.s
    t = (fac.g - gamma * fac.s) / u
    K = u * math.sqrt((q + 1.0) / (4.0 * gamma))

    i = np.arange(n_levels + 1, dtype=float)
    half = q ** (0.5 * i)
    tq = t * q ** (-i)
    g = fac.g * half * (1.0 + tq) / (1.0 + t)
    s = fac.s * half * (1.0 - tq) / (1.0 - t)
    r = fac.r / half * (1.0 - t) / (1.0 - tq)
    nu = fac.nu / half * (1.0 + t) / (1.0 + tq)

    eps = np.empty(n_levels + 1)
    eps[0] = fac.eps0
    gs = g * s
    eps[1:] = 0.5 * (
        gs[:-1] + gs[1:] + r[:-1] ** 2 - r[1:] ** 2 + nu[:-1] ** 2 - nu[1:] ** 2
    )
    _LOGGER.debug("Ladder q=%s t=%s K=%s eps=%s", q, t, K, eps)

    return FactorizationLadder(
        source=inp,
        g=g,
        s=s,
        r=r,
        nu=nu,
        eps=eps,
        q=q,
        t=t,
        gamma_ratio=gamma,
        k=fac.k,
        u=u,
        K=K,
        z=-r / (K * half),
        w=-nu / (K * half),
    )


def energy_spectrum(ladder: FactorizationLadder, n: int) -> SpectrumLevel:
    """Return E_n and its split into the field-free value and two corrections."""
    if not 0 <= n <= ladder.n_levels:
        raise LevelOutOfRange(
            f"level {n} outside ladder 0..{ladder.n_levels}", field="n"
        )
    energy = sum(float(e) for e in ladder.eps[: n + 1])

    free = si_ladder(replace(ladder.source, field_E=0.0), n)
    field_off = sum(float(e) for e in free.eps[: n + 1])

    weight = 0.5 * ladder.K**2 * ladder.q**n
    return SpectrumLevel(
        n=n,
        energy=energy,
        field_off=field_off,
        dE1=-weight * float(ladder.z[n]) ** 2,
        dE2=-weight * float(ladder.w[n]) ** 2,
    )


def field_corrections_closed_form(
    ladder: FactorizationLadder, n: int
) -> tuple[float, float]:
    """Return both field corrections from their explicit n-dependence."""
    inp = ladder.source
    tq = ladder.t * ladder.q ** (-n)
    common = 2.0 * inp.field_E**2 / ladder.u**2 * ladder.q ** (-n)
    de1 = -common * (ladder.gamma_ratio * math.cos(inp.phi)) ** 2 / (1.0 - tq) ** 2
    de2 = -common * math.sin(inp.phi) ** 2 / (1.0 + tq) ** 2
    return de1, de2


# ──────────────────────────────────────────────────────────────────────
# q-Fock oracle
# ──────────────────────────────────────────────────────────────────────


def q_number(n: np.ndarray | int, q: float) -> np.ndarray:
    """Return [n]_q = (q^n - 1) / (q - 1), equal to n at q = 1."""
    n = np.asarray(n, dtype=float)
    if q == 1.0:
        return n
    log_q = math.log(q)
    return np.expm1(n * log_q) / math.expm1(log_q)


def qboson_annihilator(q: float, dim: int) -> np.ndarray:
    """Return the truncated q-boson annihilator, b|n> = sqrt([n]_q)|n-1>."""
    if dim < 2:
        raise OverflowRisk(f"dim = {dim} leaves no room for b", field="dim")
    if q < 1.0:
        raise OverflowRisk(f"q = {q!r} must be >= 1", field="q")
    if dim * math.log(q) > LOG_FLOAT_MAX:
        raise OverflowRisk(f"q**dim overflows for q={q!r}, dim={dim}", field="dim")
    return np.diag(np.sqrt(q_number(np.arange(1, dim), q)), k=1)


def build_qfock(
    ladder: FactorizationLadder, dim: int = DEFAULT_QFOCK_DIM
) -> QFockMatrices:
    """Build truncated b, b+ and the ladder operators B-_i, B+_i."""
    b = qboson_annihilator(ladder.q, dim).astype(complex)
    b_dag = b.conj().T
    eye = np.eye(dim)
    B_minus: list[np.ndarray] = []
    for i in range(ladder.n_levels + 1):
        shift = complex(ladder.z[i], ladder.w[i])
        op = (ladder.K * ladder.q ** (0.5 * i) / math.sqrt(2.0)) * (
            b - ladder.t_level(i) * b_dag - shift * eye
        )
        B_minus.append(op)
    return QFockMatrices(
        dim=dim,
        q=ladder.q,
        b=b,
        b_dag=b_dag,
        B_minus=B_minus,
        B_plus=[op.conj().T for op in B_minus],
    )


def default_block(dim: int) -> int:
    """Return the leading block unaffected by truncation."""
    return max(1, dim - QFOCK_BLOCK_MARGIN)


def qfock_commutator_residual(mats: QFockMatrices, block: int | None = None) -> float:
    """Return the max-norm of b b+ - q b+ b - 1 on the leading block."""
    block = block or default_block(mats.dim)
    comm = mats.b @ mats.b_dag - mats.q * (mats.b_dag @ mats.b) - np.eye(mats.dim)
    return float(np.max(np.abs(comm[:block, :block])))


def verify_si_matrix(
    mats: QFockMatrices, ladder: FactorizationLadder, i: int, block: int | None = None
) -> float:
    """Return the max-norm of B-_i B+_i - B+_{i+1} B-_{i+1} - eps_{i+1}."""
    block = block or default_block(mats.dim)
    if block > mats.dim - 2:
        raise OverflowRisk(f"block {block} reaches the truncation edge", field="block")
    if not 0 <= i < ladder.n_levels:
        raise LevelOutOfRange(f"ladder has no step {i} -> {i + 1}", field="i")
    resid = (
        mats.B_minus[i] @ mats.B_plus[i]
        - mats.B_plus[i + 1] @ mats.B_minus[i + 1]
        - ladder.eps[i + 1] * np.eye(mats.dim)
    )
    return float(np.max(np.abs(resid[:block, :block])))


def qfock_spectrum(
    mats: QFockMatrices, ladder: FactorizationLadder, k: int
) -> tuple[np.ndarray, np.ndarray]:
    """Return the lowest k eigenpairs of B+_0 B-_0 + eps_0."""
    ham = mats.B_plus[0] @ mats.B_minus[0] + ladder.eps[0] * np.eye(mats.dim)
    values, vectors = linalg.eigh(ham, subset_by_index=[0, k - 1])
    return values, vectors


def position_momentum_matrices(
    q: float, gamma_ratio: float, phi: float, dim: int
) -> tuple[np.ndarray, np.ndarray]:
    """Realize X, P on the truncated q-Fock space.

    X' = lam (b+ + b) and P' = i lam/gamma (b+ - b) satisfy the rotated Kempf relation;
    rotating back by phi gives operators of the original (a, b, k) algebra.
    """
    root = (q - 1.0) / (q + 1.0)
    lam = math.sqrt(gamma_ratio / (2.0 * (1.0 - root)))
    b = qboson_annihilator(q, dim).astype(complex)
    b_dag = b.conj().T
    x_rot = lam * (b_dag + b)
    p_rot = 1j * (lam / gamma_ratio) * (b_dag - b)
    cos, sin = math.cos(phi), math.sin(phi)
    return cos * x_rot + sin * p_rot, -sin * x_rot + cos * p_rot


def realize_algebra(
    alpha: float, beta: float, kappa: float, dim: int = DEFAULT_QFOCK_DIM
) -> tuple[np.ndarray, np.ndarray]:
    """Return X, P matrices for an admissible (alpha, beta, kappa) relation."""
    inp = OscFieldInput.from_algebra(alpha, beta, kappa)
    return position_momentum_matrices(inp.q, inp.gamma_ratio, inp.phi, dim)


def quadratic_algebra_residual(
    alpha: float,
    beta: float,
    kappa: float,
    dim: int = DEFAULT_QFOCK_DIM,
    block: int | None = None,
) -> float:
    """Return the max-norm of [X,P] - i(1 + aX² + bP² + k(XP + PX)) on the block."""
    block = block or default_block(dim)
    x, p = realize_algebra(alpha, beta, kappa, dim)
    lhs = x @ p - p @ x
    rhs = 1j * (
        np.eye(dim) + alpha * (x @ x) + beta * (p @ p) + kappa * (x @ p + p @ x)
    )
    return float(np.max(np.abs((lhs - rhs)[:block, :block])))


def oscillator_matrix_spectrum(
    alpha: float,
    beta: float,
    kappa: float,
    field_E: float,
    k: int,
    dim: int = DEFAULT_QFOCK_DIM,
) -> np.ndarray:
    """Return the lowest k eigenvalues of (X² + P²)/2 - E X in the realization."""
    x, p = realize_algebra(alpha, beta, kappa, dim)
    ham = 0.5 * (x @ x + p @ p) - field_E * x
    ham = 0.5 * (ham + ham.conj().T)
    return linalg.eigh(ham, eigvals_only=True, subset_by_index=[0, k - 1])


# ──────────────────────────────────────────────────────────────────────
# Bargmann polynomials
# ──────────────────────────────────────────────────────────────────────


def polynomial_P(n: int, inp: PolynomialInput) -> complex:
    """Evaluate the first two excited-state polynomials."""
    xi, q, t, z, w = inp.xi, inp.q, inp.t, inp.z, inp.w
    if n == 1:
        return (1 - t * t / q) * (
            xi - z / (1 - t / q) + 1j * w / (1 + t / q)
        )
    if n == 2:
        q2 = q * q
        two_q = 1 + q
        inner = (
            (1 - t * t / q) * xi * xi
            - two_q * (1 - t * t / q) * (z / ((1 - t / q2) * q) - 1j * w / ((1 + t / q2) * q))
            - t
            + (1 - t) * (1 + t / q) * z * z / ((1 - t / q2) ** 2 * q)
            - (1 + t) * (1 - t / q) * w * w / ((1 + t / q2) ** 2 * q)
            - 2j * (1 - t * t / q) * z * w / ((1 - t / q2) * (1 + t / q2) * q)
        )
        return (1 - t * t / (q2 * q)) * inner
    raise UnsupportedDegree(f"no closed form for degree {n}", field="n")

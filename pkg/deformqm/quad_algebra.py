"""Canonical form and minimal uncertainties of the quadratic commutation relation.

The relation is ``[X, P] = i(1 + aX² + bP² + kXP + k*PX)`` with small real ``a``, ``b``
and complex ``k``. The imaginary part of ``k`` is folded into a rescale of the
operators, after which a rotation in phase space removes the mixed term.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
import logging
import math

from .const import (
    PARAM_HARD_LIMIT,
    PARAM_SOFT_LIMIT,
    VIOLATION_ALPHA,
    VIOLATION_BETA,
    VIOLATION_KAPPA,
)
from .exceptions import (
    DegenerateRescale,
    InvalidParameters,
    NoRealRoot,
    NotAdmissible,
)

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class QuadraticAlgebraParams:
    """Deformation parameters of the quadratic algebra."""

    alpha: float
    beta: float
    kappa_re: float = 0.0
    kappa_im: float = 0.0
    operator_scale: float = 1.0

    @property
    def kappa(self) -> complex:
        """Return kappa as a complex number."""
        return complex(self.kappa_re, self.kappa_im)

    @property
    def is_real(self) -> bool:
        """Check whether kappa has no imaginary part."""
        return self.kappa_im == 0.0

    def validate(self) -> QuadraticAlgebraParams:
        """Reject parameters that are not small, warn about borderline ones."""
        for name, value in (
            ("alpha", abs(self.alpha)),
            ("beta", abs(self.beta)),
            ("kappa", abs(self.kappa)),
        ):
            if not math.isfinite(value) or value >= PARAM_HARD_LIMIT:
                raise InvalidParameters(
                    f"|{name}| = {value!r} must be below {PARAM_HARD_LIMIT}", field=name
                )
            if value > PARAM_SOFT_LIMIT:
                _LOGGER.warning(
                    "|%s| = %s exceeds %s, first-order statements may not hold",
                    name,
                    value,
                    PARAM_SOFT_LIMIT,
                )
        return self


@dataclass(frozen=True)
class ExpectationContext:
    """Expectation values of position and momentum in the state of interest."""

    mean_x: float = 0.0
    mean_p: float = 0.0

    def gamma_exp(self, alpha: float, beta: float, kappa: float) -> float:
        """Return a<X>² + b<P>² + 2k<X><P>."""
        return (
            alpha * self.mean_x**2
            + beta * self.mean_p**2
            + 2.0 * kappa * self.mean_x * self.mean_p
        )


@dataclass(frozen=True)
class RotationResult:
    """Phase-space rotation that removes the mixed term."""

    phi: float
    alpha_p: float
    beta_p: float
    kappa_p: float
    delta: float
    sigma: int

    @property
    def product(self) -> float:
        """Return alpha' * beta'."""
        return self.alpha_p * self.beta_p


@dataclass(frozen=True)
class Admissibility:
    """Outcome of the minimal-length admissibility test."""

    admissible: bool
    violations: tuple[str, ...] = ()

    @property
    def diagnostics(self) -> str:
        """Return the violations as a single string."""
        return "; ".join(self.violations)


@dataclass(frozen=True)
class MinimalUncertainties:
    """Minimal position and momentum uncertainties."""

    dx_min: float
    dp_min: float
    dx0: float
    dp0: float


@dataclass(frozen=True)
class UncertaintyBound:
    """Lower bound on the position spread for a given momentum spread."""

    dp: float
    dx_bound: float
    lower_root: float | None
    upper_root: float | None
    vertex: float
    discriminant: float

    @property
    def real_roots(self) -> bool:
        """Check whether the bounding quadratic has real roots."""
        return self.discriminant >= 0.0


@dataclass(frozen=True)
class BarredRelation:
    """Kempf-form parameters obtained by absorbing 1 + |k| into a and b."""

    alpha_bar: float
    beta_bar: float
    factor: float

    @property
    def dx_min(self) -> float:
        """Return the minimal position uncertainty in Kempf form."""
        return self.factor * math.sqrt(
            self.beta_bar / (1.0 - self.alpha_bar * self.beta_bar)
        )

    @property
    def dp_min(self) -> float:
        """Return the minimal momentum uncertainty in Kempf form."""
        return self.factor * math.sqrt(
            self.alpha_bar / (1.0 - self.alpha_bar * self.beta_bar)
        )


@dataclass(frozen=True)
class CanonicalForm:
    """Everything the canonicalize command reports."""

    params: QuadraticAlgebraParams
    normalized: QuadraticAlgebraParams
    rotation: RotationResult
    admissibility: Admissibility
    gamma_exp: float
    uncertainties: MinimalUncertainties | None = None
    notes: list[str] = field(default_factory=list)


def normalize_complex_kappa(params: QuadraticAlgebraParams) -> QuadraticAlgebraParams:
    """Fold Im(kappa) into a rescale of X and P.

    The result has a real kappa and records sqrt(1 + Im kappa) in operator_scale;
    uncertainties computed in the rescaled units are divided by it.
    """
    one_plus = 1.0 + params.kappa_im
    if not one_plus > 0.0:
        raise DegenerateRescale(
            f"1 + Im(kappa) = {one_plus!r} is not positive", field="kappa_im"
        )
    if params.is_real:
        return params
    return replace(
        params,
        alpha=params.alpha / one_plus,
        beta=params.beta / one_plus,
        kappa_re=params.kappa_re / one_plus,
        kappa_im=0.0,
        operator_scale=params.operator_scale * math.sqrt(one_plus),
    )


def rotate_to_canonical(alpha: float, beta: float, kappa: float) -> RotationResult:
    """Rotate X, P so the relation loses its XP + PX term."""
    if alpha == beta:
        # Any rotation mixes equally; the quarter turn is the canonical choice.
        return RotationResult(
            phi=math.pi / 4,
            alpha_p=alpha - kappa,
            beta_p=beta + kappa,
            kappa_p=0.0,
            delta=2.0 * abs(kappa),
            sigma=1,
        )

    delta = math.hypot(alpha - beta, 2.0 * kappa)
    sigma = 1 if alpha > beta else -1
    cos2 = abs(alpha - beta) / delta
    sin2 = -2.0 * sigma * kappa / delta
    phi = 0.5 * math.atan2(sin2, cos2)
    mean = 0.5 * (alpha + beta)
    kappa_p = 0.5 * (alpha - beta) * sin2 + kappa * cos2
    result = RotationResult(
        phi=phi,
        alpha_p=mean + 0.5 * sigma * delta,
        beta_p=mean - 0.5 * sigma * delta,
        kappa_p=kappa_p,
        delta=delta,
        sigma=sigma,
    )
    _LOGGER.debug("Rotation for (%s, %s, %s): %s", alpha, beta, kappa, result)
    return result


def kempf_admissible(alpha: float, beta: float, kappa: float) -> Admissibility:
    """Check a > 0, b > 0 and |k| < sqrt(ab)."""
    violations: list[str] = []
    if not alpha > 0.0:
        violations.append(VIOLATION_ALPHA)
    if not beta > 0.0:
        violations.append(VIOLATION_BETA)
    if not violations and not abs(kappa) < math.sqrt(alpha * beta):
        violations.append(VIOLATION_KAPPA)
    return Admissibility(admissible=not violations, violations=tuple(violations))


def _require_admissible(params: QuadraticAlgebraParams) -> None:
    adm = kempf_admissible(params.alpha, params.beta, params.kappa_re)
    if not adm.admissible:
        raise NotAdmissible(
            f"no minimal length for {params}: {adm.diagnostics}",
            field=adm.violations[0],
        )


def minimal_uncertainties(
    params: QuadraticAlgebraParams, ctx: ExpectationContext | None = None
) -> MinimalUncertainties:
    """Return the minimal uncertainties at <X>, <P> and at the origin."""
    ctx = ctx or ExpectationContext()
    norm = normalize_complex_kappa(params.validate())
    _require_admissible(norm)

    alpha, beta, kappa = norm.alpha, norm.beta, norm.kappa_re
    gamma = ctx.gamma_exp(params.alpha, params.beta, params.kappa_re)
    denom = (1.0 + abs(kappa)) ** 2 - alpha * beta
    scale = norm.operator_scale

    dx0 = math.sqrt(beta / denom) / scale
    dp0 = math.sqrt(alpha / denom) / scale
    return MinimalUncertainties(
        dx_min=dx0 * math.sqrt(1.0 + gamma),
        dp_min=dp0 * math.sqrt(1.0 + gamma),
        dx0=dx0,
        dp0=dp0,
    )


def uncertainty_lower_bound(
    params: QuadraticAlgebraParams,
    ctx: ExpectationContext | None,
    dp: float,
    strict: bool = False,
) -> UncertaintyBound:
    """Return the smallest position spread compatible with a momentum spread.

    Below the minimal momentum the bounding quadratic has no real root; the vertex is
    reported instead unless ``strict`` is set.
    """
    ctx = ctx or ExpectationContext()
    norm = normalize_complex_kappa(params.validate())
    alpha, beta, kappa = norm.alpha, norm.beta, norm.kappa_re
    gamma = ctx.gamma_exp(params.alpha, params.beta, params.kappa_re)
    scale = norm.operator_scale

    dp_t = dp * scale
    half_b = (1.0 + abs(kappa)) * dp_t
    const = 1.0 + gamma + beta * dp_t**2
    disc = half_b**2 - alpha * const
    vertex = half_b / alpha if alpha > 0.0 else math.inf

    if disc >= 0.0:
        root = math.sqrt(disc)
        # c / (b + sqrt(disc)) avoids the cancellation of (b - sqrt(disc)) / a
        lower = const / (half_b + root)
        upper = (half_b + root) / alpha if alpha > 0.0 else math.inf
        return UncertaintyBound(
            dp=dp,
            dx_bound=lower / scale,
            lower_root=lower / scale,
            upper_root=upper / scale,
            vertex=vertex / scale,
            discriminant=disc,
        )

    if strict:
        raise NoRealRoot(
            f"momentum spread {dp!r} lies below the minimal momentum", field="dp"
        )
    _LOGGER.debug("No real root at dp=%s, reporting the vertex", dp)
    return UncertaintyBound(
        dp=dp,
        dx_bound=vertex / scale,
        lower_root=None,
        upper_root=None,
        vertex=vertex / scale,
        discriminant=disc,
    )


def barred_relation(
    params: QuadraticAlgebraParams, ctx: ExpectationContext | None = None
) -> BarredRelation:
    """Absorb 1 + |k| into a and b, leaving a Kempf-type relation."""
    ctx = ctx or ExpectationContext()
    norm = normalize_complex_kappa(params.validate())
    gamma = ctx.gamma_exp(params.alpha, params.beta, params.kappa_re)
    one_k = 1.0 + abs(norm.kappa_re)
    return BarredRelation(
        alpha_bar=norm.alpha / one_k,
        beta_bar=norm.beta / one_k,
        factor=math.sqrt((1.0 + gamma) / one_k) / norm.operator_scale,
    )


def canonicalize(
    params: QuadraticAlgebraParams, ctx: ExpectationContext | None = None
) -> CanonicalForm:
    """Normalize, rotate and, when admissible, compute minimal uncertainties."""
    ctx = ctx or ExpectationContext()
    norm = normalize_complex_kappa(params.validate())
    rotation = rotate_to_canonical(norm.alpha, norm.beta, norm.kappa_re)
    adm = kempf_admissible(norm.alpha, norm.beta, norm.kappa_re)
    form = CanonicalForm(
        params=params,
        normalized=norm,
        rotation=rotation,
        admissibility=adm,
        gamma_exp=ctx.gamma_exp(params.alpha, params.beta, params.kappa_re),
    )
    if adm.admissible:
        form = replace(form, uncertainties=minimal_uncertainties(params, ctx))
    else:
        form.notes.append(adm.diagnostics)
    return form

"""Bessel and Gamma kernels with range checks and series oracles."""
from __future__ import annotations

import math

import numpy as np
from scipy import special

from .const import (
    BESSEL_MAX_ARG,
    BESSEL_MAX_ORDER,
    GAMMA_MAX_ARG,
    LOG_BESSEL_MAX_ORDER,
    SERIES_MAX_TERMS,
    SERIES_SPREAD_LIMIT,
)
from .exceptions import RangeUnsupported

# jv results below this are treated as underflowed
_TINY = 1e-280

# Lanczos g = 7, n = 9
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def _check_bessel(nu: np.ndarray, z: np.ndarray, max_order: float = BESSEL_MAX_ORDER) -> None:
    if np.any(nu < 0.0) or np.any(nu > max_order):
        raise RangeUnsupported(f"Bessel order outside [0, {max_order}]", field="nu")
    if np.any(z <= 0.0) or np.any(z > BESSEL_MAX_ARG):
        raise RangeUnsupported(
            f"Bessel argument outside (0, {BESSEL_MAX_ARG}]", field="z"
        )


def bessel_j(nu: float | np.ndarray, z: float | np.ndarray) -> np.ndarray:
    """Return J_nu(z) for real order and positive argument."""
    nu_arr = np.asarray(nu, dtype=float)
    z_arr = np.asarray(z, dtype=float)
    _check_bessel(nu_arr, z_arr)
    return special.jv(nu_arr, z_arr)


def _log_series(nu: float, z: float) -> tuple[float, int]:
    """log|J_nu(z)| and its sign from the ascending series."""
    x = -0.25 * z * z
    term = 1.0
    terms = [term]
    peak = 1.0
    for k in range(1, SERIES_MAX_TERMS):
        term *= x / (k * (nu + k))
        terms.append(term)
        peak = max(peak, abs(term))
        if k * (nu + k) > abs(x) and abs(term) < 1e-17 * peak:
            break
    total = math.fsum(terms)
    if total == 0.0:
        return -math.inf, 0
    log_mag = nu * math.log(0.5 * z) - special.gammaln(nu + 1.0) + math.log(abs(total))
    return float(log_mag), 1 if total > 0.0 else -1


def _log_debye(nu: float, z: float) -> float:
    """log J_nu(z) for z < nu from the Debye expansion with two corrections."""
    alpha = math.acosh(nu / z)
    tanh_a = math.sqrt(1.0 - (z / nu) ** 2)
    p = 1.0 / tanh_a
    p2 = p * p
    u1 = p * (3.0 - 5.0 * p2) / 24.0
    u2 = p2 * (81.0 - 462.0 * p2 + 385.0 * p2 * p2) / 1152.0
    return (
        nu * (tanh_a - alpha)
        - 0.5 * math.log(2.0 * math.pi * nu * tanh_a)
        + math.log1p(u1 / nu + u2 / (nu * nu))
    )


def bessel_j_series(nu: float, z: float) -> float:
    """Return J_nu(z) from its ascending series (oracle for moderate z)."""
    _check_bessel(np.asarray(nu), np.asarray(z))
    log_mag, sign = _log_series(nu, z)
    return sign * math.exp(log_mag) if sign else 0.0


def log_bessel_j(nu: float, z: float) -> tuple[float, int]:
    """Return (log|J_nu(z)|, sign).

    Where jv underflows the ascending series is summed, unless z²/nu is large enough
    for the series to cancel; those points, which only occur at large order, use the
    Debye expansion instead.
    """
    _check_bessel(np.asarray(nu), np.asarray(z), LOG_BESSEL_MAX_ORDER)
    value = float(special.jv(nu, z))
    if abs(value) > _TINY:
        return math.log(abs(value)), 1 if value > 0.0 else -1
    if z * z < SERIES_SPREAD_LIMIT * nu or z >= nu:
        return _log_series(nu, z)
    return _log_debye(nu, z), 1


def _check_gamma(arr: np.ndarray) -> None:
    if np.any(arr <= 0.0) or np.any(arr > GAMMA_MAX_ARG):
        raise RangeUnsupported(f"Gamma argument outside (0, {GAMMA_MAX_ARG}]", field="x")


def gamma_real(x: float | np.ndarray) -> np.ndarray:
    """Return Gamma(x) for 0 < x <= 170."""
    arr = np.asarray(x, dtype=float)
    _check_gamma(arr)
    return special.gamma(arr)


def _lanczos_gamma(y: float) -> float:
    z = y - 1.0
    acc = _LANCZOS_COEF[0]
    for i, c in enumerate(_LANCZOS_COEF[1:], start=1):
        acc += c / (z + i)
    t = z + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (z + 0.5) * math.exp(-t) * acc


def gamma_recurrence(x: float) -> float:
    """Return Gamma(x) by stepping x down to (1, 2] and a Lanczos sum there."""
    _check_gamma(np.asarray(x, dtype=float))
    acc = 1.0
    y = float(x)
    while y > 2.0:
        y -= 1.0
        acc *= y
    if y < 1.0:
        return _lanczos_gamma(y + 1.0) / y * acc
    return _lanczos_gamma(y) * acc

"""Special functions used by the benchmark problems.

* ``mittag_leffler`` -- one-parameter E_alpha on the real line for z <= 0
  (and small positive z).
* ``erfcx`` -- exp(z^2) erfc(z) for z >= 0 without forming exp(z^2) at
  large z.
* ``heaviside`` -- left-closed step, H(0) = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np
from scipy import integrate

__all__ = ["MLParams", "mittag_leffler", "erfcx", "heaviside"]

_SQRT_PI = math.sqrt(math.pi)
_MAX_TERMS = 10_000
# |z| beyond which the float series loses digits to cancellation for z < 0
_FLOAT_SERIES_RADIUS = 1.0
# the series terms peak near exp(|z|^(1/alpha)); past this the digit and term
# budgets become unreasonable and the integral form takes over
_MP_PEAK_LIMIT = 60.0
ERFCX_SMALL = 4.0
ERFCX_ASYMPTOTIC = 50.0


@dataclass(frozen=True)
class MLParams:
    """Order and accuracy settings for :func:`mittag_leffler`."""

    alpha: float
    tol: float = 1e-12
    series_radius: float = 5.0

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0:
            raise ValueError(f"alpha must lie in (0, 1], got {self.alpha}")
        if not 0.0 < self.tol <= 1e-6:
            raise ValueError(f"tol must lie in (0, 1e-6], got {self.tol}")
        if not self.series_radius > 0.0:
            raise ValueError("series_radius must be positive")


def _inv_gamma(x: float) -> float:
    if x < 170.0:
        return 1.0 / math.gamma(x)
    return math.exp(-math.lgamma(x))


def _ml_series_float(alpha: float, z: float, tol: float) -> float:
    total = 1.0
    power = 1.0
    for k in range(1, _MAX_TERMS):
        power *= z
        term = power * _inv_gamma(alpha * k + 1.0)
        total += term
        if abs(term) <= tol * 1e-3 * abs(total):
            return total
    raise ArithmeticError(f"Mittag-Leffler series did not converge at z={z}")


def _ml_series_positive(alpha: float, z: float, tol: float) -> float:
    # all terms positive; form each as exp(k log z - lgamma(alpha k + 1)) so
    # that z^k and Gamma never overflow on their own
    log_z = math.log(z)
    total = 1.0
    for k in range(1, _MAX_TERMS):
        log_term = k * log_z - math.lgamma(alpha * k + 1.0)
        if log_term > 709.0:
            raise OverflowError(f"E_{alpha}({z}) exceeds the float range")
        term = math.exp(log_term)
        total += term
        if math.isinf(total):
            raise OverflowError(f"E_{alpha}({z}) exceeds the float range")
        if k * alpha > 1.0 and term <= tol * 1e-3 * total:
            return total
    raise ArithmeticError(f"Mittag-Leffler series did not converge at z={z}")


def _ml_series_mp(alpha: float, z: float, tol: float) -> float:
    # Terms peak near |z|^(1/alpha) / e^... ; budget enough digits for the peak.
    peak = abs(z) ** (1.0 / alpha)
    extra = int(peak / math.log(10.0)) + 10
    with mpmath.workdps(17 + extra):
        a = mpmath.mpf(alpha)
        zz = mpmath.mpf(z)
        total = mpmath.mpf(1)
        power = mpmath.mpf(1)
        for k in range(1, _MAX_TERMS):
            power *= zz
            term = power / mpmath.gamma(a * k + 1)
            total += term
            if k > peak and abs(term) <= tol * 1e-3 * abs(total):
                return float(total)
    raise ArithmeticError(f"Mittag-Leffler series did not converge at z={z}")


def _ml_negative_integral(alpha: float, x: float) -> float:
    """E_alpha(-x), x > 0, from its completely monotone integral form.

    E_alpha(-x) = sin(a pi)/(a pi) * int_0^inf exp(-(x v)^(1/a)) /
                  (v^2 + 2 v cos(a pi) + 1) dv
    """
    ca = math.cos(alpha * math.pi)

    def integrand(v):
        return math.exp(-((x * v) ** (1.0 / alpha))) / (v * v + 2.0 * v * ca + 1.0)

    scale = 1.0 / x
    pieces = [0.0, scale, 10.0 * scale, math.inf]
    total = 0.0
    for lo, hi in zip(pieces[:-1], pieces[1:]):
        val, _ = integrate.quad(integrand, lo, hi, epsabs=0.0, epsrel=1e-13, limit=200)
        total += val
    return math.sin(alpha * math.pi) / (alpha * math.pi) * total


def mittag_leffler(params: MLParams | float, z: float) -> float:
    """One-parameter Mittag-Leffler function E_alpha(z) = sum z^k / Gamma(alpha k + 1).

    Supported region: z <= 0, or 0 < z <= ``series_radius``.  For
    -1 <= z the series is summed in double precision; out to
    ``-series_radius`` it is summed in extended precision while the term peak
    stays moderate; everything else uses the integral representation.

    Raises
    ------
    ValueError
        For z > series_radius.
    OverflowError
        When the value itself exceeds the float range (small alpha, z > 0).
    """
    if not isinstance(params, MLParams):
        params = MLParams(alpha=float(params))
    alpha, tol = params.alpha, params.tol
    z = float(z)
    if z == 0.0:
        return 1.0
    if alpha == 1.0:
        return math.exp(z)
    if z > params.series_radius:
        raise ValueError(
            f"z={z} outside supported region (z <= {params.series_radius})"
        )
    if z > 0.0:
        return _ml_series_positive(alpha, z, tol)
    if z >= -_FLOAT_SERIES_RADIUS:
        return _ml_series_float(alpha, z, tol)
    if z >= -params.series_radius and (-z) ** (1.0 / alpha) <= _MP_PEAK_LIMIT:
        return _ml_series_mp(alpha, z, tol)
    return _ml_negative_integral(alpha, -z)


def _erfcx_continued_fraction(z: float) -> float:
    # erfc(z) = exp(-z^2)/sqrt(pi) * 1/(z + (1/2)/(z + 1/(z + (3/2)/(z + ...))))
    # evaluated by the modified Lentz method.
    tiny = 1e-300
    f = z
    cc = f
    dd = 0.0
    for k in range(1, 500):
        a = 0.5 * k
        dd = z + a * dd
        dd = tiny if dd == 0.0 else dd
        cc = z + a / cc
        cc = tiny if cc == 0.0 else cc
        dd = 1.0 / dd
        delta = cc * dd
        f *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    return 1.0 / (_SQRT_PI * f)


def _erfcx_asymptotic(z: float) -> float:
    # 1/(z sqrt(pi)) * sum_n (-1)^n (2n-1)!! / (2 z^2)^n
    inv = 1.0 / (2.0 * z * z)
    term = 1.0
    total = 1.0
    for n in range(1, 60):
        term *= -(2 * n - 1) * inv
        total += term
        if abs(term) < 1e-17:
            break
    return total / (z * _SQRT_PI)


def erfcx(z: float) -> float:
    """Scaled complementary error function exp(z^2) erfc(z) for z >= 0.

    Raises
    ------
    ValueError
        For negative or NaN ``z``.
    """
    z = float(z)
    if not z >= 0.0:
        raise ValueError(f"erfcx is implemented for z >= 0, got {z}")
    if z < ERFCX_SMALL:
        return math.exp(z * z) * math.erfc(z)
    if z < ERFCX_ASYMPTOTIC:
        return _erfcx_continued_fraction(z)
    return _erfcx_asymptotic(z)


def heaviside(t):
    """0 for t < 0, 1 for t >= 0."""
    if np.ndim(t) == 0:
        return 1.0 if t >= 0 else 0.0
    return np.where(np.asarray(t) >= 0, 1.0, 0.0)

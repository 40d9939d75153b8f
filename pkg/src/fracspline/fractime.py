"""Grunwald-Letnikov weights and the GMMP discrete Caputo derivative."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["GmmpWeights", "gmmp_weights", "caputo_gmmp"]


@dataclass(frozen=True, eq=False)
class GmmpWeights:
    """Coefficients omega_k = (-1)^k binom(alpha, k) and their partial sums.

    ``partial_sums[m]`` is sum_{k=0}^{m} omega_k.
    """

    alpha: float
    omega: np.ndarray
    partial_sums: np.ndarray

    def __len__(self) -> int:
        return len(self.omega)


def gmmp_weights(alpha: float, n: int) -> GmmpWeights:
    """Weights omega_0..omega_n for order ``alpha`` in (0, 1).

    Both sequences come from multiplicative recursions,

        omega_k = omega_{k-1} (k - 1 - alpha) / k,
        S_k     = S_{k-1} (k - alpha) / k,

    the second being the coefficient sequence of (1 - z)^(alpha - 1).  Every
    S_k is a product of positive factors, so no cancellation occurs.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    k = np.arange(1, n + 1, dtype=float)
    omega = np.empty(n + 1)
    omega[0] = 1.0
    omega[1:] = np.cumprod((k - 1.0 - alpha) / k)
    sums = np.empty(n + 1)
    sums[0] = 1.0
    sums[1:] = np.cumprod((k - alpha) / k)
    omega.flags.writeable = False
    sums.flags.writeable = False
    return GmmpWeights(alpha=alpha, omega=omega, partial_sums=sums)


def caputo_gmmp(samples, f0: float, tau: float, weights: GmmpWeights) -> float:
    """Discrete Caputo derivative of order ``weights.alpha`` at t_n.

    Parameters
    ----------
    samples : array_like
        f(t_0), ..., f(t_n) on a uniform grid of step ``tau``.
    f0 : float
        Initial value f(0) used in the correction sum.
    tau : float
        Time step.
    weights : GmmpWeights
        At least n + 1 coefficients.
    """
    samples = np.asarray(samples, dtype=float)
    n = len(samples) - 1
    if n < 0:
        raise ValueError("need at least one sample")
    if len(weights) < n + 1:
        raise ValueError(f"{len(weights)} weights cannot cover {n + 1} samples")
    # sum_k omega_k (f_{n-k} - f0) equals the two-sum form and is exactly 0 for constants
    omega = weights.omega[: n + 1]
    return float(np.dot(omega, samples[::-1] - f0)) / tau**weights.alpha

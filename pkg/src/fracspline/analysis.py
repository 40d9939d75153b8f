"""Error norms, convergence orders, growth factors and boundary flux."""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .solver import CoefficientHistory, Discretization, ProblemSpec, initial_from_nodal, solve

__all__ = [
    "ErrorReport",
    "error_norms",
    "convergence_order",
    "pairwise_orders",
    "growth_factor",
    "heat_flux_at_left",
    "PerturbationReport",
    "amplification_ratio",
    "perturbation_decay_check",
]


@dataclass(frozen=True)
class ErrorReport:
    """Discrete L2 and max errors over the interior nodes at one time level."""

    l2: float
    linf: float
    t: float
    M: int
    N: int
    p: float
    alpha: float


def error_norms(history: CoefficientHistory, spec: ProblemSpec, n: int) -> ErrorReport:
    """Compare level ``n`` with ``spec.exact`` on nodes x_1..x_{M-1}.

    l2 = sqrt(h * sum e_j^2) and linf = max |e_j|.
    """
    if spec.exact is None:
        raise ValueError(f"{spec.name or 'problem'} has no exact solution")
    disc = history.disc
    x = disc.nodes()[1:-1]
    t = disc.time(n)
    err = history.nodal_values(n)[1:-1] - np.asarray(spec.exact(x, t), dtype=float)
    return ErrorReport(
        l2=math.sqrt(disc.h * float(np.sum(err * err))),
        linf=float(np.max(np.abs(err))),
        t=t,
        M=disc.M,
        N=disc.N,
        p=disc.p,
        alpha=spec.alpha,
    )


def convergence_order(pairs) -> float:
    """Least-squares slope of log(error) against log(step).

    ``pairs`` is a sequence of (step, error) with positive entries.
    """
    pairs = list(pairs)
    if len(pairs) < 2:
        raise ValueError("need at least two (step, error) pairs")
    steps, errors = np.asarray(pairs, dtype=float).T
    if np.any(steps <= 0) or np.any(errors <= 0):
        raise ValueError("steps and errors must be positive")
    slope, _ = np.polyfit(np.log(steps), np.log(errors), 1)
    return float(slope)


def pairwise_orders(pairs) -> list[float]:
    """log(e_i/e_{i+1}) / log(s_i/s_{i+1}) for consecutive pairs."""
    out = []
    for (s0, e0), (s1, e1) in zip(pairs[:-1], pairs[1:]):
        out.append(math.log(e0 / e1) / math.log(s0 / s1))
    return out


def growth_factor(upsilon: float, disc: Discretization, spec: ProblemSpec) -> float:
    """Single-mode amplification G for wave number ``upsilon``.

    G = (d1 cos(vh) + d2) / (tau^alpha kappa p^2 s (1 - cos(vh)) + d1 cos(vh) + d2)
    """
    st = disc.stencil()
    cv = math.cos(upsilon * disc.h)
    num = st.d1 * cv + st.d2
    diffusion = disc.tau**spec.alpha * spec.kappa * st.p2s * (1.0 - cv)
    return num / (diffusion + num)


def heat_flux_at_left(
    history: CoefficientHistory, spec: ProblemSpec, sign: str = "fick"
) -> np.ndarray:
    """Forward-difference flux at x = a for every stored level.

    Returns an array of rows (t_n, q_n) with
    q_n = -kappa (u_N(x_1, t_n) - u_N(x_0, t_n)) / h for ``sign="fick"`` and
    the same without the minus sign for ``sign="plain"``.
    """
    if sign not in ("fick", "plain"):
        raise ValueError(f"sign must be 'fick' or 'plain', got {sign!r}")
    disc = history.disc
    factor = -spec.kappa if sign == "fick" else spec.kappa
    rows = np.empty((history.levels, 2))
    for n in range(history.levels):
        u = history.nodal_values(n)
        rows[n] = disc.time(n), factor * (u[1] - u[0]) / disc.h
    return rows


@dataclass(frozen=True)
class PerturbationReport:
    ratios: tuple[float, ...]
    seed: int | None

    @property
    def max_ratio(self) -> float:
        return max(self.ratios) if self.ratios else 0.0


def _homogeneous(spec: ProblemSpec) -> ProblemSpec:
    def zero_x(x, *args):
        return np.zeros_like(np.asarray(x, dtype=float))

    return replace(
        spec,
        phi=zero_x,
        phi_prime=zero_x,
        g1=lambda t: 0.0,
        g2=lambda t: 0.0,
        f=zero_x,
        exact=None,
        name=(spec.name or "problem") + "-homogeneous",
    )


def amplification_ratio(
    spec: ProblemSpec, disc: Discretization, nodal, slopes=(0.0, 0.0)
) -> float:
    """max_n max_j |u_N(x_j, t_n)| / max_j |u_N(x_j, 0)| for the homogeneous scheme.

    ``nodal`` gives the initial perturbation at x_0..x_M; the end values
    should be zero to match the homogeneous boundary data.  A zero
    perturbation gives 0.
    """
    nodal = np.asarray(nodal, dtype=float)
    homo = _homogeneous(spec)
    alpha0 = initial_from_nodal(nodal, slopes[0], slopes[1], disc.stencil())
    history = solve(homo, disc, initial=alpha0)
    start = float(np.max(np.abs(history.nodal_values(0))))
    if start == 0.0:
        return 0.0
    peak = max(
        float(np.max(np.abs(history.nodal_values(n)))) for n in range(1, history.levels)
    )
    return peak / start


def perturbation_decay_check(
    spec: ProblemSpec, disc: Discretization, trials: int = 20, seed: int | None = 0
) -> PerturbationReport:
    """Evolve random perturbations through the homogeneous scheme.

    Each trial draws interior nodal values uniformly from [-1, 1] (zero at
    both ends, zero end slopes) and records :func:`amplification_ratio`.
    """
    rng = np.random.default_rng(seed)
    ratios = []
    for _ in range(trials):
        nodal = np.zeros(disc.M + 1)
        nodal[1:-1] = rng.uniform(-1.0, 1.0, disc.M - 1)
        ratios.append(amplification_ratio(spec, disc, nodal))
    return PerturbationReport(ratios=tuple(ratios), seed=seed)

"""Exponential B-spline collocation for the Caputo sub-diffusion equation.

The problem is

    D_t^alpha u - kappa u_xx = f(x, t),   a < x < b,  0 < t <= T,
    u(x, 0) = phi(x),   u(a, t) = g1(t),   u(b, t) = g2(t),

with the Caputo derivative discretized by the GMMP formula and u(., t_n)
represented as sum_{j=-1}^{M+1} alpha_j^n B_j(x).  At every level the M+1
collocation equations at the nodes plus the two Dirichlet conditions fix the
M+3 coefficients; eliminating the two ghost coefficients leaves a
tri-diagonal system in alpha_0..alpha_M.

All rows are written with the row-scaled stencil constants of
:class:`~fracspline.splinebasis.ScaledStencil` (``d1 = s - ph``,
``d2 = phc - s``, ``p2s = p^2 s``, ``pc1 = p(c - 1)`` for p > 0).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .fractime import GmmpWeights, gmmp_weights
from .splinebasis import (
    ScaledStencil,
    SplineShape,
    eval_basis,
    make_shape,
    scaled_stencil,
)
from .trisolve import ThomasFactorization, TriDiagonalSystem, thomas_solve

__all__ = [
    "ProblemSpec",
    "Discretization",
    "AssembledOperators",
    "CoefficientHistory",
    "assemble_operators",
    "initial_coefficients",
    "initial_from_nodal",
    "advance",
    "solve",
    "reconstruct",
    "recover_ghosts",
    "collocation_residual",
]


@dataclass(frozen=True)
class ProblemSpec:
    """Data of one sub-diffusion problem.

    ``phi``, ``phi_prime`` and ``f`` must accept numpy arrays of x; ``g1``,
    ``g2`` take a scalar t.  ``phi_prime=None`` falls back to one-sided
    finite differences of ``phi`` (flagged in the solve metadata).
    """

    alpha: float
    kappa: float
    a: float
    b: float
    T: float
    phi: Callable
    g1: Callable
    g2: Callable
    f: Callable
    phi_prime: Optional[Callable] = None
    exact: Optional[Callable] = None
    name: str = ""

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ValueError(f"alpha must lie in (0, 1), got {self.alpha}")
        if not self.kappa > 0.0:
            raise ValueError(f"kappa must be positive, got {self.kappa}")
        if not self.a < self.b:
            raise ValueError(f"empty domain [{self.a}, {self.b}]")
        if not self.T > 0.0:
            raise ValueError(f"horizon must be positive, got T={self.T}")
        for msg in self.compatibility_issues():
            warnings.warn(msg, stacklevel=3)

    def compatibility_issues(self, t0: float = 0.0, rtol: float = 1e-8) -> list[str]:
        """Mismatches between phi at the ends and the boundary data near t = 0."""
        issues = []
        for end, g, label in ((self.a, self.g1, "g1"), (self.b, self.g2, "g2")):
            left = float(np.asarray(self.phi(np.array([end])))[0])
            right = float(g(t0))
            if abs(left - right) > rtol * max(1.0, abs(left), abs(right)):
                issues.append(
                    f"{self.name or 'problem'}: phi({end}) = {left:g} but {label}(0+) = {right:g}"
                )
        return issues


@dataclass(frozen=True)
class Discretization:
    """Uniform space-time grid: M intervals of width h, N steps of size tau."""

    M: int
    N: int
    p: float
    h: float
    tau: float
    a: float
    T: float
    cubic_limit: bool = False

    @classmethod
    def build(
        cls, spec: ProblemSpec, M: int, N: int, p: float, cubic_limit: bool = False
    ) -> "Discretization":
        if M < 2:
            raise ValueError(f"need M >= 2 intervals, got {M}")
        if N < 0:
            raise ValueError(f"need N >= 0 steps, got {N}")
        if not cubic_limit and not p > 0.0:
            raise ValueError("p must be positive unless cubic_limit is set")
        tau = spec.T / N if N > 0 else spec.T
        return cls(M, N, float(p), (spec.b - spec.a) / M, tau, spec.a, spec.T, cubic_limit)

    def time(self, n: int) -> float:
        # T * (n / N) keeps step times such as 0.2 exact for Heaviside data
        return self.T * (n / self.N) if self.N > 0 else 0.0

    def nodes(self) -> np.ndarray:
        return self.a + self.h * np.arange(self.M + 1)

    def shape(self) -> SplineShape:
        return make_shape(self.p, self.h)

    def stencil(self) -> ScaledStencil:
        return scaled_stencil(self.shape(), self.cubic_limit)


@dataclass(frozen=True, eq=False)
class AssembledOperators:
    """Time-independent pieces of the fully discrete system.

    ``matrix`` carries the bands of the (M+1) x (M+1) left-hand side (its rhs
    is unused).  Interior rows are (A, A', A); the two boundary rows have the
    single diagonal entry ``boundary_diag`` = 2 tau^alpha kappa p^2 s (d1 + d2).
    """

    matrix: TriDiagonalSystem
    b_stencil: tuple[float, float, float]
    a_scalar: float
    aprime_scalar: float
    boundary_diag: float
    tau_alpha: float
    stencil: ScaledStencil


@dataclass(eq=False)
class CoefficientHistory:
    """Spline coefficients (alpha_{-1}^n, ..., alpha_{M+1}^n) for n = 0..N.

    ``bhist[m]`` caches the interior products (B alpha^m)_j, j = 1..M-1, and
    ``boundary_values[m]`` the nodal values u_N(x_0, t_m), u_N(x_M, t_m).
    """

    disc: Discretization
    shape: SplineShape
    stencil: ScaledStencil
    coeffs: np.ndarray
    bhist: np.ndarray
    boundary_values: np.ndarray
    levels: int = 0
    metadata: dict = field(default_factory=dict)

    @classmethod
    def allocate(cls, disc: Discretization) -> "CoefficientHistory":
        N, M = disc.N, disc.M
        return cls(
            disc=disc,
            shape=disc.shape(),
            stencil=disc.stencil(),
            coeffs=np.zeros((N + 1, M + 3)),
            bhist=np.zeros((N + 1, M - 1)),
            boundary_values=np.zeros((N + 1, 2)),
        )

    def store(self, n: int, coeffs: np.ndarray) -> None:
        if n != self.levels:
            raise ValueError(f"levels must be stored in order; expected {self.levels}, got {n}")
        st = self.stencil
        self.coeffs[n] = coeffs
        self.bhist[n] = st.d1 * (coeffs[1:-3] + coeffs[3:-1]) + 2.0 * st.d2 * coeffs[2:-2]
        nodal_ends = self.nodal_values(n, _allow_pending=True)[[0, -1]]
        self.boundary_values[n] = nodal_ends
        self.levels += 1

    def nodal_values(self, n: int, _allow_pending: bool = False) -> np.ndarray:
        """u_N(x_j, t_n) for j = 0..M from the knot stencil."""
        if not _allow_pending and not 0 <= n < self.levels:
            raise IndexError(f"level {n} not stored")
        c = self.coeffs[n]
        v = self.stencil.neighbor_value
        return v * (c[:-2] + c[2:]) + c[1:-1]

    def times(self) -> np.ndarray:
        return np.array([self.disc.time(n) for n in range(self.levels)])


def assemble_operators(spec: ProblemSpec, disc: Discretization) -> AssembledOperators:
    """Build the constant tri-diagonal matrix and the history stencil."""
    st = disc.stencil()
    M = disc.M
    tk = disc.tau**spec.alpha * spec.kappa
    a_scalar = -tk * st.p2s + st.d1
    aprime_scalar = 2.0 * tk * st.p2s + 2.0 * st.d2
    # (A' d1 - 2 d2 A) after eliminating the ghost; equals 2 tau^a kappa p^3 h s (c-1)
    boundary_diag = 2.0 * tk * st.p2s * (st.d1 + st.d2)

    diag = np.full(M + 1, aprime_scalar)
    diag[0] = diag[-1] = boundary_diag
    lower = np.full(M, a_scalar)
    upper = np.full(M, a_scalar)
    upper[0] = 0.0
    lower[-1] = 0.0
    matrix = TriDiagonalSystem(lower, diag, upper, np.zeros(M + 1))
    return AssembledOperators(
        matrix=matrix,
        b_stencil=(st.d1, 2.0 * st.d2, st.d1),
        a_scalar=a_scalar,
        aprime_scalar=aprime_scalar,
        boundary_diag=boundary_diag,
        tau_alpha=disc.tau**spec.alpha,
        stencil=st,
    )


def _phi_prime_fd(phi: Callable, x0: float, step: float) -> float:
    # fourth-order one-sided difference; step < 0 looks to the left
    xs = x0 + step * np.arange(5)
    v = np.asarray(phi(xs), dtype=float)
    return float((-25 * v[0] + 48 * v[1] - 36 * v[2] + 16 * v[3] - 3 * v[4]) / (12 * step))


def initial_from_nodal(
    values, slope_left: float, slope_right: float, stencil: ScaledStencil
) -> np.ndarray:
    """Coefficients interpolating nodal ``values`` with prescribed end slopes.

    Solves K alpha = U (rows (d2, d1 | d1, 2 d2, d1 | ... | d1, d2)) and then
    recovers the ghosts from u_N'(x_0) and u_N'(x_M).
    """
    values = np.asarray(values, dtype=float)
    m1 = len(values)
    d1, d2, pc1 = stencil.d1, stencil.d2, stencil.pc1
    diag = np.full(m1, 2.0 * d2)
    diag[0] = diag[-1] = d2
    off = np.full(m1 - 1, d1)
    rhs = 2.0 * d2 * values
    rhs[0] = d2 * (values[0] + d1 * slope_left / pc1)
    rhs[-1] = d2 * (values[-1] - d1 * slope_right / pc1)
    inner = thomas_solve(TriDiagonalSystem(off, diag, off, rhs))
    out = np.empty(m1 + 2)
    out[1:-1] = inner
    # u_N'(x_0) = pc1/(2 d2) (alpha_1 - alpha_{-1}), likewise at x_M
    out[0] = inner[1] - 2.0 * d2 * slope_left / pc1
    out[-1] = inner[-2] + 2.0 * d2 * slope_right / pc1
    return out


def initial_coefficients(spec: ProblemSpec, disc: Discretization) -> np.ndarray:
    """Level-0 coefficient vector (length M+3, ghosts included)."""
    x = disc.nodes()
    values = np.asarray(spec.phi(x), dtype=float) * np.ones_like(x)
    if spec.phi_prime is not None:
        ends = np.asarray(spec.phi_prime(x[[0, -1]]), dtype=float) * np.ones(2)
        left, right = float(ends[0]), float(ends[1])
    else:
        step = min(disc.h, (spec.b - spec.a) / 4.0)
        left = _phi_prime_fd(spec.phi, spec.a, step)
        right = _phi_prime_fd(spec.phi, spec.b, -step)
    return initial_from_nodal(values, left, right, disc.stencil())


def recover_ghosts(coeffs: np.ndarray, g_left: float, g_right: float, stencil: ScaledStencil) -> None:
    """Fill coeffs[0] and coeffs[-1] so that u_N(x_0) = g_left, u_N(x_M) = g_right."""
    v = stencil.neighbor_value
    coeffs[0] = (g_left - coeffs[1]) / v - coeffs[2]
    coeffs[-1] = (g_right - coeffs[-2]) / v - coeffs[-3]


class _Stepper:
    """Per-solve caches shared by successive calls to :func:`advance`."""

    def __init__(self, spec: ProblemSpec, disc: Discretization, ops: AssembledOperators):
        m = ops.matrix
        self.factor = ThomasFactorization(m.lower, m.diag, m.upper)
        times = np.array([disc.time(n) for n in range(disc.N + 1)])
        self.g1 = np.array([float(spec.g1(t)) for t in times])
        self.g2 = np.array([float(spec.g2(t)) for t in times])
        self.x = disc.nodes()


def advance(
    history: CoefficientHistory,
    n: int,
    ops: AssembledOperators,
    weights: GmmpWeights,
    spec: ProblemSpec,
    disc: Discretization,
    _stepper: Optional[_Stepper] = None,
) -> np.ndarray:
    """Compute and store the coefficients of level ``n`` (levels 0..n-1 present)."""
    if history.levels != n or n < 1:
        raise ValueError(f"cannot advance to level {n} with {history.levels} levels stored")
    stepper = _stepper or _Stepper(spec, disc, ops)
    st = ops.stencil
    d1, d2 = st.d1, st.d2
    ta = ops.tau_alpha
    tk = ta * spec.kappa
    omega = weights.omega
    s_prev = weights.partial_sums[n - 1]
    t = disc.time(n)
    fvals = np.asarray(spec.f(stepper.x, t), dtype=float) * np.ones_like(stepper.x)

    rhs = np.empty(disc.M + 1)
    interior = s_prev * history.bhist[0] + 2.0 * ta * d2 * fvals[1:-1]
    if n >= 2:
        # sum_{k=1}^{n-1} omega_k B alpha^{n-k}
        interior -= omega[n - 1 : 0 : -1] @ history.bhist[1:n]
    rhs[1:-1] = interior

    phi_ends = history.boundary_values[0]
    for row, g, phi_end in ((0, stepper.g1, phi_ends[0]), (-1, stepper.g2, phi_ends[1])):
        # sum_{k=0}^{n-1} omega_k g^{n-k}
        g_hist = float(omega[:n] @ g[n:0:-1])
        d_bnd = -2.0 * d1 * g_hist + 2.0 * d1 * s_prev * phi_end + 2.0 * tk * st.p2s * g[n]
        rhs[row] = d2 * (2.0 * ta * d1 * fvals[row] + d_bnd)

    coeffs = np.empty(disc.M + 3)
    coeffs[1:-1] = stepper.factor.solve(rhs)
    recover_ghosts(coeffs, stepper.g1[n], stepper.g2[n], st)
    history.store(n, coeffs)
    return coeffs


def solve(
    spec: ProblemSpec, disc: Discretization, initial: Optional[np.ndarray] = None
) -> CoefficientHistory:
    """Run the scheme from t = 0 to t = T.

    ``initial`` overrides the level-0 coefficients (used for perturbation
    studies); otherwise they interpolate ``spec.phi``.
    """
    history = CoefficientHistory.allocate(disc)
    history.metadata["phi_prime"] = "exact" if spec.phi_prime is not None else "finite-difference"
    alpha0 = initial_coefficients(spec, disc) if initial is None else np.asarray(initial, float)
    history.store(0, alpha0)
    if disc.N == 0:
        return history
    ops = assemble_operators(spec, disc)
    weights = gmmp_weights(spec.alpha, disc.N)
    stepper = _Stepper(spec, disc, ops)
    for n in range(1, disc.N + 1):
        advance(history, n, ops, weights, spec, disc, _stepper=stepper)
    return history


def reconstruct(history: CoefficientHistory, n: int, x: float, order: int = 0) -> float:
    """u_N(x, t_n) (or its x-derivative) from the bases supported at x."""
    disc = history.disc
    lo, hi = disc.a, disc.a + disc.M * disc.h
    span = hi - lo
    if not (lo - 1e-12 * span <= x <= hi + 1e-12 * span):
        raise ValueError(f"x={x} outside [{lo}, {hi}]")
    if not 0 <= n < history.levels:
        raise IndexError(f"level {n} not stored")
    c = history.coeffs[n]
    i = min(int(math.floor((x - lo) / disc.h)), disc.M - 1)
    total = 0.0
    for j in range(i - 1, i + 3):
        if -1 <= j <= disc.M + 1:
            total += c[j + 1] * eval_basis(
                history.shape, j, x, order, origin=lo, cubic_limit=disc.cubic_limit
            )
    return total


def collocation_residual(
    history: CoefficientHistory, n: int, spec: ProblemSpec, weights: GmmpWeights
) -> float:
    """Relative residual of the unfolded equations at level ``n``.

    Checks the collocation equation at every node j = 0..M (ghosts included,
    nothing eliminated) together with both Dirichlet conditions.
    """
    disc = history.disc
    st = history.stencil
    d1, d2 = st.d1, st.d2
    tk = disc.tau**spec.alpha * spec.kappa
    A = -tk * st.p2s + d1
    Ap = 2.0 * tk * st.p2s + 2.0 * d2

    def full_p(m):
        c = history.coeffs[m]
        return d1 * (c[:-2] + c[2:]) + 2.0 * d2 * c[1:-1]

    c = history.coeffs[n]
    lhs = A * (c[:-2] + c[2:]) + Ap * c[1:-1]
    omega = weights.omega
    rhs = weights.partial_sums[n - 1] * full_p(0)
    for k in range(1, n):
        rhs -= omega[k] * full_p(n - k)
    x = disc.nodes()
    t = disc.time(n)
    rhs += 2.0 * disc.tau**spec.alpha * d2 * np.asarray(spec.f(x, t), float) * np.ones_like(x)
    # normalise by the size of the individual terms, which stays meaningful
    # when both sides cancel to zero
    terms = abs(A) * (np.abs(c[:-2]) + np.abs(c[2:])) + abs(Ap) * np.abs(c[1:-1])
    scale = float(np.max(terms)) + float(np.max(np.abs(rhs))) + 1e-300
    res = float(np.max(np.abs(lhs - rhs))) / scale
    u = history.nodal_values(n)
    g = np.array([spec.g1(t), spec.g2(t)])
    bres = float(np.max(np.abs(u[[0, -1]] - g))) / max(1.0, float(np.max(np.abs(g))))
    return max(res, bres)

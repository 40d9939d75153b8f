"""The five benchmark problems and their published error tables."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .solver import Discretization, ProblemSpec
from .specfun import MLParams, erfcx, heaviside, mittag_leffler

__all__ = ["BenchmarkCase", "benchmark", "DEFAULT_ALPHA", "PUBLISHED_TABLES"]

DEFAULT_ALPHA = {1: 0.3, 2: 0.9, 3: 0.5, 4: 0.6, 5: 0.5}

_X = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)

# Published absolute errors.  Keys: table id -> column key -> values.
# Tables 1 and 2 columns are (M, N, alpha), rows x = 0.1..0.9.
# Table 3 columns are (norm, t), rows (M, N).
# Table 4 compares methods: columns (M, N, method), rows x.
PUBLISHED_TABLES = {
    1: {
        "rows": _X,
        "columns": {
            (128, 3200, 0.3): (4.8077e-6, 8.8365e-6, 1.1667e-5, 1.3323e-5, 1.3817e-5, 1.3252e-5, 1.1547e-5, 8.7289e-6, 4.8491e-6),
            (128, 3200, 0.6): (4.9205e-6, 9.0944e-6, 1.2103e-5, 1.3957e-5, 1.4637e-5, 1.4187e-5, 1.2493e-5, 9.5223e-6, 5.3116e-6),
            (128, 3200, 0.9): (5.1822e-6, 9.6736e-6, 1.3046e-5, 1.5284e-5, 1.6304e-5, 1.6052e-5, 1.4349e-5, 1.1061e-5, 6.2017e-6),
            (256, 6400, 0.3): (1.2909e-6, 2.3330e-6, 3.0516e-6, 3.5061e-6, 3.6600e-6, 3.5199e-6, 3.0707e-6, 2.3479e-6, 1.3059e-6),
            (256, 6400, 0.6): (1.3984e-6, 2.5585e-6, 3.3966e-6, 3.9726e-6, 4.2262e-6, 4.1375e-6, 3.6688e-6, 2.8378e-6, 1.5864e-6),
            (256, 6400, 0.9): (1.6069e-6, 2.9931e-6, 4.0561e-6, 4.8565e-6, 5.2909e-6, 5.2916e-6, 4.7805e-6, 3.7446e-6, 2.1042e-6),
        },
    },
    2: {
        "rows": _X,
        "columns": {
            (50, 2500, 0.3): (2.6511e-6, 5.1402e-6, 7.3057e-6, 8.9870e-6, 1.0024e-5, 1.0259e-5, 9.5339e-6, 7.6895e-6, 4.5661e-6),
            (50, 2500, 0.6): (1.7151e-6, 3.3299e-6, 4.7433e-6, 5.8526e-6, 6.5525e-6, 6.7351e-6, 6.2885e-6, 5.0973e-6, 3.0421e-6),
            (50, 2500, 0.9): (1.3626e-7, 2.5439e-7, 3.3856e-7, 3.7746e-7, 3.6624e-7, 3.0810e-7, 2.1542e-7, 1.1038e-7, 2.4885e-8),
            (100, 10000, 0.3): (6.6926e-7, 1.2977e-6, 1.8445e-6, 2.2693e-6, 2.5317e-6, 2.5915e-6, 2.4088e-6, 1.9433e-6, 1.1543e-6),
            (100, 10000, 0.6): (4.3003e-7, 8.3493e-7, 1.1893e-6, 1.4674e-6, 1.6429e-6, 1.6886e-6, 1.5766e-6, 1.2779e-6, 7.6266e-7),
            (100, 10000, 0.9): (3.3909e-8, 6.3294e-8, 8.4212e-8, 9.3849e-8, 9.0999e-8, 7.6468e-8, 5.3358e-8, 2.7210e-8, 6.0045e-9),
        },
    },
    3: {
        "rows": ((32, 4000), (64, 4000), (128, 9000), (256, 9000), (1024, 250), (1024, 500), (2048, 1000), (2048, 2000)),
        "columns": {
            ("l2", 1.0): (5.4324e-5, 1.3203e-5, 3.0826e-6, 5.3117e-7, 5.9928e-6, 3.6171e-6, 2.2589e-6, 1.4133e-6),
            ("l2", 2.0): (3.8735e-5, 9.6132e-6, 2.3273e-6, 4.7773e-7, 2.1116e-6, 1.2685e-6, 7.9847e-7, 4.9781e-7),
            ("l2", 3.0): (3.1716e-5, 7.9258e-6, 1.9418e-6, 4.2641e-7, 1.1412e-6, 6.8189e-7, 4.3255e-7, 2.6867e-7),
            ("linf", 1.0): (8.8587e-5, 2.1878e-5, 5.2449e-6, 9.5837e-7, 9.4652e-6, 5.6050e-6, 3.4336e-6, 2.1044e-6),
            ("linf", 2.0): (6.3211e-5, 1.5795e-5, 3.8791e-6, 8.4372e-7, 3.3298e-6, 1.9593e-6, 1.2092e-6, 7.3642e-7),
            ("linf", 3.0): (5.1768e-5, 1.2985e-5, 3.2140e-6, 7.3492e-7, 1.7970e-6, 1.0500e-6, 6.5273e-7, 3.9486e-7),
        },
    },
    4: {
        "rows": _X,
        "columns": {
            (25, 625, "cbscm"): (7.4297e-5, 1.7128e-4, 2.2488e-4, 2.8563e-4, 3.1076e-4, 3.2060e-4, 3.0518e-4, 2.4201e-4, 1.6825e-4),
            (25, 625, "expspline"): (1.7521e-5, 3.1447e-5, 3.3028e-5, 2.5425e-5, 1.5134e-5, 4.5617e-6, 1.7614e-5, 3.0270e-5, 2.8820e-5),
            (50, 2500, "cbscm"): (2.2881e-5, 4.2725e-5, 5.9053e-5, 7.1249e-5, 7.8544e-5, 7.9982e-5, 7.4401e-5, 6.0392e-5, 3.6264e-5),
            (50, 2500, "expspline"): (5.2238e-6, 7.8796e-6, 8.1580e-6, 6.3822e-6, 3.0497e-6, 1.1163e-6, 5.1068e-6, 7.5532e-6, 6.6400e-6),
        },
    },
}


@dataclass(frozen=True)
class BenchmarkCase:
    """A catalogued problem with its default grid and published targets."""

    id: int
    spec: ProblemSpec
    default_disc: Discretization
    table_targets: list = field(default_factory=list)


def _zero(t):
    return 0.0


def _case1(alpha):
    kappa = 1.0
    mu = 2.0 + alpha
    coef = math.gamma(mu + 1.0) / math.gamma(mu + 1.0 - alpha)

    def f(x, t):
        return coef * t ** (mu - alpha) * x**3 * (1 - x) - 6 * kappa * t**mu * x * (1 - 2 * x)

    return ProblemSpec(
        alpha=alpha, kappa=kappa, a=0.0, b=1.0, T=1.0,
        phi=lambda x: np.zeros_like(np.asarray(x, float)),
        phi_prime=lambda x: np.zeros_like(np.asarray(x, float)),
        g1=_zero, g2=_zero, f=f,
        exact=lambda x, t: t**mu * x**3 * (1 - x),
        name="example-1",
    )


def _case2(alpha):
    ml = MLParams(alpha)
    kappa = 4.0 / math.pi**2

    def decay(t):
        return mittag_leffler(ml, -(t**alpha)) if t > 0 else 1.0

    return ProblemSpec(
        alpha=alpha, kappa=kappa, a=0.0, b=1.0, T=1.0,
        phi=lambda x: np.sin(np.pi * np.asarray(x, float) / 2),
        phi_prime=lambda x: np.pi / 2 * np.cos(np.pi * np.asarray(x, float) / 2),
        g1=_zero, g2=decay,
        f=lambda x, t: np.zeros_like(np.asarray(x, float)),
        exact=lambda x, t: decay(t) * np.sin(np.pi * np.asarray(x, float) / 2),
        name="example-2",
    )


def _case3(alpha):
    if alpha != 0.5:
        raise ValueError("example 3 is defined for alpha = 0.5 only")
    lam = 36.0 * math.pi**2

    def amp(t):
        return erfcx(lam * math.sqrt(t))

    return ProblemSpec(
        alpha=0.5, kappa=1.0, a=0.0, b=1.0, T=3.0,
        phi=lambda x: np.cos(6 * np.pi * np.asarray(x, float)),
        phi_prime=lambda x: -6 * np.pi * np.sin(6 * np.pi * np.asarray(x, float)),
        g1=amp, g2=amp,
        f=lambda x, t: np.zeros_like(np.asarray(x, float)),
        exact=lambda x, t: amp(t) * np.cos(6 * np.pi * np.asarray(x, float)),
        name="example-3",
    )


def _case4(alpha):
    kappa = 2.0
    coef = 2.0 / math.gamma(3.0 - alpha)

    def f(x, t):
        x = np.asarray(x, float)
        ex = np.exp(x)
        return coef * t ** (2 - alpha) * x * (1 - x) * ex + kappa * t**2 * x * (x + 3) * ex

    return ProblemSpec(
        alpha=alpha, kappa=kappa, a=0.0, b=1.0, T=1.0,
        phi=lambda x: np.zeros_like(np.asarray(x, float)),
        phi_prime=lambda x: np.zeros_like(np.asarray(x, float)),
        g1=_zero, g2=_zero, f=f,
        exact=lambda x, t: t**2 * np.asarray(x, float) * (1 - np.asarray(x, float)) * np.exp(x),
        name="example-4",
    )


def _case5(alpha):
    return ProblemSpec(
        alpha=alpha, kappa=1.0, a=0.0, b=1.0, T=1.0,
        phi=lambda x: np.zeros_like(np.asarray(x, float)),
        phi_prime=lambda x: np.zeros_like(np.asarray(x, float)),
        g1=_zero,
        g2=lambda t: heaviside(t - 0.2) - heaviside(t - 0.6),
        f=lambda x, t: np.zeros_like(np.asarray(x, float)),
        name="example-5",
    )


_BUILDERS = {1: _case1, 2: _case2, 3: _case3, 4: _case4, 5: _case5}
_DEFAULT_GRID = {
    1: (128, 3200, 1.18),
    2: (50, 2500, 1.52),
    3: (32, 12000, 0.01),  # tau = 1/4000 over [0, 3]
    4: (50, 2500, 2.53),
    5: (500, 125, 1.0),
}
_TABLE_FOR_CASE = {1: 1, 2: 2, 3: 3, 4: 4}


def benchmark(id: int, alpha: float | None = None) -> BenchmarkCase:
    """Return catalogued problem ``id`` (1..5), optionally at another order."""
    if id not in _BUILDERS:
        raise ValueError(f"unknown benchmark id {id}; choose 1..5")
    alpha = DEFAULT_ALPHA[id] if alpha is None else float(alpha)
    spec = _BUILDERS[id](alpha)
    M, N, p = _DEFAULT_GRID[id]
    disc = Discretization.build(spec, M, N, p)
    targets = []
    table = PUBLISHED_TABLES.get(_TABLE_FOR_CASE.get(id))
    if table is not None:
        for key, values in table["columns"].items():
            if id in (1, 2) and key[2] != alpha:
                continue
            for row, val in zip(table["rows"], values):
                targets.append((key, row, val))
    return BenchmarkCase(id=id, spec=spec, default_disc=disc, table_targets=targets)
